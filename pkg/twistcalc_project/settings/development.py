"""
Development settings.
"""
from .base import *

DEBUG = True

ALLOWED_HOSTS = ['*']

# Rank sizes and truncation drops are worth seeing while developing
if not TESTING:
    LOGGING['loggers']['twistcalc']['level'] = env('TWISTCALC_LOG_LEVEL', default='INFO')

# shell_plus for poking at forms interactively (requirements-dev.txt)
try:
    import django_extensions  # noqa: F401
except ImportError:
    pass
else:
    INSTALLED_APPS += ['django_extensions']
