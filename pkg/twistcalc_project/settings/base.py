"""
Base Django settings for twistcalc_project.
Common settings shared between development and production.
"""
import os
import sys
from fractions import Fraction
from pathlib import Path

import environ

# Build paths
BASE_DIR = Path(__file__).resolve().parent.parent.parent

# Check if running tests
TESTING = 'test' in sys.argv

# Environment variables
env = environ.Env(
    DEBUG=(bool, False),
    TWISTCALC_TRUNCATION=(int, None),
    TWISTCALC_JSON_INDENT=(int, 2),
    TWISTCALC_RANDOM_SEED=(int, 20240611),
)
environ.Env.read_env(os.path.join(BASE_DIR, '.env'))

# Nothing here is served; the key only satisfies Django's startup checks.
SECRET_KEY = env('SECRET_KEY', default='django-insecure-dev-only-change-in-production')

# Application definition
INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'django.contrib.auth',
    # Third-party apps
    'rest_framework',
    # Project apps
    'core.apps.CoreConfig',
]

# Computations are pure; there is no database.
DATABASES = {}

# Internationalization
LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# Django REST Framework (serializers and JSONRenderer only)
REST_FRAMEWORK = {
    'UNAUTHENTICATED_USER': None,
    'UNICODE_JSON': True,
    'COMPACT_JSON': True,
}

# ==========================================================================
# TWISTCALC SETTINGS
# ==========================================================================
# DEFAULT_TRUNCATION: Cartan truncation when --trunc is absent; None means
#   2·n for a model on 2n generators.
# DEFAULT_SAMPLES: parameter values for non-vanishing checks when a model
#   file has no `samples` line.
TWISTCALC = {
    'DEFAULT_TRUNCATION': env('TWISTCALC_TRUNCATION'),
    'JSON_INDENT': env('TWISTCALC_JSON_INDENT'),
    'DEFAULT_SAMPLES': (0, 1, Fraction(-1, 2)),
    'RANDOM_SEED': env('TWISTCALC_RANDOM_SEED'),
}

# ==========================================================================
# LOGGING
# ==========================================================================
# Console output goes to stderr so the JSON on stdout stays clean.
_log_file = env('TWISTCALC_LOG_FILE', default=None)

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'twistcalc': {
            'format': '[{asctime}] {levelname} {name} | {message}',
            'style': '{',
            'datefmt': '%Y-%m-%d %H:%M:%S',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'twistcalc',
        },
    },
    'loggers': {
        'twistcalc': {
            'handlers': ['console'],
            'level': 'WARNING',
            'propagate': False,
        },
        'django': {
            'handlers': ['console'],
            'level': 'WARNING',
        },
    },
}
if _log_file:
    LOGGING['handlers']['file'] = {
        'class': 'logging.FileHandler',
        'filename': _log_file,
        'formatter': 'twistcalc',
        'encoding': 'utf-8',
    }
    LOGGING['loggers']['twistcalc']['handlers'].append('file')
