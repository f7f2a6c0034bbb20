"""
Production settings.
Reads secrets from environment variables.
"""
import sentry_sdk
from .base import *   # noqa: F401,F403

# ──────────────────────────────────────────────────────────────
# Core
# ──────────────────────────────────────────────────────────────
DEBUG = False

SECRET_KEY = env('SECRET_KEY')  # required, no default
ALLOWED_HOSTS = env.list('ALLOWED_HOSTS', default=[])

# ──────────────────────────────────────────────────────────────
# Logging: INFO for command results, console only
# ──────────────────────────────────────────────────────────────
LOGGING['loggers']['twistcalc']['level'] = env('TWISTCALC_LOG_LEVEL', default='INFO')

# ──────────────────────────────────────────────────────────────
# Sentry error tracking (optional, set SENTRY_DSN)
# Long equivariant runs report unexpected exceptions here.
# ──────────────────────────────────────────────────────────────
_sentry_dsn = env('SENTRY_DSN', default=None)
if _sentry_dsn:
    sentry_sdk.init(
        dsn=_sentry_dsn,
        traces_sample_rate=0.0,
        send_default_pii=False,
        environment='production',
    )
