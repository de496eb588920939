"""
Django settings for the kbtool project.

kbtool is a command-line assistant for configuration knowledge-base
engineers. There is no database and no web surface: Django provides the
settings layer, logging configuration and the management-command CLI.

All tunables are read from the environment (or a .env file) through
python-decouple.
"""

from pathlib import Path
from decouple import config

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = config('SECRET_KEY', default='kbtool-local-only-not-secret')

DEBUG = config('DEBUG', default=False, cast=bool)

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'knowledge_base',
    'clustering',
    'navigation',
    'refactoring',
    'solver',
]

DATABASES = {}

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# kbtool engine settings

KBTOOL_SEED = config('KBTOOL_SEED', default=0, cast=int)

KBTOOL_CF_NEIGHBORS = config('KBTOOL_CF_NEIGHBORS', default=3, cast=int)

# Upper bound on the number of assignments enumerated by check_equivalence
KBTOOL_EQUIVALENCE_BOUND = config('KBTOOL_EQUIVALENCE_BOUND', default=1_000_000, cast=int)

KBTOOL_KMEANS_MAX_ITERATIONS = config('KBTOOL_KMEANS_MAX_ITERATIONS', default=100, cast=int)

KBTOOL_MAX_DOMAIN_SIZE = config('KBTOOL_MAX_DOMAIN_SIZE', default=10_000, cast=int)

KBTOOL_LOG_LEVEL = config('KBTOOL_LOG_LEVEL', default='WARNING')


# Logging: everything goes to stderr, stdout is reserved for command output

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'console': {
            'format': '{levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'stderr': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'console',
        },
    },
    'loggers': {
        app: {
            'handlers': ['stderr'],
            'level': KBTOOL_LOG_LEVEL,
            'propagate': True,
        }
        for app in INSTALLED_APPS + ['kbtool']
    },
}
