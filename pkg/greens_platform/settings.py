"""
Django settings for the boundary problem engine.

The project has no web surface and no database: Django provides the
configuration, logging and management-command layers for the exact
algebra apps.
"""

from pathlib import Path
from decouple import config

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

DEBUG = config('DEBUG', default=False, cast=bool)

# No sessions or signing are used; the fallback only satisfies Django.
SECRET_KEY = config('SECRET_KEY', default='greens-platform-local-only')

ALLOWED_HOSTS = []

# Application definition
DJANGO_APPS = []

THIRD_PARTY_APPS = [
    'rest_framework',
]

LOCAL_APPS = [
    'algebra',
    'boundary',
    'cli',
]

INSTALLED_APPS = DJANGO_APPS + THIRD_PARTY_APPS + LOCAL_APPS

DATABASES = {}

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# Django REST Framework: serializers only, used for the JSON format
REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
    'DEFAULT_AUTHENTICATION_CLASSES': [],
    'DEFAULT_PERMISSION_CLASSES': [],
    'UNAUTHENTICATED_USER': None,
}

# Engine limits
BVP_LEFT_FACTOR_MAX_CANDIDATES = config('BVP_LEFT_FACTOR_MAX_CANDIDATES', default=2000, cast=int)
BVP_VERIFY_SAMPLES = config('BVP_VERIFY_SAMPLES', default=3, cast=int)

# Logging Configuration
USE_FILE_LOGGING = config('USE_FILE_LOGGING', default=False, cast=bool)
LOG_LEVEL = config('LOG_LEVEL', default='WARNING')

# Create logs directory safely
LOGS_DIR = BASE_DIR / 'logs'
file_logging_available = False
if USE_FILE_LOGGING:
    try:
        LOGS_DIR.mkdir(exist_ok=True)
        file_logging_available = True
    except (PermissionError, OSError):
        file_logging_available = False

# Configure logging handlers
LOGGING_HANDLERS = {
    'console': {
        'level': LOG_LEVEL,
        'class': 'logging.StreamHandler',
        'formatter': 'simple',
    },
}

# Add file handler only if available and enabled
if file_logging_available:
    LOGGING_HANDLERS['file'] = {
        'level': LOG_LEVEL,
        'class': 'logging.handlers.RotatingFileHandler',
        'filename': LOGS_DIR / 'engine.log',
        'maxBytes': 1024*1024*10,  # 10MB
        'backupCount': 5,
        'formatter': 'verbose',
    }

DEFAULT_HANDLERS = ['console', 'file'] if file_logging_available else ['console']

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {process:d} {thread:d} {message}',
            'style': '{',
        },
        'simple': {
            'format': '{levelname} {asctime} {message}',
            'style': '{',
        },
    },
    'handlers': LOGGING_HANDLERS,
    'loggers': {
        'django': {
            'handlers': DEFAULT_HANDLERS,
            'level': LOG_LEVEL,
            'propagate': False,
        },
        'algebra': {
            'handlers': DEFAULT_HANDLERS,
            'level': LOG_LEVEL,
            'propagate': False,
        },
        'boundary': {
            'handlers': DEFAULT_HANDLERS,
            'level': LOG_LEVEL,
            'propagate': False,
        },
        'cli': {
            'handlers': DEFAULT_HANDLERS,
            'level': LOG_LEVEL,
            'propagate': False,
        },
    },
    'root': {
        'handlers': DEFAULT_HANDLERS,
        'level': LOG_LEVEL,
    },
}
