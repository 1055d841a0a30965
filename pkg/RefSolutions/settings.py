"""
Django settings for the RefSolutions project.

The project has no web surface and no database: everything runs through
the management commands of the Solutions app.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/4.2/ref/settings/
"""

import os
from pathlib import Path


# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.environ.get('REFSOL_SECRET_KEY', 'refsol-development-key-not-for-production')

DEBUG = os.environ.get('REFSOL_DEBUG', '') == '1'

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'django.contrib.auth',
    'rest_framework',
    'Solutions',
]

REST_FRAMEWORK = {
    'UNICODE_JSON': True,
    'COMPACT_JSON': True,
    'UNAUTHENTICATED_USER': None,
}

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {
            'context_processors': [],
        },
    },
]


# Database
# The pipeline reads and writes files only.

DATABASES = {}

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


# Logging

LOG_LEVEL = os.environ.get('REFSOL_LOG_LEVEL', 'INFO').upper()

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {name} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        'Solutions': {
            'handlers': ['console'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
    },
}


# Pipeline defaults; a config file (--config or REFSOL_CONFIG) and command flags override them.

REFSOL = {
    'LANGUAGE': 'Python3',
    'TOP_K': 5,
    'TOP_M': 3,
    'JOBS': 1,
    'TIMEOUT_MS': 2000,
    'INTERPRETER': os.environ.get('REFSOL_INTERPRETER', 'python3'),
    'CONFIG_FILE': os.environ.get('REFSOL_CONFIG') or None,
    'OUTPUT_DIR': 'out',
}
