from pathlib import Path

BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = 'django-insecure-richardson-multiplicity-local-key'

DEBUG = True

ALLOWED_HOSTS = ['localhost', '127.0.0.1', 'testserver']

INSTALLED_APPS = [
    'django.contrib.auth',
    'django.contrib.contenttypes',
    'rest_framework',
    'algebra',
    'schubert',
    'api',
]

MIDDLEWARE = [
    'django.middleware.security.SecurityMiddleware',
    'django.middleware.common.CommonMiddleware',
]

ROOT_URLCONF = 'richardson.urls'

WSGI_APPLICATION = 'richardson.wsgi.application'

# Nothing is persisted; reports go to flat files.
DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': BASE_DIR / 'db.sqlite3',
    }
}

CACHES = {
    'default': {
        'BACKEND': 'django.core.cache.backends.locmem.LocMemCache',
    },
    'hilbert': {
        'BACKEND': 'django.core.cache.backends.locmem.LocMemCache',
        'LOCATION': 'hilbert-numerators',
        'TIMEOUT': None,
        'OPTIONS': {'MAX_ENTRIES': 100000},
    },
}

REST_FRAMEWORK = {
    'DEFAULT_AUTHENTICATION_CLASSES': [],
    'DEFAULT_PERMISSION_CLASSES': ['rest_framework.permissions.AllowAny'],
    'UNAUTHENTICATED_USER': None,
    'DEFAULT_RENDERER_CLASSES': ['rest_framework.renderers.JSONRenderer'],
}

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {'format': '%(asctime)s %(levelname)s %(name)s: %(message)s'},
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'plain',
        },
    },
    'loggers': {
        'algebra': {'handlers': ['console'], 'level': 'INFO'},
        'schubert': {'handlers': ['console'], 'level': 'INFO'},
        'api': {'handlers': ['console'], 'level': 'INFO'},
    },
}

# Budget knobs for the multiplicity engine and the sweep harness
MULTIPLICITY = {
    'MAX_VARIABLES': 12,
    'MAX_GRID_VALUES': 5,
    'MAX_INSTANCES': 5000,
    'MAX_POINTS_PER_INSTANCE': 200,
    'SAMUEL_MAX_VARIABLES': 6,
    'DEFAULT_WORKERS': None,
}

LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = True
USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'
