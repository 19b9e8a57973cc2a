"""
Django settings for the camsim project.

Besides the usual Django configuration, this module holds every tunable
of the cloud autonomous mobility pipeline (the CAM_* dictionaries near the
bottom). Algorithms never hard-code these values; they build their config
objects from here through ``from_settings()``.

For the full list of Django settings and their values, see
https://docs.djangoproject.com/en/4.2/ref/settings/
"""

import dj_database_url
import os

# Build paths inside the project like this: os.path.join(BASE_DIR, ...)
BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


# SECURITY WARNING: keep the secret key used in production secret!
# The simulator has no user sessions, so a development key is acceptable
# when nothing is set in the environment.
SECRET_KEY = os.environ.get('DJANGO_SECRET_KEY', 'camsim-development-key')

DEBUG = os.environ.get('DJANGO_DEBUG', '') == '1'

ALLOWED_HOSTS = ['localhost', '127.0.0.1']

# Application definition

INSTALLED_APPS = [
    'django.contrib.admin',
    'django.contrib.auth',
    'django.contrib.contenttypes',
    'django.contrib.sessions',
    'django.contrib.messages',
    'django.contrib.staticfiles',
    'rest_framework', # REST API framework
    'geometry', # Shared planar geometry and time primitives
    'scenarios', # Scenario files and ground-truth world
    'sensornodes', # Infrastructure sensor node emulation
    'netsim', # Emulated 5G transport
    'fusion', # Cloud fusion engine
    'hazard', # Outdoor conflict warnings
    'socialnav', # Indoor socially-aware planner
    'experiments', # Runs, traces, metrics, replay
]

MIDDLEWARE = [
    'django.middleware.security.SecurityMiddleware',
    'django.contrib.sessions.middleware.SessionMiddleware',
    'django.middleware.common.CommonMiddleware',
    'django.middleware.csrf.CsrfViewMiddleware',
    'django.contrib.auth.middleware.AuthenticationMiddleware',
    'django.contrib.messages.middleware.MessageMiddleware',
    'django.middleware.clickjacking.XFrameOptionsMiddleware',
]

ROOT_URLCONF = 'camsim.urls'

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {
            'context_processors': [
                'django.template.context_processors.debug',
                'django.template.context_processors.request',
                'django.contrib.auth.context_processors.auth',
                'django.contrib.messages.context_processors.messages',
            ],
        },
    },
]

WSGI_APPLICATION = 'camsim.wsgi.application'


# Database
# Parse db configuration from $DATABASE_URL; a local SQLite file is enough
# for the run registry.
DATABASES = {
        'default': dj_database_url.config(
            default='sqlite:///' + os.path.join(BASE_DIR, 'db.sqlite3'))
}

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Internationalization

LANGUAGE_CODE = 'en-gb'

TIME_ZONE = 'UTC'

USE_I18N = True

USE_TZ = True


# Static files (CSS, JavaScript, Images)

STATIC_URL = '/static/'

REST_FRAMEWORK = {
        'DEFAULT_RENDERER_CLASSES': (
            'rest_framework.renderers.JSONRenderer',
            ),
        'DEFAULT_PERMISSION_CLASSES': (
            'rest_framework.permissions.AllowAny',
            ),
        }


# Logging

CAM_LOG_LEVEL = os.environ.get('CAM_LOG_LEVEL', 'INFO')

LOGGING = {
        'version': 1,
        'disable_existing_loggers': False,
        'formatters': {
            'verbose': {
                'format': '%(asctime)s %(levelname)s %(name)s: %(message)s',
                },
            },
        'handlers': {
            'console': {
                'class': 'logging.StreamHandler',
                'formatter': 'verbose',
                },
            },
        'loggers': {
            app: {'handlers': ['console'], 'level': CAM_LOG_LEVEL, 'propagate': False}
            for app in ('geometry', 'scenarios', 'sensornodes', 'netsim',
                        'fusion', 'hazard', 'socialnav', 'experiments')
            },
        }


#
# Cloud autonomous mobility pipeline
#

# Fallback sensor parameters for node documents that leave them out.
# Bundled scenario files state their own values.
CAM_SENSOR_DEFAULTS = {
        'fov_rad': 3.141592653589793, # single 180 degree sector
        'max_range_m': 60.0,
        'detection_period_s': 0.1,
        'noise_sigma_m': 0.15,
        'miss_rate': 0.05,
        'class_accuracy': 0.95,
        'mount_height_m': 6.0,
        }

# Link profiles a scenario may reference by name without declaring them.
# Only the 1 ms base latency and the 1e-5 loss are anchored in published
# URLLC figures; the rest are design defaults.
CAM_LINK_PROFILES = {
        'urllc': {
            'base_latency_us': 1000,
            'jitter_us': 200,
            'loss_probability': 1e-5,
            'reorder_allowed': False,
            },
        'degraded': {
            'base_latency_us': 20000,
            'jitter_us': 5000,
            'loss_probability': 1e-2,
            'reorder_allowed': False,
            },
        }

# mMTC device density bound, devices per square kilometre
CAM_MMTC_DENSITY_PER_KM2 = 1000000

CAM_FUSION = {
        'gate_m': 2.5, # 1.0 indoors, set by the corridor scenarios
        'accel_psd': 0.5, # m^2/s^3
        'initial_velocity_sigma': 2.0, # m/s
        'min_measurement_sigma': 1e-6, # m
        'confirm_threshold': 3,
        'miss_threshold': 3,
        'drop_timeout_s': 2.0,
        'staleness_window_s': 0.15,
        'class_vote_window': 10,
        }

CAM_HAZARD = {
        'conflict_radius_m': 2.0,
        'horizon_s': 6.0,
        're_alert_delta_s': 1.0,
        'warn_lead_s': 2.0,
        }

CAM_PLANNER = {
        'max_speed': 1.0,
        'max_accel': 0.5,
        'horizon_s': 4.0,
        'plan_dt_s': 0.2,
        'lateral_offsets': [-0.9, -0.6, -0.3, 0.0, 0.3, 0.6, 0.9],
        'speeds': [0.2, 0.4, 0.6, 0.8, 1.0],
        'lateral_transition_m': 3.0,
        'boundary_clearance_m': 0.4,
        'weight_social': 4.0,
        'weight_path': 1.0,
        'weight_speed': 3.0,
        'stop_cost_threshold': 4.5,
        'sigma_front': 1.2,
        'sigma_side': 0.6,
        'sigma_back': 0.6,
        'r_hard': 0.45,
        'moving_speed_threshold': 0.1,
        'yield_range_m': 5.0,
        'yield_margin_mps': 0.3,
        'yield_cone_rad': 0.7853981633974483, # 45 degrees
        'yield_release_m': 1.0,
        'follow_lookahead_m': 1.0,
        }

CAM_TRACE = {
        'schema_version': 1,
        }

CAM_METRICS = {
        'match_gate_m': 1.5,
        }
