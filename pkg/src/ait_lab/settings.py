"""
Default settings for ait_lab.

Point ``DJANGO_SETTINGS_MODULE`` at your own module and ``from ait_lab.settings import *``
to override any of these.
"""

import os
from pathlib import Path

BASE_DIR = Path(__file__).resolve().parent

SECRET_KEY = 'ait-lab-has-no-secrets'

DEBUG = False

INSTALLED_APPS = []

USE_TZ = True

CACHES = {
    'default': {
        'BACKEND': 'django.core.cache.backends.locmem.LocMemCache',
        'LOCATION': 'ait-lab',
    }
}

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '%(asctime)s %(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'plain',
        },
    },
    'loggers': {
        'ait_lab': {
            'handlers': ['console'],
            'level': os.environ.get('AIT_LOG_LEVEL', 'WARNING'),
            'propagate': False,
        },
    },
}

AIT_MAX_OUTPUT_BITS = 2 ** 20  #: Output cap for a single run, DBL grows output geometrically
AIT_WORK_BUDGET = 2 ** 26  #: Candidate cap for one enumeration, 2^(limit+1) must not exceed it
AIT_WORKERS = 1  #: Enumeration partitions gathered concurrently
AIT_SLACK = 8  #: Structure function slack in bits
AIT_STRUCTURE_EXACT_MAX_N = 3  #: Largest universe {0,1}^n searched in exact mode
AIT_RANDOMNESS_THRESHOLDS = {
    'positive_alpha_window': 2,  #: alpha_star within this many bits of the cheapest model
    'positive_h_margin': 1,  #: h_at >= n - margin
    'negative_alpha_margin': 2,  #: alpha_star >= k_x - margin
}
AIT_SEED = 0x9E3779B97F4A7C15  #: xorshift64* seed for the random side of the demos
AIT_CACHE_TIMEOUT = 40 * 60  #: Program table memo lifetime in seconds
AIT_CACHE_SAMPLE_EVERY = 100  #: Re-run every n-th entry of a loaded cache file
