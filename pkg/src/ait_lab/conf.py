import os

import django
from django.conf import settings

from . import settings as defaults

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'ait_lab.settings')


def get_setting(name: str):
    """Lab setting from the active settings module, packaged default otherwise"""
    return getattr(settings, name, getattr(defaults, name))


def setup():
    """Configure settings and logging once, like manage.py does for a project"""
    from django.apps import apps
    if not apps.ready:
        django.setup()
