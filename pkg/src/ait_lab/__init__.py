from .conf import get_setting, setup

__all__ = ['get_setting', 'setup']
