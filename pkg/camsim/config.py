import dataclasses

from django.conf import settings
from django.core.exceptions import ValidationError


def build_config(cls, setting_name, overrides=None, **extra):
    """
    Instantiate a config dataclass from one of the CAM_* settings
    dictionaries, with per-scenario overrides layered on top.
    """
    values = dict(getattr(settings, setting_name))
    values.update(overrides or {})
    values.update(extra)
    names = {f.name for f in dataclasses.fields(cls)}
    unknown = sorted(set(values) - names)
    if unknown:
        raise ValidationError('unknown %s option(s): %s' % (setting_name, ', '.join(unknown)))
    return cls(**values)
