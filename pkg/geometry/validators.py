import math

from django.core.exceptions import ValidationError

def validate_finite(value, name='value'):
    try:
        ok = math.isfinite(value)
    except TypeError:
        ok = False
    if not ok:
        raise ValidationError('%s is not a finite %s' % (value, name))

def validate_positive(value, name='value'):
    validate_finite(value, name)
    if value <= 0:
        raise ValidationError('%s must be greater than 0 (got %s)' % (name, value))

def validate_non_negative(value, name='value'):
    validate_finite(value, name)
    if value < 0:
        raise ValidationError('%s must not be negative (got %s)' % (name, value))

def validate_probability(value, name='probability', allow_zero=True, allow_one=False):
    validate_finite(value, name)
    low_ok = value >= 0 if allow_zero else value > 0
    high_ok = value <= 1 if allow_one else value < 1
    if not (low_ok and high_ok):
        raise ValidationError('%s is not a valid %s' % (value, name))

def validate_unsigned(value, bits, name='value'):
    if not isinstance(value, int) or isinstance(value, bool) or not 0 <= value < 2 ** bits:
        raise ValidationError('%s is not a valid unsigned %d-bit %s' % (value, bits, name))
