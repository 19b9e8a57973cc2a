import contextlib
import json
import os

from django.core.exceptions import ValidationError
from django.core.management.base import CommandError

from netsim.codec import FrameError
from scenarios.loader import bundled_path, load_scenario_file

from ..trace import TraceError

VALIDATION_ERROR = 1
IO_ERROR = 2


@contextlib.contextmanager
def reported_errors():
    """Map domain failures onto command exit codes."""
    try:
        yield
    except OSError as e:
        where = e.filename or ''
        raise CommandError('%s: %s' % (where, e.strerror or e) if where else str(e), returncode=IO_ERROR)
    except ValidationError as e:
        raise CommandError('; '.join(e.messages), returncode=VALIDATION_ERROR)
    except (TraceError, FrameError) as e:
        raise CommandError(str(e), returncode=VALIDATION_ERROR)


def load_scenario_argument(value):
    """A scenario file path, or the name of a bundled scenario."""
    if not os.path.exists(value) and os.path.exists(bundled_path(value)):
        value = bundled_path(value)
    return load_scenario_file(value)


def dump_metrics(metrics):
    return json.dumps(metrics.as_dict(), sort_keys=True, indent=2)
