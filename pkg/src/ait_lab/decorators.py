import logging
import re
import time
import traceback
from functools import wraps
from hashlib import md5
from typing import Callable

from .exceptions import LabError
from .signatures import ErrorPayload

logger = logging.getLogger(__name__)


def safe(f: Callable) -> Callable:
    """Turn lab errors into their exit code and payload on the diagnostic stream"""

    @wraps(f)
    def wrapper(self, *args, **kwargs):
        from .cli import LabConsole
        self: LabConsole
        try:
            return f(self, *args, **kwargs)
        except LabError as err:
            logger.debug('%s: %s', err.__class__.__name__, err.message)
            self.send_error(err.payload)
            return err.returncode
        except Exception as err:
            error = f'{err.__class__.__name__}: {str(err)}'
            logger.exception(error)
            tb = traceback.format_exc()
            lines = re.findall(r'line \d*, ', tb)
            for line in lines:
                tb = tb.replace(line, '')
            tb_hash = md5(tb.encode('utf-8')).hexdigest()
            self.send_error(ErrorPayload.SomethingWrong(error_text=error, error_hash=tb_hash))
            return 1

    return wrapper


def timed(f: Callable) -> Callable:
    """Log wall time of an enumeration and how much it produced"""

    @wraps(f)
    def wrapper(*args, **kwargs):
        started = time.perf_counter()
        result = f(*args, **kwargs)
        elapsed = time.perf_counter() - started
        entries = getattr(result, 'entries', ())
        logger.debug(
            '%s: %d halting, %d capped in %.3fs',
            f.__name__, len(entries), getattr(result, 'capped', 0), elapsed
        )
        return result

    return wrapper
