"""Machine-dependent defaults."""

import psutil


def default_jobs():
    """Return the default number of sweep workers.

    One worker per physical core, ``1`` when the count is unknown.
    """
    return psutil.cpu_count(logical=False) or 1
