"""Thread-cap resolution shared by the verification layer and the CLI.

All operations are pure functions of their inputs; a thread cap is an
upper bound on internal parallelism and never affects results.
"""

from __future__ import annotations

import os

from .errors import ParameterError

ENV_THREADS = "SUMREP_THREADS"


def resolve_thread_cap(value: int | None = None) -> int:
    """Explicit value, else SUMREP_THREADS, else the CPU count."""
    if value is None:
        env = os.environ.get(ENV_THREADS)
        if env is not None:
            try:
                value = int(env)
            except ValueError:
                raise ParameterError(f"{ENV_THREADS} is not an integer: {env!r}") from None
        else:
            value = os.cpu_count() or 1
    if value < 1:
        raise ParameterError(f"thread cap must be >= 1, got {value}")
    return value
