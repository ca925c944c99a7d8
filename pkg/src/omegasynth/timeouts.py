from __future__ import annotations

import os
import signal
import threading
from contextlib import contextmanager

DEFAULT_TIMEOUT = 120.0
ENV_VAR = "OMEGA_SYNTH_TIMEOUT_SECS"


class PhaseTimeout(Exception):
    def __init__(self, phase: str, seconds: float):
        self.phase = phase
        self.seconds = seconds
        super().__init__(f"{phase} exceeded {seconds:g} s")


def default_timeout() -> float:
    raw = os.environ.get(ENV_VAR)
    if raw is None:
        return DEFAULT_TIMEOUT
    try:
        return float(raw)
    except ValueError:
        raise ValueError(f"{ENV_VAR} must be a number, got {raw!r}") from None


@contextmanager
def time_limit(seconds: float | None, phase: str = "phase"):
    """Raise PhaseTimeout if the block runs longer than ``seconds``.

    Uses SIGALRM, so it only has an effect on the main thread of a POSIX
    process; elsewhere the block runs unbounded.
    """
    usable = (
        seconds is not None
        and seconds > 0
        and hasattr(signal, "setitimer")
        and threading.current_thread() is threading.main_thread()
    )
    if not usable:
        yield
        return

    def on_alarm(signum, frame):
        raise PhaseTimeout(phase, seconds)

    previous = signal.signal(signal.SIGALRM, on_alarm)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, previous)
