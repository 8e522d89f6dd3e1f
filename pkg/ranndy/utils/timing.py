import time
from datetime import datetime, timezone


def get_utc_now() -> datetime:
    return datetime.now(timezone.utc)


class Stopwatch:
    """Mide el tiempo de pared de una etapa (`with Stopwatch() as sw: ...`)."""

    def __init__(self):
        self.started_at: datetime | None = None
        self.finished_at: datetime | None = None
        self._t0 = 0.0
        self.seconds = 0.0

    def __enter__(self):
        self.started_at = get_utc_now()
        self._t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self._t0
        self.finished_at = get_utc_now()
        return False
