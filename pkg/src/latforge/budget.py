"""Wall-clock caps for exhaustive searches.

Every search creates its own :class:`Budget`; the cap is read from the
``LATFORGE_BUDGET_MS`` environment variable (unset or empty means no cap).
"""
from __future__ import annotations

import os
import time

ENV_VAR = "LATFORGE_BUDGET_MS"


class BudgetExceeded(RuntimeError):
    pass


class Budget:
    __slots__ = ("deadline", "what", "_ticks")

    def __init__(self, what: str = "search", ms: float | None = None):
        if ms is None:
            raw = os.environ.get(ENV_VAR, "").strip()
            ms = float(raw) if raw else None
        if ms is not None and not ms > 0:
            raise ValueError(f"budget must be positive, got {ms}")
        self.deadline = None if ms is None else time.monotonic() + ms / 1000.0
        self.what = what
        self._ticks = 0

    def tick(self) -> None:
        if self.deadline is None:
            return
        self._ticks += 1
        # clock reads are comparatively slow; sample every 64 calls
        if self._ticks & 63 == 0 and time.monotonic() > self.deadline:
            raise BudgetExceeded(f"budget exceeded during {self.what}")
