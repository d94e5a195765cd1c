"""Deliberate-fault switches for negative controls.

The verification harness must be able to demonstrate that it catches broken
algebra, so three corruptions can be switched on, each tripping at least one
check suite:

* ``DELTA_CORRUPT``   - one overlap coefficient is bumped asymmetrically
* ``DROP_UNIT_TENSOR`` - the ``1 (x) u`` term of every coproduct is dropped
* ``ANTIPODE_SIGN``   - the leading sign of the antipode recursion is flipped

These are test-only hooks; the CLI never exposes them.  Activating a fault
clears the field's memo caches so corrupted values cannot mix with clean ones.
"""

from __future__ import annotations

from contextlib import contextmanager

DELTA_CORRUPT = "delta-corrupt"
DROP_UNIT_TENSOR = "drop-unit-tensor"
ANTIPODE_SIGN = "antipode-sign"

ALL_MODES = (DELTA_CORRUPT, DROP_UNIT_TENSOR, ANTIPODE_SIGN)

_active: str | None = None


def active() -> str | None:
    return _active


@contextmanager
def inject_fault(mode: str, *specs):
    """Activate one fault mode within a block, flushing caches on both edges."""
    global _active
    if mode not in ALL_MODES:
        raise ValueError(f"unknown fault mode {mode!r}")
    for spec in specs:
        spec.clear_memos()
    _active = mode
    try:
        yield
    finally:
        _active = None
        for spec in specs:
            spec.clear_memos()
