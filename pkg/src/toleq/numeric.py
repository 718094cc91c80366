"""Process-wide numeric comparison tolerance.

Every equality/inequality test in the library (probability sums, regret
thresholds, CDF comparisons) funnels through one configurable tolerance so
that consistency semantics stay uniform across modules.
"""

from __future__ import annotations

DEFAULT_EPSNUM = 1e-9

_epsnum = DEFAULT_EPSNUM


def epsnum(override: float | None = None) -> float:
    """Resolve the effective comparison tolerance.

    Library functions take an optional ``eps`` argument; ``None`` means
    "use the process default" (1e-9 unless overridden).
    """
    return _epsnum if override is None else override


def set_epsnum(value: float) -> None:
    """Replace the process default (the CLI wires TOLEQ_EPSNUM through here)."""
    global _epsnum
    value = float(value)
    if not value > 0:
        raise ValueError(f"comparison tolerance must be positive, got {value}")
    _epsnum = value
