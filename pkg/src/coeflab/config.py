"""Central tolerance and resolution settings.

Every module reads its thresholds through :func:`current` at call time.  The
CLI installs a modified copy with :func:`using` when a ``--config`` file is
given.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass, fields, replace
from typing import Any, Iterator, Mapping


@dataclass(frozen=True)
class Settings:
    # zero tests
    zero_tol: float = 1e-14
    norm_slack: float = 1e-9
    boundary_tol: float = 1e-12

    # truncation orders
    default_order: int = 256
    max_schoolbook_order: int = 4096

    # boundary sampling for sup norms and winding numbers
    boundary_samples: int = 4096

    # lattice for the weighted sup norm sup (1-|z|^2)^2 |psi|
    bergman_radii: int = 64
    bergman_angles: int = 1024

    # disk quadrature
    grid_nr: int = 128
    grid_ntheta: int = 512

    # exterior lattice for transferred Schwarzians, |zeta| in (1, exterior_rmax]
    exterior_rmax: float = 4.0

    # optimizer
    max_iter: int = 500
    polish_rounds: int = 12
    polish_top: int = 4
    start_zero_radius: float = 0.95


DEFAULT = Settings()
_current = DEFAULT


def current() -> Settings:
    return _current


@contextmanager
def using(settings: Settings) -> Iterator[Settings]:
    """Temporarily install ``settings`` as the active configuration."""
    global _current
    previous, _current = _current, settings
    try:
        yield settings
    finally:
        _current = previous


def settings_from_mapping(data: Mapping[str, Any], base: Settings = DEFAULT) -> Settings:
    """Return ``base`` with the recognised keys of ``data`` overridden."""
    known = {f.name: f.type for f in fields(Settings)}
    unknown = set(data) - set(known)
    if unknown:
        raise KeyError(f"unknown settings: {sorted(unknown)}")
    return replace(base, **dict(data))
