"""Positive Borel measures on [0, 1) built from atoms and Jacobi-type densities.

A measure is a finite sum of point masses ``c * delta_t`` and densities
``scale * t**a * (1-t)**b dt``.  Every moment and tail mass has a closed
form, so nothing here depends on quadrature.
"""

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import DomainError, ResourceError
from .specialfn import beta, incomplete_beta_tail

__all__ = [
    "Atom",
    "JacobiDensity",
    "Measure",
    "MomentSequence",
    "CarlesonReport",
    "MAX_MOMENTS",
    "moment",
    "moment_sequence",
    "tail_mass",
    "default_carleson_grid",
    "carleson_report",
    "moment_decay_report",
]

MAX_MOMENTS = 2**20


class Atom(NamedTuple):
    t: float
    c: float


class JacobiDensity(NamedTuple):
    """The density ``scale * t**a * (1-t)**b`` on [0, 1)."""

    a: float
    b: float
    scale: float


@dataclass(frozen=True)
class Measure:
    atoms: tuple = ()
    densities: tuple = ()

    def __post_init__(self):
        atoms = tuple(Atom(float(t), float(c)) for t, c in self.atoms)
        densities = tuple(JacobiDensity(float(a), float(b), float(s)) for a, b, s in self.densities)
        for t, c in atoms:
            if not (math.isfinite(t) and 0.0 <= t < 1.0):
                raise DomainError(f"atom position must lie in [0, 1), got {t}")
            if not (math.isfinite(c) and c > 0.0):
                raise DomainError(f"atom mass must be positive, got {c}")
        for a, b, s in densities:
            if not (math.isfinite(a) and a >= 0.0):
                raise DomainError(f"density exponent a must be >= 0, got {a}")
            if not (math.isfinite(b) and b > -1.0):
                raise DomainError(f"density exponent b must be > -1, got {b}")
            if not (math.isfinite(s) and s > 0.0):
                raise DomainError(f"density scale must be positive, got {s}")
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "densities", densities)

    @classmethod
    def empty(cls):
        return cls()

    @classmethod
    def lebesgue(cls):
        return cls(densities=[(0.0, 0.0, 1.0)])

    @classmethod
    def atom(cls, t, c=1.0):
        return cls(atoms=[(t, c)])

    @classmethod
    def jacobi(cls, a, b, scale=1.0):
        return cls(densities=[(a, b, scale)])

    @property
    def is_empty(self):
        return not self.atoms and not self.densities

    def scaled(self, factor):
        """Multiply every mass and scale by ``factor > 0``."""
        factor = float(factor)
        if not factor > 0:
            raise DomainError(f"scale factor must be positive, got {factor}")
        return Measure(
            atoms=[(t, c * factor) for t, c in self.atoms],
            densities=[(a, b, s * factor) for a, b, s in self.densities],
        )

    def __add__(self, other):
        if not isinstance(other, Measure):
            return NotImplemented
        return Measure(self.atoms + other.atoms, self.densities + other.densities)

    def to_dict(self):
        return {
            "atoms": [{"t": t, "c": c} for t, c in self.atoms],
            "densities": [{"a": a, "b": b, "scale": s} for a, b, s in self.densities],
        }

    @classmethod
    def from_dict(cls, doc):
        if isinstance(doc, str):
            return preset(doc)
        if not isinstance(doc, dict):
            raise DomainError("measure document must be an object or a preset name")
        unknown = set(doc) - {"atoms", "densities"}
        if unknown:
            raise DomainError(f"unknown measure fields: {sorted(unknown)}")
        try:
            atoms = [(item["t"], item["c"]) for item in doc.get("atoms", [])]
            densities = [(item["a"], item["b"], item["scale"]) for item in doc.get("densities", [])]
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed measure document: {exc}") from None
        return cls(atoms, densities)


PRESETS = {
    "lebesgue": Measure.lebesgue,
    "empty": Measure.empty,
}


def preset(name):
    try:
        return PRESETS[name]()
    except KeyError:
        raise DomainError(f"unknown measure preset {name!r}") from None


def moment(m, n):
    """``mu_n = int t**n dmu(t)``, exact up to rounding."""
    n = int(n)
    if n < 0:
        raise DomainError(f"moment index must be >= 0, got {n}")
    total = math.fsum(c * t**n for t, c in m.atoms)
    for a, b, s in m.densities:
        total += s * beta(n + a + 1.0, b + 1.0)
    return total


@dataclass(frozen=True)
class MomentSequence:
    values: np.ndarray
    source: Measure = field(repr=False)

    @property
    def N(self):
        return len(self.values) - 1

    def __len__(self):
        return len(self.values)

    def __getitem__(self, idx):
        return self.values[idx]

    def check_invariants(self, rtol=1e-12):
        """Raise AssertionError unless the sequence is nonincreasing and log-convex."""
        v = self.values
        if np.any(v < 0):
            raise AssertionError("negative moment")
        if np.any(v[1:] > v[:-1] * (1 + rtol)):
            raise AssertionError("moment sequence increases")
        lhs = v[1:-1] ** 2
        rhs = v[:-2] * v[2:]
        if np.any(lhs > rhs * (1 + rtol)):
            raise AssertionError("moment sequence is not log-convex")


@lru_cache(maxsize=64)
def _moment_values(m, N):
    n = np.arange(N + 1, dtype=float)
    out = np.zeros(N + 1)
    for t, c in m.atoms:
        out += c * np.power(t, n)
    for a, b, s in m.densities:
        # B(n+a+2, b+1) / B(n+a+1, b+1) = (n+a+1)/(n+a+b+2)
        ratios = (n[:-1] + a + 1.0) / (n[:-1] + a + b + 2.0)
        seq = np.empty(N + 1)
        seq[0] = s * beta(a + 1.0, b + 1.0)
        seq[1:] = seq[0] * np.cumprod(ratios)
        out += seq
    out.setflags(write=False)
    return out


def moment_sequence(m, N, cap=MAX_MOMENTS):
    """Moments ``mu_0 .. mu_N`` as a cached, read-only vector."""
    N = int(N)
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    if N > cap:
        raise ResourceError(f"N = {N} exceeds the moment cap {cap}")
    return MomentSequence(_moment_values(m, N), m)


def tail_mass(m, t):
    """``mu([t, 1))``."""
    t = float(t)
    if not (0.0 <= t < 1.0):
        raise DomainError(f"t must lie in [0, 1), got {t}")
    total = math.fsum(c for s, c in m.atoms if s >= t)
    for a, b, s in m.densities:
        total += s * incomplete_beta_tail(t, a, b)
    return total


def default_carleson_grid(levels=24):
    return [1.0 - 2.0**-j for j in range(1, levels + 1)]


@dataclass(frozen=True)
class CarlesonReport:
    exponent: float
    grid: list
    ratios: list
    sup_ratio: float
    vanishing_trend: float

    def to_dict(self):
        return {
            "exponent": self.exponent,
            "grid": list(self.grid),
            "ratios": list(self.ratios),
            "sup_ratio": self.sup_ratio,
            "vanishing_trend": self.vanishing_trend,
        }


def _safe_ratio(num, den):
    if den == 0.0:
        return 0.0 if num == 0.0 else math.inf
    return num / den


def carleson_report(m, s, grid=None):
    """Sample ``mu([t,1)) / (1-t)**s`` on a grid of t approaching 1.

    ``vanishing_trend`` is the ratio at the last grid point divided by the
    ratio at the middle one; values well below 1 suggest the vanishing
    Carleson condition.  It is a heuristic, not a decision.
    """
    s = float(s)
    if not s > 0:
        raise DomainError(f"Carleson exponent must be positive, got {s}")
    grid = default_carleson_grid() if grid is None else [float(t) for t in grid]
    if not grid:
        raise DomainError("Carleson grid is empty")
    if any(not (0.0 <= t < 1.0) for t in grid):
        raise DomainError("Carleson grid points must lie in [0, 1)")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise DomainError("Carleson grid must be strictly increasing")
    ratios = [tail_mass(m, t) / (1.0 - t) ** s for t in grid]
    trend = _safe_ratio(ratios[-1], ratios[len(ratios) // 2])
    return CarlesonReport(s, grid, ratios, max(ratios), trend)


def moment_decay_report(m, s, N):
    """Return ``(sup_n mu_n (n+1)**s, trend)`` over ``n <= N``.

    The trend compares the mean of ``mu_n (n+1)**s`` over ``[N/2, N]`` with
    its mean over ``[N/8, N/4]``: about 1 for exact order-s decay, near 0
    for faster (little-o) decay, large for slower decay.
    """
    N = int(N)
    if N < 16:
        raise DomainError(f"moment decay needs N >= 16, got {N}")
    mu = moment_sequence(m, N).values
    n = np.arange(N + 1, dtype=float)
    weighted = mu * (n + 1.0) ** float(s)
    late = weighted[N // 2 : N + 1].mean()
    early = weighted[N // 8 : N // 4 + 1].mean()
    return float(weighted.max()), _safe_ratio(float(late), float(early))
