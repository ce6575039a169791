"""Core bivariate copula machinery.

A bivariate copula couples two uniform margins into a joint distribution on
the unit square.  This module provides the pointwise-evaluable handle type,
the three reference copulas (the Frechet-Hoeffding bounds W and M and the
independence copula Pi), the dihedral transforms (transpose, the two
reflections sigma1 and sigma2, and the survival copula), convex combinations,
grid validation of the defining copula properties, and the checkerboard
discretization that serves elsewhere as a brute-force integration oracle.

Evaluators are vectorized: ``Copula.fn`` accepts scalars or numpy arrays and
broadcasts.  Handles are immutable and evaluation is pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable

import numpy as np

__all__ = [
    "CLAMP_BAND",
    "VALIDATION_TOL",
    "Check",
    "CheckReport",
    "Copula",
    "W",
    "PI",
    "M",
    "convex_combination",
    "ValidationReport",
    "validate_copula",
    "Checkerboard",
    "to_checkerboard",
]

# Inputs may overshoot [0, 1] by at most this much (round-off) before they
# are rejected; anything inside the band is clamped.
CLAMP_BAND = 1e-12

# Largest violation of groundedness / margins / 2-increasingness / the
# Lipschitz property that validate_copula accepts.
VALIDATION_TOL = 1e-9

_NEG_MASS_TOL = 1e-10  # most negative cell volume tolerated when discretizing


def _as_unit(x, name: str = "coordinate") -> np.ndarray:
    """Coerce ``x`` to an array in [0, 1], allowing a CLAMP_BAND overshoot."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr < -CLAMP_BAND) or np.any(arr > 1.0 + CLAMP_BAND):
        raise ValueError(f"{name} outside the unit interval: {x!r}")
    return np.clip(arr, 0.0, 1.0)


@dataclass(frozen=True)
class Check:
    """One named numeric check: a deviation compared against a tolerance."""

    name: str
    deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.deviation <= self.tolerance

    def describe(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{self.name}: {status} (deviation {self.deviation:.3e} <= {self.tolerance:.3e})"


@dataclass(frozen=True)
class CheckReport:
    """A bundle of named checks with an all-pass verdict."""

    checks: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def worst(self) -> Check:
        return max(self.checks, key=lambda c: c.deviation / c.tolerance)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def describe(self) -> str:
        return "\n".join(c.describe() for c in sorted(self.checks, key=lambda c: c.name))


@dataclass(frozen=True, repr=False)
class Copula:
    """A pointwise-evaluable bivariate copula handle.

    Attributes:
        tag: human-readable identity, e.g. ``"lower:0.4,0.6,0.1.t"``.
        fn: vectorized evaluator; it assumes its inputs already lie in [0, 1].
        family: coarse structural family used for closed-form dispatch
            ("w", "pi", "m", "lower", "upper", "transpose", "sigma1",
            "sigma2", "survival", "convex", "checkerboard", "generic").
        params: family-specific payload (bound parameters, mixture weights).
    """

    tag: str
    fn: Callable
    family: str = "generic"
    params: object = None

    def __call__(self, u, v):
        uu = _as_unit(u, "u")
        vv = _as_unit(v, "v")
        out = self.fn(uu, vv)
        if np.isscalar(u) and np.isscalar(v):
            return float(out)
        return out

    def __repr__(self) -> str:
        return f"Copula({self.tag})"

    # ------------------------------------------------------------------
    # Dihedral transforms.  Each returns a new handle wrapping this one.
    # ------------------------------------------------------------------

    def transpose(self) -> "Copula":
        """Swap the two arguments: (u, v) -> C(v, u)."""
        base = self.fn
        return Copula(self.tag + ".t", lambda u, v: base(v, u), "transpose", self)

    def sigma1(self) -> "Copula":
        """Reflect in the first argument: (u, v) -> v - C(1 - u, v)."""
        base = self.fn
        return Copula(self.tag + ".s1", lambda u, v: v - base(1.0 - u, v), "sigma1", self)

    def sigma2(self) -> "Copula":
        """Reflect in the second argument: (u, v) -> u - C(u, 1 - v)."""
        base = self.fn
        return Copula(self.tag + ".s2", lambda u, v: u - base(u, 1.0 - v), "sigma2", self)

    def survival(self) -> "Copula":
        """Survival copula (u, v) -> u + v - 1 + C(1 - u, 1 - v).

        Equals sigma2 composed with sigma1 (in either order).
        """
        base = self.fn
        return Copula(
            self.tag + ".hat",
            lambda u, v: u + v - 1.0 + base(1.0 - u, 1.0 - v),
            "survival",
            self,
        )


def _w_fn(u, v):
    return np.maximum(0.0, u + v - 1.0)


def _m_fn(u, v):
    return np.minimum(u, v)


def _pi_fn(u, v):
    return u * v


#: Lower Frechet-Hoeffding bound W(u, v) = max(0, u + v - 1).
W = Copula("w", _w_fn, "w")

#: Independence copula Pi(u, v) = u * v.
PI = Copula("pi", _pi_fn, "pi")

#: Upper Frechet-Hoeffding bound M(u, v) = min(u, v).
M = Copula("m", _m_fn, "m")


def convex_combination(t: float, first: Copula, second: Copula) -> Copula:
    """Mixture t * first + (1 - t) * second, a copula for every t in [0, 1]."""
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"mixture weight must lie in [0, 1], got {t!r}")
    f1, f2 = first.fn, second.fn
    tag = f"mix({t:g};{first.tag};{second.tag})"
    return Copula(
        tag,
        lambda u, v: t * f1(u, v) + (1.0 - t) * f2(u, v),
        "convex",
        (t, first, second),
    )


@lru_cache(maxsize=32)
def _corner_grid(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Meshgrid over the (n + 1) x (n + 1) cell corners of an n x n grid."""
    x = np.linspace(0.0, 1.0, n + 1)
    uu, vv = np.meshgrid(x, x, indexing="ij")
    for arr in (x, uu, vv):
        arr.flags.writeable = False
    return x, uu, vv


@lru_cache(maxsize=32)
def _center_grid(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Meshgrid over the n x n cell centers ((i + 1/2)/n, (j + 1/2)/n)."""
    c = (np.arange(n) + 0.5) / n
    uu, vv = np.meshgrid(c, c, indexing="ij")
    uu.flags.writeable = False
    vv.flags.writeable = False
    return uu, vv


@dataclass(frozen=True)
class ValidationReport:
    """Largest violation of each defining copula property on an n x n grid."""

    tag: str
    n: int
    grounded: float
    margins: float
    two_increasing: float
    lipschitz: float

    @property
    def worst(self) -> float:
        return max(self.grounded, self.margins, self.two_increasing, self.lipschitz)

    @property
    def passed(self) -> bool:
        return self.worst <= VALIDATION_TOL

    def describe(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"validate {self.tag} (n={self.n}): {status} "
            f"grounded={self.grounded:.2e} margins={self.margins:.2e} "
            f"two_increasing={self.two_increasing:.2e} lipschitz={self.lipschitz:.2e}"
        )


def validate_copula(C: Copula, n: int = 101) -> ValidationReport:
    """Check groundedness, uniform margins, 2-increasingness and the
    1-Lipschitz property of ``C`` on a uniform n x n grid.

    2-increasingness is checked on adjacent grid cells, which is equivalent
    to checking all grid-aligned rectangles because volumes add.
    """
    if n < 2:
        raise ValueError("validation grid needs at least 2 points per axis")
    x = np.linspace(0.0, 1.0, n)
    uu, vv = np.meshgrid(x, x, indexing="ij")
    g = np.asarray(C.fn(uu, vv), dtype=float)

    grounded = max(np.abs(g[0, :]).max(), np.abs(g[:, 0]).max())
    margins = max(np.abs(g[-1, :] - x).max(), np.abs(g[:, -1] - x).max())

    volumes = np.diff(np.diff(g, axis=0), axis=1)
    two_increasing = max(0.0, float(-volumes.min()))

    step = x[1] - x[0]
    lip_u = np.abs(np.diff(g, axis=0)).max() - step
    lip_v = np.abs(np.diff(g, axis=1)).max() - step
    lipschitz = max(0.0, float(lip_u), float(lip_v))

    return ValidationReport(C.tag, n, float(grounded), float(margins), two_increasing, lipschitz)


@dataclass(frozen=True)
class Checkerboard:
    """Piecewise-uniform copula given by an n x n grid of cell masses.

    ``mass[i, j]`` is the probability carried by the cell
    [i/n, (i+1)/n] x [j/n, (j+1)/n]; every row and column sums to 1/n so the
    margins are uniform.  The induced cumulative function is bilinear inside
    each cell.
    """

    mass: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.mass, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
            raise ValueError("mass grid must be a nonempty square matrix")
        object.__setattr__(self, "mass", m)
        n = m.shape[0]
        if m.min() < -_NEG_MASS_TOL:
            raise ValueError(f"negative cell mass {m.min():.3e} below tolerance")
        row = np.abs(m.sum(axis=1) - 1.0 / n).max()
        col = np.abs(m.sum(axis=0) - 1.0 / n).max()
        if max(row, col) > 1e-12:
            raise ValueError(f"margins deviate from uniform by {max(row, col):.3e}")

    @property
    def n(self) -> int:
        return self.mass.shape[0]

    @cached_property
    def _cum(self) -> np.ndarray:
        c = np.zeros((self.n + 1, self.n + 1))
        c[1:, 1:] = self.mass.cumsum(axis=0).cumsum(axis=1)
        return c

    def cdf(self, u, v):
        """Cumulative function, bilinear inside each cell."""
        n = self.n
        x = np.asarray(u, dtype=float) * n
        y = np.asarray(v, dtype=float) * n
        i = np.clip(np.floor(x).astype(int), 0, n - 1)
        j = np.clip(np.floor(y).astype(int), 0, n - 1)
        fx = x - i
        fy = y - j
        c = self._cum
        c00 = c[i, j]
        c10 = c[i + 1, j]
        c01 = c[i, j + 1]
        c11 = c[i + 1, j + 1]
        out = (
            c00 * (1 - fx) * (1 - fy)
            + c10 * fx * (1 - fy)
            + c01 * (1 - fx) * fy
            + c11 * fx * fy
        )
        return out

    def as_copula(self) -> Copula:
        return Copula(f"checkerboard({self.n})", self.cdf, "checkerboard", self)

    # ------------------------------------------------------------------
    # Serialization: header line with n, then n rows of n masses.  Row
    # index runs over u-cells ascending.
    # ------------------------------------------------------------------

    def write_csv(self, stream) -> None:
        stream.write(f"{self.n}\n")
        for row in self.mass:
            stream.write(",".join(f"{x:.17g}" for x in row) + "\n")

    def to_csv(self, path) -> None:
        with open(path, "w", encoding="ascii") as fh:
            self.write_csv(fh)

    @classmethod
    def read_csv(cls, stream) -> "Checkerboard":
        header = stream.readline().strip()
        n = int(header)
        rows = [
            [float(tok) for tok in stream.readline().split(",")]
            for _ in range(n)
        ]
        mass = np.array(rows, dtype=float)
        if mass.shape != (n, n):
            raise ValueError("checkerboard CSV body does not match header size")
        return cls(mass)

    @classmethod
    def from_csv(cls, path) -> "Checkerboard":
        with open(path, "r", encoding="ascii") as fh:
            return cls.read_csv(fh)


def to_checkerboard(C: Copula, n: int) -> Checkerboard:
    """Discretize ``C`` to the n x n checkerboard with the same cell volumes.

    Cell masses come from inclusion-exclusion of the cumulative function on
    the cell corners, which is exact.  Raises if some cell volume is negative
    beyond round-off, i.e. if ``C`` is not 2-increasing.
    """
    if n < 1:
        raise ValueError("checkerboard order must be at least 1")
    _, uu, vv = _corner_grid(n)
    g = np.asarray(C.fn(uu, vv), dtype=float)
    cell = np.diff(np.diff(g, axis=0), axis=1)
    if cell.min() < -_NEG_MASS_TOL:
        raise ValueError(
            f"{C.tag} violates 2-increasingness: cell volume {cell.min():.3e}"
        )
    return Checkerboard(cell)
