"""First-order difference-differential systems and their characteristic roots.

A system couples two neighbouring members of a family,

    y_n'(x)     = a_n(x) y_n(x)     + d_n(x) y_{n-1}(x)
    y_{n-1}'(x) = b_n(x) y_{n-1}(x) + e_n(x) y_n(x)

so that the ratio h_n = y_n / y_{n-1} obeys the Riccati equation
h' = d - (b - a) h - e h**2, and the members obey the three-term recurrence

    e_{n+1} y_{n+1} + (b_{n+1} - a_n) y_n - d_n y_{n-1} = 0.

Everything here is a pure function of its inputs.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import ComplexRootsError, DomainError

Coefficient = Callable[[float, float], float]

EPS = np.finfo(float).eps
#: Relative residual tolerance for the characteristic quadratics.
TAU = 8 * EPS


@dataclass(frozen=True)
class Interval:
    """A real interval; either end may be infinite or open."""

    lo: float = -math.inf
    hi: float = math.inf
    lo_open: bool = False
    hi_open: bool = False

    def __contains__(self, v: float) -> bool:
        if math.isnan(v):
            return False
        if self.lo_open:
            if not v > self.lo:
                return False
        elif v < self.lo:
            return False
        if self.hi_open:
            return v < self.hi
        return v <= self.hi

    def __str__(self):
        left = "(" if self.lo_open or math.isinf(self.lo) else "["
        right = ")" if self.hi_open or math.isinf(self.hi) else "]"
        return f"{left}{self.lo:g}, {self.hi:g}{right}"

    @classmethod
    def open(cls, lo=-math.inf, hi=math.inf):
        return cls(lo, hi, True, True)


REALS = Interval()


@dataclass(frozen=True)
class CoefficientSystem:
    """Coefficient evaluators ``a, b, d, e`` of a difference-differential system.

    ``index_domain`` is where the system holds with ``d, e != 0``.
    ``recurrence_domain`` is the (possibly wider) set of indices ``n`` at which
    the three-term recurrence linking ``n-1, n, n+1`` may be used; it only
    needs ``a_n`` and ``d_n`` to be meaningful.
    """

    a: Coefficient
    b: Coefficient
    d: Coefficient
    e: Coefficient
    index_domain: Interval = REALS
    x_domain: Interval = REALS
    name: str = "system"
    recurrence_domain: Interval | None = None

    def contains(self, n: float, x: float) -> bool:
        return n in self.index_domain and x in self.x_domain

    def check(self, n: float, x: float) -> None:
        if n not in self.index_domain:
            raise DomainError(f"{self.name}: index n={n:g} outside {self.index_domain}")
        if x not in self.x_domain:
            raise DomainError(f"{self.name}: x={x:g} outside {self.x_domain}")

    def check_recurrence(self, n: float, x: float) -> None:
        dom = self.recurrence_domain or self.index_domain
        if n not in dom:
            raise DomainError(f"{self.name}: recurrence index n={n:g} outside {dom}")
        if x not in self.x_domain:
            raise DomainError(f"{self.name}: x={x:g} outside {self.x_domain}")

    def coefficients(self, n: float, x: float) -> tuple[float, float, float, float]:
        return self.a(n, x), self.b(n, x), self.d(n, x), self.e(n, x)

    def negated(self) -> "CoefficientSystem":
        """System for (y_n, -y_{n-1}): flips the signs of ``d`` and ``e``."""
        d, e = self.d, self.e
        return CoefficientSystem(
            self.a, self.b,
            lambda n, x: -d(n, x), lambda n, x: -e(n, x),
            self.index_domain, self.x_domain, self.name, self.recurrence_domain,
        )

    def sign_pattern(self, n: float, xs) -> tuple[int, int]:
        """Constant signs of (d, e) over the sample points ``xs``.

        Raises :class:`DomainError` if either coefficient vanishes or changes sign.
        """
        ds = np.sign([self.d(n, float(x)) for x in xs])
        es = np.sign([self.e(n, float(x)) for x in xs])
        for label, sg in (("d", ds), ("e", es)):
            if np.any(sg == 0) or np.any(sg != sg[0]):
                raise DomainError(f"{self.name}: sign of {label}_n not constant for n={n:g}")
        return int(ds[0]), int(es[0])

    def normalized(self, n: float, xs) -> "CoefficientSystem":
        """Return a system with ``d, e > 0`` on ``xs`` when ``d, e`` share a sign."""
        sd, se = self.sign_pattern(n, xs)
        if sd < 0 and se < 0:
            return self.negated()
        return self


class Regime(enum.Enum):
    POSITIVE_PRODUCT = "PositiveProduct"
    NEGATIVE_MONOTONIC = "NegativeMonotonic"
    OSCILLATORY = "Oscillatory"


class Direction(enum.Enum):
    INCREASING = "Increasing"
    DECREASING = "Decreasing"
    NOT_MONOTONIC = "NotMonotonic"


@dataclass(frozen=True)
class CharacteristicData:
    """Riccati characteristic data at (n, x).

    ``lambda_plus >= lambda_minus`` always; when ``d, e > 0`` this coincides
    with the sign labels (``lambda_plus > 0 > lambda_minus``).
    """

    n: float
    x: float
    eta: float
    R: float
    s_product: int
    lambda_minus: float
    lambda_plus: float

    def root(self, sign: int) -> float:
        """The root carrying sign ``sign`` (only meaningful when d*e > 0)."""
        return self.lambda_plus if sign > 0 else self.lambda_minus


@dataclass(frozen=True)
class RecurrenceData:
    n: float
    x: float
    eta_bar: float
    E: float
    D: float
    lambda_bar_minus: float
    lambda_bar_plus: float

    def root(self, sign: int) -> float:
        return self.lambda_bar_plus if sign > 0 else self.lambda_bar_minus


def _sign(v: float) -> int:
    return 1 if v > 0 else (-1 if v < 0 else 0)


def stable_roots(eta: float, R: float, s: int, sign_e: int) -> tuple[float, float]:
    """Roots ``sign_e * R * (-eta +- sqrt(eta**2 + s))`` without cancellation.

    The larger-magnitude root is formed by adding like-signed terms; the other
    follows from the product ``-s * R**2``.  Returned in increasing order.
    """
    disc = eta * eta + s
    if disc < 0:
        raise ComplexRootsError(f"eta**2 + s = {disc:g} < 0")
    q = math.sqrt(disc)
    sg = 1.0 if eta >= 0 else -1.0
    mag = abs(eta) + q
    big = -sign_e * sg * R * mag
    if mag == 0.0:
        small = 0.0 if s == 0 else sign_e * R * math.sqrt(abs(s))
    else:
        small = sign_e * s * sg * R / mag
    return (big, small) if big <= small else (small, big)


def naive_roots(eta: float, R: float, s: int, sign_e: int) -> tuple[float, float]:
    """The textbook difference form of :func:`stable_roots` (for cross-checks)."""
    q = math.sqrt(eta * eta + s)
    r1 = sign_e * R * (-eta + q)
    r2 = sign_e * R * (-eta - q)
    return (min(r1, r2), max(r1, r2))


def quadratic_residual(e: float, bma: float, d: float, lam: float) -> tuple[float, float]:
    """Residual of ``e*lam**2 + bma*lam - d`` and its natural scale."""
    res = e * lam * lam + bma * lam - d
    scale = abs(e) * lam * lam + abs(bma) * abs(lam) + abs(d)
    return res, scale


def _quadratic(e: float, bma: float, d: float) -> tuple[float, float, float, float, int]:
    """eta, R, roots for ``e*lam**2 + bma*lam - d = 0`` (d, e nonzero)."""
    de = d * e
    if de == 0:
        raise DomainError("d*e vanishes")
    s = _sign(de)
    eta = bma / (2.0 * math.sqrt(abs(de)))
    R = math.sqrt(abs(d / e))
    lo, hi = stable_roots(eta, R, s, _sign(e))
    return eta, R, lo, hi, s


def characteristic_data(sys: CoefficientSystem, n: float, x: float) -> CharacteristicData:
    """Riccati characteristic roots of ``sys`` at ``(n, x)``.

    Raises
    ------
    DomainError
        ``(n, x)`` outside the system's domain.
    ComplexRootsError
        ``d*e < 0`` and ``eta**2 < 1``.
    """
    sys.check(n, x)
    a, b, d, e = sys.coefficients(n, x)
    if d == 0 or e == 0:
        raise DomainError(f"{sys.name}: d or e vanishes at n={n:g}, x={x:g}")
    s = _sign(d * e)
    eta = (b - a) / (2.0 * math.sqrt(abs(d * e)))
    if s < 0 and eta * eta < 1:
        raise ComplexRootsError(
            f"{sys.name}: oscillatory point n={n:g}, x={x:g} (d*e<0, eta**2={eta * eta:g}<1)"
        )
    eta, R, lo, hi, s = _quadratic(e, b - a, d)
    return CharacteristicData(n, x, eta, R, s, lo, hi)


def recurrence_data(sys: CoefficientSystem, n: float, x: float) -> RecurrenceData:
    """Roots of ``e_{n+1} l**2 + (b_{n+1} - a_n) l - d_n = 0`` and the scalings E, D."""
    sys.check_recurrence(n, x)
    sys.check(n + 1, x)
    a_n, d_n = sys.a(n, x), sys.d(n, x)
    b1, d1, e1 = sys.b(n + 1, x), sys.d(n + 1, x), sys.e(n + 1, x)
    e_n = sys.e(n, x)
    eta_bar, _, lo, hi, s = _quadratic(e1, b1 - a_n, d_n)
    if s < 0 and eta_bar * eta_bar < 1:
        raise ComplexRootsError(f"{sys.name}: complex recurrence roots at n={n:g}, x={x:g}")
    E = math.sqrt(abs(e_n / e1))
    D = math.sqrt(abs(d_n / d1))
    return RecurrenceData(n, x, eta_bar, E, D, lo, hi)


def classify_regime(sys: CoefficientSystem, n: float, x: float) -> Regime:
    """Monotonic/oscillatory classification; the boundary eta**2 = 1 is oscillatory."""
    sys.check(n, x)
    a, b, d, e = sys.coefficients(n, x)
    de = d * e
    if de == 0:
        raise DomainError(f"{sys.name}: d*e vanishes at n={n:g}, x={x:g}")
    if de > 0:
        return Regime.POSITIVE_PRODUCT
    eta = (b - a) / (2.0 * math.sqrt(-de))
    if eta * eta > 1:
        return Regime.NEGATIVE_MONOTONIC
    return Regime.OSCILLATORY


@dataclass(frozen=True)
class MonotonicityReport:
    direction: Direction
    root: int
    method: str
    grid: int
    interval: tuple[float, float]
    zero_derivative: bool = False
    samples: tuple = field(default=(), repr=False)


def _direction_of(values: np.ndarray, scale: float) -> tuple[Direction, bool]:
    diffs = np.diff(values)
    tiny = 1e-13 * max(scale, 1e-300)
    if np.all(np.abs(diffs) <= tiny):
        return Direction.NOT_MONOTONIC, True
    if np.all(diffs > 0):
        return Direction.INCREASING, False
    if np.all(diffs < 0):
        return Direction.DECREASING, False
    return Direction.NOT_MONOTONIC, False


def root_monotonicity(
    sys: CoefficientSystem,
    n: float,
    interval: tuple[float, float],
    grid: int = 64,
    root: int = 1,
) -> MonotonicityReport:
    """Sampled monotonicity of the characteristic root ``lambda^root`` in x.

    When ``d*e > 0`` and ``d/e`` does not vary with x, the direction is read
    off the sign of ``-eta'``; otherwise the root itself is differenced on the
    grid.  Only numerical evidence: the grid is reported back.
    """
    lo, hi = interval
    if grid < 3:
        raise ValueError("grid must be at least 3")
    if not (lo in sys.x_domain and hi in sys.x_domain) or not lo < hi:
        raise DomainError(f"{sys.name}: interval [{lo:g}, {hi:g}] not inside {sys.x_domain}")
    xs = np.linspace(lo, hi, grid)
    data = [characteristic_data(sys, n, float(x)) for x in xs]
    ratios = np.array([sys.d(n, float(x)) / sys.e(n, float(x)) for x in xs])
    product_positive = all(c.s_product > 0 for c in data)
    const_ratio = np.all(np.abs(ratios - ratios[0]) <= 1e-12 * abs(ratios[0]))
    if product_positive and const_ratio:
        eta = np.array([c.eta for c in data])
        direction, zero = _direction_of(-eta, float(np.max(np.abs(eta))) or 1.0)
        method = "eta"
        samples = tuple(eta)
    else:
        lam = np.array([c.lambda_plus if root > 0 else c.lambda_minus for c in data])
        direction, zero = _direction_of(lam, float(np.max(np.abs(lam))) or 1.0)
        method = "finite-difference"
        samples = tuple(lam)
    return MonotonicityReport(direction, root, method, grid, (lo, hi), zero, samples)
