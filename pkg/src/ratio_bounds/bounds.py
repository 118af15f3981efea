"""One-sided Perron-Kreuser bounds on |h_n| = |y_n / y_{n-1}| and enclosures.

All functions assume a system already sign-normalised so that d, e > 0 at the
indices they touch; :class:`RegimeError` is raised otherwise.  Which side a
bound lands on is decided by the direction of the characteristic root
``lambda_n^s`` in x: the first bound is an upper bound on ``|h_n|`` when that
root increases and a lower bound when it decreases; the second bounds sit on
the opposite side.

Bounds are plain binary64 values (no outward rounding).  Consumers compare
against references with the slack :data:`SIGMA`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import (
    ClassError,
    DomainError,
    InconsistentBoundsError,
    MonotonicityError,
    RegimeError,
    ValidityError,
)
from .system import CoefficientSystem, characteristic_data

#: Relative slack used for containment and consistency checks.
SIGMA = 1e-12

Hypothesis = Callable[[float, float], "tuple[bool, str]"]


class Kind(enum.Enum):
    MINIMAL = "Minimal"
    DOMINANT = "Dominant"


class Side(enum.Enum):
    UPPER = "UpperOnAbs"
    LOWER = "LowerOnAbs"

    def flipped(self) -> "Side":
        return Side.LOWER if self is Side.UPPER else Side.UPPER


@dataclass(frozen=True)
class SolutionClass:
    """Minimal or dominant solution of the recurrence, with the sign of h_n."""

    kind: Kind
    h_sign: int

    @classmethod
    def minimal(cls, h_sign: int) -> "SolutionClass":
        return cls(Kind.MINIMAL, h_sign)

    @classmethod
    def dominant(cls, h_sign: int) -> "SolutionClass":
        return cls(Kind.DOMINANT, h_sign)


@dataclass(frozen=True)
class Bound:
    value: float
    side: Side
    provenance: str
    n: float
    x: float
    valid: bool = True
    reason: str = ""

    def __post_init__(self):
        if not self.value >= 0:
            raise ValueError(f"bound on |h| must be non-negative, got {self.value!r}")


@dataclass(frozen=True)
class Enclosure:
    lower: float
    upper: float
    target: str = ""
    provenance: str = ""

    def __post_init__(self):
        if not (0 <= self.lower <= self.upper):
            raise ValueError(f"invalid enclosure [{self.lower!r}, {self.upper!r}]")

    @property
    def width(self) -> float:
        return self.upper - self.lower

    @property
    def rel_width(self) -> float:
        mid = 0.5 * (self.upper + self.lower)
        if math.isinf(self.upper):
            return math.inf
        return self.width / mid if mid > 0 else 0.0

    def contains(self, v: float, slack: float = SIGMA) -> bool:
        return self.lower * (1 - slack) <= v <= self.upper * (1 + slack)

    def __contains__(self, v: float) -> bool:
        return self.contains(v)


@dataclass(frozen=True)
class Bracket:
    """Two-sided bracket for a signed quantity (e.g. a logarithmic derivative)."""

    lower: float
    upper: float
    target: str = ""

    def contains(self, v: float, slack: float = SIGMA) -> bool:
        tol = slack * max(abs(self.lower), abs(self.upper), 1e-300)
        return self.lower - tol <= v <= self.upper + tol


def _check_hypothesis(hypothesis: Optional[Hypothesis], n: float, x: float) -> None:
    if hypothesis is None:
        return
    ok, reason = hypothesis(n, x)
    if not ok:
        raise ValidityError(f"hypothesis fails at n={n:g}, x={x:g}: {reason}", reason)


def _positive_pair(sys: CoefficientSystem, n: float, x: float):
    """Characteristic data at n after checking d_n, e_n > 0."""
    cd = characteristic_data(sys, n, x)
    d, e = sys.d(n, x), sys.e(n, x)
    if not (d > 0 and e > 0):
        raise RegimeError(
            f"{sys.name}: need d>0, e>0 at n={n:g}, x={x:g} (got d={d:g}, e={e:g});"
            " sign-normalise the system first"
        )
    return cd


def root_increasing(sys: CoefficientSystem, n: float, x: float, s: int) -> bool:
    """Local direction of ``lambda_n^s`` at x by a central difference."""
    h = 1e-6 * max(1.0, abs(x))
    lo, hi = x - h, x + h
    if lo not in sys.x_domain:
        lo = x
    if hi not in sys.x_domain:
        hi = x
    if lo == hi:
        raise MonotonicityError(f"{sys.name}: cannot probe root direction at x={x:g}")
    r_lo = characteristic_data(sys, n, lo).root(s)
    r_hi = characteristic_data(sys, n, hi).root(s)
    if r_hi == r_lo:
        raise MonotonicityError(
            f"{sys.name}: characteristic root stationary at n={n:g}, x={x:g}"
        )
    return r_hi > r_lo


def _direction(sys, n, x, s, increasing):
    if increasing is not None:
        return increasing
    return root_increasing(sys, n, x, s)


def first_pk_values(sys: CoefficientSystem, n: float, x: float, s: int) -> tuple[float, float]:
    """Both algebraic forms of the first bound: R(-s eta + q) and R / (s eta + q)."""
    cd = _positive_pair(sys, n, x)
    q = math.sqrt(1.0 + cd.eta * cd.eta)
    return cd.R * (-s * cd.eta + q), cd.R / (s * cd.eta + q)


def first_pk_bound(
    sys: CoefficientSystem,
    n: float,
    x: float,
    cls: SolutionClass,
    increasing: Optional[bool] = None,
    hypothesis: Optional[Hypothesis] = None,
) -> Bound:
    """First Perron-Kreuser bound ``F_n^s = R_n / (s eta_n + sqrt(1 + eta_n^2))``."""
    _check_hypothesis(hypothesis, n, x)
    s = cls.h_sign
    cd = _positive_pair(sys, n, x)
    q = math.sqrt(1.0 + cd.eta * cd.eta)
    # the form without cancellation: s*eta >= 0 adds, otherwise multiply out
    if s * cd.eta >= 0:
        value = cd.R / (s * cd.eta + q)
    else:
        value = cd.R * (-s * cd.eta + q)
    up = _direction(sys, n, x, s, increasing)
    return Bound(value, Side.UPPER if up else Side.LOWER, "PK1", n, x)


def second_pk_bound_minimal(
    sys: CoefficientSystem,
    n: float,
    x: float,
    cls: SolutionClass,
    increasing: Optional[bool] = None,
    hypothesis: Optional[Hypothesis] = None,
) -> Bound:
    """Second bound for minimal solutions, built from the first bound at n+1.

    ``S_n^{s+} = D_n E_n R_n / (s(2 D_n etabar_n - eta_{n+1}) + sqrt(1 + eta_{n+1}^2))``
    with ``D_n E_n R_n`` evaluated as ``d_n / sqrt(d_{n+1} e_{n+1})`` so that
    ``e_n`` itself may vanish (e.g. the Mills ratio index).
    """
    if cls.kind is not Kind.MINIMAL:
        raise ClassError("second_pk_bound_minimal needs a minimal solution class")
    _check_hypothesis(hypothesis, n + 1, x)
    s = cls.h_sign
    sys.check_recurrence(n, x)
    cd1 = _positive_pair(sys, n + 1, x)
    a_n, d_n = sys.a(n, x), sys.d(n, x)
    if not d_n > 0:
        raise RegimeError(f"{sys.name}: need d_n > 0 at n={n:g}")
    b1, d1, e1 = sys.b(n + 1, x), sys.d(n + 1, x), sys.e(n + 1, x)
    eta_bar = (b1 - a_n) / (2.0 * math.sqrt(d_n * e1))
    if s * eta_bar < 0:
        raise ClassError(
            f"{sys.name}: s*etabar_n = {s * eta_bar:g} < 0 at n={n:g}, x={x:g}; not minimal"
        )
    D = math.sqrt(d_n / d1)
    der = d_n / math.sqrt(d1 * e1)
    den = s * (2.0 * D * eta_bar - cd1.eta) + math.sqrt(1.0 + cd1.eta ** 2)
    if not den > 0:
        raise RegimeError(f"{sys.name}: non-positive denominator in second bound at n={n:g}")
    up = _direction(sys, n + 1, x, s, increasing)
    side = Side.LOWER if up else Side.UPPER
    return Bound(der / den, side, "PK2Minimal", n, x)


def second_pk_bound_dominant(
    sys: CoefficientSystem,
    n: float,
    x: float,
    cls: SolutionClass,
    increasing: Optional[bool] = None,
    hypothesis: Optional[Hypothesis] = None,
) -> Bound:
    """Second bound for dominant solutions, built from the first bound at n-1.

    ``S_n^{s-} = D_{n-1} E_{n-1} R_n (-s(2 etabar_{n-1}/E_{n-1} - eta_{n-1}) + sqrt(1 + eta_{n-1}^2))``
    """
    if cls.kind is not Kind.DOMINANT:
        raise ClassError("second_pk_bound_dominant needs a dominant solution class")
    _check_hypothesis(hypothesis, n - 1, x)
    s = cls.h_sign
    cd_prev = _positive_pair(sys, n - 1, x)
    _positive_pair(sys, n, x)
    a_p, d_p, e_p = sys.a(n - 1, x), sys.d(n - 1, x), sys.e(n - 1, x)
    b_n, d_n, e_n = sys.b(n, x), sys.d(n, x), sys.e(n, x)
    eta_bar = (b_n - a_p) / (2.0 * math.sqrt(d_p * e_n))
    if s * eta_bar > 0:
        raise ClassError(
            f"{sys.name}: s*etabar_(n-1) = {s * eta_bar:g} > 0 at n={n:g}, x={x:g}; not dominant"
        )
    E = math.sqrt(e_p / e_n)
    D = math.sqrt(d_p / d_n)
    R = math.sqrt(d_n / e_n)
    q = math.sqrt(1.0 + cd_prev.eta ** 2)
    value = D * E * R * (-s * (2.0 * eta_bar / E - cd_prev.eta) + q)
    up = _direction(sys, n - 1, x, s, increasing)
    side = Side.LOWER if up else Side.UPPER
    return Bound(value, side, "PK2Dominant", n, x)


def enclosure_from_bounds(bounds, target: str = "", slack: float = SIGMA) -> Enclosure:
    """Combine one-sided bounds into ``[max lower, min upper]``.

    A missing side is 0 (lower) or infinity (upper).  Crossing beyond the
    relative ``slack`` raises :class:`InconsistentBoundsError`; crossing within
    it collapses the interval onto the upper value.
    """
    lowers = [b.value for b in bounds if b.side is Side.LOWER]
    uppers = [b.value for b in bounds if b.side is Side.UPPER]
    lo = max(lowers) if lowers else 0.0
    hi = min(uppers) if uppers else math.inf
    if lo > hi:
        if lo - hi > slack * max(abs(hi), 1e-300):
            raise InconsistentBoundsError(f"lower {lo!r} exceeds upper {hi!r}")
        lo = hi
    prov = "+".join(b.provenance for b in bounds)
    return Enclosure(lo, hi, target, prov)


def pk_enclosure(
    sys: CoefficientSystem,
    n: float,
    x: float,
    cls: SolutionClass,
    increasing: Optional[bool] = None,
    hypothesis: Optional[Hypothesis] = None,
) -> Enclosure:
    """Enclosure of ``|h_n(x)|`` from the first bound and the matching second bound."""
    first = first_pk_bound(sys, n, x, cls, increasing, hypothesis)
    if cls.kind is Kind.MINIMAL:
        second = second_pk_bound_minimal(sys, n, x, cls, increasing, hypothesis)
    else:
        second = second_pk_bound_dominant(sys, n, x, cls, increasing, hypothesis)
    if first.side is second.side:
        raise InconsistentBoundsError("first and second bounds landed on the same side")
    return enclosure_from_bounds([first, second], target=f"|h_n| at n={n:g}, x={x:g}")


def lg_separator(sys: CoefficientSystem, n: float, x: float, s: int) -> float:
    """``s (a_n + b_n)/2 + sqrt(d_n e_n) sqrt(1 + eta_n^2)``.

    The square-root term is evaluated as ``sqrt(d e + ((b - a)/2)^2)``, which
    stays finite when ``e_n`` vanishes.
    """
    sys.check_recurrence(n, x)
    a, b, d, e = sys.coefficients(n, x)
    de = d * e
    if de < 0:
        raise RegimeError(f"{sys.name}: d*e < 0 at n={n:g}, x={x:g}")
    half = 0.5 * (b - a)
    return s * 0.5 * (a + b) + math.sqrt(de + half * half)


def lg_logderiv_bounds(
    sys: CoefficientSystem,
    n: float,
    x: float,
    cls: SolutionClass,
    increasing: Optional[bool] = None,
) -> tuple[Bracket, Bracket]:
    """Brackets for ``y'_{n-1}/y_{n-1}`` and ``y'_n/y_n``.

    With ``M_k`` the separator at index k, an increasing root gives
    ``s y'_{k-1}/y_{k-1} < M_k < s y'_k/y_k``; a decreasing root reverses it.
    Indices outside the recurrence domain leave the corresponding end open
    (infinite).
    """
    s = cls.h_sign
    _positive_pair(sys, n, x)
    up = _direction(sys, n, x, s, increasing)

    def sep(k):
        try:
            return lg_separator(sys, k, x, s)
        except (DomainError, RegimeError):
            return None

    m_prev, m_n, m_next = sep(n - 1), sep(n), sep(n + 1)

    def bracket(m_lo_idx, m_hi_idx, target):
        # s*y'/y lies between the separators; orientation set by the root direction
        lo, hi = (m_lo_idx, m_hi_idx) if up else (m_hi_idx, m_lo_idx)
        lo = -math.inf if lo is None else lo
        hi = math.inf if hi is None else hi
        if s > 0:
            return Bracket(lo, hi, target)
        return Bracket(-hi, -lo, target)

    return (
        bracket(m_prev, m_n, f"y'_(n-1)/y_(n-1) at n={n:g}"),
        bracket(m_n, m_next, f"y'_n/y_n at n={n:g}"),
    )
