"""Lower bounds for Hermite and Laguerre polynomial ratios on the positive axis
and the resulting upper bounds for their largest zeros.

Here ``d e < 0``; beyond the largest zero the system is in its monotonic
regime and only lower bounds are available.  Level k starts from the
characteristic root at index n - k and climbs back to n with the
three-term recurrence, which preserves lower bounds because ``e < 0``:

    Hermite:   h_n = 2x - 2(n-1) / h_(n-1),              h_n = H_n / H_(n-1)
    Laguerre:  2n h_n = 2(x - (2n-1+alpha)) - 4(n-1)(n-1+alpha) / (2(n-1) h_(n-1)),
               h_n = -L_n^alpha / L_(n-1)^alpha
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..bounds import Enclosure
from ..errors import ConditionFailedError, ValidityError
from ..refine import EnclosureSequence
from ..system import CoefficientSystem, Interval
from .base import FamilyDescriptor, Validity, register, register_special

#: Relative tolerance when a positivity condition is exactly zero in theory.
CONDITION_TOL = 1e-12


@dataclass(frozen=True)
class RealAxisBound:
    """Lower bound on a ratio that may itself be of either sign."""

    value: float
    n: int
    x: float
    level: int
    target: str
    provenance: str = ""


@dataclass(frozen=True)
class ZeroBoundReport:
    family: str
    n: int
    alpha: float | None
    level: int
    bound: float
    condition_satisfied: bool
    condition_text: str
    condition_value: float
    notes: tuple = field(default=())


def _check_int(n, least, label):
    if not (float(n).is_integer() and n >= least):
        raise ValidityError(f"{label}: need integer n >= {least}, got {n!r}", f"integer n >= {least}")
    return int(n)


# --- Hermite ------------------------------------------------------------------


def hermite_real_system() -> CoefficientSystem:
    return CoefficientSystem(
        a=lambda n, x: 0.0,
        b=lambda n, x: 2.0 * x,
        d=lambda n, x: 2.0 * n,
        e=lambda n, x: -1.0,
        index_domain=Interval(0.0, math.inf, lo_open=True),
        name="hermite-real",
    )


def hermite_edge(n: int, level: int) -> float:
    """Left end ``sqrt(2(n - level))`` of the validity region of a level."""
    return math.sqrt(2 * (n - level))


def _hermite_level(n: int, x: float, level: int) -> float:
    if level == 0:
        return x + math.sqrt(max(x * x - 2 * n, 0.0))
    prev = _hermite_level(n - 1, x, level - 1)
    if not prev > 0:
        raise ValidityError(
            f"hermite-real: intermediate bound {prev:g} at n={n - 1} is not positive", "positive intermediate bound"
        )
    return 2 * x - 2 * (n - 1) / prev


def hermite_real_lower_bound(n: int, x: float, level: int = 0) -> RealAxisBound:
    """Lower bound on ``H_n(x)/H_(n-1)(x)`` valid for ``x >= sqrt(2(n-level))``.

    Level 0 is ``x + sqrt(x^2 - 2n)``, level 1 ``x + sqrt(x^2 - 2(n-1))`` and
    level 2 ``((n-3)x + (n-1) sqrt(x^2 - 2(n-2))) / (n-2)``.
    """
    n = _check_int(n, 1, "hermite-real")
    if level not in (0, 1, 2, 3):
        raise ValidityError(f"hermite-real: level must be 0..3, got {level!r}", "level in {0,1,2,3}")
    if n <= level:
        raise ValidityError(f"hermite-real: level {level} needs n > {level}", f"n > {level}")
    edge = hermite_edge(n, level)
    if x < edge * (1 - 1e-15):
        raise ValidityError(
            f"hermite-real: x={x:g} below sqrt(2(n-{level}))={edge:g}", f"x >= sqrt(2(n-{level}))"
        )
    x = max(x, edge)
    value = _hermite_level(n, x, level)
    return RealAxisBound(value, n, x, level, "H_n(x)/H_(n-1)(x)", f"Level({level})")


# --- Laguerre -----------------------------------------------------------------


def laguerre_real_system(alpha: float) -> CoefficientSystem:
    return CoefficientSystem(
        a=lambda n, x: n / x,
        b=lambda n, x: (x - n - alpha) / x,
        d=lambda n, x: (n + alpha) / x,
        e=lambda n, x: -n / x,
        index_domain=Interval(0.0, math.inf, lo_open=True),
        x_domain=Interval(0.0, math.inf, lo_open=True),
        name=f"laguerre-real(alpha={alpha:g})",
    )


def laguerre_edge(n: int, alpha: float, level: int) -> float:
    """``2n* + alpha + 2 sqrt(n* (n* + alpha))`` with ``n* = n - level``."""
    ns = n - level
    return 2 * ns + alpha + 2 * math.sqrt(ns * (ns + alpha))


def _laguerre_level(n: int, alpha: float, x: float, level: int) -> float:
    if level == 0:
        u = x - 2 * n - alpha
        return u + math.sqrt(max(u * u - 4 * n * (n + alpha), 0.0))
    coef = 4 * (n - 1) * (n - 1 + alpha)
    head = 2 * (x - (2 * n - 1 + alpha))
    if coef == 0:
        return head
    prev = _laguerre_level(n - 1, alpha, x, level - 1)
    if not prev > 0:
        raise ValidityError(
            f"laguerre-real: intermediate bound {prev:g} at n={n - 1} is not positive", "positive intermediate bound"
        )
    return head - coef / prev


def laguerre_real_lower_bound(n: int, alpha: float, x: float, level: int = 0) -> RealAxisBound:
    """Lower bound on ``2n h_n`` with ``h_n = -L_n^alpha(x) / L_(n-1)^alpha(x)``.

    Valid for ``x >= 2n* + alpha + 2 sqrt(n*(n*+alpha))``, ``n* = n - level``.
    Level 0 is ``x - (2n+alpha) + sqrt((x-2n-alpha)^2 - 4n(n+alpha))``; level 1
    replaces n by n* under the square root.
    """
    n = _check_int(n, 1, "laguerre-real")
    if not alpha > -1:
        raise ValidityError(f"laguerre-real: need alpha > -1, got {alpha!r}", "alpha > -1")
    if level not in (0, 1, 2):
        raise ValidityError(f"laguerre-real: level must be 0..2, got {level!r}", "level in {0,1,2}")
    if n <= level:
        raise ValidityError(f"laguerre-real: level {level} needs n > {level}", f"n > {level}")
    edge = laguerre_edge(n, alpha, level)
    if x < edge * (1 - 1e-15):
        raise ValidityError(
            f"laguerre-real: x={x:g} below the level-{level} edge {edge:g}",
            f"x >= 2n*+alpha+2sqrt(n*(n*+alpha)), n*={n - level}",
        )
    x = max(x, edge)
    value = _laguerre_level(n, alpha, x, level)
    return RealAxisBound(value, n, x, level, "2n(-L_n^alpha(x)/L_(n-1)^alpha(x))", f"Level({level})")


def laguerre_printed_xstar(n: int, alpha: float) -> float:
    """The level-1 zero bound as printed without the factor 2 on the root."""
    return 2 * n + alpha - 2 + math.sqrt((n - 1) * (n - 1 + alpha))


# --- zeros --------------------------------------------------------------------


def largest_zero_upper_bound(family: str, n: int, alpha: float | None = None, level: int = 1,
                             strict: bool = False) -> ZeroBoundReport:
    """Upper bound for the largest zero from the left edge of a level's region.

    If the level's lower bound is non-negative at that edge, the ratio stays
    positive to its right, so no zero lies beyond it.  The condition is
    evaluated numerically (with relative slack ``CONDITION_TOL``; for Hermite
    n = 7, level 3 it is exactly zero).  With ``strict=True`` a failed
    condition raises :class:`ConditionFailedError`.
    """
    notes = []
    if family == "hermite":
        n = _check_int(n, 1, "hermite")
        if level not in (0, 1, 2, 3) or n <= level:
            raise ValidityError(f"hermite zero bound: need 0 <= level <= 3 and n > level", "n > level")
        edge = hermite_edge(n, level)
        text = f"H level-{level} bound at x=sqrt(2(n-{level})) >= 0"
        try:
            value = _hermite_level(n, edge, level)
        except ValidityError as exc:
            value, notes = -math.inf, [str(exc)]
        scale = max(edge, 1.0)
        alpha = None
    elif family == "laguerre":
        n = _check_int(n, 1, "laguerre")
        if alpha is None or not alpha > -1:
            raise ValidityError("laguerre zero bound: need alpha > -1", "alpha > -1")
        if level not in (0, 1, 2) or n <= level:
            raise ValidityError("laguerre zero bound: need 0 <= level <= 2 and n > level", "n > level")
        edge = laguerre_edge(n, alpha, level)
        text = f"L level-{level} bound at x* = 2n*+alpha+2sqrt(n*(n*+alpha)) >= 0, n*={n - level}"
        try:
            value = _laguerre_level(n, alpha, edge, level)
        except ValidityError as exc:
            value, notes = -math.inf, [str(exc)]
        scale = max(edge, 1.0)
        if level == 1:
            printed = laguerre_printed_xstar(n, alpha)
            inside = printed >= edge
            notes.append(
                f"printed x* = 2n+alpha-2+sqrt((n-1)(n-1+alpha)) = {printed:.17g}"
                f" ({'inside' if inside else 'outside'} the level-1 region)"
            )
    else:
        raise ValidityError(f"unknown zero family {family!r}", "family in {hermite, laguerre}")
    ok = value >= -CONDITION_TOL * scale
    report = ZeroBoundReport(family, n, alpha, level, edge, ok, text, value, tuple(notes))
    if strict and not ok:
        raise ConditionFailedError(f"{text} fails (value {value:g})", text)
    return report


# --- registry entries ---------------------------------------------------------


def _never(p, k, x):
    return False, "real-axis family: lower bounds only"


def _real_axis_handler(kind):
    def handler(params, x, depth, rel_tol):
        level = int(depth)
        if kind == "hermite":
            b = hermite_real_lower_bound(params["n"], x, level)
            lower, label = b.value, "H_n(x)/H_(n-1)(x)"
        else:
            b = laguerre_real_lower_bound(params["n"], params["alpha"], x, level)
            lower, label = b.value / (2 * params["n"]), "-L_n^alpha(x)/L_(n-1)^alpha(x)"
        if not lower > 0:
            raise ValidityError(
                f"{kind}: level-{level} lower bound {lower:g} is not positive at x={x:g}", "positive lower bound"
            )
        seq = EnclosureSequence(note="lower bound only; depth selects the level")
        seq.enclosures.append(Enclosure(lower, math.inf, label, b.provenance))
        return seq
    return handler


HERMITE_REAL = register(FamilyDescriptor(
    name="hermite-real",
    params=("n",),
    system=lambda p: hermite_real_system(),
    index=lambda p: p["n"],
    at_index=lambda p, k: {"n": k},
    solution_class=None,
    increasing=True,
    pk1=_never,
    ratio_label="H_n(x)/H_(n-1)(x)",
    normalization="h_n = H_n(x)/H_(n-1)(x); lower bounds only",
    validity=(Validity("lower", "x >= sqrt(2(n-level))", lambda p, x: x >= math.sqrt(2 * p["n"])),),
    sample={"n": 3.0},
    sample_x=(3.0, 10.0),
))

LAGUERRE_REAL = register(FamilyDescriptor(
    name="laguerre-real",
    params=("n", "alpha"),
    system=lambda p: laguerre_real_system(p["alpha"]),
    index=lambda p: p["n"],
    at_index=lambda p, k: {"n": k, "alpha": p["alpha"]},
    solution_class=None,
    increasing=True,
    pk1=_never,
    ratio_label="-L_n^alpha(x)/L_(n-1)^alpha(x)",
    normalization="y_n = (-1)^n L_n^alpha(x); lower bounds only",
    validity=(Validity("lower", "x >= 2n*+alpha+2sqrt(n*(n*+alpha))", lambda p, x: x >= laguerre_edge(int(p["n"]), p["alpha"], 0)),),
    sample={"n": 2.0, "alpha": 1.0},
    sample_x=(10.0, 20.0),
))

register_special("hermite-real", _real_axis_handler("hermite"))
register_special("laguerre-real", _real_axis_handler("laguerre"))
