"""Mills ratio, iterated complementary error functions and parabolic
cylinder log-derivative and value-ratio bounds."""

from __future__ import annotations

import math

from ..bounds import Enclosure, SolutionClass, lg_separator
from ..errors import ValidityError
from ..refine import DEFAULT_REL_TOL, EnclosureSequence, cf_evaluate_with_tail
from .base import FamilyDescriptor, Validity, register, register_special
from .catalog import pcf_system


def mills_tail(n: int, x: float) -> float:
    """``T_n(x) = (x + sqrt(4n + x^2)) / 2``."""
    return 0.5 * (x + math.sqrt(4 * n + x * x))


def mills_cf(n: int, x: float) -> float:
    """Truncated continued fraction ``R_n(x)`` for the Mills ratio.

    ``R_n = 1/(x+ 1/(x+ 2/(x+ ... (n-1)/(x + n/T_n))))`` with ``R_0 = 1/T_0``.
    Odd n give lower bounds, even n upper bounds.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        t = mills_tail(0, x)
        return math.inf if t == 0 else 1.0 / t
    nums = [1.0] + [float(k) for k in range(1, n)]
    dens = [float(x)] * n
    return cf_evaluate_with_tail(nums, dens, n / mills_tail(n, x))


def mills_bounds(x: float, depth: int = 1, rel_tol: float = DEFAULT_REL_TOL) -> EnclosureSequence:
    """Nested enclosures ``[R_(2k-1)(x), R_(2k)(x)]`` of the Mills ratio, k = 1..depth.

    Depth 1 reproduces ``2/(x + sqrt(x^2+4)) < r(x) < 4/(3x + sqrt(x^2+8))``.
    """
    if not x >= 0:
        raise ValidityError(f"mills: need x >= 0, got {x!r}", "x >= 0")
    if depth < 1:
        raise ValidityError("mills: depth must be at least 1", "depth >= 1")
    seq = EnclosureSequence()
    for k in range(1, depth + 1):
        lo, hi = mills_cf(2 * k - 1, x), mills_cf(2 * k, x)
        enc = Enclosure(lo, hi, "Mills ratio r(x)", f"CF(R_{2 * k - 1}, R_{2 * k})")
        seq.enclosures.append(enc)
        seq.final_width_rel = enc.rel_width
        if enc.rel_width < rel_tol:
            seq.converged = True
            break
    return seq


def ierfc_M(n: float, x: float) -> float:
    """``M_n(x) = 1 / (x + sqrt(2n + x^2))``."""
    return 1.0 / (x + math.sqrt(2 * n + x * x))


def iterated_erfc_ratio_bounds(n: int, x: float) -> Enclosure:
    """``[M_(n+1)(x), M_n(x)]`` enclosing ``i^n erfc(x) / i^(n-1) erfc(x)``."""
    if not (float(n).is_integer() and n >= 1):
        raise ValidityError(f"ierfc: need integer n >= 1, got {n!r}", "integer n >= 1")
    if not x >= 0:
        raise ValidityError(f"ierfc: need x >= 0, got {x!r}", "x >= 0")
    return Enclosure(ierfc_M(n + 1, x), ierfc_M(n, x), "i^n erfc(x)/i^(n-1) erfc(x)", "PK")


def pcf_logderiv_bounds(n: float, x: float) -> Enclosure:
    """``[sqrt(x^2/4 + n - 1/2), sqrt(x^2/4 + n + 1/2)]`` enclosing ``-U'(n,x)/U(n,x)``.

    Computed from the log-derivative separators of the parabolic cylinder
    system at n and n+1; valid for every real x when n >= 1/2.
    """
    if not n >= 0.5:
        raise ValidityError(f"pcf log-derivative: need n >= 1/2, got {n!r}", "n >= 1/2")
    sys = pcf_system()
    s = SolutionClass.minimal(-1).h_sign
    lo = lg_separator(sys, n, x, s)
    hi = lg_separator(sys, n + 1, x, s)
    return Enclosure(lo, hi, "-U'(n,x)/U(n,x)", "LG")


def log_F_alpha(alpha: float, x: float) -> float:
    """``log F_alpha(x) = -(x/2) sqrt(x^2/4 + alpha) - alpha asinh(x / (2 sqrt(alpha)))``.

    This is the decaying form; the second term tends to 0 as alpha -> 0.
    """
    if alpha < 0:
        raise ValidityError(f"F_alpha needs alpha >= 0, got {alpha!r}", "alpha >= 0")
    first = 0.5 * x * math.sqrt(0.25 * x * x + alpha)
    second = alpha * math.asinh(x / (2 * math.sqrt(alpha))) if alpha > 0 else 0.0
    return -(first + second)


def F_alpha(alpha: float, x: float) -> float:
    return math.exp(log_F_alpha(alpha, x))


def pcf_value_ratio_bounds(n: float, x: float, y: float) -> Enclosure:
    """Enclosure of ``U(n,y) / U(n,x)`` for ``0 <= x <= y`` and n >= 1/2.

    Integrates the log-derivative bracket:
    ``F_(n+1/2)(y)/F_(n+1/2)(x) < U(n,y)/U(n,x) < F_(n-1/2)(y)/F_(n-1/2)(x)``.
    With x = 0 this bounds ``U(n,y)/U(n,0)``.
    """
    if not n >= 0.5:
        raise ValidityError(f"pcf value ratio: need n >= 1/2, got {n!r}", "n >= 1/2")
    if not 0 <= x <= y:
        raise ValidityError(f"pcf value ratio: need 0 <= x <= y, got x={x!r}, y={y!r}", "0 <= x <= y")
    lo = math.exp(log_F_alpha(n + 0.5, y) - log_F_alpha(n + 0.5, x))
    hi = math.exp(log_F_alpha(n - 0.5, y) - log_F_alpha(n - 0.5, x))
    return Enclosure(min(lo, hi), hi, "U(n,y)/U(n,x)", "LG integrated")


# --- registry entries ---------------------------------------------------------


def _no_pk1(p, k, x):
    return False, "closed-form family"


MILLS = register(FamilyDescriptor(
    name="mills",
    params=(),
    system=pcf_system,
    index=lambda p: 0.5,
    at_index=lambda p, k: {},
    solution_class=SolutionClass.minimal(-1),
    increasing=True,
    pk1=_no_pk1,
    ratio_label="Mills ratio r(x)",
    normalization="r(x) = U(1/2,x)/U(-1/2,x)",
    validity=(Validity("both", "x >= 0", lambda p, x: x >= 0),),
))

IERFC = register(FamilyDescriptor(
    name="ierfc",
    params=("n",),
    system=pcf_system,
    index=lambda p: p["n"] + 0.5,
    at_index=lambda p, k: {"n": k - 0.5},
    solution_class=SolutionClass.minimal(-1),
    increasing=True,
    pk1=_no_pk1,
    ratio_label="i^n erfc(x)/i^(n-1) erfc(x)",
    normalization="i^n erfc(x) proportional to exp(-x^2) U(n+1/2, x sqrt 2)",
    validity=(Validity("both", "integer n >= 1, x >= 0", lambda p, x: p["n"] >= 1 and x >= 0),),
))


def _mills_handler(params, x, depth, rel_tol):
    return mills_bounds(x, max(depth, 1), rel_tol)


def _ierfc_handler(params, x, depth, rel_tol):
    seq = EnclosureSequence(note="closed form; depth ignored")
    enc = iterated_erfc_ratio_bounds(params["n"], x)
    seq.enclosures.append(enc)
    seq.final_width_rel = enc.rel_width
    return seq


register_special("mills", _mills_handler)
register_special("ierfc", _ierfc_handler)
