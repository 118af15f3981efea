"""Refinement of enclosures through the three-term recurrence.

Written for |h_n| with h_n = s |h_n|, the recurrence reads

    |h_n| = d_n / (s (b_{n+1} - a_n) + e_{n+1} |h_{n+1}|)                 (down)
    |h_n| = -s (b_n - a_{n-1}) / e_n + d_{n-1} / (e_n |h_{n-1}|)          (up)

Both maps are decreasing in their argument, so each step turns an upper bound
into a lower bound and vice versa.  Iterating downward from first bounds at
n+m gives, for minimal solutions, alternating bounds that close in on |h_n|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .bounds import (
    SIGMA,
    Bound,
    Enclosure,
    Hypothesis,
    Kind,
    Side,
    SolutionClass,
    enclosure_from_bounds,
    first_pk_bound,
    pk_enclosure,
    second_pk_bound_minimal,
)
from .errors import ClassError, DenominatorSignError, ZeroDivisorError
from .system import CoefficientSystem

DEFAULT_DEPTH = 16
DEFAULT_REL_TOL = 1e-12
MAX_DEPTH = 64
#: Width ratio above which a step counts as stalled.
STALL_RATIO = 0.99
STALL_STEPS = 3


@dataclass
class EnclosureSequence:
    enclosures: list = field(default_factory=list)
    converged: bool = False
    final_width_rel: float = math.inf
    note: str = ""

    def __len__(self):
        return len(self.enclosures)

    def __getitem__(self, i):
        return self.enclosures[i]

    @property
    def final(self) -> Enclosure:
        return self.enclosures[-1]


def _iter_depth(prov: str) -> int:
    if prov.startswith("Iterated("):
        return int(prov[len("Iterated("):-1])
    return 0


def ttrr_step_down(
    sys: CoefficientSystem, n: float, x: float, bound_at_next: Bound, cls: SolutionClass
) -> Bound:
    """Bound on |h_n| from a bound on |h_{n+1}| (side flips)."""
    if cls.kind is not Kind.MINIMAL:
        raise ClassError("downward iteration is for minimal solutions")
    sys.check_recurrence(n, x)
    s = cls.h_sign
    d_n = sys.d(n, x)
    den = s * (sys.b(n + 1, x) - sys.a(n, x)) + sys.e(n + 1, x) * bound_at_next.value
    if not den > 0 or not d_n > 0:
        raise DenominatorSignError(
            f"{sys.name}: denominator {den:g} (d_n={d_n:g}) at n={n:g}, x={x:g}"
        )
    depth = _iter_depth(bound_at_next.provenance) + 1
    return Bound(d_n / den, bound_at_next.side.flipped(), f"Iterated({depth})", n, x)


def ttrr_step_up(
    sys: CoefficientSystem, n: float, x: float, bound_at_prev: Bound, cls: SolutionClass
) -> Bound:
    """Bound on |h_n| from a bound on |h_{n-1}| (side flips).

    The resulting sequence is not convergent; it is used for one-shot
    improvements of dominant solutions.
    """
    sys.check_recurrence(n - 1, x)
    sys.check(n - 1, x)
    s = cls.h_sign
    e_n = sys.e(n, x)
    d_p = sys.d(n - 1, x)
    if not (e_n > 0 and d_p > 0):
        raise DenominatorSignError(f"{sys.name}: need d_(n-1), e_n > 0 at n={n:g}")
    v = bound_at_prev.value
    tail = math.inf if v == 0 else d_p / (e_n * v)
    value = -s * (sys.b(n, x) - sys.a(n - 1, x)) / e_n + tail
    if value < 0:
        # an upper bound that went negative cannot be honest; a lower one is vacuous
        if bound_at_prev.side is Side.LOWER:
            raise DenominatorSignError(f"{sys.name}: negative upper bound at n={n:g}")
        value = 0.0
    depth = _iter_depth(bound_at_prev.provenance) + 1
    return Bound(value, bound_at_prev.side.flipped(), f"Iterated({depth})", n, x)


def _chain_minimal(sys, n, x, cls, m, increasing, hypothesis):
    """Bound on |h_n| obtained from the second bound at n+m-1 stepped down m-1 times."""
    b = second_pk_bound_minimal(sys, n + m - 1, x, cls, increasing, hypothesis)
    for k in range(m - 2, -1, -1):
        b = ttrr_step_down(sys, n + k, x, b, cls)
    return b


def refine_enclosure(
    sys: CoefficientSystem,
    n: float,
    x: float,
    cls: SolutionClass,
    depth: int = DEFAULT_DEPTH,
    rel_tol: float = DEFAULT_REL_TOL,
    increasing: Optional[bool] = None,
    hypothesis: Optional[Hypothesis] = None,
) -> EnclosureSequence:
    """Nested enclosures of |h_n(x)| for a minimal solution.

    Depth m pairs the bounds obtained from the indices n+m and n+m+1; depth 0
    is :func:`~ratio_bounds.bounds.pk_enclosure`.  Stops early once the
    relative width drops below ``rel_tol``; if widths stall (ratio above
    0.99 three times running) the sequence stops and is flagged unconverged.
    """
    if cls.kind is not Kind.MINIMAL:
        raise ClassError("refinement is only convergent for minimal solutions")
    if depth < 0 or depth > MAX_DEPTH:
        raise ValueError(f"depth must lie in [0, {MAX_DEPTH}]")
    seq = EnclosureSequence()
    target = f"|h_n| at n={n:g}, x={x:g}"
    first = first_pk_bound(sys, n, x, cls, increasing, hypothesis)
    prev_bound = first
    stalls = 0
    prev_width = None
    for m in range(depth + 1):
        if m == 0:
            enc = pk_enclosure(sys, n, x, cls, increasing, hypothesis)
            nxt = _chain_minimal(sys, n, x, cls, 1, increasing, hypothesis)
        else:
            nxt = _chain_minimal(sys, n, x, cls, m + 1, increasing, hypothesis)
            enc = enclosure_from_bounds([prev_bound, nxt], target)
            enc = Enclosure(enc.lower, enc.upper, target, f"depth {m}")
        seq.enclosures.append(enc)
        prev_bound = nxt
        rel = enc.rel_width
        seq.final_width_rel = rel
        if rel < rel_tol:
            seq.converged = True
            break
        if prev_width is not None and prev_width > 0:
            stalls = stalls + 1 if enc.width / prev_width > STALL_RATIO else 0
            if stalls >= STALL_STEPS:
                seq.note = "widths stalled"
                break
        prev_width = enc.width
    return seq


def dominant_sequence(
    sys: CoefficientSystem,
    n: float,
    x: float,
    cls: SolutionClass,
    depth: int = 0,
    increasing: Optional[bool] = None,
    hypothesis: Optional[Hypothesis] = None,
) -> EnclosureSequence:
    """Enclosures of |h_n| for a dominant solution by upward iteration.

    Depth m pairs the first bound at n-m and at n-m-1, each carried up to n.
    Not claimed convergent; every index used must satisfy ``hypothesis``.
    """
    if cls.kind is not Kind.DOMINANT:
        raise ClassError("upward iteration is meant for dominant solutions")
    if depth < 0 or depth > MAX_DEPTH:
        raise ValueError(f"depth must lie in [0, {MAX_DEPTH}]")
    target = f"|h_n| at n={n:g}, x={x:g}"

    def carried(m):
        b = first_pk_bound(sys, n - m, x, cls, increasing, hypothesis)
        if m:
            b = Bound(b.value, b.side, "PK1", n - m, x)
        for k in range(m - 1, -1, -1):
            b = ttrr_step_up(sys, n - k, x, b, cls)
        if m == 1:
            b = Bound(b.value, b.side, "PK2Dominant", n, x)
        return b

    seq = EnclosureSequence(note="dominant: not a convergent sequence")
    prev = carried(0)
    for m in range(depth + 1):
        nxt = carried(m + 1)
        enc = enclosure_from_bounds([prev, nxt], target)
        seq.enclosures.append(Enclosure(enc.lower, enc.upper, target, enc.provenance))
        seq.final_width_rel = enc.rel_width
        prev = nxt
    return seq


def cf_evaluate_with_tail(partial_numerators, partial_denominators, tail: float) -> float:
    """Evaluate ``a1/(b1 + a2/(b2 + ... ak/(bk + tail)))`` backwards.

    An empty fraction returns ``tail``.
    """
    if len(partial_numerators) != len(partial_denominators):
        raise ValueError("numerator and denominator lists differ in length")
    v = tail
    for k in range(len(partial_numerators) - 1, -1, -1):
        den = partial_denominators[k] + v
        if den == 0:
            raise ZeroDivisorError(f"zero denominator at level {k + 1}")
        v = partial_numerators[k] / den
    return v


@dataclass(frozen=True)
class TuranEnclosure:
    """Enclosure of ``y_n^2 / (y_{n-1} y_{n+1}) = h_n / h_{n+1}``."""

    lower: float
    upper: float
    uniform_lower: Optional[float] = None
    uniform_upper: Optional[float] = None

    def contains(self, v: float, slack: float = SIGMA) -> bool:
        return self.lower * (1 - slack) <= v <= self.upper * (1 + slack)


def turan_interval(enc_n: Enclosure, enc_next: Enclosure, uniform=None) -> TuranEnclosure:
    """``[lower(n)/upper(n+1), upper(n)/lower(n+1)]``."""
    lo = enc_n.lower / enc_next.upper if enc_next.upper > 0 else math.inf
    hi = enc_n.upper / enc_next.lower if enc_next.lower > 0 else math.inf
    if math.isinf(enc_next.upper):
        lo = 0.0
    ul, uu = uniform if uniform else (None, None)
    return TuranEnclosure(lo, hi, ul, uu)


def turan_enclosure(
    sys: CoefficientSystem,
    n: float,
    x: float,
    cls: SolutionClass,
    increasing: Optional[bool] = None,
    hypothesis: Optional[Hypothesis] = None,
    uniform=None,
) -> TuranEnclosure:
    """Turán-type enclosure from the Perron-Kreuser enclosures at n and n+1."""
    enc_n = pk_enclosure(sys, n, x, cls, increasing, hypothesis)
    enc_next = pk_enclosure(sys, n + 1, x, cls, increasing, hypothesis)
    return turan_interval(enc_n, enc_next, uniform)


__all__ = [
    "EnclosureSequence",
    "TuranEnclosure",
    "cf_evaluate_with_tail",
    "dominant_sequence",
    "refine_enclosure",
    "ttrr_step_down",
    "ttrr_step_up",
    "turan_enclosure",
    "turan_interval",
    "SIGMA",
]
