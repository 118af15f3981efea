"""Family descriptors, the registry and the generic ratio dispatcher."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from ..bounds import (
    Enclosure,
    Kind,
    Side,
    SolutionClass,
    first_pk_bound,
    second_pk_bound_minimal,
)
from ..errors import DomainError, ValidityError
from ..refine import (
    DEFAULT_DEPTH,
    DEFAULT_REL_TOL,
    EnclosureSequence,
    dominant_sequence,
    refine_enclosure,
    ttrr_step_up,
)
from ..system import CoefficientSystem

Params = dict
Check = Callable[[Params, float, float], "tuple[bool, str]"]


@dataclass(frozen=True)
class Validity:
    """A theorem's validity region: a predicate on (params, x)."""

    tag: str
    text: str
    predicate: Callable[[Params, float], bool]


@dataclass(frozen=True)
class TuranSpec:
    """Turán quantity of a family in terms of its natural ratios ``r``.

    ``offset`` +1 means ``r_n / r_{n+1}`` (i.e. ``y_n^2 / (y_{n-1} y_{n+1})``);
    -1 means ``r_n / r_{n-1}``.  ``uniform`` returns parameter-only
    constants ``(l, u)`` (either may be None), ``chain`` the list of printed
    inequalities as ``(text, applicable, holds)`` triples.
    """

    offset: int
    label: str
    uniform: Callable[[Params], tuple] = lambda p: (None, None)
    chain: Callable[[Params, float], list] = lambda p, t: []


@dataclass(frozen=True)
class FamilyDescriptor:
    """A special-function family seen through a difference-differential system.

    ``system(params)`` builds the coefficient system, ``index(params)`` maps
    the user parameters to the system index and ``at_index(params, k)`` gives
    the parameters of the member with index k.  ``pk1(params, k, x)`` is the
    initial-condition hypothesis under which the first bound holds at index k;
    the dispatcher derives every other validity range from it.  The natural
    ratio is ``scale(params) * |h_n|``.
    """

    name: str
    params: tuple
    system: Callable[[Params], CoefficientSystem]
    index: Callable[[Params], float]
    at_index: Callable[[Params, float], Params]
    solution_class: Optional[SolutionClass]
    increasing: bool
    pk1: Check
    ratio_label: str
    normalization: str = ""
    validity: tuple = ()
    scale: Callable[[Params], float] = lambda p: 1.0
    turan: Optional[TuranSpec] = None
    domain: Callable[[Params, float], "tuple[bool, str]"] = lambda p, x: (True, "")
    sample: Optional[Params] = None
    sample_x: tuple = (0.1, 10.0)
    kind_note: str = ""

    def check_params(self, params: Params) -> Params:
        missing = [p for p in self.params if p not in params]
        if missing:
            raise ValidityError(f"{self.name}: missing parameter(s) {', '.join(missing)}")
        return {k: float(params[k]) for k in self.params}

    def hypothesis(self, params: Params):
        return lambda k, x: self.pk1(params, k, x)


_REGISTRY: dict = {}


def register(fam: FamilyDescriptor) -> FamilyDescriptor:
    """Add a descriptor after checking coefficient sign constancy.

    The signs of ``d`` and ``e`` are sampled at 256 points of the sample x
    range.  A system with ``d, e < 0`` is replaced by the one for
    ``(y_n, -y_(n-1))``; families without a solution class (real-axis
    polynomials) may have ``d e < 0``.
    """
    if fam.sample is not None:
        xs = np.linspace(fam.sample_x[0], fam.sample_x[1], 256)
        sd, se = fam.system(fam.sample).sign_pattern(fam.index(fam.sample), xs)
        if sd < 0 and se < 0:
            build = fam.system
            fam = replace(fam, system=lambda p: build(p).negated())
        elif fam.solution_class is not None and (sd, se) != (1, 1):
            raise DomainError(f"{fam.name}: d and e must share a sign for ratio enclosures")
    _REGISTRY[fam.name] = fam
    return fam


def get_family(name: str) -> FamilyDescriptor:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown family {name!r}; known: {', '.join(sorted(_REGISTRY))}") from None


def family_names() -> list:
    return sorted(_REGISTRY)


# --- dispatch --------------------------------------------------------------


def side_validity(fam: FamilyDescriptor, params: Params, x: float) -> dict:
    """Which sides of the Perron-Kreuser enclosure hold at (params, x).

    The first bound needs the hypothesis at n; the second one needs it at
    n+1 (minimal) or n-1 (dominant).
    """
    n = fam.index(params)
    first_ok, first_why = fam.pk1(params, n, x)
    shift = 1 if fam.solution_class.kind is Kind.MINIMAL else -1
    second_ok, second_why = fam.pk1(params, n + shift, x)
    first_side = Side.UPPER if fam.increasing else Side.LOWER
    return {
        first_side: (first_ok, first_why),
        first_side.flipped(): (second_ok, second_why),
    }


def _scaled(seq: EnclosureSequence, scale: float, target: str) -> EnclosureSequence:
    out = EnclosureSequence(converged=seq.converged, final_width_rel=seq.final_width_rel, note=seq.note)
    for enc in seq.enclosures:
        out.enclosures.append(Enclosure(enc.lower * scale, enc.upper * scale, target, enc.provenance))
    return out


def pk_ratio_enclosure(
    fam: FamilyDescriptor,
    params: Params,
    x: float,
    depth: int = 0,
    rel_tol: float = DEFAULT_REL_TOL,
) -> EnclosureSequence:
    """Enclosures for a family built on the Perron-Kreuser machinery."""
    params = fam.check_params(params)
    ok, why = fam.domain(params, x)
    if not ok:
        raise ValidityError(f"{fam.name}: {why}", why)
    sys = fam.system(params)
    n = fam.index(params)
    cls = fam.solution_class
    hyp = fam.hypothesis(params)
    target = fam.ratio_label
    sides = side_validity(fam, params, x)
    upper_ok, upper_why = sides[Side.UPPER]
    lower_ok, lower_why = sides[Side.LOWER]
    if not (upper_ok or lower_ok):
        why = f"upper: {upper_why}; lower: {lower_why}"
        raise ValidityError(f"{fam.name}: no bound applies at {params}, x={x:g} ({why})", why)

    if upper_ok and lower_ok:
        if cls.kind is Kind.MINIMAL:
            seq = refine_enclosure(sys, n, x, cls, depth, rel_tol, fam.increasing, hyp)
        else:
            seq = dominant_sequence(sys, n, x, cls, depth, fam.increasing, hyp)
        return _scaled(seq, fam.scale(params), target)

    if depth > 0:
        missing = Side.LOWER if upper_ok else Side.UPPER
        why = lower_why if upper_ok else upper_why
        raise ValidityError(
            f"{fam.name}: only one side holds ({missing.value} fails: {why}); use depth 0", why
        )
    first = first_pk_bound(sys, n, x, cls, fam.increasing)
    if first.side is Side.UPPER and upper_ok or first.side is Side.LOWER and lower_ok:
        bound = first
    elif cls.kind is Kind.DOMINANT:
        bound = ttrr_step_up(sys, n, x, first_pk_bound(sys, n - 1, x, cls, fam.increasing), cls)
    else:
        bound = second_pk_bound_minimal(sys, n, x, cls, fam.increasing)
    lo, hi = (0.0, bound.value) if bound.side is Side.UPPER else (bound.value, math.inf)
    seq = EnclosureSequence(note=f"one-sided ({bound.side.value} only)")
    seq.enclosures.append(Enclosure(lo, hi, target, bound.provenance))
    seq.final_width_rel = seq.enclosures[0].rel_width
    return _scaled(seq, fam.scale(params), target)


# families whose enclosures come from a dedicated routine
_SPECIAL: dict = {}


def register_special(name: str, handler: Callable) -> None:
    _SPECIAL[name] = handler


def ratio_enclosure(
    family: str,
    params: Params,
    x: float,
    depth: int = 0,
    rel_tol: float = DEFAULT_REL_TOL,
) -> EnclosureSequence:
    """Enclosures of the family's ratio in its natural normalization.

    For minimal families the sequence is nested and refines with ``depth``;
    dominant families get one extra upward step per depth level; families
    where only one side is certified return ``[0, upper]`` or
    ``[lower, inf]`` at depth 0.
    """
    fam = get_family(family)
    if family in _SPECIAL:
        return _SPECIAL[family](fam.check_params(params), x, depth, rel_tol)
    return pk_ratio_enclosure(fam, params, x, depth, rel_tol)


__all__ = [
    "FamilyDescriptor",
    "TuranSpec",
    "Validity",
    "family_names",
    "get_family",
    "pk_ratio_enclosure",
    "ratio_enclosure",
    "register",
    "register_special",
    "side_validity",
    "DEFAULT_DEPTH",
]
