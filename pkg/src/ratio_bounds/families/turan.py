"""Turán-type reports: bound-implied intervals checked against the oracle."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath as mp

from .. import oracle
from ..bounds import SIGMA, Enclosure
from ..errors import ValidityError
from ..refine import TuranEnclosure, turan_interval
from .base import get_family, ratio_enclosure
from .catalog import laguerre_fixed_alpha_turan


@dataclass(frozen=True)
class TuranSample:
    x: float
    lower: float
    upper: float
    oracle: float
    chain: tuple
    contained: bool
    verdict: bool


@dataclass
class TuranReport:
    family: str
    params: dict
    quantity: str
    uniform: tuple
    samples: list = field(default_factory=list)

    @property
    def pointwise(self) -> list:
        return [(s.x, s.lower, s.upper) for s in self.samples]

    @property
    def all_hold(self) -> bool:
        return all(s.verdict for s in self.samples)


def _enclosure_or_open(family, params, x) -> Enclosure:
    try:
        return ratio_enclosure(family, params, x, 0).final
    except ValidityError:
        return Enclosure(0.0, math.inf, "unbounded")


def turan_bounds(family: str, params: dict, x: float) -> TuranEnclosure:
    """Bound-implied interval for the family's Turán quantity at x."""
    fam = get_family(family)
    if fam.turan is None:
        raise ValidityError(f"{family}: no Turán-type quantity registered", "family has a Turán quantity")
    params = fam.check_params(params)
    k = fam.index(params)
    other = fam.at_index(params, k + fam.turan.offset)
    enc_n = _enclosure_or_open(family, params, x)
    enc_o = _enclosure_or_open(family, other, x)
    return turan_interval(enc_n, enc_o, fam.turan.uniform(params))


def turan_oracle(family: str, params: dict, x: float) -> float:
    fam = get_family(family)
    params = fam.check_params(params)
    k = fam.index(params)
    other = fam.at_index(params, k + fam.turan.offset)
    r_n = oracle.oracle_ratio(family, params, x).exact
    r_o = oracle.oracle_ratio(family, other, x).exact
    return float(r_n / r_o)


def laguerre_fixed_alpha_product(nu: float, alpha: float, x: float) -> float:
    """``L_(nu-1)^a(-x) L_(nu+1)^a(-x) / L_nu^a(-x)^2`` from the oracle."""
    with mp.workdps(50):
        vals = [oracle.laguerre_value(nu + k, alpha, -x) for k in (-1, 0, 1)]
        return float(vals[0] * vals[2] / vals[1] ** 2)


def _laguerre_extra(params, x):
    nu, a = params["nu"], params["alpha"]
    lo, hi = laguerre_fixed_alpha_turan(nu, a)
    v = laguerre_fixed_alpha_product(nu, a, x)
    app_lo = nu > 0 and a > -1
    app_hi = nu > 0 and nu + a > 1
    return [
        ("nu/(nu+1) < L_(nu-1) L_(nu+1) / L_nu^2 (fixed alpha)", app_lo, lo < v if app_lo else None),
        ("L_(nu-1) L_(nu+1) / L_nu^2 < nu/(nu+1) (nu+alpha+1)/(nu+alpha-1)", app_hi, v < hi if app_hi else None),
    ]


def turan_check(family: str, params: dict, x_samples) -> TuranReport:
    """Evaluate the family's Turán-type chain at each sample.

    Each sample records the bound-implied interval, the oracle value, each
    printed inequality as ``(text, applicable, holds)`` and a verdict: the
    oracle value lies in the interval (slack :data:`SIGMA`) and every
    applicable inequality holds.
    """
    fam = get_family(family)
    if fam.turan is None:
        raise ValidityError(f"{family}: no Turán-type quantity registered", "family has a Turán quantity")
    params = fam.check_params(params)
    report = TuranReport(family, dict(params), fam.turan.label, fam.turan.uniform(params))
    for x in x_samples:
        x = float(x)
        enc = turan_bounds(family, params, x)
        value = turan_oracle(family, params, x)
        chain = list(fam.turan.chain(params, value))
        if family == "laguerre-neg":
            chain += _laguerre_extra(params, x)
        contained = enc.contains(value, SIGMA)
        verdict = contained and all(h for _, app, h in chain if app)
        report.samples.append(TuranSample(x, enc.lower, enc.upper, value, tuple(chain), contained, verdict))
    return report
