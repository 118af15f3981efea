"""Registered families and their closed-form bounds.

Imaginary-argument families are stored through real sequences:

* ``g_j = (-i)^j H_j(ix)`` satisfies ``g_{j+1} = 2x g_j + 2j g_{j-1}``;
* ``p_n = (-i)^n P_n^m(ix)`` and ``q_n = (-i)^n Q_n^m(ix)`` share one system,
  with ``p_n / p_{n-1} = -i P_n^m/P_{n-1}^m > 0`` and
  ``q_n / q_{n-1} = -(i Q_n^m/Q_{n-1}^m) < 0``.

Parabolic cylinder functions use ``y_n = (-1)^n U(n, x)``, ``U(n, -x)`` and
``V(n, x) / Gamma(n + 1/2)``; Laguerre functions of negative argument use the
index ``k = nu + 1`` with ``nu + alpha`` held fixed.
"""

from __future__ import annotations

import math

from ..bounds import SolutionClass
from ..system import REALS, CoefficientSystem, Interval
from .base import FamilyDescriptor, TuranSpec, Validity, register

INF = math.inf


def _ok(cond: bool, text: str):
    return (True, "") if cond else (False, text)


def _is_int(v: float) -> bool:
    return float(v).is_integer()


# --- parabolic cylinder functions -------------------------------------------


def pcf_system(params=None) -> CoefficientSystem:
    return CoefficientSystem(
        a=lambda n, x: 0.5 * x,
        b=lambda n, x: -0.5 * x,
        d=lambda n, x: 1.0,
        e=lambda n, x: n - 0.5,
        index_domain=Interval(0.5, INF, lo_open=True),
        x_domain=REALS,
        name="pcf",
        recurrence_domain=Interval(-0.5, INF),
    )


def _pcf_u_pk1(p, k, x):
    return _ok(k > 0.5 and x >= 0, "need n > 1/2 and x >= 0")


def _pcf_v_pk1(p, k, x):
    frac = k % 2.0
    return _ok(1.0 < frac < 2.0 and x > 0, "need n in (2k-1, 2k) for integer k, and x > 0")


def _pcf_turan_chain(p, F, reflected=False):
    n = p["n"]
    scaled = (n - 0.5) / (n + 0.5) * F if n > -0.5 else math.nan
    out = []
    if n > 1.5:
        out.append(("sqrt((n-3/2)/(n+1/2)) < (n-1/2)/(n+1/2) F", True,
                    math.sqrt((n - 1.5) / (n + 0.5)) < scaled))
    else:
        out.append(("sqrt((n-3/2)/(n+1/2)) < (n-1/2)/(n+1/2) F", False, None))
    app = n > 0.5
    out.append(("(n-1/2)/(n+1/2) F < 1", app, scaled < 1 if app else None))
    out.append(("1 < F", app, F > 1 if app else None))
    # at negative argument F tends to (n+1/2)/(n-1/2), above this cap
    app_cap = app and not reflected
    cap = math.sqrt((n + 1.5) / (n - 0.5)) if app else math.nan
    out.append(("F < sqrt((n+3/2)/(n-1/2))", app_cap, F < cap if app_cap else None))
    return out


def _pcf_reflected_turan_chain(p, F):
    return _pcf_turan_chain(p, F, reflected=True)


def _pcf_reflected_turan_uniform(p):
    n = p["n"]
    if n > 0.5:
        return 1.0, (n + 0.5) / (n - 0.5)
    return None, None


def _pcf_turan_uniform(p):
    n = p["n"]
    if n > 0.5:
        return 1.0, math.sqrt((n + 1.5) / (n - 0.5))
    return None, None


PCF_TURAN = TuranSpec(+1, "U(n,x)^2 / (U(n-1,x) U(n+1,x))", _pcf_turan_uniform, _pcf_turan_chain)

PCF_U = register(FamilyDescriptor(
    name="pcf-u",
    params=("n",),
    system=pcf_system,
    index=lambda p: p["n"],
    at_index=lambda p, k: {"n": k},
    solution_class=SolutionClass.minimal(-1),
    increasing=True,
    pk1=_pcf_u_pk1,
    ratio_label="U(n,x)/U(n-1,x)",
    normalization="y_n = (-1)^n U(n,x); |h_n| = U(n,x)/U(n-1,x)",
    validity=(
        Validity("upper", "n > 1/2, x >= 0", lambda p, x: p["n"] > 0.5 and x >= 0),
        Validity("lower", "n > -1/2, x >= 0", lambda p, x: p["n"] > -0.5 and x >= 0),
    ),
    turan=PCF_TURAN,
    sample={"n": 1.0},
    sample_x=(0.0, 20.0),
))

PCF_U_REFLECTED = register(FamilyDescriptor(
    name="pcf-u-reflected",
    params=("n",),
    system=pcf_system,
    index=lambda p: p["n"],
    at_index=lambda p, k: {"n": k},
    solution_class=SolutionClass.dominant(+1),
    increasing=True,
    pk1=_pcf_u_pk1,
    ratio_label="U(n,-x)/U(n-1,-x)",
    normalization="y_n = U(n,-x)",
    validity=(
        Validity("upper", "n > 1/2, x >= 0", lambda p, x: p["n"] > 0.5 and x >= 0),
        Validity("lower", "n > 3/2, x >= 0", lambda p, x: p["n"] > 1.5 and x >= 0),
    ),
    turan=TuranSpec(+1, "U(n,-x)^2 / (U(n-1,-x) U(n+1,-x))", _pcf_reflected_turan_uniform, _pcf_reflected_turan_chain),
    sample={"n": 2.0},
    sample_x=(0.0, 20.0),
))

PCF_V = register(FamilyDescriptor(
    name="pcf-v",
    params=("n",),
    system=pcf_system,
    index=lambda p: p["n"],
    at_index=lambda p, k: {"n": k},
    solution_class=SolutionClass.dominant(+1),
    increasing=True,
    pk1=_pcf_v_pk1,
    ratio_label="V(n,x)/V(n-1,x)",
    normalization="y_n = V(n,x)/Gamma(n+1/2); V ratio = (n-1/2) |h_n|",
    validity=(
        Validity("upper", "n in (2k-1, 2k), x > 0", lambda p, x: 1 < p["n"] % 2 < 2 and x > 0),
        Validity("lower", "n in (2k, 2k+1), x > 0", lambda p, x: 0 < p["n"] % 2 < 1 and p["n"] > 2 and x > 0),
    ),
    scale=lambda p: p["n"] - 0.5,
    sample={"n": 1.5},
))


# --- Hermite polynomials of imaginary variable ------------------------------


def hermite_imag_system(params=None) -> CoefficientSystem:
    return CoefficientSystem(
        a=lambda j, x: 0.0,
        b=lambda j, x: -2.0 * x,
        d=lambda j, x: 2.0 * j,
        e=lambda j, x: 1.0,
        index_domain=Interval(0.0, INF, lo_open=True),
        x_domain=Interval(0.0, INF),
        name="hermite-imag",
    )


def _herm_imag_pk1(p, j, x):
    return _ok(_is_int(j) and j >= 1 and int(j) % 2 == 1 and x > 0, "need odd degree j >= 1 and x > 0")


def _herm_imag_turan_chain(p, T):
    n = p["n"]
    if _is_int(n) and n >= 2 and int(n) % 2 == 0:
        k = n / 2
        c = math.sqrt((k - 0.5) / (k + 0.5))
        return [("H_2k(ix)^2 / (H_2k-1(ix) H_2k+1(ix)) > sqrt((k-1/2)/(k+1/2))", True, T > c)]
    return [("H_2k(ix)^2 / (H_2k-1(ix) H_2k+1(ix)) > sqrt((k-1/2)/(k+1/2))", False, None)]


def _herm_imag_uniform(p):
    n = p["n"]
    if _is_int(n) and n >= 2 and int(n) % 2 == 0:
        k = n / 2
        return math.sqrt((k - 0.5) / (k + 0.5)), None
    return None, None


HERMITE_IMAG = register(FamilyDescriptor(
    name="hermite-imag",
    params=("n",),
    system=hermite_imag_system,
    index=lambda p: p["n"],
    at_index=lambda p, k: {"n": k},
    solution_class=SolutionClass.dominant(+1),
    increasing=True,
    pk1=_herm_imag_pk1,
    ratio_label="-i H_n(ix)/H_{n-1}(ix)",
    normalization="g_n = (-i)^n H_n(ix), real with g_(n+1) = 2x g_n + 2n g_(n-1)",
    validity=(
        Validity("upper", "n odd, x > 0", lambda p, x: _is_int(p["n"]) and int(p["n"]) % 2 == 1 and x > 0),
        Validity("lower", "n even >= 2, x > 0", lambda p, x: _is_int(p["n"]) and int(p["n"]) % 2 == 0 and p["n"] >= 2 and x > 0),
    ),
    turan=TuranSpec(+1, "H_n(ix)^2 / (H_(n-1)(ix) H_(n+1)(ix))", _herm_imag_uniform, _herm_imag_turan_chain),
    sample={"n": 3.0},
))


# --- oblate Legendre functions ------------------------------------------------


def oblate_system(params) -> CoefficientSystem:
    m = float(params["m"])
    return CoefficientSystem(
        a=lambda n, x: n * x / (1 + x * x),
        b=lambda n, x: -n * x / (1 + x * x),
        d=lambda n, x: (n + m) / (1 + x * x),
        e=lambda n, x: (n - m) / (1 + x * x),
        index_domain=Interval(max(m, -m), INF, lo_open=True),
        x_domain=Interval(0.0, INF),
        name=f"oblate(m={m:g})",
    )


def _oblate_q_pk1(p, k, x):
    m = p["m"]
    return _ok(m >= 0 and k > m and x > 0, "need real n > m >= 0 and x > 0")


def _oblate_p_pk1(p, k, x):
    m = p["m"]
    ok = _is_int(k) and _is_int(m) and m >= 0 and k > m and int(k - m) % 2 == 1 and x > 0
    return _ok(ok, "need integers n > m >= 0 with n - m odd, and x > 0")


def _oblate_q_uniform(p):
    n, m = p["n"], p["m"]
    c = (n + m) / (n + m + 1)
    return c, c * math.sqrt(((n + 2) ** 2 - m * m) / (n * n - m * m))


def _oblate_q_chain(p, T):
    n, m = p["n"], p["m"]
    scaled = (n + m + 1) / (n + m) * T
    cap = math.sqrt(((n + 2) ** 2 - m * m) / (n * n - m * m))
    return [
        ("1 < (n+m+1)/(n+m) F", True, 1 < scaled),
        ("(n+m+1)/(n+m) F < sqrt(((n+2)^2-m^2)/(n^2-m^2))", True, scaled < cap),
    ]


def _oblate_p_odd(p):
    n, m = p["n"], p["m"]
    return _is_int(n) and _is_int(m) and int(n - m) % 2 == 1


def _oblate_p_uniform(p):
    if _oblate_p_odd(p):
        return None, 1 + 1 / (p["n"] - p["m"])
    return None, None


def _oblate_p_chain(p, T):
    app = _oblate_p_odd(p)
    return [("F < 1 + 1/(n-m)", app, T < 1 + 1 / (p["n"] - p["m"]) if app else None)]


OBLATE_Q = register(FamilyDescriptor(
    name="oblate-q",
    params=("n", "m"),
    system=oblate_system,
    index=lambda p: p["n"],
    at_index=lambda p, k: {"n": k, "m": p["m"]},
    solution_class=SolutionClass.minimal(-1),
    increasing=True,
    pk1=_oblate_q_pk1,
    ratio_label="i Q_n^m(ix)/Q_{n-1}^m(ix)",
    normalization="q_n = (-i)^n Q_n^m(ix); |h_n| = i Q_n^m(ix)/Q_(n-1)^m(ix)",
    validity=(Validity("both", "real n > m >= 0, x > 0", lambda p, x: p["n"] > p["m"] >= 0 and x > 0),),
    turan=TuranSpec(+1, "Q_n^m(ix)^2 / (Q_(n-1)^m(ix) Q_(n+1)^m(ix))", _oblate_q_uniform, _oblate_q_chain),
    sample={"n": 2.0, "m": 1.0},
))

OBLATE_P = register(FamilyDescriptor(
    name="oblate-p",
    params=("n", "m"),
    system=oblate_system,
    index=lambda p: p["n"],
    at_index=lambda p, k: {"n": k, "m": p["m"]},
    solution_class=SolutionClass.dominant(+1),
    increasing=True,
    pk1=_oblate_p_pk1,
    ratio_label="-i P_n^m(ix)/P_{n-1}^m(ix)",
    normalization="p_n = (-i)^n P_n^m(ix)",
    validity=(
        Validity("upper", "integers n > m, n - m odd, x > 0", lambda p, x: _oblate_p_odd(p) and p["n"] > p["m"] and x > 0),
        Validity("lower", "integers n > m, n - m even, x > 0", lambda p, x: _is_int(p["n"]) and _is_int(p["m"]) and int(p["n"] - p["m"]) % 2 == 0 and p["n"] > p["m"] + 1 and x > 0),
    ),
    turan=TuranSpec(+1, "P_n^m(ix)^2 / (P_(n-1)^m(ix) P_(n+1)^m(ix))", _oblate_p_uniform, _oblate_p_chain),
    sample={"n": 3.0, "m": 1.0},
))


# --- Laguerre functions of negative argument ---------------------------------


def laguerre_neg_system(params) -> CoefficientSystem:
    # index k = nu + 1; alpha_k = c - k + 1 with c = nu + alpha fixed
    c = float(params["nu"]) + float(params["alpha"])
    return CoefficientSystem(
        a=lambda k, x: 0.0,
        b=lambda k, x: -(c - k + 1 + x) / x,
        d=lambda k, x: 1.0,
        e=lambda k, x: k / x,
        index_domain=Interval(0.0, INF, lo_open=True),
        x_domain=Interval(0.0, INF, lo_open=True),
        name=f"laguerre-neg(nu+alpha={c:g})",
    )


def _laguerre_at(p, k):
    c = p["nu"] + p["alpha"]
    return {"nu": k - 1, "alpha": c - k + 1}


def _laguerre_pk1(p, k, x):
    q = _laguerre_at(p, k)
    return _ok(q["nu"] > -1 and q["alpha"] > 0 and x > 0, "need alpha > 0, nu > -1 and x > 0")


def _laguerre_uniform(p):
    nu, a = p["nu"], p["alpha"]
    if nu >= 0 and a >= 0:
        return nu / (nu + 1) * a / (a + 1), nu / (nu + 1)
    return None, None


def _laguerre_chain(p, T):
    nu, a = p["nu"], p["alpha"]
    app = nu >= 0 and a >= 0
    lo, hi = nu / (nu + 1) * a / (a + 1), nu / (nu + 1)
    return [
        ("nu/(nu+1) alpha/(alpha+1) < product", app, lo < T if app else None),
        ("product < nu/(nu+1)", app, T < hi if app else None),
    ]


LAGUERRE_NEG = register(FamilyDescriptor(
    name="laguerre-neg",
    params=("nu", "alpha"),
    system=laguerre_neg_system,
    index=lambda p: p["nu"] + 1,
    at_index=_laguerre_at,
    solution_class=SolutionClass.dominant(+1),
    increasing=True,
    pk1=_laguerre_pk1,
    ratio_label="L_{nu+1}^{alpha-1}(-x)/L_nu^alpha(-x)",
    normalization="Y_k = L_(k-1)^(alpha+nu-k+1)(-x) with k = nu + 1",
    validity=(
        Validity("upper", "alpha > 0, nu > -1, x > 0", lambda p, x: p["alpha"] > 0 and p["nu"] > -1 and x > 0),
        Validity("lower", "alpha > 0, nu > 0, x > 0", lambda p, x: p["alpha"] > 0 and p["nu"] > 0 and x > 0),
    ),
    turan=TuranSpec(-1, "L_(nu+1)^(alpha-1)(-x) L_(nu-1)^(alpha+1)(-x) / L_nu^alpha(-x)^2", _laguerre_uniform, _laguerre_chain),
    # the ratio is positive for every x > 0 exactly when alpha > 0
    domain=lambda p, x: _ok(p["alpha"] > 0 and p["nu"] > -1 and x > 0, "need alpha > 0, nu > -1, x > 0 (positive ratio)"),
    sample={"nu": 1.0, "alpha": 1.0},
))


# --- modified Bessel functions ------------------------------------------------


def bessel_system(params=None) -> CoefficientSystem:
    return CoefficientSystem(
        a=lambda n, x: -n / x,
        b=lambda n, x: (n - 1) / x,
        d=lambda n, x: 1.0,
        e=lambda n, x: 1.0,
        index_domain=REALS,
        x_domain=Interval(0.0, INF, lo_open=True),
        name="bessel",
    )


def _bessel_pk1(p, k, x):
    return _ok(k >= 0.5 and x > 0, "need n >= 1/2 and x > 0")


BESSEL_I = register(FamilyDescriptor(
    name="bessel-i",
    params=("n",),
    system=bessel_system,
    index=lambda p: p["n"],
    at_index=lambda p, k: {"n": k},
    solution_class=SolutionClass.minimal(+1),
    increasing=True,
    pk1=_bessel_pk1,
    ratio_label="I_n(x)/I_{n-1}(x)",
    normalization="y_n = I_n(x)",
    validity=(
        Validity("upper", "n >= 1/2, x > 0", lambda p, x: p["n"] >= 0.5 and x > 0),
        Validity("lower", "n >= 0, x > 0", lambda p, x: p["n"] >= 0 and x > 0),
    ),
    # I_(n-1) changes sign for n - 1 < -1 away from the integers
    domain=lambda p, x: _ok(p["n"] >= 0 and x > 0, "need n >= 0 and x > 0 (positive ratio)"),
    sample={"n": 1.0},
))

BESSEL_K = register(FamilyDescriptor(
    name="bessel-k",
    params=("n",),
    system=bessel_system,
    index=lambda p: p["n"],
    at_index=lambda p, k: {"n": k},
    solution_class=SolutionClass.dominant(-1),
    increasing=True,
    pk1=_bessel_pk1,
    ratio_label="K_n(x)/K_{n-1}(x)",
    normalization="y_n = (-1)^n K_n(x)",
    validity=(
        Validity("upper", "n >= 1/2, x > 0", lambda p, x: p["n"] >= 0.5 and x > 0),
        Validity("lower", "n >= 3/2, x > 0", lambda p, x: p["n"] >= 1.5 and x > 0),
    ),
    sample={"n": 2.0},
))


# --- closed forms of the published bounds (used to cross-check the engine) ----


def pcf_u_bounds(n: float, x: float) -> tuple[float, float]:
    # below n = 1/2 the upper closed form can leave the reals; report it open
    up = 2 / (x + math.sqrt(4 * n - 2 + x * x)) if 4 * n - 2 + x * x >= 0 else INF
    return 2 / (x + math.sqrt(4 * n + 2 + x * x)), up


def pcf_u_reflected_bounds(n: float, x: float) -> tuple[float, float]:
    lo = (x + math.sqrt(4 * n - 6 + x * x)) / (2 * n - 1) if 4 * n - 6 + x * x >= 0 else 0.0
    return lo, (x + math.sqrt(4 * n - 2 + x * x)) / (2 * n - 1)


def pcf_v_bounds(n: float, x: float) -> tuple[float, float]:
    """Upper (n in (2k-1, 2k)) and lower (n in (2k, 2k+1)) bound expressions."""
    lo = (x + math.sqrt(4 * n - 6 + x * x)) / 2 if 4 * n - 6 + x * x >= 0 else 0.0
    return lo, (x + math.sqrt(4 * n - 2 + x * x)) / 2


def hermite_imag_bounds(j: int, x: float) -> tuple[float, float]:
    """Lower (j even) and upper (j odd) bound expressions for -i H_j(ix)/H_(j-1)(ix)."""
    return x + math.sqrt(2 * j - 2 + x * x), x + math.sqrt(2 * j + x * x)


def oblate_q_bounds(n: float, m: float, x: float) -> tuple[float, float]:
    lo = (n + m) / (n * x + (n + 1) * math.sqrt(1 + x * x - m * m / (n + 1) ** 2))
    hi = (n + m) / n / (x + math.sqrt(1 + x * x - m * m / (n * n)))
    return lo, hi


def oblate_p_bounds(n: float, m: float, x: float) -> tuple[float, float]:
    lo = (n * x + (n - 1) * math.sqrt(1 + x * x - m * m / (n - 1) ** 2)) / (n - m) if n - 1 > 0 else 0.0
    hi = n / (n - m) * (x + math.sqrt(1 + x * x - m * m / (n * n)))
    return lo, hi


def laguerre_neg_bounds(nu: float, alpha: float, x: float) -> tuple[float, float]:
    lo = (alpha + x - 1 + math.sqrt((alpha + x + 1) ** 2 + 4 * nu * x)) / (2 * (nu + 1))
    hi = (alpha + x + math.sqrt((alpha + x) ** 2 + 4 * (nu + 1) * x)) / (2 * (nu + 1))
    return lo, hi


def laguerre_fixed_alpha_turan(nu: float, alpha: float) -> tuple[float, float]:
    """Constants bracketing ``L_(nu-1)^a L_(nu+1)^a / (L_nu^a)^2`` at -x."""
    lo = nu / (nu + 1)
    hi = lo * (nu + alpha + 1) / (nu + alpha - 1) if nu + alpha > 1 else math.inf
    return lo, hi
