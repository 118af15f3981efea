"""High-precision reference values for validating the bounds.

Nothing here imports the bounds path; the recurrences are written out again
from the classical relations of each family.  Minimal solutions are computed
by backward (Miller-type) recurrence of the ratio, dominant ones by forward
recurrence or by mpmath's special functions, and most quantities have a
second, independent route (``method="alt"``) used by the cross-check tests.

Working precision is ``max(digits, 30) + 15`` decimal digits, where ``digits``
defaults to 30 and can be overridden with the ``RATIO_BOUNDS_PRECISION``
environment variable.
"""

from __future__ import annotations

import math
import os
import threading
from dataclasses import dataclass
from functools import lru_cache

import mpmath as mp
import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from .errors import NoConvergence, ValidityError

DEFAULT_DIGITS = 30
METHODS = ("BackwardRecurrence", "ForwardRecurrence", "Series", "Quadrature", "CompanionMatrix", "ClosedForm")
_lock = threading.Lock()


def target_digits(digits=None) -> int:
    if digits is not None:
        return int(digits)
    env = os.environ.get("RATIO_BOUNDS_PRECISION")
    return int(env) if env else DEFAULT_DIGITS


@dataclass(frozen=True)
class OracleValue:
    value: float
    abs_error_estimate: float
    method: str
    exact: object = None

    def __float__(self):
        return self.value


def _result(v, err, method):
    v = mp.mpf(v)
    return OracleValue(float(v), float(abs(err)), method, v)


# --- backward recurrence ---------------------------------------------------


#: Doublings of the backward start index before giving up.
MAX_DOUBLINGS = 10
#: Below this x the parabolic-cylinder recurrences separate their solutions
#: too slowly (error ~ exp(-2 x sqrt(N))) and another route is primary.
SMALL_X = 0.5


def _miller(step, seed, n, span, digits, max_doublings=MAX_DOUBLINGS):
    """Run ``r_k = step(k, r_{k+1})`` from ``n + span`` down to ``n``.

    The integer ``span`` is doubled until two successive runs agree to
    ``digits``; :class:`NoConvergence` after ``max_doublings`` failed doublings.
    """
    tol = mp.mpf(10) ** (-digits)

    def run(top):
        r = seed(top)
        k = top - 1
        while k >= n - 1e-9:
            r = step(k, r)
            k -= 1
        return r

    span = int(span)
    prev = run(n + span)
    for _ in range(max_doublings):
        span *= 2
        cur = run(n + span)
        err = abs(cur - prev)
        if err <= tol * abs(cur):
            return cur, err + tol * abs(cur)
        prev = cur
    raise NoConvergence(f"backward recurrence did not settle at n={n}")


def _start_offset(x):
    """Initial ``n_start - n``."""
    return max(50, 4 * math.ceil(abs(x)))


# --- parabolic cylinder ----------------------------------------------------


def _pcfu_ratio_backward(n, x, digits):
    # U(a-1,x) = x U(a,x) + (a+1/2) U(a+1,x);  r_a = U(a)/U(a-1)
    x = mp.mpf(x)

    def step(a, r_next):
        return 1 / (x + (a + mp.mpf(1) / 2) * r_next)

    def seed(a):
        return 2 / (x + mp.sqrt(x * x + 4 * a + 2))

    return _miller(step, seed, mp.mpf(n), _start_offset(x), digits)


def _pcfu_closed_at_zero(a):
    a = mp.mpf(a)
    return mp.sqrt(mp.pi) / (mp.power(2, a / 2 + mp.mpf(1) / 4) * mp.gamma(mp.mpf(3) / 4 + a / 2))


def _pcf_u(params, x, digits, method):
    n = mp.mpf(params["n"])
    if method == "alt":
        return mp.pcfu(n, x) / mp.pcfu(n - 1, x), mp.mpf(10) ** (-digits), "Series"
    if method == "closed":
        if x != 0:
            raise ValueError("closed form only at x = 0")
        v = _pcfu_closed_at_zero(n) / _pcfu_closed_at_zero(n - 1)
        return v, mp.mpf(10) ** (-digits), "ClosedForm"
    if abs(x) < SMALL_X:
        if x == 0:
            return _pcf_u(params, x, digits, "closed")
        return _pcf_u(params, x, digits, "alt")
    v, err = _pcfu_ratio_backward(n, x, digits)
    return v, err, "BackwardRecurrence"


def _forward_ratio(r0, a0, a_target, update):
    """Apply ``r_{a+1} = update(a, r_a)`` from a0 up to a_target."""
    r, a = r0, a0
    while a < a_target - 1e-9:
        r = update(a, r)
        a += 1
    return r


def _low_start(n, floor):
    k = math.floor(n - floor)
    return mp.mpf(n) - k


def _pcf_u_reflected(params, x, digits, method):
    n = mp.mpf(params["n"])
    z = -mp.mpf(x)
    if method == "alt":
        a0 = _low_start(params["n"], 0.5 + 1e-12)
        r0 = mp.pcfu(a0, z) / mp.pcfu(a0 - 1, z)

        # U(a+1,z) = (U(a-1,z) - z U(a,z)) / (a+1/2)
        def update(a, r):
            return (1 / r - z) / (a + mp.mpf(1) / 2)

        v = _forward_ratio(r0, a0, n, update)
        return v, mp.mpf(10) ** (-digits + 5), "ForwardRecurrence"
    return mp.pcfu(n, z) / mp.pcfu(n - 1, z), mp.mpf(10) ** (-digits), "Series"


def _pcf_v(params, x, digits, method):
    n = mp.mpf(params["n"])
    x = mp.mpf(x)
    if method == "alt":
        a0 = _low_start(params["n"], 0.5 + 1e-12)
        r0 = mp.pcfv(a0, x) / mp.pcfv(a0 - 1, x)

        # V(a+1,x) = x V(a,x) - (a-1/2) V(a-1,x)
        def update(a, r):
            return x - (a - mp.mpf(1) / 2) / r

        v = _forward_ratio(r0, a0, n, update)
        return v, mp.mpf(10) ** (-digits + 5), "ForwardRecurrence"
    return mp.pcfv(n, x) / mp.pcfv(n - 1, x), mp.mpf(10) ** (-digits), "Series"


def hermite_imag_values(jmax, x):
    """``g_j(x) = (-i)^j H_j(ix)`` for j = 0..jmax (real, positive for x > 0)."""
    x = mp.mpf(x)
    g = [mp.mpf(1), 2 * x]
    for j in range(1, jmax):
        g.append(2 * x * g[j] + 2 * j * g[j - 1])
    return g[: jmax + 1]


def _hermite_imag(params, x, digits, method):
    j = int(params["n"])
    if method == "alt":
        z = mp.mpc(0, x)
        v = -1j * mp.hermite(j, z) / mp.hermite(j - 1, z)
        return mp.re(v), mp.mpf(10) ** (-digits), "Series"
    g = hermite_imag_values(j, x)
    return g[j] / g[j - 1], mp.mpf(10) ** (-digits), "ForwardRecurrence"


# --- Mills ratio and iterated complementary error functions ---------------


def _mills_series(x):
    x = mp.mpf(x)
    return mp.sqrt(mp.pi / 2) * mp.exp(x * x / 2) * mp.erfc(x / mp.sqrt(2))


def _mills_quad(x):
    x = mp.mpf(x)
    return mp.quad(lambda u: mp.exp(-x * u - u * u / 2), [0, 1, 10, mp.inf])


def oracle_mills(x, target_digits_=None) -> OracleValue:
    """Mills ratio ``exp(x^2/2) * int_x^inf exp(-t^2/2) dt`` by two routes."""
    if x < 0:
        raise ValidityError("Mills ratio oracle: x must be non-negative", "x >= 0")
    digits = target_digits(target_digits_)
    with mp.workdps(max(digits, 30) + 15):
        a = _mills_series(x)
        b = _mills_quad(x)
        err = abs(a - b)
        if err > mp.mpf(10) ** (-digits) * abs(a):
            raise NoConvergence(f"Mills ratio routes disagree at x={x}: {err}")
        return _result(a, err + mp.mpf(10) ** (-digits) * a, "Series")


def _ierfc_quad(n, x):
    x = mp.mpf(x)
    f = lambda u: u ** n * mp.exp(-(x + u) ** 2)
    return 2 / mp.sqrt(mp.pi) / mp.factorial(n) * mp.quad(f, [0, 1, 5, mp.inf])


def ierfc_at_zero(n):
    """``i^n erfc(0) = 1 / (2^n Gamma(n/2 + 1))``."""
    return 1 / (mp.power(2, n) * mp.gamma(mp.mpf(n) / 2 + 1))


def oracle_ierfc_ratio(n, x, target_digits_=None, method="auto") -> OracleValue:
    """``i^n erfc(x) / i^(n-1) erfc(x)``.

    Default route: backward recurrence ``q_k = 1 / (2(k+1) q_{k+1} + 2x)``
    (closed form at x = 0, quadrature for small x); ``method="alt"`` uses
    quadrature of the integral representation.
    """
    digits = target_digits(target_digits_)
    with mp.workdps(max(digits, 30) + 15):
        if method == "closed" or (method == "auto" and x == 0):
            v = ierfc_at_zero(n) / ierfc_at_zero(n - 1)
            return _result(v, mp.mpf(10) ** (-digits) * v, "ClosedForm")
        if method == "alt" or x < SMALL_X:
            v = _ierfc_quad(n, x) / _ierfc_quad(n - 1, x)
            return _result(v, mp.mpf(10) ** (-digits) * v, "Quadrature")
        xm = mp.mpf(x)

        def step(k, q_next):
            return 1 / (2 * (k + 1) * q_next + 2 * xm)

        def seed(k):
            return 1 / (xm + mp.sqrt(xm * xm + 2 * k))

        v, err = _miller(step, seed, n, _start_offset(x), digits)
        return _result(v, err, "BackwardRecurrence")


def _mills_family(params, x, digits, method):
    if method == "alt":
        return _mills_quad(x), mp.mpf(10) ** (-digits), "Quadrature"
    return _mills_series(x), mp.mpf(10) ** (-digits), "Series"


# --- oblate Legendre -------------------------------------------------------


def _oblate_q(params, x, digits, method):
    n, m = mp.mpf(params["n"]), mp.mpf(params["m"])
    x = mp.mpf(x)
    if method == "alt":
        z = mp.mpc(0, x)
        v = 1j * mp.legenq(n, m, z, type=3) / mp.legenq(n - 1, m, z, type=3)
        return mp.re(v), mp.mpf(10) ** (-digits), "Series"

    # (k-m+1) q_{k+1} = (2k+1) x q_k + (k+m) q_{k-1};  |h_k| = |q_k / q_{k-1}|
    def step(k, r_next):
        return (k + m) / ((2 * k + 1) * x + (k - m + 1) * r_next)

    def seed(k):
        A, B, C = k - m + 1, (2 * k + 1) * x, k + m
        return 2 * C / (B + mp.sqrt(B * B + 4 * A * C))

    v, err = _miller(step, seed, n, _start_offset(10 * float(x)), digits)
    return v, err, "BackwardRecurrence"


def oblate_p_values(n, m, x):
    """``p_k = (-i)^k P_k^m(ix)`` up to a common factor, for k = m..n (integers)."""
    x = mp.mpf(x)
    p = {m - 1: mp.mpf(0), m: mp.mpf(1)}
    for k in range(m, n):
        p[k + 1] = ((2 * k + 1) * x * p[k] + (k + m) * p[k - 1]) / (k - m + 1)
    return p


def _oblate_p(params, x, digits, method):
    n, m = int(params["n"]), int(params["m"])
    if method == "alt":
        z = mp.mpc(0, x)
        v = -1j * mp.legenp(n, m, z, type=3) / mp.legenp(n - 1, m, z, type=3)
        return mp.re(v), mp.mpf(10) ** (-digits), "Series"
    p = oblate_p_values(n, m, x)
    return p[n] / p[n - 1], mp.mpf(10) ** (-digits), "ForwardRecurrence"


# --- Laguerre --------------------------------------------------------------


def laguerre_value(nu, alpha, z, method="auto"):
    """``L_nu^alpha(z)`` for real degree; ``method="alt"`` sums the finite
    polynomial (integer nu) or the 1F1 representation."""
    nu, alpha, z = mp.mpf(nu), mp.mpf(alpha), mp.mpf(z)
    if method != "alt":
        return mp.laguerre(nu, alpha, z)
    if nu == int(nu) and nu >= 0:
        k_max = int(nu)
        return mp.fsum(
            mp.binomial(nu + alpha, nu - k) * (-z) ** k / mp.factorial(k) for k in range(k_max + 1)
        )
    return mp.binomial(nu + alpha, nu) * mp.hyp1f1(-nu, alpha + 1, z)


def _laguerre_neg(params, x, digits, method):
    nu, alpha = params["nu"], params["alpha"]
    num = laguerre_value(nu + 1, alpha - 1, -x, method)
    den = laguerre_value(nu, alpha, -x, method)
    tag = "ClosedForm" if method == "alt" else "Series"
    return num / den, mp.mpf(10) ** (-digits), tag


# --- Bessel ----------------------------------------------------------------


def _bessel_i(params, x, digits, method):
    n, x = mp.mpf(params["n"]), mp.mpf(x)
    if method == "alt":
        return mp.besseli(n, x) / mp.besseli(n - 1, x), mp.mpf(10) ** (-digits), "Series"

    # I_{k-1} = (2k/x) I_k + I_{k+1};  r_k = I_k / I_{k-1}
    def step(k, r_next):
        return 1 / (2 * k / x + r_next)

    def seed(k):
        return x / (k + mp.sqrt(k * k + x * x))

    v, err = _miller(step, seed, n, _start_offset(float(x)), digits)
    return v, err, "BackwardRecurrence"


def _bessel_k(params, x, digits, method):
    n, x = mp.mpf(params["n"]), mp.mpf(x)
    if method == "alt":
        a0 = _low_start(params["n"], 0.0)
        r0 = mp.besselk(a0, x) / mp.besselk(a0 - 1, x)

        # K_{a+1} = K_{a-1} + (2a/x) K_a
        def update(a, r):
            return 1 / r + 2 * a / x

        v = _forward_ratio(r0, a0, n, update)
        return v, mp.mpf(10) ** (-digits + 5), "ForwardRecurrence"
    return mp.besselk(n, x) / mp.besselk(n - 1, x), mp.mpf(10) ** (-digits), "Series"


# --- classical polynomials on the positive real axis ------------------------


def hermite_values(n, x):
    x = mp.mpf(x)
    h = [mp.mpf(1), 2 * x]
    for k in range(1, n):
        h.append(2 * x * h[k] - 2 * k * h[k - 1])
    return h[: n + 1]


def laguerre_poly_values(n, alpha, x):
    x, alpha = mp.mpf(x), mp.mpf(alpha)
    L = [mp.mpf(1), 1 + alpha - x]
    for k in range(1, n):
        L.append(((2 * k + 1 + alpha - x) * L[k] - (k + alpha) * L[k - 1]) / (k + 1))
    return L[: n + 1]


def _hermite_real(params, x, digits, method):
    n = int(params["n"])
    if method == "alt":
        return mp.hermite(n, x) / mp.hermite(n - 1, x), mp.mpf(10) ** (-digits), "Series"
    h = hermite_values(n, x)
    return h[n] / h[n - 1], mp.mpf(10) ** (-digits), "ForwardRecurrence"


def _laguerre_real(params, x, digits, method):
    n, alpha = int(params["n"]), params["alpha"]
    if method == "alt":
        v = -mp.laguerre(n, alpha, x) / mp.laguerre(n - 1, alpha, x)
        return v, mp.mpf(10) ** (-digits), "Series"
    L = laguerre_poly_values(n, alpha, x)
    return -L[n] / L[n - 1], mp.mpf(10) ** (-digits), "ForwardRecurrence"


_RATIOS = {
    "pcf-u": _pcf_u,
    "pcf-u-reflected": _pcf_u_reflected,
    "pcf-v": _pcf_v,
    "hermite-imag": _hermite_imag,
    "mills": _mills_family,
    "oblate-q": _oblate_q,
    "oblate-p": _oblate_p,
    "laguerre-neg": _laguerre_neg,
    "bessel-i": _bessel_i,
    "bessel-k": _bessel_k,
    "hermite-real": _hermite_real,
    "laguerre-real": _laguerre_real,
}

SUPPORTED = tuple(sorted(_RATIOS)) + ("ierfc",)


def _key(params):
    return tuple(sorted((k, float(v)) for k, v in params.items()))


@lru_cache(maxsize=4096)
def _cached_ratio(family, key, x, digits, method):
    params = dict(key)
    with mp.workdps(max(digits, 30) + 15):
        if family == "ierfc":
            return oracle_ierfc_ratio(int(params["n"]), x, digits, method)
        v, err, tag = _RATIOS[family](params, x, digits, method)
        return _result(v, err, tag)


def oracle_ratio(family, params, x, target_digits_=None, method="auto") -> OracleValue:
    """Reference value of the family's ratio in its natural normalization.

    ============== ==============================================
    family         ratio
    ============== ==============================================
    pcf-u          U(n,x) / U(n-1,x)
    pcf-u-reflected U(n,-x) / U(n-1,-x)
    pcf-v          V(n,x) / V(n-1,x)
    hermite-imag   -i H_n(ix) / H_{n-1}(ix)
    mills          Mills ratio r(x)
    ierfc          i^n erfc(x) / i^(n-1) erfc(x)
    oblate-q       i Q_n^m(ix) / Q_{n-1}^m(ix)
    oblate-p       -i P_n^m(ix) / P_{n-1}^m(ix)
    laguerre-neg   L_{nu+1}^{alpha-1}(-x) / L_nu^alpha(-x)
    bessel-i       I_n(x) / I_{n-1}(x)
    bessel-k       K_n(x) / K_{n-1}(x)
    hermite-real   H_n(x) / H_{n-1}(x)
    laguerre-real  -L_n^alpha(x) / L_{n-1}^alpha(x)
    ============== ==============================================
    """
    if family not in _RATIOS and family != "ierfc":
        raise KeyError(f"no oracle for family {family!r}")
    digits = target_digits(target_digits_)
    with _lock:
        return _cached_ratio(family, _key(params), float(x), digits, method)


# DDE coefficients (a_n, d_n, sign of h) used to turn a ratio into y'_n / y_n
def _dde_pcf_u(params, x):
    return x / 2, 1.0, -1


def _dde_pcf_u_reflected(params, x):
    return x / 2, 1.0, 1


def _dde_bessel(params, x):
    return -params["n"] / x, 1.0


def _logderiv_direct(family, params, x):
    """y'_n / y_n by numerical differentiation of mpmath's functions."""
    n = params.get("n")
    if family == "pcf-u":
        f = lambda t: mp.pcfu(n, t)
    elif family == "pcf-u-reflected":
        f = lambda t: mp.pcfu(n, -t)
    elif family == "bessel-i":
        f = lambda t: mp.besseli(n, t)
    elif family == "bessel-k":
        f = lambda t: mp.besselk(n, t)
    elif family == "laguerre-neg":
        f = lambda t: mp.laguerre(params["nu"] + 1, params["alpha"] - 1, -t)
    else:
        raise KeyError(family)
    return mp.diff(f, x) / f(x)


def oracle_logderiv(family, params, x, target_digits_=None, method="auto") -> OracleValue:
    """``y'_n(x) / y_n(x)`` from the ratio oracle and the system's first equation.

    ``y'_n / y_n = a_n + d_n / h_n`` with the signed ratio ``h_n``; for the
    parabolic cylinder families this is ``U'(n, +-x) / U(n, +-x)`` up to the
    reflection sign.  ``method="alt"`` differentiates numerically instead.
    """
    digits = target_digits(target_digits_)
    with mp.workdps(max(digits, 30) + 15):
        if method == "alt":
            v = _logderiv_direct(family, params, mp.mpf(x))
            return _result(v, mp.mpf(10) ** (-digits + 5) * (1 + abs(v)), "Quadrature")
        r = oracle_ratio(family, params, x, digits)
        h = r.exact
        if family == "pcf-u":
            a, d, s = x / 2, 1, -1
        elif family == "pcf-u-reflected":
            # y_n(x) = U(n,-x): y'/y = x/2 + 1/h
            a, d, s = x / 2, 1, 1
        elif family == "bessel-i":
            a, d, s = -mp.mpf(params["n"]) / x, 1, 1
        elif family == "bessel-k":
            # y_n = (-1)^n K_n
            a, d, s = -mp.mpf(params["n"]) / x, 1, -1
        elif family == "laguerre-neg":
            a, d, s = 0, 1, 1
        else:
            raise KeyError(f"no log-derivative oracle for {family!r}")
        v = a + d / (s * h)
        err = abs(d) * r.abs_error_estimate / (h * h)
        return _result(v, err + mp.mpf(10) ** (-digits), "BackwardRecurrence" if r.method == "BackwardRecurrence" else r.method)


# --- zeros -----------------------------------------------------------------


def _jacobi(family, n, alpha):
    k = np.arange(1, n, dtype=float)
    if family == "hermite":
        return np.zeros(n), np.sqrt(k / 2)
    if family == "laguerre":
        diag = 2 * np.arange(n, dtype=float) + alpha + 1
        return diag, np.sqrt(k * (k + alpha))
    raise KeyError(family)


def _poly(family, n, alpha, t):
    if family == "hermite":
        return hermite_values(n, t)[n]
    return laguerre_poly_values(n, alpha, t)[n]


def oracle_largest_zero(family, n, alpha=None, target_digits_=None) -> OracleValue:
    """Largest zero of H_n or L_n^alpha.

    Eigenvalue of the symmetric tridiagonal Jacobi matrix, then refined by
    bisection on the polynomial evaluated through its recurrence.
    """
    digits = target_digits(target_digits_)
    if family == "laguerre" and alpha is None:
        raise ValidityError("laguerre zero oracle needs alpha", "alpha present")
    alpha = 0.0 if alpha is None else float(alpha)
    diag, off = _jacobi(family, n, alpha)
    if n == 1:
        lam = float(diag[0])
    else:
        lam = float(eigvalsh_tridiagonal(diag, off, select="i", select_range=(n - 1, n - 1))[0])
    with mp.workdps(max(digits, 30) + 15):
        delta = mp.mpf(1e-8) * max(1.0, abs(lam))
        lo, hi = mp.mpf(lam) - delta, mp.mpf(lam) + delta
        f_lo = _poly(family, n, alpha, lo)
        f_hi = _poly(family, n, alpha, hi)
        while f_lo * f_hi > 0:
            delta *= 4
            lo, hi = mp.mpf(lam) - delta, mp.mpf(lam) + delta
            f_lo, f_hi = _poly(family, n, alpha, lo), _poly(family, n, alpha, hi)
            if delta > 1:
                raise NoConvergence("could not bracket the largest zero")
        tol = mp.mpf(10) ** (-digits) * max(1, abs(lam))
        while hi - lo > tol:
            mid = (lo + hi) / 2
            f_mid = _poly(family, n, alpha, mid)
            if f_mid == 0:
                lo = hi = mid
                break
            if f_lo * f_mid < 0:
                hi, f_hi = mid, f_mid
            else:
                lo, f_lo = mid, f_mid
        root = (lo + hi) / 2
        return _result(root, hi - lo + tol, "CompanionMatrix")
