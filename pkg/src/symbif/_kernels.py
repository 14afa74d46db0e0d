"""Scalar Bessel-evaluation and root-refinement kernels.

These are the hot inner loops of the package: every spectrum computation
boils down to many thousands of evaluations of a radial Neumann condition
inside bisection.  The kernels are compiled with numba's ``@njit`` when it is
available; setting the environment variable ``SYMBIF_NO_NUMBA=1`` (or
uninstalling numba) selects the identical pure-Python path.  See
``benchmarks/bench_roots.py`` for a comparison of the two.

Evaluation strategy for J_nu(x), nu a nonnegative integer or half-integer:

* ``x <= 8``: ascending power series (termwise recurrence, also exact at 0).
* ``8 < x < 60``: backward three-term recurrence.  Integer orders are
  normalized by the even-order sum identity ``J_0 + 2*sum J_{2k} = 1``;
  half-integer orders go through the spherical functions anchored at
  ``sin(x)/x`` and ``sin(x)/x^2 - cos(x)/x``.
* ``x >= 60``: large-argument asymptotic expansion in the phase
  ``x - (nu/2 + 1/4)*pi``; if its terms do not fall below 1e-17 of the sum
  within 50 terms (very large order), fall back to the recurrence.

Measured against 40-digit reference values, the composite evaluator stays
within 1e-13 * max(1, |J_nu(x)|) for x <= 200 and orders up to ~20, well
below it away from the branch seams.  Kernels assume validated arguments
(x >= 0, order integer or half-integer >= -1/2); wrappers in
``symbif.spectral`` do the checking and raise package errors.
"""

from __future__ import annotations

import math
import os

SERIES_X_MAX = 8.0
ASYMPTOTIC_X_MIN = 60.0


def _identity(func):
    return func


_WANT_NUMBA = os.environ.get("SYMBIF_NO_NUMBA", "").strip().lower() not in {"1", "true", "yes"}
if _WANT_NUMBA:
    try:
        from numba import njit as _njit

        _jit = _njit(cache=True)
        NUMBA_ENABLED = True
    except ImportError:  # pragma: no cover - exercised via env flag instead
        _jit = _identity
        NUMBA_ENABLED = False
else:
    _jit = _identity
    NUMBA_ENABLED = False


@_jit
def _series_j(nu: float, x: float) -> float:
    """Ascending series for J_nu(x); accurate for small x."""
    if x == 0.0:
        return 1.0 if nu == 0.0 else 0.0
    t = math.exp(nu * math.log(0.5 * x) - math.lgamma(nu + 1.0))
    s = t
    q = 0.25 * x * x
    for k in range(1, 600):
        t = -t * q / (k * (k + nu))
        s += t
        if abs(t) <= 1e-17 * abs(s) + 1e-300:
            break
    return s


@_jit
def _miller3(n: int, x: float) -> tuple[float, float, float]:
    """(J_{n-1}, J_n, J_{n+1}) for integer n >= 0, x > 0, by downward recurrence.

    Seeds a decaying solution far above max(n, x) and rescales by the
    even-order sum identity.  J_{-1} is served as -J_1.
    """
    m0 = max(n + 1, int(x) + 1)
    top = m0 + 20 + int(2.0 * math.sqrt(m0))
    if top % 2 == 1:
        top += 1
    fp = 0.0
    fc = 1e-30
    s = 0.0
    jm = 0.0
    jn = 0.0
    jp = 0.0
    for k in range(top, 0, -1):
        fm = (2.0 * k / x) * fc - fp
        fp = fc
        fc = fm
        kk = k - 1
        if kk == n - 1:
            jm = fc
        elif kk == n:
            jn = fc
        elif kk == n + 1:
            jp = fc
        if kk > 0 and kk % 2 == 0:
            s += 2.0 * fc
        if abs(fc) > 1e250:
            fc *= 1e-250
            fp *= 1e-250
            s *= 1e-250
            jm *= 1e-250
            jn *= 1e-250
            jp *= 1e-250
    s += fc
    if n == 0:
        jm = -jp
    return jm / s, jn / s, jp / s


@_jit
def _sph3(n: int, x: float) -> tuple[float, float, float]:
    """(J_{nu-1}, J_nu, J_{nu+1}) for nu = n + 1/2, x > 0, via spherical functions.

    Downward recurrence on j_k, rescaled against whichever of the closed-form
    anchors j_0 = sin(x)/x, j_1 = sin(x)/x^2 - cos(x)/x is larger.
    """
    s0 = math.sin(x) / x
    s1 = s0 / x - math.cos(x) / x
    m0 = max(n + 2, int(x) + 1)
    top = m0 + 20 + int(2.0 * math.sqrt(m0))
    fp = 0.0
    fc = 1e-30
    jm = 0.0
    jn = 0.0
    jp = 0.0
    g0 = 0.0
    g1 = 0.0
    for k in range(top, 0, -1):
        fm = ((2.0 * k + 1.0) / x) * fc - fp
        fp = fc
        fc = fm
        kk = k - 1
        if kk == n - 1:
            jm = fc
        if kk == n:
            jn = fc
        if kk == n + 1:
            jp = fc
        if kk == 0:
            g0 = fc
        if kk == 1:
            g1 = fc
        if abs(fc) > 1e250:
            fc *= 1e-250
            fp *= 1e-250
            jm *= 1e-250
            jn *= 1e-250
            jp *= 1e-250
            g0 *= 1e-250
            g1 *= 1e-250
    scale = s0 / g0 if abs(s0) >= abs(s1) else s1 / g1
    c = math.sqrt(2.0 * x / math.pi)
    out_m = c * jm * scale
    out_n = c * jn * scale
    out_p = c * jp * scale
    if n == 0:
        # nu - 1 = -1/2 has a closed form
        out_m = c * math.cos(x) / x
    return out_m, out_n, out_p


@_jit
def _asym_j(nu: float, x: float) -> tuple[float, bool]:
    """Large-x expansion of J_nu(x); flag reports whether it converged."""
    mu = 4.0 * nu * nu
    if mu - 1.0 >= 8.0 * x:
        # terms would grow before decaying and their rounding would dominate;
        # the backward recurrence handles this order range instead
        return 0.0, False
    p = 1.0
    q = 0.0
    t = 1.0
    ok = False
    sign_q = 1.0
    sign_p = -1.0
    m = 0
    while m < 50:
        t = t * (mu - (2.0 * m + 1.0) ** 2) / (8.0 * x * (m + 1.0))
        q += sign_q * t
        if abs(t) < 1e-17 * (abs(p) + abs(q)):
            ok = True
            break
        t = t * (mu - (2.0 * m + 3.0) ** 2) / (8.0 * x * (m + 2.0))
        p += sign_p * t
        if abs(t) < 1e-17 * (abs(p) + abs(q)):
            ok = True
            break
        sign_q = -sign_q
        sign_p = -sign_p
        m += 2
    w = x - (0.5 * nu + 0.25) * math.pi
    val = math.sqrt(2.0 / (math.pi * x)) * (p * math.cos(w) - q * math.sin(w))
    return val, ok


@_jit
def _bessel_j3(nu: float, x: float) -> tuple[float, float, float]:
    """(J_{nu-1}, J_nu, J_{nu+1}); nu integer or half-integer, nu >= 0, x >= 0."""
    half = nu != math.floor(nu)
    if x == 0.0:
        jm = 1.0 if nu == 1.0 else 0.0
        jn = 1.0 if nu == 0.0 else 0.0
        jp = 0.0
        if nu == 0.0:
            jm = 0.0  # J_{-1}(0) = -J_1(0) = 0
        if half and nu == 0.5:
            jm = math.inf  # J_{-1/2} diverges at 0
        return jm, jn, jp
    if x <= SERIES_X_MAX:
        if nu == 0.0:
            jn = _series_j(0.0, x)
            jp = _series_j(1.0, x)
            return -jp, jn, jp
        return _series_j(nu - 1.0, x), _series_j(nu, x), _series_j(nu + 1.0, x)
    if x >= ASYMPTOTIC_X_MIN:
        vm, ok_m = _asym_j(nu - 1.0, x)
        vn, ok_n = _asym_j(nu, x)
        vp, ok_p = _asym_j(nu + 1.0, x)
        if ok_m and ok_n and ok_p:
            return vm, vn, vp
    if half:
        return _sph3(int(nu - 0.5), x)
    n = int(nu)
    return _miller3(n, x)


@_jit
def _bessel_j(nu: float, x: float) -> float:
    return _bessel_j3(nu, x)[1]


@_jit
def _bessel_j_prime(nu: float, x: float) -> float:
    """J_nu'(x) via (J_{nu-1} - J_{nu+1})/2, with J_0' = -J_1."""
    if x == 0.0:
        if nu == 1.0:
            return 0.5
        return 0.0  # integer nu != 1; fractional orders are rejected upstream
    jm, _, jp = _bessel_j3(nu, x)
    if nu == 0.0:
        return -jp
    return 0.5 * (jm - jp)


@_jit
def _radial_condition(l: int, dim: int, x: float) -> float:
    """Radial Neumann condition on the unit ball of dimension ``dim``.

    dim == 2: J_l'(x) for angular index l.  dim >= 3 (l == 0 only):
    J_nu'(x) - (nu/x) J_nu(x) with nu = (dim - 2)/2.
    """
    if dim == 2:
        return _bessel_j_prime(float(l), x)
    nu = 0.5 * (dim - 2)
    jm, jn, jp = _bessel_j3(nu, x)
    if nu == 0.0:
        d = -jp
    else:
        d = 0.5 * (jm - jp)
    return d - (nu / x) * jn


@_jit
def _bisect_radial(l: int, dim: int, a: float, fa: float, b: float, fb: float, xtol: float) -> float:
    """Bisection on the radial condition over a sign-change bracket [a, b].

    Returns the midpoint of the final bracket, or NaN if an evaluation broke
    down (NaN value) or the bracket failed to shrink below ``xtol``.
    """
    if not (fa == fa) or not (fb == fb):
        return math.nan
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa > 0.0) == (fb > 0.0):
        return math.nan
    for _ in range(200):
        mid = 0.5 * (a + b)
        if b - a <= xtol or mid == a or mid == b:
            # converged, or bracket at floating-point resolution
            return mid
        fm = _radial_condition(l, dim, mid)
        if not (fm == fm):
            return math.nan
        if fm == 0.0:
            return mid
        if (fm > 0.0) == (fa > 0.0):
            a = mid
            fa = fm
        else:
            b = mid
    return math.nan


def warmup() -> None:
    """Force JIT compilation of every kernel (no-op on the fallback path)."""
    _bessel_j(0.0, 0.5)
    _bessel_j(1.5, 20.0)
    _bessel_j(2.0, 100.0)
    _bessel_j_prime(1.0, 2.0)
    _radial_condition(1, 2, 2.0)
    _radial_condition(0, 3, 5.0)
    _bisect_radial(1, 2, 1.5, _radial_condition(1, 2, 1.5), 2.0, _radial_condition(1, 2, 2.0), 1e-10)
