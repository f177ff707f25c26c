"""Pure-Python quadrature kernels.

Reference implementation of the three hot integrals; the compiled module
in _native.pyx mirrors this file node-for-node (same transforms, same
overflow guards, same pairwise summation tree), so the two backends are
interchangeable to rounding noise.  Keep any change here synchronized.

All three integrals are evaluated by the trapezoid rule under a
double-exponential change of variables, with step halving until two
successive refinements agree:

  * plancherel_integral: r = exp((pi/2) sinh u) maps (0, inf) to the line;
    the integrand then decays doubly exponentially on both sides.
  * mellin_time_integral and bessel_k_integral: t = exp(u); the e^{-at}
    and e^{-b/t} factors each become doubly exponential in u.

The returned tuple is (value, last_delta, level, converged); callers
decide whether a non-converged result is an error.
"""

from __future__ import annotations

import math

BACKEND_NAME = "python"

_H0 = 0.5
_MAX_LEVEL = 12
_ABS_TOL = 1e-12
_REL_TOL = 1e-14
_SCAN_LIMIT = 400  # level-0 nodes per side; DE decay triggers far earlier
_NEGLIGIBLE = 1e-300
_HALF_PI = math.pi / 2.0


def _pairwise(vals: list, lo: int, hi: int) -> float:
    if hi - lo <= 8:
        acc = 0.0
        for i in range(lo, hi):
            acc += vals[i]
        return acc
    mid = (lo + hi) // 2
    return _pairwise(vals, lo, mid) + _pairwise(vals, mid, hi)


def _integrate(node, h0: float, max_level: int, abs_tol: float, rel_tol: float):
    """Adaptive trapezoid on the whole line for a DE-decaying node function.

    Level 0 scans outward from u = 0 in steps of h0 until three consecutive
    negligible nodes fix the truncation window; deeper levels only add the
    odd-multiple nodes inside that fixed window, so refinement never moves
    the window and the node set is deterministic.
    """
    center = node(0.0)
    pos_vals = []
    run = 0
    i = 0
    while i < _SCAN_LIMIT and run < 3:
        i += 1
        v = node(i * h0)
        pos_vals.append(v)
        run = run + 1 if abs(v) <= _NEGLIGIBLE else 0
    n_pos = i
    neg_vals = []
    run = 0
    i = 0
    while i < _SCAN_LIMIT and run < 3:
        i += 1
        v = node(-i * h0)
        neg_vals.append(v)
        run = run + 1 if abs(v) <= _NEGLIGIBLE else 0
    n_neg = i

    ordered = list(reversed(neg_vals)) + [center] + pos_vals
    total = h0 * _pairwise(ordered, 0, len(ordered))

    u_lo = -n_neg * h0
    delta = math.inf
    level = 0
    for level in range(1, max_level + 1):
        h = h0 / (1 << level)
        count = (n_pos + n_neg) << (level - 1)
        new_vals = [node(u_lo + (2 * j + 1) * h) for j in range(count)]
        refined = 0.5 * total + h * _pairwise(new_vals, 0, len(new_vals))
        delta = abs(refined - total)
        total = refined
        if delta <= max(abs_tol, rel_tol * abs(total)):
            return total, delta, level, True
    return total, delta, level, False


def _tanh_pi_pos(r: float) -> float:
    # r > 0 here; the 1 - 2/(1+e^x) form never overflows and never cancels
    x = 2.0 * math.pi * r
    if x > 709.0:
        return 1.0
    return 1.0 - 2.0 / (1.0 + math.exp(x))


def plancherel_integral(
    coeffs,
    t: float,
    h0: float = _H0,
    max_level: int = _MAX_LEVEL,
    abs_tol: float = _ABS_TOL,
    rel_tol: float = _REL_TOL,
):
    """integral_0^inf r P(r^2) tanh(pi r) e^(-t r^2) dr.

    ``coeffs`` are the even-polynomial coefficients of P (degree k-1 in
    r^2).  The exp-sinh substitution r = exp((pi/2) sinh u) is used; nodes
    where t e^{2x} - 2kx - |u| > 720 (x = (pi/2) sinh u) are exactly zero
    in double precision and are skipped before P can overflow.
    """
    cs = [float(c) for c in coeffs]
    ncoef = len(cs)
    tt = float(t)

    def node(u: float) -> float:
        x = _HALF_PI * math.sinh(u)
        two_x = 2.0 * x
        if two_x > 700.0:
            return 0.0
        r2 = math.exp(two_x)
        e_arg = tt * r2
        if e_arg - 2.0 * ncoef * x - abs(u) > 720.0:
            return 0.0
        p_val = 0.0
        for c in reversed(cs):
            p_val = p_val * r2 + c
        r = math.exp(x)
        return _HALF_PI * math.cosh(u) * r2 * p_val * _tanh_pi_pos(r) * math.exp(-e_arg)

    return _integrate(node, h0, max_level, abs_tol, rel_tol)


def mellin_time_integral(
    lengths,
    amps,
    alpha: float,
    s: float,
    h0: float = _H0,
    max_level: int = _MAX_LEVEL,
    abs_tol: float = _ABS_TOL,
    rel_tol: float = _REL_TOL,
):
    """integral_0^inf t^(s-1) t^(-1/2) sum_i amps[i] e^(-alpha t - lengths[i]^2/(4t)) dt.

    Under t = e^u both tails decay doubly exponentially (alpha > 0 on the
    right, the shortest length on the left).  The per-node geodesic sum
    runs left to right in the supplied order; callers keep that order
    fixed for determinism.
    """
    ls = [float(x) for x in lengths]
    ams = [float(x) for x in amps]
    if len(ls) != len(ams):
        raise ValueError("lengths and amps must have equal size")
    if not ls:
        return 0.0, 0.0, 0, True
    quarters = [0.25 * l * l for l in ls]
    a = float(alpha)
    su = float(s) - 0.5

    def node(u: float) -> float:
        if u > 690.0 or u < -690.0:
            return 0.0
        ea = math.exp(u)
        eb = math.exp(-u)
        acc = 0.0
        base = su * u - a * ea
        for q, amp in zip(quarters, ams):
            e_arg = base - q * eb
            if e_arg > -745.0:
                acc += amp * math.exp(e_arg)
        return acc

    return _integrate(node, h0, max_level, abs_tol, rel_tol)


def bessel_k_integral(
    nu: float,
    z: float,
    h0: float = _H0,
    max_level: int = _MAX_LEVEL,
    abs_tol: float = _ABS_TOL,
    rel_tol: float = _REL_TOL,
):
    """integral_0^inf t^(-nu-1) e^(-t - z^2/(4t)) dt, the Bessel-K core.

    Multiplying by 2^(-nu-1) z^nu gives K_nu(z); that scaling is left to
    the caller so the kernel stays scale-free.
    """
    z24 = 0.25 * float(z) * float(z)
    nn = float(nu)

    def node(u: float) -> float:
        if u > 690.0 or u < -690.0:
            return 0.0
        e_arg = -nn * u - math.exp(u) - z24 * math.exp(-u)
        if e_arg < -745.0:
            return 0.0
        return math.exp(e_arg)

    return _integrate(node, h0, max_level, abs_tol, rel_tol)
