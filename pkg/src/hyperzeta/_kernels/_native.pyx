# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled quadrature kernels.

Mirror of fallback.py, node for node: same change of variables, same
overflow guards, same truncation scan, same pairwise summation tree.
Only libm calls are used in the node functions so values match the
pure-Python backend to the last bit on IEEE-conforming platforms.
Keep both files synchronized when anything here changes.
"""

from libc.math cimport cosh, exp, fabs, sinh
from libc.stdlib cimport free, malloc

import math

BACKEND_NAME = "native"

cdef double _H0 = 0.5
cdef int _MAX_LEVEL = 12
cdef double _ABS_TOL = 1e-12
cdef double _REL_TOL = 1e-14
cdef int _SCAN_LIMIT = 400
cdef double _NEGLIGIBLE = 1e-300
cdef double _HALF_PI = math.pi / 2.0
cdef double _TWO_PI = 2.0 * math.pi

cdef enum:
    KIND_PLANCHEREL = 0
    KIND_MELLIN = 1
    KIND_BESSEL = 2

cdef struct Params:
    int kind
    double t
    double alpha
    double su
    double nu
    double z24
    int ncoef
    double* coeffs
    int ngeo
    double* quarters
    double* amps


cdef double _tanh_pi_pos(double r) noexcept nogil:
    cdef double x = _TWO_PI * r
    if x > 709.0:
        return 1.0
    return 1.0 - 2.0 / (1.0 + exp(x))


cdef double _node(Params* P, double u) noexcept nogil:
    cdef double x, two_x, r2, e_arg, p_val, r, ea, eb, acc, base
    cdef int i
    if P.kind == KIND_PLANCHEREL:
        x = _HALF_PI * sinh(u)
        two_x = 2.0 * x
        if two_x > 700.0:
            return 0.0
        r2 = exp(two_x)
        e_arg = P.t * r2
        if e_arg - 2.0 * P.ncoef * x - fabs(u) > 720.0:
            return 0.0
        p_val = 0.0
        for i in range(P.ncoef - 1, -1, -1):
            p_val = p_val * r2 + P.coeffs[i]
        r = exp(x)
        return _HALF_PI * cosh(u) * r2 * p_val * _tanh_pi_pos(r) * exp(-e_arg)
    elif P.kind == KIND_MELLIN:
        if u > 690.0 or u < -690.0:
            return 0.0
        ea = exp(u)
        eb = exp(-u)
        acc = 0.0
        base = P.su * u - P.alpha * ea
        for i in range(P.ngeo):
            e_arg = base - P.quarters[i] * eb
            if e_arg > -745.0:
                acc += P.amps[i] * exp(e_arg)
        return acc
    else:
        if u > 690.0 or u < -690.0:
            return 0.0
        e_arg = -P.nu * u - exp(u) - P.z24 * exp(-u)
        if e_arg < -745.0:
            return 0.0
        return exp(e_arg)


cdef double _pairwise(double* a, Py_ssize_t lo, Py_ssize_t hi) noexcept nogil:
    cdef double acc = 0.0
    cdef Py_ssize_t i, mid
    if hi - lo <= 8:
        for i in range(lo, hi):
            acc += a[i]
        return acc
    mid = (lo + hi) // 2
    return _pairwise(a, lo, mid) + _pairwise(a, mid, hi)


cdef tuple _run(Params* P, double h0, int max_level, double abs_tol, double rel_tol):
    cdef double center = _node(P, 0.0)
    cdef double pos_vals[400]
    cdef double neg_vals[400]
    cdef int n_pos = 0, n_neg = 0, run = 0, i
    cdef double v

    while n_pos < _SCAN_LIMIT and run < 3:
        v = _node(P, (n_pos + 1) * h0)
        pos_vals[n_pos] = v
        n_pos += 1
        run = run + 1 if fabs(v) <= _NEGLIGIBLE else 0
    run = 0
    while n_neg < _SCAN_LIMIT and run < 3:
        v = _node(P, -(n_neg + 1) * h0)
        neg_vals[n_neg] = v
        n_neg += 1
        run = run + 1 if fabs(v) <= _NEGLIGIBLE else 0

    cdef Py_ssize_t total_n = n_neg + 1 + n_pos
    cdef double* ordered = <double*> malloc(total_n * sizeof(double))
    if ordered == NULL:
        raise MemoryError()
    for i in range(n_neg):
        ordered[i] = neg_vals[n_neg - 1 - i]
    ordered[n_neg] = center
    for i in range(n_pos):
        ordered[n_neg + 1 + i] = pos_vals[i]
    cdef double total = h0 * _pairwise(ordered, 0, total_n)
    free(ordered)

    cdef double u_lo = -n_neg * h0
    cdef double delta = math.inf
    cdef double h, refined
    cdef Py_ssize_t count, j
    cdef double* new_vals
    cdef int level = 0
    for level in range(1, max_level + 1):
        h = h0 / (1 << level)
        count = (<Py_ssize_t> (n_pos + n_neg)) << (level - 1)
        new_vals = <double*> malloc(count * sizeof(double))
        if new_vals == NULL:
            raise MemoryError()
        with nogil:
            for j in range(count):
                new_vals[j] = _node(P, u_lo + (2 * j + 1) * h)
            refined = 0.5 * total + h * _pairwise(new_vals, 0, count)
        free(new_vals)
        delta = fabs(refined - total)
        total = refined
        if delta <= max(abs_tol, rel_tol * fabs(total)):
            return total, delta, level, True
    return total, delta, level, False


def plancherel_integral(coeffs, double t, double h0=_H0, int max_level=_MAX_LEVEL,
                        double abs_tol=_ABS_TOL, double rel_tol=_REL_TOL):
    """integral_0^inf r P(r^2) tanh(pi r) e^(-t r^2) dr; see fallback.py."""
    cdef int n = len(coeffs)
    cdef double* cs = <double*> malloc(n * sizeof(double))
    if cs == NULL:
        raise MemoryError()
    cdef int i
    try:
        for i in range(n):
            cs[i] = float(coeffs[i])
        return _run_plancherel(cs, n, t, h0, max_level, abs_tol, rel_tol)
    finally:
        free(cs)


cdef tuple _run_plancherel(double* cs, int n, double t, double h0, int max_level,
                           double abs_tol, double rel_tol):
    cdef Params P
    P.kind = KIND_PLANCHEREL
    P.t = t
    P.ncoef = n
    P.coeffs = cs
    return _run(&P, h0, max_level, abs_tol, rel_tol)


def mellin_time_integral(lengths, amps, double alpha, double s, double h0=_H0,
                         int max_level=_MAX_LEVEL, double abs_tol=_ABS_TOL,
                         double rel_tol=_REL_TOL):
    """Mellin transform of the summed Gaussian-length kernel; see fallback.py."""
    cdef int n = len(lengths)
    if n != len(amps):
        raise ValueError("lengths and amps must have equal size")
    if n == 0:
        return 0.0, 0.0, 0, True
    cdef double* quarters = <double*> malloc(n * sizeof(double))
    cdef double* ams = <double*> malloc(n * sizeof(double))
    if quarters == NULL or ams == NULL:
        free(quarters)
        free(ams)
        raise MemoryError()
    cdef int i
    cdef double l
    try:
        for i in range(n):
            l = float(lengths[i])
            quarters[i] = 0.25 * l * l
            ams[i] = float(amps[i])
        return _run_mellin(quarters, ams, n, alpha, s, h0, max_level, abs_tol, rel_tol)
    finally:
        free(quarters)
        free(ams)


cdef tuple _run_mellin(double* quarters, double* ams, int n, double alpha, double s,
                       double h0, int max_level, double abs_tol, double rel_tol):
    cdef Params P
    P.kind = KIND_MELLIN
    P.alpha = alpha
    P.su = s - 0.5
    P.ngeo = n
    P.quarters = quarters
    P.amps = ams
    return _run(&P, h0, max_level, abs_tol, rel_tol)


def bessel_k_integral(double nu, double z, double h0=_H0, int max_level=_MAX_LEVEL,
                      double abs_tol=_ABS_TOL, double rel_tol=_REL_TOL):
    """integral_0^inf t^(-nu-1) e^(-t - z^2/(4t)) dt; see fallback.py."""
    cdef Params P
    P.kind = KIND_BESSEL
    P.nu = nu
    P.z24 = 0.25 * z * z
    return _run(&P, h0, max_level, abs_tol, rel_tol)
