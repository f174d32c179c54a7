# cython: language_level=3, boundscheck=False, wraparound=False
"""GMP-backed screening kernel; same decisions as _screen_py."""

from libc.math cimport log, log1p, exp, fabs, INFINITY

cdef extern from "gmp.h":
    ctypedef struct __mpz_struct:
        pass
    ctypedef __mpz_struct mpz_t[1]
    void mpz_init(mpz_t)
    void mpz_clear(mpz_t)
    void mpz_set_si(mpz_t, long)
    void mpz_set(mpz_t, const mpz_t)
    void mpz_mul_si(mpz_t, const mpz_t, long)
    void mpz_add(mpz_t, const mpz_t, const mpz_t)
    void mpz_mul(mpz_t, const mpz_t, const mpz_t)
    void mpz_sub(mpz_t, const mpz_t, const mpz_t)
    void mpz_gcd(mpz_t, const mpz_t, const mpz_t)
    void mpz_divexact(mpz_t, const mpz_t, const mpz_t)
    int mpz_sgn(const mpz_t)
    double mpz_get_d_2exp(long *, const mpz_t)

cdef double LN2 = 0.6931471805599453

cdef int REJECT_KAPPA = 0
cdef int REJECT_E = 1
cdef int SURVIVE = 2
cdef int DEGENERATE = 3
cdef double SLACK = 1e-7


cdef inline double log_abs(const mpz_t v):
    cdef long e
    cdef double d = mpz_get_d_2exp(&e, v)
    return log(fabs(d)) + e * LN2


cdef int classify(mpz_t u1, mpz_t u2, long t, double log_d, double log_n_max,
                  double kappa_limit, mpz_t g1, mpz_t v, mpz_t g2, mpz_t tz, mpz_t w):
    cdef double log_g, la, lb, st, big, small, log_s, log_max, log_min
    cdef double x1, x2, hi, lo, log_e_up, log_q_low, kappa_low
    if mpz_sgn(u1) == 0 or mpz_sgn(u2) == 0:
        return DEGENERATE
    mpz_gcd(g1, u1, u2)
    mpz_divexact(v, u1, g1)
    mpz_set_si(tz, t)
    mpz_gcd(g2, v, tz)
    log_g = log_abs(g1) + 0.5 * log_abs(g2) + log_n_max + SLACK
    la = log_abs(u1)
    lb = log_abs(u2)
    st = 0.5 * log(fabs(<double>t))
    if t < 0:
        big = max(2 * la, 2 * lb + 2 * st)
        small = min(2 * la, 2 * lb + 2 * st)
        log_s = 0.5 * (big + log1p(exp(small - big)))
        log_max = log_s + log1p(exp(lb + st - log_s))
    else:
        mpz_mul(w, u2, u2)
        mpz_mul_si(w, w, t)
        mpz_mul(v, u1, u1)
        mpz_sub(w, w, v)
        if mpz_sgn(w) < 0:
            log_max = la
        else:
            x1 = lb + st
            x2 = 0.5 * log_abs(w) if mpz_sgn(w) > 0 else -INFINITY
            hi = max(x1, x2)
            lo = min(x1, x2)
            log_max = hi + log1p(exp(lo - hi))
    log_min = 2 * la - log_max
    log_e_up = log_g - log_d - log_min
    if log_e_up <= -SLACK:
        return REJECT_E
    if log_e_up <= SLACK:
        return SURVIVE
    log_q_low = log_d + log_max - log_g
    kappa_low = log_q_low / log_e_up
    if kappa_low > kappa_limit + SLACK * (1 + fabs(kappa_low)):
        return REJECT_KAPPA
    return SURVIVE


def screen_range(int n, long t, long x_lo, long x_hi, double log_d, double log_n_max,
                 double kappa_limit):
    """Codes for x in [x_lo, x_hi]; see _screen_py.screen_range."""
    cdef mpz_t a, b, a2, tmp, g1, v, g2, tz, w
    cdef long x
    cdef int i
    cdef list out = []
    mpz_init(a); mpz_init(b); mpz_init(a2); mpz_init(tmp)
    mpz_init(g1); mpz_init(v); mpz_init(g2); mpz_init(tz); mpz_init(w)
    try:
        for x in range(x_lo, x_hi + 1):
            mpz_set_si(a, x)
            mpz_set_si(b, 1)
            for i in range(n - 1):
                # (a + b sqrt t)(x + sqrt t) = (a x + b t) + (a + b x) sqrt t
                mpz_mul_si(a2, a, x)
                mpz_mul_si(tmp, b, t)
                mpz_add(a2, a2, tmp)
                mpz_mul_si(tmp, b, x)
                mpz_add(b, a, tmp)
                mpz_set(a, a2)
            # u1 = -2a, u2 = -2b
            mpz_mul_si(a, a, -2)
            mpz_mul_si(b, b, -2)
            out.append(classify(a, b, t, log_d, log_n_max, kappa_limit, g1, v, g2, tz, w))
    finally:
        mpz_clear(a); mpz_clear(b); mpz_clear(a2); mpz_clear(tmp)
        mpz_clear(g1); mpz_clear(v); mpz_clear(g2); mpz_clear(tz); mpz_clear(w)
    return out
