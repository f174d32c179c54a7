"""Pure-Python screening kernel.

Rejects (t, x) pairs whose exponent is certainly above a limit, using an
upper bound on |g| * N that needs only u1, u2 and t.  Since kappa decreases
in |g| * N, the bound gives a lower bound on kappa.  Survivors are handed to
the exact certifier.
"""

import math

REJECT_KAPPA = 0
REJECT_E = 1
SURVIVE = 2
DEGENERATE = 3

# relative slack on the floating-point logs; far above double rounding error
SLACK = 1e-7


def uz_coords(n, t, x):
    """(u1, u2) with -(x + sqrt t)^n = (u1 + u2 sqrt t)/2."""
    a, b = x, 1
    for _ in range(n - 1):
        a, b = a * x + b * t, a + b * x
    return -2 * a, -2 * b


def _log_abs(v):
    return math.log(abs(v))


def classify(u1, u2, t, log_d, log_n_max, kappa_limit):
    if u1 == 0 or u2 == 0:
        return DEGENERATE
    g1 = math.gcd(u1, u2)
    g2 = math.gcd(u1 // g1, t)
    log_g = _log_abs(g1) + 0.5 * math.log(g2) + log_n_max + SLACK
    la, lb = _log_abs(u1), _log_abs(u2)
    st = 0.5 * math.log(abs(t))
    if t < 0:
        # max = sqrt(u1^2 + u2^2|t|) + |u2| sqrt|t|
        big = max(2 * la, 2 * lb + 2 * st)
        small = min(2 * la, 2 * lb + 2 * st)
        log_s = 0.5 * (big + math.log1p(math.exp(small - big)))
        log_max = log_s + math.log1p(math.exp(lb + st - log_s))
    else:
        w = u2 * u2 * t - u1 * u1
        if w < 0:
            log_max = la
        else:
            x1 = lb + st
            x2 = 0.5 * math.log(w) if w > 0 else -math.inf
            hi, lo = max(x1, x2), min(x1, x2)
            log_max = hi + math.log1p(math.exp(lo - hi))
    log_min = 2 * la - log_max
    log_e_up = log_g - log_d - log_min
    if log_e_up <= -SLACK:
        return REJECT_E
    if log_e_up <= SLACK:
        return SURVIVE
    log_q_low = log_d + log_max - log_g
    kappa_low = log_q_low / log_e_up
    if kappa_low > kappa_limit + SLACK * (1 + abs(kappa_low)):
        return REJECT_KAPPA
    return SURVIVE


def screen_range(n, t, x_lo, x_hi, log_d, log_n_max, kappa_limit):
    """Codes for x in [x_lo, x_hi]."""
    out = []
    for x in range(x_lo, x_hi + 1):
        u1, u2 = uz_coords(n, t, x)
        out.append(classify(u1, u2, t, log_d, log_n_max, kappa_limit))
    return out
