# cython: language_level=3
"""Compiled twin of ``combstab.kernels._pure``.

Small inputs run on C integers; anything near the 64-bit comfort zone falls
back to arbitrary-precision Python ints inside this same module, so results
are always exact.  Division below keeps Python (floored) semantics: C
truncated division would be wrong for the negative Euler characteristics
that dominate this domain.
"""

cdef long long GUARD = 268435456  # 2**28; keeps every intermediate product below 2**62
cdef long long RANK_GUARD = 1024  # ranks and weight denominators stay tiny in practice


def simplest_between(object ap, object aq, object bp, object bq):
    """Simplest fraction strictly inside the open interval (ap/aq, bp/bq)."""
    cdef long long ca, cb, cc, cd
    try:
        ca = ap
        cb = aq
        cc = bp
        cd = bq
    except OverflowError:
        return _simplest_obj(ap, aq, bp, bq)
    if not (-GUARD < ca < GUARD and -GUARD < cb < GUARD and -GUARD < cc < GUARD and -GUARD < cd < GUARD):
        return _simplest_obj(ap, aq, bp, bq)
    if cb <= 0 or cd <= 0:
        raise ValueError("denominators must be positive")
    if ca * cd >= cc * cb:
        raise ValueError("empty open interval")
    return _simplest_ll(ca, cb, cc, cd)


cdef tuple _simplest_ll(long long ap, long long aq, long long bp, long long bq):
    cdef long long h1 = 1, h0 = 0, k1 = 0, k0 = 1
    cdef long long fl, c, ap2, bp2, q2, p, q
    while True:
        fl = ap // aq
        c = fl + 1
        if c * bq < bp and c * aq > ap:
            p, q = c, 1
            break
        ap2 = ap - fl * aq
        bp2 = bp - fl * bq
        if ap2 == 0:
            q2 = bq // bp2 + 1
            p, q = fl * q2 + 1, q2
            break
        h1, h0, k1, k0 = h1 * fl + h0, h1, k1 * fl + k0, k1
        # Shift into [0, 1) and invert; ordering is preserved.
        ap, aq, bp, bq = bq, bp2, aq, ap2
    return h1 * p + h0 * q, k1 * p + k0 * q


cdef tuple _simplest_obj(object ap, object aq, object bp, object bq):
    if aq <= 0 or bq <= 0:
        raise ValueError("denominators must be positive")
    if ap * bq >= bp * aq:
        raise ValueError("empty open interval")
    cdef object h1 = 1, h0 = 0, k1 = 0, k0 = 1
    cdef object fl, c, ap2, bp2, q2, p, q
    while True:
        fl = ap // aq
        c = fl + 1
        if c * bq < bp and c * aq > ap:
            p, q = c, 1
            break
        ap2 = ap - fl * aq
        bp2 = bp - fl * bq
        if ap2 == 0:
            q2 = bq // bp2 + 1
            p, q = fl * q2 + 1, q2
            break
        h1, h0, k1, k0 = h1 * fl + h0, h1, k1 * fl + k0, k1
        ap, aq, bp, bq = bq, bp2, aq, ap2
    return h1 * p + h0 * q, k1 * p + k0 * q


def destabilizer_range(object k, object chi_j, object n, object w_num, object w_den, object chi):
    """Inclusive integer range (lo, hi) of admissible destabilizer Euler characteristics."""
    cdef long long ck, cj, cn, cwn, cwd, cc
    try:
        ck = k
        cj = chi_j
        cn = n
        cwn = w_num
        cwd = w_den
        cc = chi
    except OverflowError:
        return _range_obj(k, chi_j, n, w_num, w_den, chi)
    if not (
        -GUARD < cj < GUARD
        and -GUARD < cc < GUARD
        and -RANK_GUARD < ck < RANK_GUARD
        and -RANK_GUARD < cn < RANK_GUARD
        and -RANK_GUARD < cwn < RANK_GUARD
        and -RANK_GUARD < cwd < RANK_GUARD
    ):
        return _range_obj(k, chi_j, n, w_num, w_den, chi)
    if ck < 1 or cn < 1 or cwd < 1:
        raise ValueError("rank and weight denominator must be positive")
    return (ck * cj) // cn + 1, (ck * cwn * cc) // (cwd * cn) + ck


cdef tuple _range_obj(object k, object chi_j, object n, object w_num, object w_den, object chi):
    if k < 1 or n < 1 or w_den < 1:
        raise ValueError("rank and weight denominator must be positive")
    return (k * chi_j) // n + 1, (k * w_num * chi) // (w_den * n) + k
