# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled interval Newton isolator for a single f_sigma.

Step-for-step transcription of ``interval._isolate`` driven by
``PatternFunction.enclose`` / ``enclose_deriv``; both backends must return the
same raw boxes.  Do not build with -ffast-math: the outward rounding relies on
IEEE semantics of nextafter, inf and signed zero.
"""

from libc.math cimport nextafter, sqrt, INFINITY, isfinite
from libc.stdlib cimport malloc, free

cdef inline double dn(double x) nogil:
    return nextafter(x, -INFINITY)

cdef inline double up(double x) nogil:
    return nextafter(x, INFINITY)

cdef inline double prod(double a, double b) nogil:
    if a == 0.0 or b == 0.0:
        return 0.0
    return a * b

cdef inline double min4(double a, double b, double c, double d) nogil:
    cdef double m = a
    if b < m: m = b
    if c < m: m = c
    if d < m: m = d
    return m

cdef inline double max4(double a, double b, double c, double d) nogil:
    cdef double m = a
    if b > m: m = b
    if c > m: m = c
    if d > m: m = d
    return m

cdef struct Box:
    double lo
    double hi
    int depth
    int cert

cdef struct Pattern:
    int n
    double dn_
    const double* sign
    const double* k2lo
    const double* k2hi
    const double* w2lo
    const double* w2hi


# rad = k2 * x - w2 with the generic 4-product interval multiply
cdef inline void radicand(const Pattern* p, int i, double xl, double xh,
                          double* rl, double* rh) nogil:
    cdef double a = p.k2lo[i]
    cdef double b = p.k2hi[i]
    cdef double pl = dn(min4(prod(a, xl), prod(a, xh), prod(b, xl), prod(b, xh)))
    cdef double ph = up(max4(prod(a, xl), prod(a, xh), prod(b, xl), prod(b, xh)))
    rl[0] = dn(pl - p.w2hi[i])
    rh[0] = up(ph - p.w2lo[i])


# returns 0 when the enclosure is EMPTY
cdef int enclose_f(const Pattern* p, double xl, double xh, double* fl, double* fh) nogil:
    cdef double al = 0.0, ah = 0.0, rl, rh, sl, sh, ql, qh
    cdef int i
    for i in range(p.n):
        radicand(p, i, xl, xh, &rl, &rh)
        if rh < 0.0:
            return 0
        sl = 0.0 if rl <= 0.0 else dn(sqrt(rl))
        sh = up(sqrt(rh))
        if p.sign[i] > 0:
            al = dn(al + sl)
            ah = up(ah + sh)
        else:
            al = dn(al - sh)
            ah = up(ah - sl)
    ql = dn(min4(al / p.dn_, al / p.dn_, ah / p.dn_, ah / p.dn_))
    qh = up(max4(al / p.dn_, al / p.dn_, ah / p.dn_, ah / p.dn_))
    fl[0] = dn(ql - xh)
    fh[0] = up(qh - xl)
    return 1


cdef void enclose_df(const Pattern* p, double xl, double xh, double* dl, double* dh) nogil:
    cdef double al = 0.0, ah = 0.0, rl, rh, sl, sh, tl, th, ql, qh, a, b
    cdef int i
    for i in range(p.n):
        radicand(p, i, xl, xh, &rl, &rh)
        if rl <= 0.0:
            dl[0] = -INFINITY
            dh[0] = INFINITY
            return
        sl = dn(sqrt(rl))
        sh = up(sqrt(rh))
        # s * 2.0
        tl = dn(min4(prod(sl, 2.0), prod(sl, 2.0), prod(sh, 2.0), prod(sh, 2.0)))
        th = up(max4(prod(sl, 2.0), prod(sl, 2.0), prod(sh, 2.0), prod(sh, 2.0)))
        # k2 / (2 s)
        a = p.k2lo[i]
        b = p.k2hi[i]
        ql = dn(min4(a / tl, a / th, b / tl, b / th))
        qh = up(max4(a / tl, a / th, b / tl, b / th))
        if p.sign[i] > 0:
            al = dn(al + ql)
            ah = up(ah + qh)
        else:
            al = dn(al - qh)
            ah = up(ah - ql)
    ql = dn(min4(al / p.dn_, al / p.dn_, ah / p.dn_, ah / p.dn_))
    qh = up(max4(al / p.dn_, al / p.dn_, ah / p.dn_, ah / p.dn_))
    dl[0] = dn(ql - 1.0)
    dh[0] = up(qh - 1.0)


def isolate(const double[::1] sign, const double[::1] k2lo, const double[::1] k2hi,
            const double[::1] w2lo, const double[::1] w2hi,
            double a0, double b0, double tol, int max_depth):
    """Raw boxes ``(lo, hi, certified, depth_exceeded)`` possibly holding roots."""
    cdef Pattern p
    p.n = sign.shape[0]
    p.dn_ = <double>p.n
    p.sign = &sign[0]
    p.k2lo = &k2lo[0]
    p.k2hi = &k2hi[0]
    p.w2lo = &w2lo[0]
    p.w2hi = &w2hi[0]

    out = []
    cdef Py_ssize_t cap = 256, top = 0
    cdef Box* stack = <Box*>malloc(cap * sizeof(Box))
    cdef Box* grown
    cdef Box bx
    cdef double a, b, m, fl, fh, dl, dh, ml, mh, el, eh, vl, vh, nl, nh, ql, qh, a2, b2, m2
    cdef int cert, cert2 = 0, depth, has_m, newton
    cdef Py_ssize_t i
    if stack == NULL:
        raise MemoryError()
    try:
        stack[0].lo = a0
        stack[0].hi = b0
        stack[0].depth = 0
        stack[0].cert = 0
        top = 1
        while top > 0:
            if top + 2 > cap:
                grown = <Box*>malloc(2 * cap * sizeof(Box))
                if grown == NULL:
                    raise MemoryError()
                for i in range(top):
                    grown[i] = stack[i]
                free(stack)
                stack = grown
                cap *= 2
            top -= 1
            bx = stack[top]
            a = bx.lo
            b = bx.hi
            depth = bx.depth
            cert = bx.cert
            if not enclose_f(&p, a, b, &fl, &fh) or fl > 0.0 or fh < 0.0:
                continue
            if depth > max_depth:
                out.append((a, b, False, True))
                continue
            enclose_df(&p, a, b, &dl, &dh)
            m = a + 0.5 * (b - a)
            has_m = enclose_f(&p, m, m, &ml, &mh)
            if isfinite(dl) and isfinite(dh) and has_m:
                # mean-value form: fm + d * [a - m, b - m]
                el = dn(a - m)
                eh = up(b - m)
                vl = dn(min4(prod(dl, el), prod(dl, eh), prod(dh, el), prod(dh, eh)))
                vh = up(max4(prod(dl, el), prod(dl, eh), prod(dh, el), prod(dh, eh)))
                vl = dn(ml + vl)
                vh = up(mh + vh)
                if vl > 0.0 or vh < 0.0:
                    continue
            newton = has_m and not (dl <= 0.0 and 0.0 <= dh)
            if newton:
                # q = fm / d, then n = m - q
                ql = dn(min4(ml / dl, ml / dh, mh / dl, mh / dh))
                qh = up(max4(ml / dl, ml / dh, mh / dl, mh / dh))
                nl = dn(m - qh)
                nh = up(m - ql)
                a2 = a if a > nl else nl
                b2 = b if b < nh else nh
                if a2 > b2:
                    continue
                cert2 = cert or (a < nl and nh < b)
            if b - a <= tol or not (a < m and m < b):
                if newton:
                    out.append((a2, b2, bool(cert2), False))
                else:
                    out.append((a, b, bool(cert), False))
                continue
            if not newton:
                stack[top].lo = m; stack[top].hi = b
                stack[top].depth = depth + 1; stack[top].cert = 0
                stack[top + 1].lo = a; stack[top + 1].hi = m
                stack[top + 1].depth = depth + 1; stack[top + 1].cert = 0
                top += 2
            elif cert2:
                if b2 - a2 < b - a:
                    stack[top].lo = a2; stack[top].hi = b2
                    stack[top].depth = depth + 1; stack[top].cert = 1
                    top += 1
                else:
                    out.append((a2, b2, True, False))
            elif b2 - a2 <= 0.5 * (b - a):
                stack[top].lo = a2; stack[top].hi = b2
                stack[top].depth = depth + 1; stack[top].cert = 0
                top += 1
            else:
                m2 = a2 + 0.5 * (b2 - a2)
                if not (a2 < m2 and m2 < b2):
                    out.append((a2, b2, False, False))
                    continue
                stack[top].lo = m2; stack[top].hi = b2
                stack[top].depth = depth + 1; stack[top].cert = 0
                stack[top + 1].lo = a2; stack[top + 1].hi = m2
                stack[top + 1].depth = depth + 1; stack[top + 1].cert = 0
                top += 2
    finally:
        free(stack)
    return out
