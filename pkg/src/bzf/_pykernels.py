"""Pure-Python window kernels; the reference for ``_ckernels``.

Elements are rows ``(i, j, p)`` of an int64 array.  Callers guarantee that
indices are small enough for every intermediate to fit in 64 bits.
"""


def _mul(ai, aj, ap, bi, bj, bp):
    if aj <= bi:
        d = bi - aj
        q = ap - d
        return ai + d, bj, q if q > bp else bp
    d = aj - bi
    q = bp - d
    return ai, d + bj, ap if ap > q else q


def assoc_scan(elems):
    """Index ``(a*n + b)*n + c`` of the first non-associative triple, or -1."""
    rows = [tuple(int(x) for x in r) for r in elems]
    n = len(rows)
    for ia, a in enumerate(rows):
        for ib, b in enumerate(rows):
            ab = _mul(*a, *b)
            for ic, c in enumerate(rows):
                bc = _mul(*b, *c)
                if _mul(*ab, *c) != _mul(*a, *bc):
                    return (ia * n + ib) * n + ic
    return -1


def _apply(e, shift, flip, k):
    i, j, p = e
    if not flip:
        return i + shift, j + shift, p
    d = shift + p
    return i + d, j + d, k - p


def aut_hom_scan(elems, shift, flip, k):
    """Index ``a*n + b`` of the first pair with ``m(ab) != m(a)m(b)``, or -1."""
    rows = [tuple(int(x) for x in r) for r in elems]
    n = len(rows)
    imgs = [_apply(r, shift, flip, k) for r in rows]
    for ia, a in enumerate(rows):
        ma = imgs[ia]
        for ib, b in enumerate(rows):
            if _apply(_mul(*a, *b), shift, flip, k) != _mul(*ma, *imgs[ib]):
                return ia * n + ib
    return -1
