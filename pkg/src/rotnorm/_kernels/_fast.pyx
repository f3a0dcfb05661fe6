# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels: permutation closure/BFS and integer l-infinity coset
enumeration.  Mirrors the API of `_pure`; selected at import time when the
extension built successfully."""

from cpython.bytes cimport PyBytes_FromStringAndSize

BACKEND = "fast"

DEF MAXDEG = 16
DEF MAXDIM = 8


def closure_bytes(list gens, Py_ssize_t cap):
    """Close a set of permutations (as bytes) under products; None if > cap."""
    if not gens:
        return []
    cdef Py_ssize_t n = len(<bytes>gens[0])
    cdef unsigned char buf[MAXDEG]
    cdef const unsigned char* cur_p
    cdef const unsigned char* gen_p
    cdef Py_ssize_t i, head = 0
    ident = PyBytes_FromStringAndSize(NULL, n)
    cdef unsigned char* ident_p = <unsigned char*><char*>ident
    for i in range(n):
        ident_p[i] = <unsigned char>i
    index = {ident: 0}
    elems = [ident]
    while head < len(elems):
        cur = elems[head]
        head += 1
        cur_p = <const unsigned char*><char*>cur
        for gen in gens:
            gen_p = <const unsigned char*><char*><bytes>gen
            for i in range(n):
                buf[i] = cur_p[gen_p[i]]
            prod = PyBytes_FromStringAndSize(<char*>buf, n)
            if prod not in index:
                if len(elems) >= cap:
                    return None
                index[prod] = len(elems)
                elems.append(prod)
    return elems


def word_lengths_bytes(list elements, list s):
    """BFS word lengths over generating set `s`; -1 marks unreachable."""
    if not elements:
        return []
    cdef Py_ssize_t n = len(<bytes>elements[0])
    cdef Py_ssize_t m = len(elements)
    cdef unsigned char buf[MAXDEG]
    cdef const unsigned char* cur_p
    cdef const unsigned char* gen_p
    cdef Py_ssize_t i, j, d
    index = {e: i for i, e in enumerate(elements)}
    ident = bytes(range(n))
    dist = [-1] * m
    dist[<Py_ssize_t>index[ident]] = 0
    frontier = [ident]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for cur in frontier:
            cur_p = <const unsigned char*><char*><bytes>cur
            for gen in s:
                gen_p = <const unsigned char*><char*><bytes>gen
                for i in range(n):
                    buf[i] = cur_p[gen_p[i]]
                prod = PyBytes_FromStringAndSize(<char*>buf, n)
                j = index[prod]
                if <int>dist[j] < 0:
                    dist[j] = d
                    nxt.append(prod)
        frontier = nxt
    return dist


cdef long long _llabs(long long v) noexcept nogil:
    return -v if v < 0 else v


cdef bint _cvp_visit(
    Py_ssize_t j, Py_ssize_t ell, Py_ssize_t m,
    long long* basis, Py_ssize_t* pivots,
    long long bound, long long* y,
    long long floor_norm, long long settled,
    long long* best, list points, long long c,
):
    # Apply coefficient c to row j, recurse, undo.  Returns False when the
    # pivot value left the current radius (monotone away from the center,
    # so the caller stops scanning that side).
    cdef long long* row = basis + j * MAXDIM
    cdef Py_ssize_t p = pivots[j], i
    cdef long long val = y[p] + c * row[p]
    cdef long long radius = bound
    if best[0] >= 0 and best[0] < radius:
        radius = best[0]
    if _llabs(val) > radius:
        return False
    if c:
        for i in range(m):
            y[i] += c * row[i]
    # Columns [pivots[j], next pivot) are final once this row is chosen.
    cdef Py_ssize_t stop = pivots[j + 1] if j + 1 < ell else m
    cdef long long done = settled
    for i in range(p, stop):
        if _llabs(y[i]) > done:
            done = _llabs(y[i])
    _cvp_rec(j + 1, ell, m, basis, pivots, bound, y, floor_norm, done,
             best, points)
    if c:
        for i in range(m):
            y[i] -= c * row[i]
    return True


cdef void _cvp_rec(
    Py_ssize_t j, Py_ssize_t ell, Py_ssize_t m,
    long long* basis, Py_ssize_t* pivots,
    long long bound, long long* y,
    long long floor_norm, long long settled,
    long long* best, list points,
):
    # `basis` is row-major flat storage with stride MAXDIM; `y` is the
    # current candidate target + partial lattice sum.
    cdef long long norm, piv, lo, hi, c, center, r0
    cdef Py_ssize_t i, p
    norm = settled if settled > floor_norm else floor_norm
    if best[0] >= 0 and norm > best[0]:
        return
    if j == ell:
        if best[0] < 0 or norm < best[0]:
            best[0] = norm
            del points[:]
            points.append(tuple(y[i] for i in range(m)))
        elif norm == best[0]:
            points.append(tuple(y[i] for i in range(m)))
        return
    p = pivots[j]
    piv = basis[j * MAXDIM + p]
    r0 = bound
    if best[0] >= 0 and best[0] < r0:
        r0 = best[0]
    lo = -((r0 + y[p]) // piv)
    hi = (r0 - y[p]) // piv
    if lo > hi:
        return
    center = -((2 * y[p] + piv) // (2 * piv))
    if center < lo:
        center = lo
    elif center > hi:
        center = hi
    _cvp_visit(j, ell, m, basis, pivots, bound, y, floor_norm, settled,
               best, points, center)
    c = center - 1
    while c >= lo and _cvp_visit(j, ell, m, basis, pivots, bound, y,
                                 floor_norm, settled, best, points, c):
        c -= 1
    c = center + 1
    while c <= hi and _cvp_visit(j, ell, m, basis, pivots, bound, y,
                                 floor_norm, settled, best, points, c):
        c += 1


def cvp_enumerate(list basis, list pivots, list target, long long bound):
    """Certified integer l-infinity coset minimum; see `_pure.cvp_enumerate`."""
    cdef Py_ssize_t ell = len(basis)
    cdef Py_ssize_t m = len(target)
    cdef long long B[MAXDIM * MAXDIM]
    cdef long long Y[MAXDIM]
    cdef long long best = -1
    cdef long long floor_norm = 0
    cdef Py_ssize_t piv[MAXDIM]
    cdef Py_ssize_t i, j, first_piv
    if ell > MAXDIM or m > MAXDIM:
        raise OverflowError("dimension exceeds compiled kernel limit")
    for j in range(ell):
        piv[j] = pivots[j]
        for i in range(m):
            B[j * MAXDIM + i] = basis[j][i]
    for i in range(m):
        Y[i] = target[i]
    first_piv = piv[0] if ell else m
    for i in range(first_piv):
        if _llabs(Y[i]) > floor_norm:
            floor_norm = _llabs(Y[i])
    points = []
    _cvp_rec(0, ell, m, B, piv, bound, Y, floor_norm, 0, &best, points)
    points.sort()
    return (best if best >= 0 else None), points
