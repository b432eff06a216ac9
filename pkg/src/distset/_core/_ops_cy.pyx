# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled integer kernels.

Mirrors ``ops_py`` exactly: same functions, same iteration order, same
results.  Inputs are plain Python ints pre-scaled to a common
denominator; the dispatcher in ``_core.__init__`` only routes here when
every value (and every sum of three of them) fits in int64.
"""

from cpython.mem cimport PyMem_Free, PyMem_Malloc

BACKEND = "cython"

ctypedef long long i64

cdef i64 _SENTINEL = <i64>-9223372036854775807


cdef i64* _copy_seq(seq, Py_ssize_t* out_n) except NULL:
    cdef Py_ssize_t n = len(seq)
    cdef i64* buf = <i64*> PyMem_Malloc((n if n > 0 else 1) * sizeof(i64))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    try:
        for i in range(n):
            buf[i] = seq[i]
    except BaseException:
        PyMem_Free(buf)
        raise
    out_n[0] = n
    return buf


cdef inline Py_ssize_t _bisect_right(i64* arr, Py_ssize_t n, i64 s) nogil:
    cdef Py_ssize_t lo = 0, hi = n, mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if arr[mid] <= s:
            lo = mid + 1
        else:
            hi = mid
    return lo


cdef i64 _sup_le(i64* los, i64* his, Py_ssize_t m, i64 s) except? -9223372036854775807:
    cdef Py_ssize_t t = _bisect_right(los, m, s)
    if t == 0:
        raise ValueError("no set element below the requested bound")
    cdef i64 h = his[t - 1]
    return h if s > h else s


cdef inline bint _member_in(i64* pts, Py_ssize_t n, i64 lo, i64 hi) nogil:
    if lo > hi:
        return False
    cdef Py_ssize_t i = _bisect_right(pts, n, lo - 1)
    return i < n and pts[i] <= hi


def sup_le(los, his, s):
    cdef Py_ssize_t m = 0
    cdef i64* clos = _copy_seq(los, &m)
    cdef i64* chis
    cdef Py_ssize_t m2 = 0
    try:
        chis = _copy_seq(his, &m2)
    except BaseException:
        PyMem_Free(clos)
        raise
    try:
        return _sup_le(clos, chis, m, s)
    finally:
        PyMem_Free(clos)
        PyMem_Free(chis)


def scan_assoc(los, his, cands):
    cdef Py_ssize_t m = 0, mh = 0, n = 0
    cdef i64* clos = NULL
    cdef i64* chis = NULL
    cdef i64* cc = NULL
    cdef Py_ssize_t i, j, k
    cdef i64 x, y, z, xy, p1, p2, p3
    try:
        clos = _copy_seq(los, &m)
        chis = _copy_seq(his, &mh)
        cc = _copy_seq(cands, &n)
        for i in range(n):
            x = cc[i]
            for j in range(i, n):
                y = cc[j]
                xy = _sup_le(clos, chis, m, x + y)
                for k in range(j, n):
                    z = cc[k]
                    p1 = _sup_le(clos, chis, m, xy + z)
                    p3 = _sup_le(clos, chis, m,
                                 _sup_le(clos, chis, m, y + z) + x)
                    if p1 != p3:
                        return (i, j, k)
                    p2 = _sup_le(clos, chis, m,
                                 _sup_le(clos, chis, m, x + z) + y)
                    if p1 != p2:
                        return (i, j, k)
        return None
    finally:
        if clos != NULL:
            PyMem_Free(clos)
        if chis != NULL:
            PyMem_Free(chis)
        if cc != NULL:
            PyMem_Free(cc)


def check_triples(los, his, triples):
    cdef Py_ssize_t m = 0, mh = 0, n3 = 0
    cdef i64* clos = NULL
    cdef i64* chis = NULL
    cdef i64* tt = NULL
    cdef Py_ssize_t t
    cdef i64 x, y, z, p1, p2, p3
    try:
        clos = _copy_seq(los, &m)
        chis = _copy_seq(his, &mh)
        tt = _copy_seq(triples, &n3)
        for t in range(0, n3, 3):
            x = tt[t]
            y = tt[t + 1]
            z = tt[t + 2]
            p1 = _sup_le(clos, chis, m, _sup_le(clos, chis, m, x + y) + z)
            p2 = _sup_le(clos, chis, m, _sup_le(clos, chis, m, x + z) + y)
            p3 = _sup_le(clos, chis, m, _sup_le(clos, chis, m, y + z) + x)
            if not (p1 == p2 and p2 == p3):
                return t // 3
        return -1
    finally:
        if clos != NULL:
            PyMem_Free(clos)
        if chis != NULL:
            PyMem_Free(chis)
        if tt != NULL:
            PyMem_Free(tt)


def scan_four_values(points):
    cdef Py_ssize_t n = 0
    cdef i64* pts = NULL
    cdef Py_ssize_t i, j, k, l
    cdef i64 e1, e2, e3, a, d23, d13, d12
    cdef bint b1, b2, b3
    try:
        pts = _copy_seq(points, &n)
        for i in range(n):
            e1 = pts[i]
            for j in range(i, n):
                e2 = pts[j]
                for k in range(j, n):
                    e3 = pts[k]
                    d23 = e3 - e2
                    d13 = e3 - e1
                    d12 = e2 - e1
                    for l in range(k, n):
                        a = pts[l]
                        if a > e1 + e2 + e3:
                            break
                        b1 = _member_in(pts, n,
                                        max(a - e1, d23), min(a + e1, e2 + e3))
                        b2 = _member_in(pts, n,
                                        max(a - e2, d13), min(a + e2, e1 + e3))
                        if b1 != b2:
                            return (i, j, k, l)
                        b3 = _member_in(pts, n,
                                        max(a - e3, d12), min(a + e3, e1 + e2))
                        if b1 != b3:
                            return (i, j, k, l)
        return None
    finally:
        if pts != NULL:
            PyMem_Free(pts)


def closure_step(points, los, his):
    cdef Py_ssize_t n = 0, m = 0, mh = 0
    cdef i64* pts = NULL
    cdef i64* clos = NULL
    cdef i64* chis = NULL
    cdef Py_ssize_t i, j
    cdef i64 p
    out = set(points)
    try:
        pts = _copy_seq(points, &n)
        clos = _copy_seq(los, &m)
        chis = _copy_seq(his, &mh)
        for i in range(n):
            p = pts[i]
            for j in range(i, n):
                out.add(_sup_le(clos, chis, m, p + pts[j]))
        return sorted(out)
    finally:
        if pts != NULL:
            PyMem_Free(pts)
        if clos != NULL:
            PyMem_Free(clos)
        if chis != NULL:
            PyMem_Free(chis)


def all_pairs_completion(n, d, los, his):
    cdef Py_ssize_t nn = n, m = 0, mh = 0, total = 0
    cdef i64* dd = NULL
    cdef i64* clos = NULL
    cdef i64* chis = NULL
    cdef Py_ssize_t i, j, k
    cdef i64 dik, dkj, cand, cur
    try:
        dd = _copy_seq(d, &total)
        clos = _copy_seq(los, &m)
        chis = _copy_seq(his, &mh)
        for k in range(nn):
            for i in range(nn):
                dik = dd[i * nn + k]
                if dik < 0:
                    continue
                for j in range(nn):
                    dkj = dd[k * nn + j]
                    if dkj < 0:
                        continue
                    cand = _sup_le(clos, chis, m, dik + dkj)
                    cur = dd[i * nn + j]
                    if cur < 0 or cand < cur:
                        dd[i * nn + j] = cand
        for i in range(total):
            d[i] = dd[i]
        return d
    finally:
        if dd != NULL:
            PyMem_Free(dd)
        if clos != NULL:
            PyMem_Free(clos)
        if chis != NULL:
            PyMem_Free(chis)


def validate_metric(n, d):
    cdef Py_ssize_t nn = n, total = 0
    cdef i64* dd = NULL
    cdef Py_ssize_t i, j, k
    cdef i64 dij
    try:
        dd = _copy_seq(d, &total)
        for i in range(nn):
            if dd[i * nn + i] != 0:
                return ("diag", i, i)
        for i in range(nn):
            for j in range(i + 1, nn):
                if dd[i * nn + j] != dd[j * nn + i]:
                    return ("sym", i, j)
                if dd[i * nn + j] <= 0:
                    return ("pos", i, j)
        for i in range(nn):
            for j in range(nn):
                if i == j:
                    continue
                dij = dd[i * nn + j]
                for k in range(nn):
                    if k == i or k == j:
                        continue
                    if dij > dd[i * nn + k] + dd[k * nn + j]:
                        return ("tri", i, j, k)
        return None
    finally:
        if dd != NULL:
            PyMem_Free(dd)
