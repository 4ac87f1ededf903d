# cython: language_level=3, boundscheck=False, wraparound=False
# distutils: language = c++
"""Compiled sparse kernels; same contract as ``singpoly._pykernels``.

Keys must fit in 62 bits; the dispatcher in ``singpoly.kernels`` routes wider
layouts to the pure-Python backend.  ``mul`` runs on machine integers with
128-bit accumulators whenever a magnitude bound shows that cannot overflow.
"""

from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector
from cython.operator cimport dereference as deref, preincrement as inc

ctypedef long long i64
ctypedef unsigned long long u64

cdef extern from *:
    ctypedef long long i128 "__int128"

cdef i64 I64_MAX = 0x7FFFFFFFFFFFFFFF


def add_scaled(dict a, dict b, object ca, object cb):
    cdef dict out
    cdef object k, v, s
    if ca != 1:
        out = {k: ca * v for k, v in a.items()}
    else:
        out = dict(a)
    for k, v in b.items():
        s = out.get(k, 0) + cb * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def scale(dict a, object c):
    cdef object k, v
    if not c:
        return {}
    return {k: c * v for k, v in a.items()}


def shift(dict a, i64 s):
    cdef dict out = {}
    cdef object v
    cdef i64 k
    for k, v in a.items():
        out[k + s] = v
    return out


cdef int _bits(dict a):
    """Bit length of the largest coefficient, or 99 if some exceeds int64."""
    cdef object v
    cdef int b, best = 0
    for v in a.values():
        b = (<object>v).bit_length()
        if b > 63:
            return 99
        if b > best:
            best = b
    return best


cdef object _to_py(i128 v):
    cdef u64 lo
    cdef i128 hi
    if -I64_MAX <= v <= I64_MAX:
        return <i64>v
    neg = v < 0
    if neg:
        v = -v
    lo = <u64>v
    hi = v >> 64
    out = ((<object>(<u64>hi)) << 64) | <object>lo
    return -out if neg else out


def _mul_small(dict a, dict b):
    cdef Py_ssize_t na = len(a), nb = len(b), x, y
    cdef vector[i64] ka, kb, ca, cb
    cdef unordered_map[i64, i128] acc
    cdef unordered_map[i64, i128].iterator it
    cdef object k, v
    ka.reserve(na)
    ca.reserve(na)
    for k, v in a.items():
        ka.push_back(k)
        ca.push_back(v)
    for k, v in b.items():
        kb.push_back(k)
        cb.push_back(v)
    acc.reserve(min(na * nb, 1 << 20))
    for y in range(nb):
        for x in range(na):
            acc[ka[x] + kb[y]] += <i128>ca[x] * cb[y]
    out = {}
    it = acc.begin()
    while it != acc.end():
        if deref(it).second != 0:
            out[deref(it).first] = _to_py(deref(it).second)
        inc(it)
    return out


def mul(dict a, dict b):
    cdef dict out = {}
    cdef i64 ka, kb, k
    cdef object ca, cb, prev
    cdef list la
    if not a or not b:
        return {}
    # |sum| <= min(len) * 2^(bits_a + bits_b) must stay below 2^127
    if _bits(a) + _bits(b) + (<object>min(len(a), len(b))).bit_length() <= 126:
        return _mul_small(a, b)
    if len(a) < len(b):
        a, b = b, a
    la = [(ka, ca) for ka, ca in a.items()]
    for kb, cb in b.items():
        for ka, ca in la:
            k = ka + kb
            prev = out.get(k)
            if prev is None:
                out[k] = ca * cb
            else:
                out[k] = prev + ca * cb
    return {k: ca for k, ca in out.items() if ca}


def bounds(dict a, tuple shifts, i64 mask):
    """(max x-degree, max kappa power) over the keys of ``a``."""
    cdef i64 k, d, bx = 0, bk = 0
    cdef int n = len(shifts), t
    cdef int sh[64]
    for t in range(n):
        sh[t] = shifts[t]
    for k in a:
        d = 0
        for t in range(n):
            d += (k >> sh[t]) & mask
        if d > bx:
            bx = d
        if (k & mask) > bk:
            bk = k & mask
    return bx, bk


def partial(dict a, int sh, i64 mask):
    cdef dict out = {}
    cdef i64 unit = (<i64>1) << sh
    cdef i64 k, e
    cdef object v
    for k, v in a.items():
        e = (k >> sh) & mask
        if e:
            out[k - unit] = v * e
    return out


cdef void _dd_into(dict out, dict a, int si, int sj, i64 mask) except *:
    cdef i64 ui = (<i64>1) << si
    cdef i64 uj = (<i64>1) << sj
    cdef i64 k, ai, aj, lo, d, base, key, step, r
    cdef object c, prev
    step = uj - ui
    for k, c in a.items():
        ai = (k >> si) & mask
        aj = (k >> sj) & mask
        if ai == aj:
            continue
        if ai > aj:
            lo = aj
            d = ai - aj
        else:
            lo = ai
            d = aj - ai
            c = -c
        base = k - ai * ui - aj * uj + lo * (ui + uj)
        key = base + (d - 1) * ui
        for r in range(d):
            prev = out.get(key)
            if prev is None:
                out[key] = c
            else:
                out[key] = prev + c
            key += step


def divided_difference(dict a, int si, int sj, i64 mask):
    cdef dict out = {}
    cdef object k, v
    _dd_into(out, a, si, sj, mask)
    return {k: v for k, v in out.items() if v}


def dunkl_parts(dict a, int si, tuple others, i64 mask):
    cdef dict s = {}
    cdef object k, v
    cdef int sj
    p = partial(a, si, mask)
    for sj in others:
        _dd_into(s, a, si, sj, mask)
    return p, {k: v for k, v in s.items() if v}


def permute(dict a, tuple src, tuple dst, i64 mask):
    cdef dict out = {}
    cdef int n = len(src)
    cdef int t
    cdef i64 k, nk, e
    cdef int ss[64]
    cdef int dd[64]
    cdef object v
    for t in range(n):
        ss[t] = src[t]
        dd[t] = dst[t]
    for k, v in a.items():
        nk = k
        for t in range(n):
            nk -= ((k >> ss[t]) & mask) << ss[t]
        for t in range(n):
            nk += ((k >> ss[t]) & mask) << dd[t]
        out[nk] = v
    return out


def specialize(dict a, object p, object q, int top, i64 mask):
    cdef dict out = {}
    cdef list ppow = [1]
    cdef list qpow = [1]
    cdef int i
    cdef i64 k, e, nk
    cdef object v, prev
    for i in range(top):
        ppow.append(ppow[i] * p)
        qpow.append(qpow[i] * q)
    for k, v in a.items():
        e = k & mask
        nk = k - e
        prev = out.get(nk)
        if prev is None:
            out[nk] = v * ppow[e] * qpow[top - e]
        else:
            out[nk] = prev + v * ppow[e] * qpow[top - e]
    return {k: v for k, v in out.items() if v}
