"""Pure-Python sparse kernels (reference backend).

Polynomials reach these functions as ``dict[int, int]``: a packed monomial
key mapped to an integer coefficient.  A key stores one fixed-width bit field
per variable plus a lowest field for the power of kappa; see
:class:`singpoly.polyring.Layout`.  Every function returns a fresh dict
without zero entries and never mutates its inputs.

The Cython module ``_ckernels`` implements the same functions.
"""


def add_scaled(a, b, ca, cb):
    """ca*a + cb*b."""
    out = {k: ca * v for k, v in a.items()} if ca != 1 else dict(a)
    get = out.get
    for k, v in b.items():
        s = get(k, 0) + cb * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def scale(a, c):
    if not c:
        return {}
    return {k: c * v for k, v in a.items()}


def shift(a, s):
    """Multiply by the monomial whose packed key is ``s``."""
    return {k + s: v for k, v in a.items()}


def mul(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = {}
    get = out.get
    for kb, cb in b.items():
        for ka, ca in a.items():
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


def bounds(a, shifts, mask):
    """(max x-degree, max kappa power) over the keys of ``a``."""
    bx = bk = 0
    for k in a:
        d = sum((k >> s) & mask for s in shifts)
        if d > bx:
            bx = d
        if k & mask > bk:
            bk = k & mask
    return bx, bk


def partial(a, sh, mask):
    out = {}
    unit = 1 << sh
    for k, v in a.items():
        e = (k >> sh) & mask
        if e:
            out[k - unit] = v * e
    return out


def _dd_into(out, a, si, sj, mask):
    ui = 1 << si
    uj = 1 << sj
    get = out.get
    for k, c in a.items():
        ai = (k >> si) & mask
        aj = (k >> sj) & mask
        if ai == aj:
            continue
        if ai > aj:
            lo, d = aj, ai - aj
        else:
            lo, d = ai, aj - ai
            c = -c
        base = k - ai * ui - aj * uj + lo * (ui + uj)
        # x_i^{d-1-r} x_j^r for r = 0 .. d-1
        key = base + (d - 1) * ui
        step = uj - ui
        for _ in range(d):
            out[key] = get(key, 0) + c
            key += step


def divided_difference(a, si, sj, mask):
    out = {}
    _dd_into(out, a, si, sj, mask)
    return {k: v for k, v in out.items() if v}


def dunkl_parts(a, si, others, mask):
    """(d/dx_i a, sum_j (a - (i,j)a)/(x_i - x_j)) over the shifts in others."""
    p = partial(a, si, mask)
    s = {}
    for sj in others:
        _dd_into(s, a, si, sj, mask)
    return p, {k: v for k, v in s.items() if v}


def permute(a, src, dst, mask):
    """Move the exponent stored at shift src[t] to shift dst[t]."""
    out = {}
    pairs = tuple(zip(src, dst))
    for k, v in a.items():
        nk = k
        for s, d in pairs:
            nk -= ((k >> s) & mask) << s
        for s, d in pairs:
            nk += ((k >> s) & mask) << d
        out[nk] = v
    return out


def specialize(a, p, q, top, mask):
    """Substitute kappa = p/q; the result is scaled by q**top.

    ``top`` must be at least the largest kappa exponent present.
    """
    out = {}
    get = out.get
    ppow = [1]
    qpow = [1]
    for _ in range(top):
        ppow.append(ppow[-1] * p)
        qpow.append(qpow[-1] * q)
    for k, v in a.items():
        e = k & mask
        nk = k - e
        out[nk] = get(nk, 0) + v * ppow[e] * qpow[top - e]
    return {k: v for k, v in out.items() if v}
