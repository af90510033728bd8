"""Pure-Python sparse polynomial kernels.

A polynomial is a ``dict`` mapping an exponent tuple ``(e_v, e_1, ..., e_N)``
to a nonzero ``int`` or ``Fraction``.  Slot 0 is the exponent of ``v``.
``_ckernels.pyx`` implements the same functions; both must agree exactly.
"""
from fractions import Fraction

BACKEND = "python"


def _n(c):
    if type(c) is Fraction and c.denominator == 1:
        return int(c.numerator)
    return c


def mul(a, b):
    out = {}
    get = out.get
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = tuple([x + y for x, y in zip(ka, kb)])
            out[k] = get(k, 0) + ca * cb
    return {k: _n(c) for k, c in out.items() if c}


def add_scaled_into(acc, a, c):
    """acc += c * a, in place."""
    for k, x in a.items():
        s = acc.get(k, 0) + c * x
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)
    return acc


def permute_add_into(acc, a, perm, sign):
    """acc += sign * (a with slot i of each key read from slot perm[i])."""
    for k, x in a.items():
        nk = tuple([k[p] for p in perm])
        s = acc.get(nk, 0) + sign * x
        if s:
            acc[nk] = s
        else:
            acc.pop(nk, None)
    return acc


def divide_linear(a, ia, ib):
    """Exact quotient of ``a`` by (x_ia - x_ib), or ``None``.

    Peels off terms in descending x_ia-degree; each step moves the remainder
    one x_ia-level down.  Divisible iff the residue at the lowest level is 0.
    """
    if not a:
        return {}
    levels = {}
    for k, c in a.items():
        levels.setdefault(k[ia], {})[k] = c
    lo = min(levels)
    hi = max(levels)
    q = {}
    for e in range(hi, lo, -1):
        cur = levels.pop(e, None)
        if not cur:
            continue
        below = levels.setdefault(e - 1, {})
        for k, c in cur.items():
            kl = list(k)
            kl[ia] -= 1
            qk = tuple(kl)
            q[qk] = q.get(qk, 0) + c
            kl[ib] += 1
            rk = tuple(kl)
            s = below.get(rk, 0) + c
            if s:
                below[rk] = s
            else:
                below.pop(rk, None)
    if levels.get(lo):
        return None
    return {k: _n(c) for k, c in q.items() if c}


def substitute_vpow(a, target, vshift, width):
    """Rename variables: old slot i+1 -> new slot target[i]+1 scaled by v^vshift[i].

    ``width`` is the number of new variables.  Targets may coincide.
    """
    out = {}
    n = len(target)
    for k, c in a.items():
        nk = [0] * (width + 1)
        ev = k[0]
        for i in range(n):
            e = k[i + 1]
            if e:
                nk[target[i] + 1] += e
                ev += vshift[i] * e
        nk[0] = ev
        t = tuple(nk)
        s = out.get(t, 0) + c
        if s:
            out[t] = s
        else:
            out.pop(t, None)
    return out
