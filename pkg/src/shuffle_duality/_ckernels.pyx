# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sparse polynomial kernels; same contract as ``_pykernels``."""
from fractions import Fraction

BACKEND = "cython"


cdef inline object _n(object c):
    if type(c) is Fraction and c.denominator == 1:
        return int(c.numerator)
    return c


def mul(dict a, dict b):
    cdef dict out = {}
    cdef tuple ka, kb, k
    cdef Py_ssize_t n, i
    cdef list lst
    if not a or not b:
        return {}
    n = len(next(iter(a)))
    lst = [0] * n
    for ka, ca in a.items():
        for kb, cb in b.items():
            for i in range(n):
                lst[i] = <long>ka[i] + <long>kb[i]
            k = tuple(lst)
            prev = out.get(k)
            if prev is None:
                out[k] = ca * cb
            else:
                out[k] = prev + ca * cb
    return {k: _n(c) for k, c in out.items() if c}


def add_scaled_into(dict acc, dict a, c):
    cdef tuple k
    for k, x in a.items():
        prev = acc.get(k)
        s = c * x if prev is None else prev + c * x
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)
    return acc


def permute_add_into(dict acc, dict a, perm, sign):
    cdef tuple k, nk
    cdef Py_ssize_t i, n = len(perm)
    cdef list lst = [0] * n
    cdef list p = list(perm)
    for k, x in a.items():
        for i in range(n):
            lst[i] = k[<Py_ssize_t>p[i]]
        nk = tuple(lst)
        prev = acc.get(nk)
        s = sign * x if prev is None else prev + sign * x
        if s:
            acc[nk] = s
        else:
            acc.pop(nk, None)
    return acc


def divide_linear(dict a, Py_ssize_t ia, Py_ssize_t ib):
    cdef dict levels = {}
    cdef dict q = {}
    cdef dict cur, below
    cdef tuple k, qk, rk
    cdef long e, lo, hi
    cdef list kl
    if not a:
        return {}
    for k, c in a.items():
        e = k[ia]
        cur = levels.get(e)
        if cur is None:
            cur = {}
            levels[e] = cur
        cur[k] = c
    lo = min(levels)
    hi = max(levels)
    e = hi
    while e > lo:
        cur = levels.pop(e, None)
        if cur:
            below = levels.get(e - 1)
            if below is None:
                below = {}
                levels[e - 1] = below
            for k, c in cur.items():
                kl = list(k)
                kl[ia] = <long>kl[ia] - 1
                qk = tuple(kl)
                prev = q.get(qk)
                q[qk] = c if prev is None else prev + c
                kl[ib] = <long>kl[ib] + 1
                rk = tuple(kl)
                prev = below.get(rk)
                s = c if prev is None else prev + c
                if s:
                    below[rk] = s
                else:
                    below.pop(rk, None)
        e -= 1
    if levels.get(lo):
        return None
    return {k: _n(c) for k, c in q.items() if c}


def substitute_vpow(dict a, target, vshift, Py_ssize_t width):
    cdef dict out = {}
    cdef tuple k, t
    cdef Py_ssize_t i, n = len(target)
    cdef long e, ev
    cdef list tg = list(target)
    cdef list vs = list(vshift)
    cdef list nk
    for k, c in a.items():
        nk = [0] * (width + 1)
        ev = k[0]
        for i in range(n):
            e = k[i + 1]
            if e:
                nk[<Py_ssize_t>tg[i] + 1] = <long>nk[<Py_ssize_t>tg[i] + 1] + e
                ev += <long>vs[i] * e
        nk[0] = ev
        t = tuple(nk)
        prev = out.get(t)
        s = c if prev is None else prev + c
        if s:
            out[t] = s
        else:
            out.pop(t, None)
    return out
