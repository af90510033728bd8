"""Naive truncated-series evaluation of a PairingExpression (test oracle only)."""
from shuffle_duality import _pykernels as pk
from shuffle_duality.exactalg import LaurentV, RatV


def _factor_series(f, nvars, order):
    out = {}
    for m in range(order + 1):
        k = [0] * (nvars + 1)
        k[0] = m * (f.small_vpow - f.big_vpow) - f.big_vpow
        k[f.small] += m
        k[f.big] += -m - 1
        out[tuple(k)] = 1
    return out


def truncated_coefficient(expr, target, order):
    nv = expr.numerator.nvars
    T = [0] * (nv + 1)
    for slot, e in target.items():
        T[slot] = e
    acc = dict(expr.numerator.terms)
    for f in expr.factors:
        acc = pk.mul(acc, _factor_series(f, nv, order))
    coeff = {}
    for k, c in acc.items():
        if list(k[1:]) == T[1:]:
            coeff[k[0]] = coeff.get(k[0], 0) + c
    return RatV(LaurentV(coeff), expr.numerator.den) * expr.scalar


def stable_coefficient(expr, target, start=1, limit=40):
    """Raise the truncation order until the value is unchanged across two increments."""
    prev2 = prev = None
    for order in range(start, limit + 1):
        val = truncated_coefficient(expr, target, order)
        if prev2 is not None and val == prev == prev2:
            return val
        prev2, prev = prev, val
    raise AssertionError("truncated series did not stabilise")
