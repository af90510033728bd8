"""Exact evaluation of the new Drinfeld pairing against RTT-form PBWD monomials.

The f-side is symbolic.  Pairing a shuffle element with a product of bracket
currents f~_{j;i}(z_j, ..., z_i) gives a rational expression in the group
variables; each 1/(z - w) in it is a geometric series in a fixed direction.
:class:`PairingExpression` records that data and :func:`extract_coefficient`
reads off one coefficient exactly.

Group variables reuse the numerator layout of the shuffle element: the
color-``c`` variable of the ``t``-th group containing ``c`` is ``x_{c,t}``.
"""
from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from . import kernels
from .exactalg import ONE, V, V_MINUS_VINV, LaurentV, RatV, as_ratv
from .polyring import MultiLaurent
from .shuffle import Decomposition, Root, ShuffleElement, cartan


class ExactCancellationFailure(ArithmeticError):
    """A pole of the shuffle element found no matching numerator factor."""


class CyclicDirectionGraph(ValueError):
    """The expansion directions of an expression contain a cycle."""


# --- base pairing ---------------------------------------------------------------

def base_pair(i: int, r: int, j: int, s: int) -> RatV:
    """phi(e_{i,r}, f_{j,s}) = delta_ij delta_{r+s,0} / (v - v^-1)."""
    if i != j or r + s != 0:
        return RatV.const(0)
    return RatV(ONE, V_MINUS_VINV)


# --- f-side descriptors -----------------------------------------------------------

@dataclass(frozen=True)
class FSeriesSpec:
    """The current f~_{j;i}(z_j, ..., z_i) occupying position ``t`` of a product."""

    j: int
    i: int
    t: int = 0

    def __post_init__(self):
        if not 1 <= self.j <= self.i:
            raise ValueError("FSeriesSpec requires 1 <= j <= i")


_F_FACTOR = re.compile(r"^f\[(\d+)\.\.(\d+)\]@\(([-\d,\s]*)\)$")


def _fkey(d: Decomposition):
    return (d.root, d.mode)


@dataclass(frozen=True)
class FPBWDMonomial:
    """Product of f~_{beta, r} ordered by the opposite of the (root, mode) order."""

    factors: Tuple[Decomposition, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        keys = [_fkey(d) for d in self.factors]
        if any(keys[t] < keys[t + 1] for t in range(len(keys) - 1)):
            raise ValueError("f-side factors must be non-increasing in (root, mode) order")

    @classmethod
    def unordered(cls, factors: Iterable[Decomposition]) -> "FPBWDMonomial":
        """Bypass the ordering check (arbitrary products of f~ currents)."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "factors", tuple(factors))
        return obj

    def degree(self, n: int) -> Tuple[int, ...]:
        deg = [0] * (n - 1)
        for d in self.factors:
            for c in d.root.colors:
                deg[c - 1] += 1
        return tuple(deg)

    @property
    def total_mode(self) -> int:
        return sum(d.mode for d in self.factors)

    def __str__(self):
        if not self.factors:
            return "1"
        return "*".join(f"f[{d.root.j}..{d.root.i}]@({','.join(map(str, d.r))})" for d in self.factors)

    @classmethod
    def parse(cls, text: str, ordered: bool = True) -> "FPBWDMonomial":
        text = text.replace(" ", "")
        if text in ("", "1"):
            return cls(())
        out = []
        for part in text.split("*"):
            mt = _F_FACTOR.match(part)
            if not mt:
                raise ValueError(f"cannot parse F-factor {part!r}")
            j, i, rs = mt.groups()
            out.append(Decomposition(Root(int(j), int(i)), tuple(int(x) for x in rs.split(",") if x)))
        return cls(tuple(out)) if ordered else cls.unordered(out)


# --- orientations --------------------------------------------------------------------

@dataclass(frozen=True)
class Orientation:
    """Orientation of the chain j - (j+1) - ... - i; edges[k] True means k -> k+1."""

    root: Root
    edges: Tuple[bool, ...]

    def __post_init__(self):
        if len(self.edges) != self.root.i - self.root.j:
            raise ValueError("orientation has wrong number of edges")


def orientations(root: Root) -> List[Orientation]:
    """All 2^(i-j) orientations in binary-counter order (all-forward first)."""
    m = root.i - root.j
    out = []
    for code in range(2 ** m):
        out.append(Orientation(root, tuple(not (code >> b) & 1 for b in range(m))))
    return out


@dataclass(frozen=True)
class DirectedFactor:
    """1 / (v^big_vpow z_big - v^small_vpow z_small), expanded in powers of z_small / z_big."""

    big: int
    small: int
    small_vpow: int = 0
    big_vpow: int = 0

    def __post_init__(self):
        if self.big == self.small:
            raise ValueError("directed factor needs two distinct variables")


def oriented_zeta_inv(pi: Orientation, k: int, zk: int, zk1: int):
    """Edge factor for the edge k - (k+1) of ``pi`` acting on slots ``zk``, ``zk1``.

    Returns (scalar, (a, b), factor) meaning scalar * (z_a - z_b) * factor.
    """
    if not pi.root.j <= k < pi.root.i:
        raise ValueError(f"edge {k} not in root {pi.root}")
    if pi.edges[k - pi.root.j]:
        return ONE, (zk, zk1), DirectedFactor(zk, zk1, 1)
    return V, (zk, zk1), DirectedFactor(zk1, zk, 1)


@dataclass
class PairingExpression:
    """scalar * numerator * prod(factors), all pole cancellations done."""

    scalar: RatV
    numerator: MultiLaurent
    factors: List[DirectedFactor]

    def variables(self):
        return self.numerator.variables


# --- assembly -----------------------------------------------------------------------

def _group_slots(x: ShuffleElement, groups: Sequence[Tuple[int, int]]) -> List[Dict[int, int]]:
    """For each group (j, i): color -> slot in x's numerator (1-based)."""
    seen: Counter = Counter()
    out = []
    for j, i in groups:
        g = {}
        for c in range(j, i + 1):
            seen[c] += 1
            g[c] = x.numerator.pos((c, seen[c]))
        out.append(g)
    return out


def _assemble(x: ShuffleElement, groups: Sequence[Tuple[int, int]],
              within: Sequence[Optional[Orientation]], scalar: RatV) -> PairingExpression:
    n = x.rank
    slots = _group_slots(x, groups)
    lin: Counter = Counter()
    factors: List[DirectedFactor] = []
    sc = as_ratv(scalar)
    # cross-group zeta^{-1}_{k,l}(z^(r)_k / z^(s)_l), earlier group big
    for r, s in itertools.combinations(range(len(groups)), 2):
        for k, a in slots[r].items():
            for ell, b in slots[s].items():
                c = cartan(k, ell)
                if c == 0:
                    continue
                lin[(a, b)] += 1
                factors.append(DirectedFactor(a, b, -c))
    for g, pi in zip(slots, within):
        if pi is None:
            continue
        for k in range(pi.root.j, pi.root.i):
            s_, ab, f = oriented_zeta_inv(pi, k, g[k], g[k + 1])
            sc = sc * s_
            lin[ab] += 1
            factors.append(f)
    for (ca, ra), (cb, rb) in x.pole_factors():
        a, b = x.numerator.pos((ca, ra)), x.numerator.pos((cb, rb))
        if lin[(a, b)]:
            lin[(a, b)] -= 1
        elif lin[(b, a)]:
            lin[(b, a)] -= 1
            sc = -sc
        else:
            raise ExactCancellationFailure(f"pole (x_{ca}_{ra} - x_{cb}_{rb}) not canceled")
    num = x.numerator
    width = num.nvars + 1
    terms = num.terms
    for (a, b), cnt in sorted(lin.items()):
        for _ in range(cnt):
            ka = [0] * width
            ka[a] = 1
            kb = [0] * width
            kb[b] = 1
            terms = kernels.mul(terms, {tuple(ka): 1, tuple(kb): -1})
    numerator = MultiLaurent(num.rank, num.degree, terms, num.den)
    expr = PairingExpression(sc, numerator, factors)
    _elimination_order(numerator.nvars, factors)  # acyclicity check
    return expr


def pairing_series(x: ShuffleElement, specs: Sequence[FSeriesSpec]) -> List[PairingExpression]:
    """One expression per orientation tuple; their sum is phi(x, prod_t f~_{j_t;i_t})."""
    specs = sorted(specs, key=lambda s: s.t)
    n = x.rank
    deg = [0] * (n - 1)
    for s in specs:
        for c in range(s.j, s.i + 1):
            deg[c - 1] += 1
    if tuple(deg) != x.degree:
        return []
    groups = [(s.j, s.i) for s in specs]
    scalar = RatV(ONE, V_MINUS_VINV ** sum(s.i - s.j for s in specs))
    per = [orientations(Root(s.j, s.i)) for s in specs]
    return [_assemble(x, groups, list(combo), scalar) for combo in itertools.product(*per)]


# --- coefficient extraction ------------------------------------------------------------

def _elimination_order(nvars: int, factors: Sequence[DirectedFactor]):
    """Slots ordered so that every slot comes after the small ends of its big factors.

    Returns [(slot, [factor indices fixed at this slot])].
    """
    remaining = set(range(len(factors)))
    done: set = set()
    order = []
    while len(done) < nvars:
        pick = None
        for u in range(1, nvars + 1):
            if u in done:
                continue
            if all(factors[f].big != u for f in remaining):
                pick = u
                break
        if pick is None:
            raise CyclicDirectionGraph("expansion directions contain a cycle")
        fixed = sorted(f for f in remaining if factors[f].small == pick)
        remaining.difference_update(fixed)
        done.add(pick)
        order.append((pick, fixed))
    return order


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def extract_coefficient(expr: PairingExpression, target: Mapping) -> RatV:
    """Exact coefficient of prod z^target in ``expr``.

    ``target`` maps a slot (int, 1-based) or a variable (color, index) to an
    exponent; omitted variables have exponent 0.
    """
    num = expr.numerator
    nv = num.nvars
    T = [0] * (nv + 1)
    for key, e in target.items():
        slot = key if isinstance(key, int) else num.pos(key)
        T[slot] = int(e)
    factors = expr.factors
    order = _elimination_order(nv, factors)
    base_off = [0] * (nv + 1)
    base_v = 0
    for f in factors:
        base_off[f.big] -= 1
        base_v -= f.big_vpow
    groups: Dict[tuple, Dict[int, object]] = {}
    for k, c in num.terms.items():
        groups.setdefault(k[1:], {})[k[0]] = c
    acc: Dict[int, object] = {}
    for xe, vpoly in groups.items():
        sols = _solve(order, factors, T, xe, base_off)
        if not sols:
            continue
        for vexp, mult in sols.items():
            for ev, c in vpoly.items():
                e = ev + vexp + base_v
                acc[e] = acc.get(e, 0) + c * mult
    val = RatV(LaurentV(acc), num.den)
    return val * expr.scalar


def _solve(order, factors, T, xe, base_off) -> Dict[int, int]:
    """Count solutions m >= 0 weighted by v-exponent: {v_exp: multiplicity}."""
    out: Dict[int, int] = {}
    off = list(base_off)

    def rec(step: int, vexp: int):
        if step == len(order):
            out[vexp] = out.get(vexp, 0) + 1
            return
        u, fixed = order[step]
        need = T[u] - xe[u - 1] - off[u]
        if not fixed:
            if need == 0:
                rec(step + 1, vexp)
            return
        if need < 0:
            return
        for ms in _compositions(need, len(fixed)):
            dv = 0
            for f, m in zip(fixed, ms):
                fac = factors[f]
                off[fac.big] -= m
                dv += m * (fac.small_vpow - fac.big_vpow)
            rec(step + 1, vexp + dv)
            for f, m in zip(fixed, ms):
                off[factors[f].big] += m

    rec(0, 0)
    return {e: c for e, c in out.items() if c}


# --- the pairing -----------------------------------------------------------------------

def _degree_of(m: FPBWDMonomial, n: int):
    return m.degree(n)


def _target(x: ShuffleElement, groups, modes) -> Dict[int, int]:
    slots = _group_slots(x, groups)
    tgt = {}
    for g, rs in zip(slots, modes):
        for (c, slot), r in zip(sorted(g.items()), rs):
            tgt[slot] = -r
    return tgt


def pair(x: ShuffleElement, m: FPBWDMonomial) -> RatV:
    """phi(x, prod_t f~_{beta_t, r_t}) via the orientation-sum formula."""
    n = x.rank
    if m.degree(n) != x.degree:
        return RatV.const(0)
    modes = x.modes()
    if len(modes) == 1 and next(iter(modes)) + m.total_mode != 0:
        return RatV.const(0)
    if x.is_zero():
        return RatV.const(0)
    specs = [FSeriesSpec(d.root.j, d.root.i, t) for t, d in enumerate(m.factors)]
    groups = [(s.j, s.i) for s in specs]
    tgt = _target(x, groups, [d.r for d in m.factors])
    total = RatV.const(0)
    for expr in pairing_series(x, specs):
        total = total + extract_coefficient(expr, tgt)
    return total


def bracket_expand_f(d: Decomposition) -> List[Tuple[LaurentV, Tuple[Tuple[int, int], ...]]]:
    """Expand (v - v^-1)[...[f_{j,r_j}, f_{j+1,r_{j+1}}]_v, ...]_v into signed words."""
    root = d.root
    words: List[Tuple[LaurentV, Tuple[Tuple[int, int], ...]]] = [(ONE, ((root.j, d.r[0]),))]
    for t, c in enumerate(range(root.j + 1, root.i + 1), start=1):
        letter = ((c, d.r[t]),)
        nxt = []
        for s, w in words:
            nxt.append((s, w + letter))
            nxt.append((-(V * s), letter + w))
        words = nxt
    return [(s * V_MINUS_VINV, w) for s, w in words]


def pair_via_words(x: ShuffleElement, m: FPBWDMonomial) -> RatV:
    """Independent route: expand every bracket into words of single currents and
    pair each word with the single-current product formula."""
    n = x.rank
    if m.degree(n) != x.degree:
        return RatV.const(0)
    expansions = [bracket_expand_f(d) for d in m.factors]
    total = RatV.const(0)
    for combo in itertools.product(*expansions):
        s = ONE
        word: Tuple[Tuple[int, int], ...] = ()
        for sc, w in combo:
            s = s * sc
            word = word + w
        groups = [(c, c) for c, _ in word]
        scalar = RatV(s, V_MINUS_VINV ** len(word))
        expr = _assemble(x, groups, [None] * len(word), scalar)
        tgt = _target(x, groups, [(r,) for _, r in word])
        total = total + extract_coefficient(expr, tgt)
    return total


# --- the key specialization identity -----------------------------------------------------

def key_specialization_check(a: Sequence[int], j: int, i: int, r_tail: Sequence[int], n: int,
                             window: int = 3) -> dict:
    """Compare the pairing of p / poles (p = prod x_{k,1}^{a_k}) with
    (v-v^-1)[...[f_j(z), f_{j+1,r_{j+1}}]_v, ..., f_{i,r_i}]_v against the closed form
    (v-v^-1)^{j-i} v^A z^B p(z, v^-1 z, ..., v^{j-i} z), coefficientwise in z.
    """
    a = list(a)
    r_tail = list(r_tail)
    if len(a) != i - j + 1 or len(r_tail) != i - j:
        raise ValueError("exponent or mode vector has the wrong length")
    bad = [k for k, (rk, ak) in enumerate(zip(r_tail, a[1:]), start=j + 1) if rk + ak >= 0]
    if bad:
        return {"passed": False, "error": f"precondition r_k + a_k < 0 violated at k={bad}", "checks": []}
    deg = tuple(1 if j <= c <= i else 0 for c in range(1, n))
    x = ShuffleElement(MultiLaurent.monomial(n, deg, {(j + t, 1): e for t, e in enumerate(a)}))
    A = sum((j - k) * (rk - 1 + (1 if k == i else 0)) for k, rk in zip(range(j + 1, i + 1), r_tail))
    B = sum(rk - 1 for rk in r_tail)
    zexp = B + sum(a)
    vexp = A - sum((k - j) * ak for k, ak in zip(range(j, i + 1), a))
    rhs_coeff = RatV(LaurentV.mono(vexp), V_MINUS_VINV ** (i - j))
    checks = []
    ok = True
    for rj in range(-zexp - window, -zexp + window + 1):
        m = FPBWDMonomial.unordered([Decomposition(Root(j, i), (rj,) + tuple(r_tail))])
        lhs = pair(x, m)
        rhs = rhs_coeff if -rj == zexp else RatV.const(0)
        good = lhs == rhs
        ok = ok and good
        checks.append({"r_j": rj, "lhs": str(lhs), "rhs": str(rhs), "equal": good})
    return {"passed": ok, "A": A, "B": B, "checks": checks}
