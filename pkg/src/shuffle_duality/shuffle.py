"""The trigonometric shuffle algebra of type A_{n-1}.

An element of degree ``k`` is stored through its numerator ``f``: the
represented rational function is ``f / prod_{i} prod_{r, r'} (x_{i,r} - x_{i+1,r'})``.
The pole product is implied and never stored.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from . import kernels
from .exactalg import ONE, V, V_MINUS_VINV, LaurentV, RatV, as_ratv, qfact
from .polyring import MultiLaurent, NonDivisible, exact_divide_linear, substitute

Cartan = Callable[[int, int], int]


def cartan(i: int, j: int) -> int:
    """Cartan matrix entry of sl_n (rank-independent for in-range colors)."""
    if i == j:
        return 2
    if abs(i - j) == 1:
        return -1
    return 0


def _check_color(i: int, n: int):
    if not 1 <= i <= n - 1:
        raise ValueError(f"color {i} out of range for n={n}")


@dataclass(frozen=True, order=True)
class Root:
    """Positive root alpha_j + ... + alpha_i; the field order realises (j, i)-lex order."""

    j: int
    i: int

    def __post_init__(self):
        if not 1 <= self.j <= self.i:
            raise ValueError(f"invalid root [{self.j}..{self.i}]")

    @property
    def height(self) -> int:
        return self.i - self.j + 1

    @property
    def colors(self) -> range:
        return range(self.j, self.i + 1)

    def degree(self, n: int) -> Tuple[int, ...]:
        return tuple(1 if self.j <= c <= self.i else 0 for c in range(1, n))

    def label(self) -> str:
        return f"{self.j}-{self.i}"

    def __str__(self):
        return f"[{self.j}..{self.i}]"


def positive_roots(n: int) -> List[Root]:
    return [Root(j, i) for j in range(1, n) for i in range(j, n)]


@dataclass(frozen=True)
class Decomposition:
    root: Root
    r: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "r", tuple(int(x) for x in self.r))
        if len(self.r) != self.root.height:
            raise ValueError(f"decomposition {self.r} has wrong length for root {self.root}")

    @property
    def mode(self) -> int:
        return sum(self.r)


class ShuffleElement:
    """Shuffle algebra element given by its numerator."""

    __slots__ = ("numerator",)

    def __init__(self, numerator: MultiLaurent):
        self.numerator = numerator

    @property
    def rank(self) -> int:
        return self.numerator.rank

    @property
    def degree(self) -> Tuple[int, ...]:
        return self.numerator.degree

    @classmethod
    def unit(cls, n: int) -> "ShuffleElement":
        return cls(MultiLaurent.constant(n, (0,) * (n - 1), 1))

    @classmethod
    def zero(cls, n: int, degree) -> "ShuffleElement":
        return cls(MultiLaurent.zero(n, degree))

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def pole_factors(self) -> List[Tuple[Tuple[int, int], Tuple[int, int]]]:
        k = self.degree
        return [((c, r), (c + 1, s)) for c in range(1, len(k))
                for r in range(1, k[c - 1] + 1) for s in range(1, k[c] + 1)]

    def modes(self) -> set:
        """Homogeneous degrees in x of the represented rational function."""
        npole = len(self.pole_factors())
        return {d - npole for d in self.numerator.x_degrees()}

    def __add__(self, other: "ShuffleElement"):
        return ShuffleElement(self.numerator + other.numerator)

    def __sub__(self, other: "ShuffleElement"):
        return ShuffleElement(self.numerator - other.numerator)

    def __neg__(self):
        return ShuffleElement(-self.numerator)

    def scale(self, c) -> "ShuffleElement":
        return ShuffleElement(self.numerator.scalar_mul(c))

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ShuffleElement):
            return NotImplemented
        return self.numerator == other.numerator

    def __hash__(self):
        return hash(self.numerator)

    def __repr__(self):
        return f"ShuffleElement(n={self.rank}, degree={self.degree}, numerator={self.numerator})"

    def to_json(self):
        return {"rank": self.rank, "degree": list(self.degree), "numerator": self.numerator.to_json()}

    @classmethod
    def from_json(cls, obj) -> "ShuffleElement":
        num = MultiLaurent.from_json(obj["numerator"])
        if num.rank != obj["rank"] or list(num.degree) != list(obj["degree"]):
            raise ValueError("shuffle element header does not match its numerator")
        return cls(num)


# --- zeta factors -------------------------------------------------------------

def zeta(i: int, j: int, n: int) -> Tuple[Dict[int, LaurentV], Dict[int, LaurentV]]:
    """zeta_{i,j}(z) = (z - v^{-c_ij}) / (z - 1) as ({z-power: coeff}, {z-power: coeff})."""
    _check_color(i, n)
    _check_color(j, n)
    c = cartan(i, j)
    if c == 0:
        return {0: ONE}, {0: ONE}
    return {1: ONE, 0: -LaurentV.mono(-c)}, {1: ONE, 0: -ONE}


# --- the shuffle product ------------------------------------------------------

def _perm_sign(seq: Sequence[int]) -> int:
    sign = 1
    seq = list(seq)
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b]:
                sign = -sign
    return sign


def _linear(width: int, a: int, b: int, ca: Tuple[int, int], cb: Tuple[int, int]) -> dict:
    """Polynomial c_a x_a + c_b x_b where c = (coefficient, v-exponent); slots are 1-based."""
    ka = [0] * width
    ka[0] = ca[1]
    ka[a] = 1
    kb = [0] * width
    kb[0] = cb[1]
    kb[b] = 1
    return {tuple(ka): ca[0], tuple(kb): cb[0]}


def _shuffles(k: int, m: int):
    """Subsets of range(m) of size k with their complements, as (positions, sign)."""
    for S in itertools.combinations(range(m), k):
        comp = [t for t in range(m) if t not in S]
        yield list(S), comp, _perm_sign(list(S) + comp)


def _star_numerator(F: MultiLaurent, G: MultiLaurent, cart: Cartan) -> MultiLaurent:
    n = F.rank
    k, ell = F.degree, G.degree
    m = tuple(a + b for a, b in zip(k, ell))
    out = MultiLaurent.zero(n, m)
    width = out.nvars + 1
    # slots: color c occupies [off_c, off_c + m_c); F takes the first k_c
    offs = [1]
    for d in m:
        offs.append(offs[-1] + d)
    a_slots = [[offs[c] + t for t in range(k[c])] for c in range(n - 1)]
    b_slots = [[offs[c] + k[c] + t for t in range(ell[c])] for c in range(n - 1)]
    tgF = [s - 1 for c in range(n - 1) for s in a_slots[c]]
    tgG = [s - 1 for c in range(n - 1) for s in b_slots[c]]
    Q = kernels.mul(kernels.substitute_vpow(F.terms, tgF, [0] * len(tgF), width - 1),
                    kernels.substitute_vpow(G.terms, tgG, [0] * len(tgG), width - 1))
    if not Q:
        return out
    factors = []
    for c in range(n - 1):
        for c2 in range(n - 1):
            cc = cart(c + 1, c2 + 1)
            if cc == 0:
                continue
            for a in a_slots[c]:
                for b in b_slots[c2]:
                    if c2 == c - 1:
                        # zeta denominator (x_a - x_b) is minus the pole (x_b - x_a)
                        factors.append(_linear(width, a, b, (-1, 0), (1, -cc)))
                    else:
                        factors.append(_linear(width, a, b, (1, 0), (-1, -cc)))
    for slots in a_slots + b_slots:
        for p, q in itertools.combinations(slots, 2):
            factors.append(_linear(width, p, q, (1, 0), (-1, 0)))
    for f in factors:
        Q = kernels.mul(Q, f)
    # sum over shuffles of sign(sigma) * sigma(Q), color by color
    per_color = [list(_shuffles(k[c], m[c])) for c in range(n - 1)]
    acc: dict = {}
    for choice in itertools.product(*per_color):
        perm = list(range(width))
        sign = 1
        for c, (S, comp, sg) in enumerate(choice):
            base = offs[c]
            for t, s in enumerate(S):
                perm[base + s] = base + t
            for t, s in enumerate(comp):
                perm[base + s] = base + k[c] + t
            sign *= sg
        kernels.permute_add_into(acc, Q, perm, sign)
    acc = {key: c for key, c in acc.items() if c}
    num = MultiLaurent(n, m, acc, F.den * G.den)
    vdm = [((c + 1, r + 1), (c + 1, s + 1)) for c in range(n - 1)
           for r, s in itertools.combinations(range(m[c]), 2)]
    try:
        return exact_divide_linear(num, vdm)
    except NonDivisible as exc:  # pragma: no cover - antisymmetric sums are always divisible
        raise NonDivisible(f"internal error in shuffle product: {exc}") from exc


@lru_cache(maxsize=4096)
def _star_cached(F: ShuffleElement, G: ShuffleElement) -> ShuffleElement:
    return ShuffleElement(_star_numerator(F.numerator, G.numerator, cartan))


def star(F: ShuffleElement, G: ShuffleElement, cart: Optional[Cartan] = None) -> ShuffleElement:
    """Shuffle product F * G.

    ``cart`` overrides the Cartan matrix used in the zeta factors; it exists for
    negative-control tests and bypasses the cache.
    """
    if F.rank != G.rank:
        raise ValueError("star of elements of different rank")
    if cart is not None:
        return ShuffleElement(_star_numerator(F.numerator, G.numerator, cart))
    return _star_cached(F, G)


def star_many(factors: Iterable[ShuffleElement], n: int) -> ShuffleElement:
    out = ShuffleElement.unit(n)
    for f in factors:
        out = star(out, f)
    return out


def qbracket(a: ShuffleElement, b: ShuffleElement, x, cart: Optional[Cartan] = None) -> ShuffleElement:
    """[a, b]_x = a*b - x b*a."""
    return star(a, b, cart) - star(b, a, cart).scale(as_ratv(x))


# --- wheel conditions ---------------------------------------------------------

def wheel_violations(F: ShuffleElement):
    """Yield (i, eps, r1, r2, s) for which the wheel specialization does not vanish."""
    k = F.degree
    n = F.rank
    p = F.numerator
    for i in range(1, n):
        if k[i - 1] < 2:
            continue
        for eps in (-1, 1):
            j = i + eps
            if not 1 <= j <= n - 1 or k[j - 1] == 0:
                continue
            for r1, r2 in itertools.permutations(range(1, k[i - 1] + 1), 2):
                for s in range(1, k[j - 1] + 1):
                    assign = {cv: (1, cv) for cv in p.variables}
                    assign[(i, r1)] = (LaurentV.mono(2), (i, r2))
                    assign[(j, s)] = (V, (i, r2))
                    if not substitute(p, assign).is_zero():
                        yield (i, eps, r1, r2, s)


def wheel_check(F: ShuffleElement) -> bool:
    """True iff F vanishes on every wheel x_{i,r1} = v x_{i+eps,s} = v^2 x_{i,r2}.

    The pole factors never vanish on a wheel, so it suffices to test the numerator.
    """
    return next(wheel_violations(F), None) is None


# --- generators -----------------------------------------------------------------

@lru_cache(maxsize=None)
def gen_e(i: int, r: int, n: int) -> ShuffleElement:
    """Image of e_{i,r}: the single-variable monomial x_{i,1}^r in degree 1_i."""
    _check_color(i, n)
    deg = tuple(1 if c == i else 0 for c in range(1, n))
    return ShuffleElement(MultiLaurent.monomial(n, deg, {(i, 1): r}))


def _nested_bracket(d: Decomposition, n: int) -> ShuffleElement:
    root = d.root
    out = gen_e(root.j, d.r[0], n)
    for t, c in enumerate(range(root.j + 1, root.i + 1), start=1):
        out = qbracket(out, gen_e(c, d.r[t], n), V)
    return out


@lru_cache(maxsize=None)
def e_tilde(d: Decomposition, n: int) -> ShuffleElement:
    """(v - v^-1) times the left-nested v-bracket of e_{j,r_j}, ..., e_{i,r_i}."""
    return _nested_bracket(d, n).scale(V_MINUS_VINV)


@lru_cache(maxsize=None)
def e_root(beta: Root, r: int, n: int) -> ShuffleElement:
    """Higher root vector [...[e_{j,r}, e_{j+1,0}]_v, ..., e_{i,0}]_v."""
    d = Decomposition(beta, (r,) + (0,) * (beta.height - 1))
    return _nested_bracket(d, n)


@lru_cache(maxsize=None)
def divided_power(F: ShuffleElement, k: int) -> ShuffleElement:
    """F^k / [k]_v!, computed by repeated star and one scalar division."""
    if k < 1:
        raise ValueError("divided_power requires k >= 1")
    out = F
    for _ in range(k - 1):
        out = star(out, F)
    if k == 1:
        return out
    return out.scale(RatV(ONE, qfact(k)))


# --- PBWD monomials -------------------------------------------------------------

_E_FACTOR = re.compile(r"^e\[(\d+)\.\.(\d+)\]@(-?\d+)(?:\^(\d+))?$")


@dataclass(frozen=True)
class EPBWDMonomial:
    """Ordered product of divided powers e^{(k)}_{beta, r}."""

    factors: Tuple[Tuple[Root, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        keys = [(b, r) for b, r, _ in self.factors]
        if any(k <= 0 for _, _, k in self.factors):
            raise ValueError("divided powers must be >= 1")
        if any(keys[t] >= keys[t + 1] for t in range(len(keys) - 1)):
            raise ValueError("factors must be strictly increasing in (root, mode) order; "
                             "merge equal factors into a divided power")

    @classmethod
    def from_factors(cls, factors) -> "EPBWDMonomial":
        """Sort and merge arbitrary (root, mode, power) factors."""
        merged: Dict[Tuple[Root, int], int] = {}
        for b, r, k in factors:
            merged[(b, r)] = merged.get((b, r), 0) + k
        return cls(tuple((b, r, k) for (b, r), k in sorted(merged.items())))

    def degree(self, n: int) -> Tuple[int, ...]:
        deg = [0] * (n - 1)
        for b, _, k in self.factors:
            for c in b.colors:
                deg[c - 1] += k
        return tuple(deg)

    @property
    def total_mode(self) -> int:
        return sum(r * k for _, r, k in self.factors)

    def __str__(self):
        if not self.factors:
            return "1"
        return "*".join(f"e[{b.j}..{b.i}]@{r}^{k}" for b, r, k in self.factors)

    @classmethod
    def parse(cls, text: str) -> "EPBWDMonomial":
        text = text.replace(" ", "")
        if text in ("", "1"):
            return cls(())
        out = []
        for part in text.split("*"):
            mt = _E_FACTOR.match(part)
            if not mt:
                raise ValueError(f"cannot parse E-factor {part!r}")
            j, i, r, k = mt.groups()
            out.append((Root(int(j), int(i)), int(r), int(k or 1)))
        return cls(tuple(out))


def build_e_pbwd(m: EPBWDMonomial, n: int) -> ShuffleElement:
    """Left-to-right star product of divided_power(e_root(beta, r), k)."""
    return _build_e_pbwd(m, n)


@lru_cache(maxsize=8192)
def _build_e_pbwd(m: EPBWDMonomial, n: int) -> ShuffleElement:
    for b, _, _ in m.factors:
        if b.i > n - 1:
            raise ValueError(f"root {b} out of range for n={n}")
    out = ShuffleElement.unit(n)
    for b, r, k in m.factors:
        out = star(out, divided_power(e_root(b, r, n), k))
    return out


# --- defining relations ---------------------------------------------------------

def check_relations(n: int, modes: Sequence[int], cart: Optional[Cartan] = None) -> dict:
    """Verify the quadratic and Serre relations on generator images over a mode window.

    Returns ``{"passed", "checked", "counterexample"}``; the counterexample names
    the relation and modes of the first failure.
    """
    modes = list(modes)
    checked = 0

    def st(a, b):
        return star(a, b, cart)

    def e(i, r):
        return gen_e(i, r, n)

    def fail(name, args):
        return {"passed": False, "checked": checked, "counterexample": {"relation": name, "args": list(args)}}

    for i in range(1, n):
        for j in range(1, n):
            c = cartan(i, j)
            vc = LaurentV.mono(c)
            for r in modes:
                for s in modes:
                    lhs = st(e(i, r + 1), e(j, s)) - st(e(i, r), e(j, s + 1)).scale(vc)
                    rhs = st(e(j, s), e(i, r + 1)).scale(vc) - st(e(j, s + 1), e(i, r))
                    checked += 1
                    if lhs != rhs:
                        return fail("quadratic", (i, j, r, s))
                    if c == 0:
                        checked += 1
                        if st(e(i, r), e(j, s)) != st(e(j, s), e(i, r)):
                            return fail("commute", (i, j, r, s))
            if c != -1:
                continue
            vinv = LaurentV.mono(-1)
            for r1 in modes:
                for r2 in modes:
                    for s in modes:
                        tot = None
                        for a, b in ((r1, r2), (r2, r1)):
                            inner = qbracket(e(i, b), e(j, s), vinv, cart)
                            term = qbracket(e(i, a), inner, V, cart)
                            tot = term if tot is None else tot + term
                        checked += 1
                        if not tot.is_zero():
                            return fail("serre", (i, j, r1, r2, s))
    return {"passed": True, "checked": checked, "counterexample": None}
