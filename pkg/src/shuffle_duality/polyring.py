"""Sparse Laurent polynomials in colored variables x_{i,r} over Q(v).

A :class:`MultiLaurent` of rank ``n`` and degree ``k = (k_1, ..., k_{n-1})``
lives in the variables ``x_{i,r}``, ``1 <= r <= k_i``, laid out color by
color.  Internally it is ``terms / den`` where ``terms`` is a polynomial in
``v`` and the x's with rational coefficients (exponent tuples put ``v`` in
slot 0) and ``den`` is a monic polynomial in ``v`` with nonzero constant
term, coprime to the v-content of ``terms``.  That makes equality structural.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from . import kernels
from .exactalg import ONE, LaurentV, RatV, as_ratv, poly_gcd

ColorVar = Tuple[int, int]


class NonDivisible(ArithmeticError):
    """A polynomial was not divisible by the requested linear factors."""


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return int(c.numerator)
    return c


def var_name(cv: ColorVar) -> str:
    return f"x_{cv[0]}_{cv[1]}"


def parse_var_name(s: str) -> ColorVar:
    head, c, i = s.split("_")
    if head != "x":
        raise ValueError(f"bad variable name {s!r}")
    return int(c), int(i)


class MultiLaurent:
    __slots__ = ("rank", "degree", "terms", "den", "_offsets", "_hash")

    def __init__(self, rank: int, degree: Sequence[int], terms: Dict[tuple, object] | None = None,
                 den: LaurentV = ONE, *, _reduced: bool = False):
        degree = tuple(int(d) for d in degree)
        if len(degree) != rank - 1:
            raise ValueError(f"degree {degree} does not match rank {rank}")
        if any(d < 0 for d in degree):
            raise ValueError("degree entries must be >= 0")
        self.rank = rank
        self.degree = degree
        offs = [0]
        for d in degree:
            offs.append(offs[-1] + d)
        self._offsets = tuple(offs)
        terms = {} if terms is None else terms
        if not _reduced:
            terms, den = _reduce(terms, den)
        self.terms = terms
        self.den = den
        self._hash = None

    # --- construction ---------------------------------------------------
    @property
    def nvars(self) -> int:
        return self._offsets[-1]

    @property
    def variables(self) -> List[ColorVar]:
        return [(c + 1, r + 1) for c, d in enumerate(self.degree) for r in range(d)]

    def pos(self, cv: ColorVar) -> int:
        """Slot (1-based, after v) of the variable ``cv`` in exponent tuples."""
        c, r = cv
        if not 1 <= c <= len(self.degree):
            raise ValueError(f"color {c} out of range for rank {self.rank}")
        if not 1 <= r <= self.degree[c - 1]:
            raise ValueError(f"variable {var_name(cv)} not present in degree {self.degree}")
        return 1 + self._offsets[c - 1] + r - 1

    @classmethod
    def zero(cls, rank, degree):
        return cls(rank, degree, {}, ONE, _reduced=True)

    @classmethod
    def constant(cls, rank, degree, c=1):
        c = as_ratv(c)
        nv = sum(degree)
        terms = {(e,) + (0,) * nv: a for e, a in c.num.coeffs.items()}
        return cls(rank, degree, terms, c.den)

    @classmethod
    def monomial(cls, rank, degree, exps: Mapping[ColorVar, int], coeff=1):
        p = cls.zero(rank, degree)
        key = [0] * (p.nvars + 1)
        for cv, e in exps.items():
            key[p.pos(cv)] += e
        c = as_ratv(coeff)
        terms = {(ev,) + tuple(key[1:]): a for ev, a in c.num.coeffs.items()}
        return cls(rank, degree, terms, c.den)

    def _like(self, terms, den=ONE, reduced=False) -> "MultiLaurent":
        return MultiLaurent(self.rank, self.degree, terms, den, _reduced=reduced)

    # --- inspection -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coefficients(self) -> Dict[tuple, RatV]:
        """Map x-exponent tuple -> RatV coefficient."""
        groups: Dict[tuple, Dict[int, object]] = {}
        for k, c in self.terms.items():
            groups.setdefault(k[1:], {})[k[0]] = c
        return {x: RatV(LaurentV(g), self.den) for x, g in groups.items()}

    def items(self) -> List[Tuple[Dict[ColorVar, int], RatV]]:
        vs = self.variables
        out = []
        for x, c in sorted(self.coefficients().items()):
            out.append(({vs[i]: e for i, e in enumerate(x) if e}, c))
        return out

    def x_degrees(self) -> set:
        """Total x-degrees occurring (the loop modes)."""
        return {sum(k[1:]) for k in self.terms}

    def is_integral(self) -> bool:
        """Coefficients lie in Q[v, v^-1]."""
        return self.den == ONE

    # --- arithmetic -----------------------------------------------------
    def _check_same(self, other: "MultiLaurent"):
        if self.rank != other.rank or self.degree != other.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other):
        if not isinstance(other, MultiLaurent):
            return self + MultiLaurent.constant(self.rank, self.degree, other)
        self._check_same(other)
        if self.den == other.den:
            acc = dict(self.terms)
            kernels.add_scaled_into(acc, other.terms, 1)
            return self._like(acc, self.den)
        acc = _scale_terms(self.terms, other.den)
        kernels.add_scaled_into(acc, _scale_terms(other.terms, self.den), 1)
        return self._like(acc, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return self._like({k: -c for k, c in self.terms.items()}, self.den, reduced=True)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, MultiLaurent):
            self._check_same(other)
            return self._like(kernels.mul(self.terms, other.terms), self.den * other.den)
        return self.scalar_mul(other)

    __rmul__ = __mul__

    def scalar_mul(self, c) -> "MultiLaurent":
        c = as_ratv(c)
        if c.is_zero():
            return MultiLaurent.zero(self.rank, self.degree)
        if c.den == ONE and c.num.is_monomial():
            (e, a), = c.num.coeffs.items()
            terms = {(k[0] + e,) + k[1:]: _norm(x * a) for k, x in self.terms.items()}
            return self._like(terms, self.den, reduced=True)
        return self._like(_scale_terms(self.terms, c.num), self.den * c.den)

    def __eq__(self, other):
        if not isinstance(other, MultiLaurent):
            return NotImplemented
        return (self.rank == other.rank and self.degree == other.degree
                and self.den == other.den and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rank, self.degree, self.den, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"MultiLaurent(rank={self.rank}, degree={self.degree}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.items():
            mon = "*".join(var_name(cv) + (f"^{e}" if e != 1 else "")
                           for cv, e in sorted(exps.items()))
            parts.append(f"({c})" + ("*" + mon if mon else ""))
        return " + ".join(parts)

    # --- structural operations -----------------------------------------
    def permute_colors(self, perms: Sequence[Sequence[int]]) -> "MultiLaurent":
        """Relabel x_{i,r} -> x_{i,perms[i-1][r-1]} (0-based permutation entries)."""
        perm = self._slot_perm(perms)
        acc: Dict[tuple, object] = {}
        kernels.permute_add_into(acc, self.terms, perm, 1)
        return self._like(acc, self.den, reduced=True)

    def _slot_perm(self, perms) -> List[int]:
        # new slot s reads old slot perm[s]
        perm = [0]
        for c, p in enumerate(perms):
            base = 1 + self._offsets[c]
            inv = [0] * len(p)
            for r, t in enumerate(p):
                inv[t] = r
            perm.extend(base + inv[r] for r in range(len(p)))
        return perm

    def is_symmetric(self) -> bool:
        for c, d in enumerate(self.degree):
            if d < 2:
                continue
            for swap in ((1, 0) + tuple(range(2, d)), tuple(range(1, d)) + (0,)):
                perms = [list(range(dd)) for dd in self.degree]
                perms[c] = list(swap)
                if self.permute_colors(perms) != self:
                    return False
        return True

    def to_json(self):
        return {
            "rank": self.rank,
            "degree": list(self.degree),
            "terms": [{"exps": {var_name(cv): e for cv, e in sorted(exps.items())},
                       "coeff": c.to_json()} for exps, c in self.items()],
        }

    @classmethod
    def from_json(cls, obj) -> "MultiLaurent":
        rank = int(obj["rank"])
        degree = tuple(obj["degree"])
        out = cls.zero(rank, degree)
        for t in obj["terms"]:
            exps = {parse_var_name(k): int(e) for k, e in t["exps"].items()}
            out = out + cls.monomial(rank, degree, exps, RatV.from_json(t["coeff"]))
        return out


def _scale_terms(terms, lv: LaurentV):
    if lv == ONE:
        return dict(terms)
    lt = {(e,): a for e, a in lv.coeffs.items()}
    w = len(next(iter(terms))) if terms else 1
    pad = {(k[0],) + (0,) * (w - 1): a for k, a in lt.items()}
    return kernels.mul(terms, pad)


def _reduce(terms, den: LaurentV):
    """Canonical (terms, den): den monic, v-power free, coprime to the content."""
    terms = {k: _norm(c) for k, c in terms.items() if c}
    if not terms:
        return {}, ONE
    if den == ONE:
        return terms, den
    s = den.min_exp()
    lc = Fraction(den.shift(-s).lead())
    den = den.shift(-s) * (1 / lc)
    if s or lc != 1:
        terms = {(k[0] - s,) + k[1:]: _norm(c / lc) for k, c in terms.items()}
    if den == ONE:
        return terms, den
    groups: Dict[tuple, Dict[int, object]] = {}
    for k, c in terms.items():
        groups.setdefault(k[1:], {})[k[0]] = c
    g = den
    for grp in groups.values():
        g = poly_gcd(g, LaurentV(grp))
        if g.max_exp() == 0:
            return terms, den
    new_terms = {}
    for x, grp in groups.items():
        q = LaurentV(grp).exact_div(g)
        for e, a in q.coeffs.items():
            new_terms[(e,) + x] = a
    return new_terms, den.exact_div(g)


# --- module level operations (the documented surface) ---------------------

def add(p: MultiLaurent, q) -> MultiLaurent:
    return p + q


def mul(p: MultiLaurent, q) -> MultiLaurent:
    return p * q


def scalar_mul(p: MultiLaurent, c) -> MultiLaurent:
    return p.scalar_mul(c)


def symmetrize(p: MultiLaurent) -> MultiLaurent:
    """(1/m!) * sum over all same-color permutations of the variables."""
    acc: Dict[tuple, object] = {}
    count = 0
    for perms in itertools.product(*(itertools.permutations(range(d)) for d in p.degree)):
        kernels.permute_add_into(acc, p.terms, p._slot_perm(perms), 1)
        count += 1
    acc = {k: Fraction(c, count) for k, c in acc.items() if c}
    return p._like({k: _norm(c) for k, c in acc.items()}, p.den)


def substitute(p: MultiLaurent, assignment: Mapping[ColorVar, Tuple[object, ColorVar]],
               rank: int | None = None, degree: Sequence[int] | None = None) -> MultiLaurent:
    """Apply x_a -> scalar_a * y_a for every variable of ``p``.

    ``assignment`` maps each variable to ``(scalar, new variable)``; the new
    variables live in ``degree`` (default: the same degree as ``p``).  Scalars
    must be monomials ``c * v^s``.
    """
    rank = p.rank if rank is None else rank
    degree = p.degree if degree is None else tuple(degree)
    target = MultiLaurent.zero(rank, degree)
    missing = [cv for cv in p.variables if cv not in assignment]
    if missing:
        raise ValueError(f"partial assignment, missing {', '.join(map(var_name, missing))}")
    tg, vs, rat = [], [], []
    for cv in p.variables:
        sc, new = assignment[cv]
        sc = as_ratv(sc)
        if sc.den != ONE or not sc.num.is_monomial():
            raise ValueError("substitution scalars must be monomials c*v^s")
        (s, c), = sc.num.coeffs.items()
        tg.append(target.pos(new) - 1)
        vs.append(s)
        rat.append(Fraction(c))
    terms = kernels.substitute_vpow(p.terms, tg, vs, target.nvars)
    if any(c != 1 for c in rat):
        # rational parts of the scalars, applied per original term
        terms = {}
        for k, c in p.terms.items():
            f = Fraction(1)
            for i, e in enumerate(k[1:]):
                if e:
                    f *= rat[i] ** e
            part = kernels.substitute_vpow({k: c}, tg, vs, target.nvars)
            kernels.add_scaled_into(terms, part, f)
        terms = {k: _norm(c) for k, c in terms.items() if c}
    return MultiLaurent(rank, degree, terms, p.den)


def exact_divide_linear(p: MultiLaurent, factors: Iterable[Tuple[ColorVar, ColorVar]]) -> MultiLaurent:
    """Return q with q * prod (x_a - x_b) = p; raise NonDivisible otherwise."""
    terms = p.terms
    for a, b in factors:
        q = kernels.divide_linear(terms, p.pos(a), p.pos(b))
        if q is None:
            raise NonDivisible(f"not divisible by ({var_name(a)} - {var_name(b)})")
        terms = q
    return p._like(terms, p.den, reduced=True)


def factorial_of(degree: Sequence[int]) -> int:
    out = 1
    for d in degree:
        out *= factorial(d)
    return out
