"""Exact scalars: rationals, Laurent polynomials in ``v`` and the field Q(v).

Rationals are :class:`fractions.Fraction`.  :class:`LaurentV` is a sparse
``{exponent: coefficient}`` map, :class:`RatV` a reduced quotient of two of
them.  Everything is immutable and hashable.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Tuple, Union

Number = Union[int, Fraction]


def _norm(c: Number) -> Number:
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


def parse_rational(text: str) -> Number:
    return _norm(Fraction(text))


def format_rational(c: Number) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


class LaurentV:
    """Element of Q[v, v^-1]."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, Number] | None = None):
        c: Dict[int, Number] = {}
        if coeffs:
            for e, a in coeffs.items():
                if a:
                    c[int(e)] = _norm(a)
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: Dict[int, Number]) -> "LaurentV":
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def const(cls, a: Number) -> "LaurentV":
        return cls({0: a})

    @classmethod
    def mono(cls, e: int, a: Number = 1) -> "LaurentV":
        return cls({e: a})

    # --- inspection -------------------------------------------------
    @property
    def coeffs(self) -> Dict[int, Number]:
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def min_exp(self) -> int:
        return min(self._c)

    def max_exp(self) -> int:
        return max(self._c)

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def lead(self) -> Number:
        return self._c[max(self._c)]

    def bar(self) -> "LaurentV":
        """Image under v -> v^-1."""
        return LaurentV._raw({-e: a for e, a in self._c.items()})

    def shift(self, k: int) -> "LaurentV":
        return LaurentV._raw({e + k: a for e, a in self._c.items()})

    # --- arithmetic -------------------------------------------------
    def __add__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        c = dict(self._c)
        for e, a in other._c.items():
            s = c.get(e, 0) + a
            if s:
                c[e] = _norm(s)
            else:
                c.pop(e, None)
        return LaurentV._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentV._raw({e: -a for e, a in self._c.items()})

    def __sub__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentV._raw({})
            return LaurentV._raw({e: _norm(a * other) for e, a in self._c.items()})
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        c: Dict[int, Number] = {}
        for e1, a1 in self._c.items():
            for e2, a2 in other._c.items():
                c[e1 + e2] = c.get(e1 + e2, 0) + a1 * a2
        return LaurentV._raw({e: _norm(a) for e, a in c.items() if a})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentV":
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-unit")
            (e, a), = self._c.items()
            return LaurentV({e * k: Fraction(a) ** k})
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentV.const(other)
        if isinstance(other, RatV):
            return other == self
        if not isinstance(other, LaurentV):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._c.items())))
        return self._hash

    def __repr__(self):
        return f"LaurentV({self})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e, a in sorted(self._c.items(), reverse=True):
            coef = format_rational(a)
            if e == 0:
                parts.append(coef)
            else:
                mon = "v" if e == 1 else f"v^{e}"
                if a == 1:
                    parts.append(mon)
                elif a == -1:
                    parts.append("-" + mon)
                else:
                    parts.append(f"({coef})*{mon}")
        return " + ".join(parts).replace("+ -", "- ")

    # --- division ---------------------------------------------------
    def divmod_poly(self, d: "LaurentV") -> Tuple["LaurentV", "LaurentV"]:
        """Euclidean division of v^-min-shifted polynomials, in descending degree."""
        if d.is_zero():
            raise ZeroDivisionError("division by zero LaurentV")
        r = dict(self._c)
        q: Dict[int, Number] = {}
        dmax = d.max_exp()
        dmin = d.min_exp()
        dl = Fraction(d._c[dmax])
        lo = (min(r) if r else 0) - dmin
        while r:
            top = max(r)
            k = top - dmax
            if k < lo:
                break
            f = _norm(Fraction(r[top]) / dl)
            q[k] = f
            for e, a in d._c.items():
                s = r.get(e + k, 0) - f * a
                if s:
                    r[e + k] = _norm(s)
                else:
                    r.pop(e + k, None)
        return LaurentV._raw(q), LaurentV._raw(r)

    def exact_div(self, d: "LaurentV") -> "LaurentV | None":
        """Quotient if ``d`` divides ``self`` in Q[v, v^-1], else ``None``."""
        if self.is_zero():
            return LaurentV._raw({})
        q, r = self.divmod_poly(d)
        if r.is_zero():
            return q
        return None

    def to_json(self) -> Dict[str, str]:
        return {str(e): format_rational(a) for e, a in sorted(self._c.items())}

    @classmethod
    def from_json(cls, obj: Mapping[str, str]) -> "LaurentV":
        return cls({int(e): parse_rational(str(a)) for e, a in obj.items()})


def _as_laurent(x):
    if isinstance(x, LaurentV):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentV.const(x)
    return NotImplemented


ZERO = LaurentV()
ONE = LaurentV.const(1)
V = LaurentV.mono(1)
VINV = LaurentV.mono(-1)
V_MINUS_VINV = LaurentV({1: 1, -1: -1})


def _poly_normal(p: LaurentV) -> LaurentV:
    """Shift to lowest exponent 0 and make monic."""
    if p.is_zero():
        return p
    p = p.shift(-p.min_exp())
    lc = Fraction(p.lead())
    if lc != 1:
        p = p * (1 / lc)
    return p


def poly_gcd(a: LaurentV, b: LaurentV) -> LaurentV:
    """Monic gcd in Q[v] of the v-power-free parts of ``a`` and ``b``."""
    a = _poly_normal(a)
    b = _poly_normal(b)
    while not b.is_zero():
        _, r = _poly_rem(a, b)
        a, b = b, _poly_normal(r)
    return a if not a.is_zero() else ONE


def _poly_rem(a: LaurentV, b: LaurentV):
    # a, b are genuine polynomials (min exponent >= 0)
    r = dict(a._c)
    q: Dict[int, Number] = {}
    bmax = b.max_exp()
    bl = Fraction(b._c[bmax])
    while r and max(r) >= bmax:
        top = max(r)
        k = top - bmax
        f = _norm(Fraction(r[top]) / bl)
        q[k] = f
        for e, c in b._c.items():
            s = r.get(e + k, 0) - f * c
            if s:
                r[e + k] = _norm(s)
            else:
                r.pop(e + k, None)
    return LaurentV._raw(q), LaurentV._raw(r)


class RatV:
    """Element of Q(v) in canonical form.

    ``den`` has lowest exponent 0 and is monic; ``gcd(num, den) = 1``.  With
    that normalisation equality is structural.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, *, _canonical: bool = False):
        num = _as_laurent(num) if not isinstance(num, LaurentV) else num
        if den is None:
            den = ONE
        den = _as_laurent(den) if not isinstance(den, LaurentV) else den
        if den.is_zero():
            raise ZeroDivisionError("RatV with zero denominator")
        if not _canonical:
            num, den = _canon(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def const(cls, a: Number) -> "RatV":
        return cls(LaurentV.const(a), ONE, _canonical=True)

    def canon(self) -> "RatV":
        return RatV(self.num, self.den)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def __add__(self, other):
        other = _as_ratv(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RatV(self.num + other.num, self.den)
        return RatV(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatV(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        other = _as_ratv(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_ratv(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_ratv(other)
        if other is NotImplemented:
            return NotImplemented
        return RatV(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatV":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatV(self.den, self.num)

    def __truediv__(self, other):
        other = _as_ratv(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _as_ratv(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int) -> "RatV":
        if k < 0:
            return self.inverse() ** (-k)
        return RatV(self.num ** k, self.den ** k)

    def __eq__(self, other):
        other = _as_ratv(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        return f"RatV({self})"

    def __str__(self):
        if self.den == ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, obj) -> "RatV":
        return cls(LaurentV.from_json(obj["num"]), LaurentV.from_json(obj["den"]))


def _as_ratv(x):
    if isinstance(x, RatV):
        return x
    if isinstance(x, LaurentV):
        return RatV(x, ONE, _canonical=True)
    if isinstance(x, (int, Fraction)):
        return RatV.const(x)
    return NotImplemented


def _canon(num: LaurentV, den: LaurentV) -> Tuple[LaurentV, LaurentV]:
    if num.is_zero():
        return num, ONE
    # move the v-power of den into num, make den monic
    s = den.min_exp()
    num = num.shift(-s)
    den = den.shift(-s)
    lc = Fraction(den.lead())
    if lc != 1:
        num = num * (1 / lc)
        den = den * (1 / lc)
    if den.is_monomial():
        return num, den
    g = poly_gcd(num, den)
    if g.max_exp() > 0:
        num = num.exact_div(g)
        den = den.exact_div(g)
    return num, den


def as_ratv(x) -> RatV:
    r = _as_ratv(x)
    if r is NotImplemented:
        raise TypeError(f"cannot coerce {type(x).__name__} to RatV")
    return r


# --- q-combinatorics ----------------------------------------------------

@lru_cache(maxsize=None)
def qint(k: int) -> LaurentV:
    """Symmetric quantum integer [k]_v = v^(k-1) + v^(k-3) + ... + v^(1-k)."""
    if k < 0:
        raise ValueError("qint requires k >= 0")
    return LaurentV({e: 1 for e in range(-k + 1, k, 2)})


@lru_cache(maxsize=None)
def qfact(k: int) -> LaurentV:
    if k < 0:
        raise ValueError("qfact requires k >= 0")
    out = ONE
    for ell in range(1, k + 1):
        out = out * qint(ell)
    return out


def is_laurent_polynomial(x) -> bool:
    """True iff the canonical denominator is a unit of Q[v, v^-1]."""
    x = as_ratv(x)
    return x.den.is_monomial()


def divides_power(x: LaurentV, k: int) -> bool:
    """Does (v - v^-1)^k divide ``x`` in Q[v, v^-1]?"""
    if k <= 0 or x.is_zero():
        return True
    # (v - v^-1) = v^-1 (v^2 - 1) and v is a unit
    d = LaurentV({2: 1, 0: -1})
    for _ in range(k):
        x = x.exact_div(d)
        if x is None:
            return False
    return True


def laurent_from_iterable(pairs: Iterable[Tuple[int, Number]]) -> LaurentV:
    c: Dict[int, Number] = {}
    for e, a in pairs:
        c[e] = c.get(e, 0) + a
    return LaurentV(c)
