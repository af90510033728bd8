"""Specialization maps phi_d and the good-element test for the Lusztig lattice."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from . import kernels
from .exactalg import ONE, LaurentV, divides_power
from .shuffle import Root, ShuffleElement, positive_roots


class SpecializationPlan:
    """Multiplicities d_beta of positive roots; copies of one root are consecutive."""

    __slots__ = ("d",)

    def __init__(self, d: Mapping[Root, int]):
        self.d = {b: int(m) for b, m in sorted(d.items()) if m}
        if any(m < 0 for m in self.d.values()):
            raise ValueError("multiplicities must be >= 0")

    def degree(self, n: int) -> Tuple[int, ...]:
        deg = [0] * (n - 1)
        for b, m in self.d.items():
            for c in b.colors:
                deg[c - 1] += m
        return tuple(deg)

    def copies(self) -> List[Tuple[Root, int]]:
        return [(b, s) for b, m in self.d.items() for s in range(1, m + 1)]

    def required_power(self) -> int:
        return sum(m * (b.i - b.j) for b, m in self.d.items())

    def to_json(self) -> Dict[str, int]:
        return {b.label(): m for b, m in self.d.items()}

    def __eq__(self, other):
        return isinstance(other, SpecializationPlan) and self.d == other.d

    def __hash__(self):
        return hash(tuple(self.d.items()))

    def __repr__(self):
        return f"SpecializationPlan({self.to_json()})"


class SpecializedPoly:
    """Polynomial in y_{beta,s} with coefficients in Q(v); terms keyed (e_v, e_y...)."""

    __slots__ = ("variables", "terms", "den")

    def __init__(self, variables: Sequence[Tuple[Root, int]], terms: dict, den: LaurentV = ONE):
        self.variables = tuple(variables)
        self.terms = terms
        self.den = den

    def coefficients(self) -> Dict[tuple, LaurentV]:
        groups: Dict[tuple, dict] = {}
        for k, c in self.terms.items():
            groups.setdefault(k[1:], {})[k[0]] = c
        return {y: LaurentV(g) for y, g in sorted(groups.items())}

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, SpecializedPoly) and self.variables == other.variables
                and self.terms == other.terms and self.den == other.den)

    def __repr__(self):
        parts = []
        for y, c in self.coefficients().items():
            mon = "*".join(f"y_{b.label()}_{s}^{e}" for (b, s), e in zip(self.variables, y) if e)
            parts.append(f"({c})" + ("*" + mon if mon else ""))
        return "SpecializedPoly(" + (" + ".join(parts) or "0") + ")"


def specialize(F: ShuffleElement, plan: SpecializationPlan,
               splitting: Optional[Mapping[int, Sequence[int]]] = None) -> SpecializedPoly:
    """phi_d of F: x_{k,r} in the s-th copy of [beta] goes to v^{-k} y_{beta,s}.

    ``splitting[c]`` lists the order (1-based indices) in which color-c variables
    are handed to the copies; the default consumes them in index order.
    """
    n = F.rank
    if plan.degree(n) != F.degree:
        raise ValueError(f"plan degree {plan.degree(n)} does not match element degree {F.degree}")
    order = {c: list(range(1, F.degree[c - 1] + 1)) for c in range(1, n)}
    if splitting:
        for c, seq in splitting.items():
            if sorted(seq) != order[c]:
                raise ValueError(f"splitting for color {c} is not a permutation")
            order[c] = list(seq)
    nxt = {c: 0 for c in order}
    p = F.numerator
    target = [0] * p.nvars
    vshift = [0] * p.nvars
    copies = plan.copies()
    for t, (b, _) in enumerate(copies):
        for c in b.colors:
            r = order[c][nxt[c]]
            nxt[c] += 1
            slot = p.pos((c, r)) - 1
            target[slot] = t
            vshift[slot] = -c
    terms = kernels.substitute_vpow(p.terms, target, vshift, len(copies))
    return SpecializedPoly(copies, terms, p.den)


def enumerate_plans(k: Sequence[int], n: Optional[int] = None) -> List[SpecializationPlan]:
    """All d >= 0 with sum d_beta beta = k; depth-first over roots in (j, i) order,
    trying larger multiplicities first."""
    k = tuple(k)
    n = len(k) + 1 if n is None else n
    roots = positive_roots(n)
    out: List[SpecializationPlan] = []

    def rec(idx: int, rem: List[int], chosen: Dict[Root, int]):
        if idx == len(roots):
            if not any(rem):
                out.append(SpecializationPlan(chosen))
            return
        b = roots[idx]
        cap = min(rem[c - 1] for c in b.colors)
        for m in range(cap, -1, -1):
            for c in b.colors:
                rem[c - 1] -= m
            chosen[b] = m
            rec(idx + 1, rem, chosen)
            for c in b.colors:
                rem[c - 1] += m
        chosen.pop(b, None)

    rec(0, list(k), {})
    return out


@dataclass
class GoodResult:
    ok: bool
    certificate: Optional[dict] = field(default=None)

    def __bool__(self):
        return self.ok


def is_good(F: ShuffleElement) -> GoodResult:
    """Integral numerator and every phi_d(F) divisible by (v - v^-1)^{sum d_beta (i - j)}.

    On failure the certificate names the first violating plan (enumeration order).
    """
    p = F.numerator
    if not p.is_integral():
        return GoodResult(False, {
            "plan": None,
            "required_power": 0,
            "failing_coefficient": None,
            "reason": f"numerator has non-Laurent coefficients (denominator {p.den})",
        })
    for plan in enumerate_plans(F.degree, F.rank):
        need = plan.required_power()
        if need == 0:
            continue
        spec = specialize(F, plan)
        for y, c in spec.coefficients().items():
            if not divides_power(c, need):
                return GoodResult(False, {
                    "plan": plan.to_json(),
                    "required_power": need,
                    "failing_coefficient": c.to_json(),
                    "y_exponents": list(y),
                })
    return GoodResult(True, None)
