"""Window verification suites: integrality of the pairing, the good-element
criterion, dual PBWD bases, and the report format shared by the CLI."""
from __future__ import annotations

import csv
import io
import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .exactalg import ONE, V_MINUS_VINV, RatV, is_laurent_polynomial, qfact
from .pairing import FPBWDMonomial, pair, pair_via_words
from .shuffle import (Decomposition, EPBWDMonomial, Root, ShuffleElement, build_e_pbwd,
                      divided_power, e_root, e_tilde, positive_roots, star_many)
from .special import is_good

STRATEGIES = ("zero", "slope")


@dataclass(frozen=True)
class WindowConfig:
    n: int
    max_total_degree: int
    mode_min: int
    mode_max: int
    strategy: str = "zero"
    table: Optional[Tuple[Tuple[str, Tuple[Tuple[int, Tuple[int, ...]], ...]], ...]] = None

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be >= 2")
        if self.mode_min > self.mode_max:
            raise ValueError("mode_min must not exceed mode_max")
        if self.max_total_degree < 1:
            raise ValueError("max_total_degree must be >= 1")
        if self.strategy not in STRATEGIES + ("file",):
            raise ValueError(f"unknown decomposition strategy {self.strategy!r}")
        if self.strategy == "file" and self.table is None:
            raise ValueError("file strategy needs a decomposition table")

    @classmethod
    def from_decomp(cls, n, max_total_degree, mode_min, mode_max, decomp: str = "zero") -> "WindowConfig":
        """``decomp`` is ``zero``, ``slope`` or ``file:PATH``.

        The file maps root labels to modes to vectors, e.g. {"1-2": {"-1": [-1, 0]}};
        simple roots need no entry.
        """
        if decomp.startswith("file:"):
            with open(decomp[5:], encoding="utf-8") as fh:
                raw = json.load(fh)
            table = tuple(sorted(
                (str(lbl), tuple(sorted((int(r), tuple(int(x) for x in vec)) for r, vec in rows.items())))
                for lbl, rows in raw.items()))
            return cls(n, max_total_degree, mode_min, mode_max, "file", table)
        return cls(n, max_total_degree, mode_min, mode_max, decomp)

    @property
    def modes(self) -> range:
        return range(self.mode_min, self.mode_max + 1)

    def describe(self) -> dict:
        out = {"n": self.n, "max_total_degree": self.max_total_degree,
               "modes": [self.mode_min, self.mode_max], "strategy": self.strategy}
        if self.table is not None:
            out["table"] = {lbl: {str(r): list(v) for r, v in rows} for lbl, rows in self.table}
        return out

    def decompose(self, beta: Root, r: int) -> Tuple[int, ...]:
        h = beta.height
        if h == 1:
            return (r,)
        if self.strategy == "zero":
            return (r,) + (0,) * (h - 1)
        if self.strategy == "slope":
            return slope_decomposition(beta, r)
        rows = dict(dict(self.table).get(beta.label(), ()))
        if r not in rows:
            raise KeyError(f"decomposition table has no entry for root {beta.label()} mode {r}")
        vec = rows[r]
        if len(vec) != h or sum(vec) != r:
            raise ValueError(f"bad decomposition {vec} for root {beta.label()} mode {r}")
        return tuple(vec)


def slope_decomposition(beta: Root, r: int) -> Tuple[int, ...]:
    """r_k = floor(r(k-j+1)/h) - floor(r(k-j)/h), h the height of beta."""
    h = beta.height
    return tuple((r * (t + 1)) // h - (r * t) // h for t in range(h))


def degrees_up_to(n: int, max_total: int) -> List[Tuple[int, ...]]:
    out = [k for k in itertools.product(range(max_total + 1), repeat=n - 1) if 1 <= sum(k) <= max_total]
    return sorted(out, key=lambda k: (sum(k), k))


# --- enumeration ----------------------------------------------------------------

def _factor_choices(keys: Sequence[Tuple[Root, int]], degree: Tuple[int, ...], total_mode: Optional[int],
                    allow_repeat: bool):
    """Multisets over ``keys`` (in the given order) with the given degree and mode.

    Yields lists of (root, mode, multiplicity)."""
    n1 = len(degree)

    def rec(start: int, rem: List[int], mode: int, acc):
        if not any(rem):
            if total_mode is None or mode == total_mode:
                yield list(acc)
            return
        for idx in range(start, len(keys)):
            b, r = keys[idx]
            cap = min(rem[c - 1] for c in b.colors) if b.i <= n1 else 0
            for k in range(1, cap + 1):
                for c in b.colors:
                    rem[c - 1] -= k
                acc.append((b, r, k))
                yield from rec(idx + 1, rem, mode + k * r, acc)
                acc.pop()
                for c in b.colors:
                    rem[c - 1] += k
                if not allow_repeat:
                    break

    yield from rec(0, list(degree), 0, [])


def enumerate_e_monomials(cfg: WindowConfig, degree: Sequence[int], total_mode: Optional[int] = None
                          ) -> List[EPBWDMonomial]:
    """Ordered divided-power monomials of the given degree with factor modes in the window."""
    keys = [(b, r) for b in positive_roots(cfg.n) for r in cfg.modes]
    out = [EPBWDMonomial(tuple(ch)) for ch in _factor_choices(keys, tuple(degree), total_mode, True)]
    return sorted(out, key=lambda m: (m.total_mode, m.factors))


def enumerate_f_monomials(cfg: WindowConfig, degree: Sequence[int], total_mode: Optional[int] = None,
                          max_factors: Optional[int] = None) -> List[FPBWDMonomial]:
    """Mirror enumeration on the f-side, factors non-increasing, decompositions from the strategy."""
    keys = [(b, r) for b in reversed(positive_roots(cfg.n)) for r in reversed(cfg.modes)]
    out = []
    for ch in _factor_choices(keys, tuple(degree), total_mode, True):
        if max_factors is not None and sum(k for _, _, k in ch) > max_factors:
            continue
        facs = []
        for b, r, k in ch:
            facs.extend([Decomposition(b, cfg.decompose(b, r))] * k)
        out.append(FPBWDMonomial(tuple(facs)))
    return sorted(out, key=lambda m: (m.total_mode, str(m)))


# --- Gram reports -----------------------------------------------------------------

def _ratv_text(x: RatV) -> str:
    return str(x)


@dataclass
class GramBlock:
    degree: Tuple[int, ...]
    total_mode: int
    rows: List[str]
    cols: List[str]
    entries: List[List[RatV]]
    verdicts: List[List[bool]]
    row_good: List[bool] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "degree": list(self.degree),
            "total_mode": self.total_mode,
            "rows": self.rows,
            "cols": self.cols,
            "row_good": self.row_good,
            "entries": [[e.to_json() for e in row] for row in self.entries],
            "verdicts": self.verdicts,
        }


@dataclass
class GramReport:
    config: dict
    blocks: List[GramBlock]
    violations: List[dict]
    note: str = ("Windows truncate infinite bases; blocks are keyed by (degree, total mode), "
                 "so entries outside a block vanish identically.")

    @property
    def checked(self) -> int:
        return sum(len(b.rows) * len(b.cols) for b in self.blocks)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "config": self.config,
            "note": self.note,
            "blocks": [b.to_json() for b in self.blocks],
            "summary": {"checked": self.checked, "violations": len(self.violations),
                        "passed": self.passed,
                        "first_counterexample": self.violations[0] if self.violations else None},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["degree", "total_mode", "row", "col", "entry", "laurent"])
        for b in self.blocks:
            deg = "(" + ",".join(map(str, b.degree)) + ")"
            for r, row in enumerate(b.rows):
                for c, col in enumerate(b.cols):
                    w.writerow([deg, b.total_mode, row, col, _ratv_text(b.entries[r][c]),
                                int(b.verdicts[r][c])])
        return buf.getvalue()


# Row descriptors travel to worker processes: ("e", EPBWDMonomial, n) or ("x", element JSON).
RowSpec = Tuple


def _row_element(spec: RowSpec) -> ShuffleElement:
    if spec[0] == "e":
        return build_e_pbwd(spec[1], spec[2])
    if spec[0] == "etilde":
        return _tilde_monomial(spec[1], spec[2])
    return ShuffleElement.from_json(spec[1])


def _row_task(task) -> Tuple[List[RatV], bool]:
    spec, cols, check_good, scale = task
    x = _row_element(spec)
    good = bool(is_good(x)) if check_good else True
    vals = []
    for m, s in zip(cols, scale):
        val = pair(x, m)
        vals.append(val * s if s is not None else val)
    return vals, good


def _run_tasks(tasks, workers: int):
    if workers <= 1 or len(tasks) <= 1:
        return [_row_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(_row_task, tasks, chunksize=1))


def _element_mode(x: ShuffleElement) -> int:
    modes = x.modes()
    if len(modes) != 1:
        raise ValueError("injected element must be homogeneous in x")
    return next(iter(modes))


def verify_duality(cfg: WindowConfig, workers: int = 1,
                   inject: Sequence[Tuple[str, ShuffleElement]] = ()) -> GramReport:
    """Pair every E-monomial in the window with every compatible F-monomial and
    require a Laurent polynomial.  ``inject`` adds extra labelled rows."""
    blocks_spec = []
    for deg in degrees_up_to(cfg.n, cfg.max_total_degree):
        erows: Dict[int, List[Tuple[str, RowSpec]]] = {}
        for m in enumerate_e_monomials(cfg, deg):
            erows.setdefault(m.total_mode, []).append((str(m), ("e", m, cfg.n)))
        for label, x in inject:
            if x.degree == deg:
                erows.setdefault(_element_mode(x), []).append((label, ("x", x.to_json())))
        fcols: Dict[int, List[FPBWDMonomial]] = {}
        for f in enumerate_f_monomials(cfg, deg):
            fcols.setdefault(f.total_mode, []).append(f)
        for t in sorted(erows):
            cols = fcols.get(-t, [])
            if cols:
                blocks_spec.append((deg, t, erows[t], cols))
    tasks = []
    for deg, t, rows, cols in blocks_spec:
        for _, spec in rows:
            tasks.append((spec, cols, True, [None] * len(cols)))
    results = iter(_run_tasks(tasks, workers))
    blocks = []
    violations = []
    for deg, t, rows, cols in blocks_spec:
        entries, verdicts, goods = [], [], []
        for label, _ in rows:
            vals, good = next(results)
            ver = [is_laurent_polynomial(v) for v in vals]
            entries.append(vals)
            verdicts.append(ver)
            goods.append(good)
            if not good:
                violations.append({"kind": "not-good", "row": label})
            for c, ok in enumerate(ver):
                if not ok:
                    violations.append({"kind": "non-laurent", "row": label, "col": str(cols[c]),
                                       "value": str(vals[c])})
        blocks.append(GramBlock(deg, t, [lbl for lbl, _ in rows], [str(c) for c in cols],
                                entries, verdicts, goods))
    return GramReport(cfg.describe(), blocks, violations)


# --- the good-element criterion --------------------------------------------------------

def _deep_f_monomials(degree: Tuple[int, ...], n: int, total_mode: int, max_factors: int = 2):
    """Single- and two-factor f-monomials whose decompositions have very negative tails."""
    tails = (-3, -4)
    roots = positive_roots(n)
    out = []
    for N in range(1, max_factors + 1):
        for rs in itertools.combinations_with_replacement(reversed(roots), N):
            deg = [0] * (n - 1)
            for b in rs:
                for c in b.colors:
                    deg[c - 1] += 1
            if tuple(deg) != tuple(degree):
                continue
            per = [list(itertools.product(tails, repeat=b.height - 1)) for b in rs]
            for tl in itertools.product(*per):
                # the leading mode of the last factor absorbs the total mode
                for leads in itertools.product(range(-2, 3), repeat=N - 1):
                    facs = []
                    used = 0
                    for t, (b, tail) in enumerate(zip(rs, tl)):
                        if t < N - 1:
                            lead = leads[t]
                        else:
                            lead = total_mode - used - sum(tail)
                        used += lead + sum(tail)
                        facs.append(Decomposition(b, (lead,) + tuple(tail)))
                    out.append(FPBWDMonomial.unordered(facs))
    return out


def sample_good_elements(cfg: WindowConfig, max_power: int = 2) -> List[Tuple[str, ShuffleElement]]:
    out = []
    for b in positive_roots(cfg.n):
        for r in cfg.modes:
            for k in range(1, max_power + 1):
                if k * b.height > cfg.max_total_degree:
                    continue
                out.append((f"e[{b.j}..{b.i}]@{r}^{k}", divided_power(e_root(b, r, cfg.n), k)))
    return out


def verify_good_criterion(cfg: WindowConfig, elements: Optional[Sequence[Tuple[str, ShuffleElement]]] = None
                          ) -> dict:
    """Good elements pair integrally with the window; non-good ones have a witness pairing."""
    if elements is None:
        elements = sample_good_elements(cfg)
    results = []
    passed = True
    for label, x in elements:
        good = is_good(x)
        mode = _element_mode(x) if not x.is_zero() else 0
        window_cols = enumerate_f_monomials(cfg, x.degree, -mode)
        bad_window = next((m for m in window_cols if not is_laurent_polynomial(pair(x, m))), None)
        entry = {"element": label, "is_good": bool(good), "certificate": good.certificate,
                 "window_pairings_laurent": bad_window is None, "witness": None}
        if good:
            ok = bad_window is None
        else:
            witness = bad_window
            if witness is None:
                witness = next((m for m in _deep_f_monomials(x.degree, x.rank, -mode)
                                if not is_laurent_polynomial(pair(x, m))), None)
            if witness is not None:
                entry["witness"] = {"f": str(witness), "value": str(pair(x, witness))}
            ok = witness is not None
        entry["ok"] = ok
        passed = passed and ok
        results.append(entry)
    return {"passed": passed, "config": cfg.describe(), "elements": results}


# --- dual PBWD bases --------------------------------------------------------------------

def preceq_key(beta: Root, r: int):
    """Slope order: r/height, then height, then the right end of the root."""
    return (Fraction(r, beta.height), beta.i - beta.j, beta.i)


def _tilde_monomial(factors: Tuple[Tuple[Root, int], ...], n: int) -> ShuffleElement:
    return star_many([e_tilde(Decomposition(b, slope_decomposition(b, r)), n) for b, r in factors], n)


def _preceq_multisets(n: int, degree, total_mode, modes, descending: bool):
    keys = sorted(((b, r) for b in positive_roots(n) for r in modes),
                  key=lambda br: preceq_key(*br), reverse=descending)
    out = []
    for ch in _factor_choices(keys, tuple(degree), total_mode, True):
        out.append(tuple(ch))
    return out


def verify_dual_bases(cfg: WindowConfig, workers: int = 1, ordering: str = "e-op") -> dict:
    """Gram blocks of ordered Ẽ-monomials against ordered F divided powers.

    ``ordering="e-op"`` lists Ẽ factors in decreasing slope order and F factors in
    increasing order; ``"e-slope"`` is the reverse assignment.  Each block must have
    one nonzero entry per row and column, of the form +-v^m; the observed signs and
    exponents are recorded.
    """
    if ordering not in ("e-op", "e-slope"):
        raise ValueError(f"unknown ordering {ordering!r}")
    e_desc = ordering == "e-op"
    n = cfg.n
    mirrored = range(-cfg.mode_max, -cfg.mode_min + 1)
    blocks = []
    passed = True
    tasks, meta = [], []
    for deg in degrees_up_to(n, cfg.max_total_degree):
        for t in cfg.modes:
            rows = _preceq_multisets(n, deg, t, cfg.modes, descending=e_desc)
            cols = _preceq_multisets(n, deg, -t, mirrored, descending=not e_desc)
            if not rows and not cols:
                continue
            fmons, scales = [], []
            for ch in cols:
                facs = []
                s = RatV(ONE)
                for b, r, k in ch:
                    facs.extend([Decomposition(b, slope_decomposition(b, r))] * k)
                    s = s * RatV(ONE, V_MINUS_VINV ** k * qfact(k))
                fmons.append(FPBWDMonomial.unordered(facs))
                scales.append(s)
            meta.append((deg, t, rows, cols))
            for ch in rows:
                facs = tuple((b, r) for b, r, k in ch for _ in range(k))
                tasks.append((("etilde", facs, n), fmons, False, scales))
    results = iter(_run_tasks(tasks, workers))
    for deg, t, rows, cols in meta:
        mat = [next(results)[0] for _ in rows]
        ok = len(rows) == len(cols)
        normalizations = []
        for r, row in enumerate(mat):
            nz = [c for c, e in enumerate(row) if not e.is_zero()]
            if len(nz) != 1:
                ok = False
                continue
            e = row[nz[0]]
            mono = e.den == ONE and e.num.is_monomial() and abs(e.num.lead()) == 1
            if not mono:
                ok = False
            normalizations.append({"row": r, "col": nz[0], "value": str(e)})
        for c in range(len(cols)):
            if sum(1 for row in mat if not row[c].is_zero()) != 1:
                ok = False
        passed = passed and ok
        blocks.append({
            "degree": list(deg), "total_mode": t, "ok": ok,
            "rows": [_tilde_label(ch) for ch in rows],
            "cols": [_fdiv_label(ch) for ch in cols],
            "entries": [[str(e) for e in row] for row in mat],
            "normalizations": normalizations,
        })
    return {"passed": passed, "config": cfg.describe(), "ordering": ordering, "blocks": blocks}


def _tilde_label(ch) -> str:
    return "*".join(f"E~[{b.j}..{b.i}]@{r}" + (f"^{k}" if k > 1 else "") for b, r, k in ch) or "1"


def _fdiv_label(ch) -> str:
    return "*".join(f"F[{b.j}..{b.i}]@{r}^({k})" for b, r, k in ch) or "1"


# --- oracle and key-specialization sweeps ----------------------------------------------------

def verify_oracle(cfg: WindowConfig, max_factors: int = 2) -> dict:
    """pair == pair_via_words on every compatible pair in the window."""
    checked = 0
    for deg in degrees_up_to(cfg.n, cfg.max_total_degree):
        for em in enumerate_e_monomials(cfg, deg):
            x = build_e_pbwd(em, cfg.n)
            for fm in enumerate_f_monomials(cfg, deg, -em.total_mode, max_factors=max_factors):
                a, b = pair(x, fm), pair_via_words(x, fm)
                checked += 1
                if a != b:
                    return {"passed": False, "checked": checked,
                            "counterexample": {"e": str(em), "f": str(fm), "pair": str(a), "words": str(b)}}
    return {"passed": True, "checked": checked, "counterexample": None}


def verify_key_specialization(n: int, tails: Iterable[int] = (-3, -4), exps: Iterable[int] = (-1, 0, 1, 2)) -> dict:
    """Run the key specialization identity for the longest root of rank n over a grid."""
    from .pairing import key_specialization_check

    j, i = 1, n - 1
    checked = 0
    tails = list(tails)
    exps = list(exps)
    for a in itertools.product(exps, repeat=i - j + 1):
        for rt in itertools.product(tails, repeat=i - j):
            if any(r + e >= 0 for r, e in zip(rt, a[1:])):
                continue
            res = key_specialization_check(list(a), j, i, list(rt), n)
            checked += 1
            if not res["passed"]:
                return {"passed": False, "checked": checked,
                        "counterexample": {"a": list(a), "r_tail": list(rt), "detail": res}}
    return {"passed": True, "checked": checked, "counterexample": None}
