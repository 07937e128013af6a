"""Check a presentation against concrete operators on a safe window.

Each relation ``lhs = rhs`` is expanded into a word sum ``sum_w c_w w`` and
evaluated only on the columns where truncation cannot interfere: a word
``x1 x2 ... xk`` is applied right to left to a column selector, so the cost
scales with the window rather than the full space. The window budget of a
relation is the largest climb over its words, computed from the bounds the
assigned operators carry (see :mod:`dualhahn.opalg.operator`).
"""

from __future__ import annotations

import contextlib
import contextvars
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping

from dualhahn.opalg import Backend, GaussianRational, Operator, RelationVerdict, Verdict
from dualhahn.opalg.operator import verdict_for_block
from dualhahn.opalg.sparse import ExactMatrix, FloatMatrix
from dualhahn.presentations.model import Presentation, Relation, adhoc_presentation, builtin_presentation
from dualhahn.presentations.parser import expand, parse_expression


class MissingSymbolError(KeyError):
    pass


_BUDGET_OVERRIDE: contextvars.ContextVar[int | None] = contextvars.ContextVar("budget_override", default=None)


@contextlib.contextmanager
def budget_override(budget: int | None):
    """Force every check made inside the block to use ``budget``.

    Takes precedence over budgets derived from operator climbs, not over an
    explicit ``RealizationMap.budget``. ``None`` leaves the derived budgets.
    """
    if budget is not None and budget < 0:
        raise ValueError("budget must be non-negative")
    token = _BUDGET_OVERRIDE.set(budget)
    try:
        yield
    finally:
        _BUDGET_OVERRIDE.reset(token)


@dataclass(frozen=True)
class RealizationMap:
    """Assignment of an operator to every symbol of ``presentation``.

    ``budget`` overrides the per-relation budget derived from operator climbs.
    """

    presentation: Presentation
    assignment: Mapping[str, Operator]
    budget: int | None = None

    def __post_init__(self):
        missing = [s for s in self.presentation.symbols if s not in self.assignment]
        if missing:
            raise MissingSymbolError(f"{self.presentation.name}: no operator for {missing}")
        ops = [self.assignment[s] for s in self.presentation.symbols]
        if ops:
            first = ops[0]
            for op in ops[1:]:
                first._check(op)
        if self.budget is not None and self.budget < 0:
            raise ValueError("budget must be non-negative")

    @property
    def space(self):
        return self.assignment[self.presentation.symbols[0]].space


@dataclass(frozen=True)
class RelationResult:
    tag: str
    kind: str  # relation, centrality, involution or identity
    text: str
    verdict: RelationVerdict
    seconds: float = 0.0
    informational: bool = False
    expect_zero: bool = True

    @property
    def status(self) -> str:
        if self.verdict.verdict is Verdict.VACUOUS:
            return "VACUOUS"
        if not self.expect_zero:
            return "PASS" if self.verdict.nonzero else "FAIL"
        if self.verdict.passed:
            return "PASS"
        return "CENTRALITY_VIOLATION" if self.kind == "centrality" else "FAIL"

    @property
    def ok(self) -> bool:
        return self.informational or self.status == "PASS"

    def to_dict(self, prefix: str = "", timing: bool = False) -> dict:
        out = {
            "tag": f"{prefix}{self.tag}",
            "kind": self.kind,
            "relation": self.text,
            "status": self.status,
            "verdict": self.verdict.verdict.value,
            "max_abs": float(self.verdict.max_abs),
            "budget": self.verdict.budget,
            "window_size": self.verdict.window_size,
            "window_max_grade": self.verdict.window_max_grade,
            "informational": self.informational,
            "expect_zero": self.expect_zero,
        }
        if timing:
            out["seconds"] = round(self.seconds, 6)
        return out


@dataclass(frozen=True)
class RelationReport:
    name: str
    results: tuple[RelationResult, ...]
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def gating(self) -> tuple[RelationResult, ...]:
        return tuple(r for r in self.results if not r.informational)

    def result(self, tag: str) -> RelationResult:
        for r in self.results:
            if r.tag == tag:
                return r
        raise KeyError(tag)

    def failures(self) -> list[RelationResult]:
        return [r for r in self.results if not r.ok]

    def to_dict(self, timing: bool = False) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "meta": self.meta,
            "results": [r.to_dict(f"{self.name}:", timing) for r in self.results],
        }

    def summary(self) -> str:
        counts: dict[str, int] = {}
        for r in self.results:
            key = r.status + (" (informational)" if r.informational else "")
            counts[key] = counts.get(key, 0) + 1
        parts = ", ".join(f"{k}: {v}" for k, v in sorted(counts.items()))
        return f"{self.name}: {'ok' if self.passed else 'FAILED'} ({parts})"


def merge_reports(name: str, reports, meta: dict | None = None) -> RelationReport:
    """Concatenate reports, prefixing tags with the source report name when it differs from ``name``."""
    results = []
    for rep in reports:
        prefix = "" if rep.name == name else f"{rep.name}:"
        for r in rep.results:
            results.append(RelationResult(f"{prefix}{r.tag}", r.kind, r.text, r.verdict, r.seconds,
                                          r.informational, r.expect_zero))
    return RelationReport(name, tuple(results), dict(meta or {}))


def mark(report: RelationReport, *, informational: bool | None = None, expect_zero: bool | None = None,
         tags=None) -> RelationReport:
    """Copy of ``report`` with flags overridden on ``tags`` (all results when None)."""
    out = []
    for r in report.results:
        if tags is None or r.tag in tags:
            r = RelationResult(
                r.tag, r.kind, r.text, r.verdict, r.seconds,
                r.informational if informational is None else informational,
                r.expect_zero if expect_zero is None else expect_zero,
            )
        out.append(r)
    return RelationReport(report.name, tuple(out), report.meta)


# -- evaluation ---------------------------------------------------------------

def word_climb(word, assignment: Mapping[str, Operator]) -> int:
    """Climb of the product ``word[0] @ word[1] @ ...`` from the operators' bounds."""
    climb, raise_ = 0, 0
    for sym in reversed(word):
        op = assignment[sym]
        climb = max(climb, raise_ + op.climb)
        raise_ += op.grade_raise
    return climb


def polynomial_budget(poly: dict, assignment: Mapping[str, Operator]) -> int:
    return max((word_climb(w, assignment) for w in poly), default=0)


class _WindowEvaluator:
    """Evaluates word sums on the window columns, memoizing shared suffixes."""

    def __init__(self, assignment: Mapping[str, Operator], min_window_grade: int):
        self.assignment = assignment
        first = next(iter(assignment.values()))
        self.space = first.space
        self.backend = first.backend
        self.kind = ExactMatrix if self.backend is Backend.EXACT else FloatMatrix
        self.min_window_grade = min_window_grade if self.space.boson_modes else 0
        self._memo: dict = {}

    def window(self, budget: int):
        cols = self.space.window(budget)
        max_grade = self.space.cutoff - budget
        if max_grade < self.min_window_grade:
            cols = cols[:0]
        return cols, max_grade

    def _apply(self, budget: int, word: tuple, cols):
        key = (budget, word)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if not word:
            value = self.kind.selector(self.space.dimension, cols)
        else:
            value = self.assignment[word[0]].matrix @ self._apply(budget, word[1:], cols)
        self._memo[key] = value
        return value

    def check(self, poly: dict, budget: int, tolerance: float) -> RelationVerdict:
        cols, max_grade = self.window(budget)
        if cols.size == 0:
            return RelationVerdict(Verdict.VACUOUS, 0.0, budget, 0, max_grade, 0.0)
        total = self.kind.zeros((self.space.dimension, cols.size))
        for word in sorted(poly, key=lambda w: (len(w), w)):
            coeff = poly[word]
            scale = coeff if self.backend is Backend.EXACT else complex(coeff)
            total = total + self._apply(budget, word, cols).scale(scale)
        return verdict_for_block(total, self.backend, budget, cols.size, max_grade, tolerance)


def _commutator_poly(x: str, y: str) -> dict:
    one = GaussianRational(1)
    return {(x, y): one, (y, x): -one}


def _involution_poly(x: str) -> dict:
    return {(x, x): GaussianRational(1), (): GaussianRational(-1)}


def verify(rmap: RealizationMap, tolerance: float = 1e-10, min_window_grade: int = 1, jobs: int = 1,
           audits: bool = True, kind: str = "relation") -> RelationReport:
    """Check every relation of ``rmap.presentation`` on its safe window.

    With ``audits`` the report also contains ``[c,g] = 0`` for each declared
    central ``c`` and generator ``g`` and ``x*x = 1`` for each declared
    involution. Windows whose top grade is below ``min_window_grade`` are
    reported VACUOUS (a check confined to the boson vacuum says little).
    """
    pres = rmap.presentation
    assignment = dict(rmap.assignment)
    forced = rmap.budget if rmap.budget is not None else _BUDGET_OVERRIDE.get()
    evaluator = _WindowEvaluator(assignment, min_window_grade)

    tasks: list[tuple[str, str, str, dict]] = []
    for rel in pres.relations:
        tasks.append((rel.tag, kind, rel.text, rel.polynomial))
    if audits:
        for c in pres.centrals:
            for g in pres.generators:
                tasks.append((f"central[{c},{g}]", "centrality", f"[{c},{g}] = 0", _commutator_poly(c, g)))
        for x in pres.involutions:
            tasks.append((f"involution[{x}]", "involution", f"{x}*{x} = 1", _involution_poly(x)))

    def run(task):
        tag, kind_, text, poly = task
        budget = forced if forced is not None else polynomial_budget(poly, assignment)
        start = time.perf_counter()
        verdict = evaluator.check(poly, budget, tolerance)
        return RelationResult(tag, kind_, text, verdict, time.perf_counter() - start)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run, tasks))
    else:
        results = [run(t) for t in tasks]
    meta = {"dimension": evaluator.space.dimension, "cutoff": evaluator.space.cutoff,
            "backend": evaluator.backend.value}
    return RelationReport(pres.name, tuple(results), meta)


def check_identities(name: str, identities, assignment: Mapping[str, Operator], *, tolerance: float = 1e-10,
                     budget: int | None = None, min_window_grade: int = 1, expect_zero: bool = True,
                     informational: bool = False, jobs: int = 1) -> RelationReport:
    """Check ad-hoc ``(tag, "lhs = rhs")`` identities between named operators."""
    rels = [Relation.parse(tag, text) for tag, text in identities]
    used = sorted(set().union(*(r.symbols for r in rels))) if rels else []
    pres = adhoc_presentation(name, used, list(identities))
    rmap = RealizationMap(pres, {s: assignment[s] for s in used}, budget)
    report = verify(rmap, tolerance, min_window_grade, jobs, audits=False, kind="identity")
    return mark(report, informational=informational, expect_zero=expect_zero)


def numeric_result(tag: str, text: str, value: float, tolerance: float, *, informational: bool = False,
                   size: int = 0) -> RelationResult:
    """Row for a floating-point check that passes when ``value <= tolerance``."""
    verdict = RelationVerdict(Verdict.RESIDUAL, float(value), 0, size, 0, tolerance)
    return RelationResult(tag, "numeric", text, verdict, informational=informational)


def check_display(name: str, assignment: Mapping[str, Operator], tolerance: float = 1e-10,
                  jobs: int = 1) -> RelationReport:
    """Informational rows for the literal display forms of a builtin presentation.

    Only relations whose display form differs from the verified one are
    included; each row is expected to fail and never gates a run.
    """
    base = builtin_presentation(name)
    pres = Presentation(name, base.generators, tuple(base.display[t] for t in base.display),
                        base.centrals, base.involutions)
    report = verify(RealizationMap(pres, assignment), tolerance, jobs=jobs, audits=False, kind="display")
    return RelationReport("display", mark(report, informational=True).results, report.meta)


def evaluate(text: str, assignment: Mapping[str, Operator], space=None, backend: Backend | None = None) -> Operator:
    """Operator for an expression over named operators, e.g. ``"mu1 + mu2*R12"``.

    Products are formed on the full space so the climb bounds propagate.
    """
    poly = expand(parse_expression(text))
    if space is None or backend is None:
        ref = next(iter(assignment.values()))
        space, backend = ref.space, ref.backend
    out = None
    for word in sorted(poly, key=lambda w: (len(w), w)):
        missing = [sym for sym in word if sym not in assignment]
        if missing:
            raise MissingSymbolError(missing[0])
        if word:
            term = assignment[word[0]]
            for sym in word[1:]:
                term = term @ assignment[sym]
        else:
            term = Operator.identity(space, backend)
        coeff = poly[word]
        term = term * (coeff if backend is Backend.EXACT else complex(coeff))
        out = term if out is None else out + term
    return out if out is not None else Operator.zero(space, backend)
