"""Fair countermodel search over finite chains and finite world sets.

A consequence claim `premises entail conclusion` fails exactly when some
structure makes every premise true everywhere while the conclusion falls
short somewhere.  Finite chains and finite world sets suffice to witness
every such failure, so the search enumerates (m, n) cells, m the chain
denominator and n the number of worlds, in order of cell cost
(m+1)^(n * variables) with ties broken by smaller n, and scans each cell's
valuations in a fixed order.  Cells larger than the budget's cap are sampled
with the budget's seed instead of enumerated, so runs are reproducible.

Every hit is re-verified through the exact scalar evaluator before being
reported.  An "exhausted" verdict means only that the finite budget turned
up nothing; it certifies nothing about validity, and reports say so.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

from . import core, enumeration, semantics
from .core import MonadicElement
from .randgen import random_valuation
from .semantics import SafeStructure
from .syntax import Box, Formula, Impl, Join, Star, parse, print_formula, variables

EXHAUSTED_CAVEAT = (
    "budget exhausted without a countermodel; this does not certify validity"
)


@dataclass(frozen=True, slots=True)
class SearchBudget:
    """Bounds for the search: chain sizes, world counts, cell cap, seed.

    `width`, when set, restricts the search to structures with at most that
    many worlds.
    """

    m_max: int = 3
    n_max: int = 3
    valuation_cap: int = 100_000
    width: int | None = None
    seed: int = 0

    def __post_init__(self):
        if self.m_max < 1 or self.n_max < 1:
            raise ValueError("m_max and n_max must be >= 1")
        if self.valuation_cap < 1:
            raise ValueError("valuation_cap must be >= 1")
        if self.width is not None and self.width < 1:
            raise ValueError("width must be >= 1 when set")


@dataclass(slots=True)
class SearchReport:
    """Search outcome: either a verified countermodel or budget exhaustion."""

    verdict: str  # "countermodel" | "exhausted"
    seed: int
    cells: list[tuple[int, int]]
    assignments: int
    m: int | None = None
    n: int | None = None
    valuation: dict[str, MonadicElement] | None = None
    values: dict[str, MonadicElement] | None = None
    caveat: str | None = None

    @property
    def found(self) -> bool:
        return self.verdict == "countermodel"

    @property
    def cells_visited(self) -> int:
        return len(self.cells)

    def structure(self) -> SafeStructure:
        if not self.found:
            raise ValueError("no countermodel in an exhausted report")
        return SafeStructure(worlds=self.n, valuation=self.valuation)

    def to_json(self) -> dict:
        data: dict = {
            "verdict": self.verdict,
            "cells_visited": self.cells_visited,
            "cells": [[m, n] for m, n in self.cells],
            "assignments": self.assignments,
            "seed": self.seed,
        }
        if self.found:
            data["m"] = self.m
            data["n"] = self.n
            data["valuation"] = {
                name: core.format_tuple(value)
                for name, value in sorted(self.valuation.items())
            }
            data["values"] = {
                text: core.format_tuple(value) for text, value in self.values.items()
            }
        else:
            data["caveat"] = self.caveat
        return data


def countermodel_from_json(data: Mapping) -> tuple[int, int, SafeStructure]:
    """Rebuild (m, n, structure) from a countermodel report's JSON."""
    if data.get("verdict") != "countermodel":
        raise ValueError("report does not carry a countermodel")
    m, n = data["m"], data["n"]
    valuation = {
        name: core.parse_tuple(items) for name, items in data["valuation"].items()
    }
    return m, n, SafeStructure(worlds=n, valuation=valuation)


def _cells(budget: SearchBudget, nvars: int) -> list[tuple[int, int]]:
    n_limit = budget.n_max if budget.width is None else min(budget.n_max, budget.width)
    cells = [
        (m, n) for m in range(1, budget.m_max + 1) for n in range(1, n_limit + 1)
    ]
    cells.sort(key=lambda cell: (enumeration.cell_size(cell[0], cell[1], nvars), cell[1], cell[0]))
    return cells


def _verify_countermodel(
    premises: Sequence[Formula],
    conclusion: Formula,
    n: int,
    valuation: Mapping[str, MonadicElement],
) -> dict[str, MonadicElement]:
    """Re-evaluate a hit through the scalar route; raise if it does not refute."""
    structure = SafeStructure(worlds=n, valuation=dict(valuation))
    values: dict[str, MonadicElement] = {}
    for premise in premises:
        value = semantics.evaluate(structure, premise)
        values[print_formula(premise)] = value
        if any(v != 1 for v in value):
            raise RuntimeError(
                f"search hit does not satisfy premise {print_formula(premise)}"
            )
    value = semantics.evaluate(structure, conclusion)
    values[print_formula(conclusion)] = value
    if all(v == 1 for v in value):
        raise RuntimeError("search hit does not refute the conclusion")
    return values


def _refute_cell(args: tuple) -> enumeration.CellResult:
    premises, conclusion, m, n, cap, seed = args
    return enumeration.scan_cell(premises, conclusion, m, n, cap, seed)


def refute(
    premises: Sequence[Formula],
    conclusion: Formula,
    budget: SearchBudget = SearchBudget(),
    jobs: int = 1,
) -> SearchReport:
    """Search the budgeted cells for a structure refuting the consequence.

    Returns the first verified countermodel in cell order, or an exhausted
    report.  With jobs > 1 cells are scanned in parallel waves; the winner is
    still the first cell in order, so results do not depend on jobs.
    """
    premises = tuple(premises)
    names = sorted(set().union(*(variables(f) for f in (*premises, conclusion))))
    cells = _cells(budget, len(names))
    visited: list[tuple[int, int]] = []
    assignments = 0

    def finish(index: int, result: enumeration.CellResult) -> SearchReport:
        m, n = cells[index]
        values = _verify_countermodel(premises, conclusion, n, result.valuation)
        return SearchReport(
            verdict="countermodel",
            seed=budget.seed,
            cells=visited,
            assignments=assignments,
            m=m,
            n=n,
            valuation=dict(result.valuation),
            values=values,
        )

    if jobs <= 1:
        for index, (m, n) in enumerate(cells):
            result = _refute_cell(
                (premises, conclusion, m, n, budget.valuation_cap, (budget.seed, m, n))
            )
            visited.append((m, n))
            assignments += result.checked
            if result.found:
                return finish(index, result)
    else:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for wave_start in range(0, len(cells), jobs):
                wave = cells[wave_start : wave_start + jobs]
                args = [
                    (premises, conclusion, m, n, budget.valuation_cap, (budget.seed, m, n))
                    for m, n in wave
                ]
                results = list(pool.map(_refute_cell, args))
                for offset, result in enumerate(results):
                    visited.append(wave[offset])
                    assignments += result.checked
                    if result.found:
                        return finish(wave_start + offset, result)
    return SearchReport(
        verdict="exhausted",
        seed=budget.seed,
        cells=visited,
        assignments=assignments,
        caveat=EXHAUSTED_CAVEAT,
    )


def refute_width_k(
    premises: Sequence[Formula],
    conclusion: Formula,
    k: int,
    budget: SearchBudget = SearchBudget(),
    jobs: int = 1,
) -> SearchReport:
    """Countermodel search restricted to structures with at most k worlds."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return refute(premises, conclusion, replace(budget, width=k), jobs=jobs)


def extend_structure(structure: SafeStructure, worlds: int) -> SafeStructure:
    """Add worlds by duplicating the first one.

    Duplicating a world changes no minimum or maximum, so every formula keeps
    its truth values on the original worlds; countermodels stay countermodels.
    """
    if worlds < structure.worlds:
        raise ValueError("cannot shrink a structure")
    extra = worlds - structure.worlds
    return SafeStructure(
        worlds=worlds,
        valuation={
            name: values + (values[0],) * extra
            for name, values in structure.valuation.items()
        },
    )


# ---------------------------------------------------------------------------
# Probing the infinitary box rule


def star_power_formula(base: Formula, n: int) -> Formula:
    """The n-fold star of a formula with itself, folded left to right."""
    if n < 1:
        raise ValueError("exponent must be >= 1")
    result = base
    for _ in range(n - 1):
        result = Star(result, base)
    return result


def boxinf_conclusion(phi: Formula, alpha: Formula, beta: Formula) -> Formula:
    return Join(Box(phi), Impl(Box(alpha), Star(Box(alpha), Box(beta))))


def boxinf_premise(phi: Formula, alpha: Formula, beta: Formula, n: int) -> Formula:
    return Join(Box(phi), Impl(Box(alpha), star_power_formula(Box(beta), n)))


@dataclass(slots=True)
class BoxInfProbeReport:
    """What random structures say about the bounded infinitary rule.

    `violations` would hold structures satisfying every premise up to the
    bound where the dichotomy (box beta = 1 or box alpha = 0) holds and yet
    the conclusion fails; none are expected.  `gaps` lists structures where
    the premises hold up to the bound but the dichotomy fails, so the finite
    audit had no purchase; a gap whose conclusion value is below 1 shows the
    bounded check genuinely weaker than the full rule.
    """

    bound: int
    trials: int
    seed: int
    premise_models: int = 0
    dichotomy_models: int = 0
    violations: list[dict] = field(default_factory=list)
    gaps: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def strict_gaps(self) -> list[dict]:
        return [gap for gap in self.gaps if any(v != "1" for v in gap["conclusion"])]

    def to_json(self) -> dict:
        return {
            "kind": "boxinf-probe",
            "bound": self.bound,
            "trials": self.trials,
            "seed": self.seed,
            "premise_models": self.premise_models,
            "dichotomy_models": self.dichotomy_models,
            "violations": self.violations,
            "gaps": self.gaps,
        }


def boxinf_soundness_probe(
    alpha: Formula | None = None,
    beta: Formula | None = None,
    phi: Formula | None = None,
    bound: int = 1,
    trials: int = 1000,
    seed: int = 0,
    m_max: int = 2,
    n_max: int = 3,
) -> BoxInfProbeReport:
    """Sample structures satisfying the premise family up to the bound.

    Wherever the dichotomy holds the conclusion must evaluate to 1; those
    checks populate `violations` when they fail.  Structures where the
    dichotomy fails are reported as finite-approximation gaps.
    """
    alpha = parse("p") if alpha is None else alpha
    beta = parse("q") if beta is None else beta
    phi = parse("r") if phi is None else phi
    names = sorted(
        set(variables(alpha)) | set(variables(beta)) | set(variables(phi))
    )
    premise_formulas = [boxinf_premise(phi, alpha, beta, i) for i in range(1, bound + 1)]
    conclusion = boxinf_conclusion(phi, alpha, beta)
    rng = random.Random(seed)
    report = BoxInfProbeReport(bound=bound, trials=trials, seed=seed)
    for _ in range(trials):
        m = rng.randint(1, m_max)
        n = rng.randint(1, n_max)
        structure = SafeStructure(
            worlds=n, valuation=random_valuation(rng, names, m, n)
        )
        if not semantics.is_model(structure, premise_formulas):
            continue
        report.premise_models += 1
        box_alpha = semantics.evaluate(structure, Box(alpha))[0]
        box_beta = semantics.evaluate(structure, Box(beta))[0]
        conclusion_value = semantics.evaluate(structure, conclusion)
        record = {
            "model": semantics.model_to_json(structure),
            "box_alpha": core.format_rational(box_alpha),
            "box_beta": core.format_rational(box_beta),
            "conclusion": core.format_tuple(conclusion_value),
        }
        if box_beta == 1 or box_alpha == 0:
            report.dichotomy_models += 1
            if any(v != 1 for v in conclusion_value):
                report.violations.append(record)
        else:
            report.gaps.append(record)
    return report
