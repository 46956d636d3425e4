"""Bulk grid scans: exactness against the scalar route and scan-order pins."""

import random
from fractions import Fraction as F

import numpy as np
import pytest

from mmv import core
from mmv.enumeration import cell_size, eval_bulk, scan_cell
from mmv.randgen import random_formula
from mmv.syntax import parse


def test_cell_sizes():
    assert cell_size(1, 1, 1) == 2
    assert cell_size(2, 2, 2) == 81
    assert cell_size(3, 3, 3) == 4**9


def test_scan_finds_first_assignment_in_descending_order():
    # assignments start from all-ones and count down; the first value of p
    # that fails "p" itself is the next one down the chain
    result = scan_cell([], parse("p"), m=2, n=1, cap=100, seed=0)
    assert result.found and result.exhaustive
    assert result.valuation == {"p": (F(1, 2),)}
    result = scan_cell([], parse("p"), m=1, n=2, cap=100, seed=0)
    # (1,1) passes; the second assignment in order is (1,0)
    assert result.valuation == {"p": (F(1), F(0))}


def test_scan_respects_premises():
    premises = [parse("[](p \\/ q)")]
    result = scan_cell(premises, parse("[]p \\/ []q"), m=1, n=2, cap=100, seed=0)
    assert result.found
    assert result.valuation == {"p": (F(1), F(0)), "q": (F(0), F(1))}


def test_tautology_scan_exhausts_cell():
    result = scan_cell([], parse("p -> p"), m=2, n=2, cap=10**4, seed=0)
    assert not result.found
    assert result.exhaustive
    assert result.checked == cell_size(2, 2, 1)


def test_chunked_exhaustive_scan_crosses_chunk_boundary():
    # 3 variables at (2,2) give 3^12 = 531441 assignments, several chunks
    target = parse("[](p \\/ q \\/ r) -> ([]p \\/ []q \\/ []r)")
    result = scan_cell([], target, m=2, n=2, cap=10**6, seed=0)
    assert result.found and result.exhaustive
    value = core.eval_in_power(target, result.valuation, 2)
    assert any(v != 1 for v in value)


def test_sampled_scan_is_deterministic_and_verified():
    target = parse("<>p -> []p")
    first = scan_cell([], target, m=3, n=3, cap=50, seed=7)
    second = scan_cell([], target, m=3, n=3, cap=50, seed=7)
    assert first.valuation == second.valuation
    assert not first.exhaustive
    if first.found:
        value = core.eval_in_power(target, first.valuation, 3)
        assert any(v != 1 for v in value)


@pytest.mark.parametrize("seed", range(20))
def test_bulk_evaluation_matches_exact_evaluation(seed):
    rng = random.Random(seed)
    formula = random_formula(rng, names=("p", "q"), max_depth=4)
    m, n = rng.randint(1, 2), rng.randint(1, 2)
    chain = core.enumerate_chain(m)
    points = core.enumerate_power(m, n)
    rows_p, rows_q = [], []
    expected = []
    for p_val in points:
        for q_val in points:
            rows_p.append([int(v * m) for v in p_val])
            rows_q.append([int(v * m) for v in q_val])
            expected.append(core.eval_in_power(formula, {"p": p_val, "q": q_val}, n))
    arrays = {
        "p": np.array(rows_p, dtype=np.int32),
        "q": np.array(rows_q, dtype=np.int32),
    }
    got = eval_bulk(formula, arrays, m)
    got = np.broadcast_to(got, (len(expected), n))
    for row, exact in zip(got, expected):
        assert tuple(F(int(x), m) for x in row) == exact
