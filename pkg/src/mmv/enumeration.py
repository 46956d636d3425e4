"""Bulk evaluation of formulas over grids of chain-valued assignments.

Exhaustively scanning every valuation of v variables by n-tuples over the
chain {0, 1/m, ..., 1} means (m+1)^(n*v) assignments.  Doing that with
Fraction objects is hopeless at the sizes the search and audit commands need,
so this module evaluates vectorized over a whole block of assignments at
once: the chain is represented by integers 0..m (k standing for k/m), under
which every operation has an exact integer form:

    neg a    = m - a              impl a b = min(m, m - a + b)
    star a b = max(0, a + b - m)  oplus a b = min(m, a + b)
    meet/join = min/max           box/dia   = min/max over the tuple axis

The scaling k <-> k/m is an isomorphism onto the Fraction arithmetic in
`mmv.core`, so results are exact; callers re-verify hits through the scalar
route anyway.

Assignment order within a cell is descending lexicographic: variables in
sorted name order, coordinates left to right, values from 1 down to 0.  Index
0 is the all-ones assignment.  Cells larger than the cap are sampled
uniformly with a seeded generator instead of enumerated.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

import numpy as np

from .core import MonadicElement
from .syntax import (
    BINARY_TYPES,
    Box,
    Const,
    Dia,
    Formula,
    Impl,
    Join,
    Meet,
    Not,
    Oplus,
    Star,
    Var,
    variables,
)

_CHUNK = 1 << 16


def cell_size(m: int, n: int, nvars: int) -> int:
    """Number of assignments of nvars variables by n-tuples over the m-chain."""
    return (m + 1) ** (n * nvars)


def eval_bulk(formula: Formula, arrays: Mapping[str, np.ndarray], m: int) -> np.ndarray:
    """Evaluate over a block of assignments in scaled-integer form.

    `arrays` maps each variable to an (A, n) integer array of scaled values.
    The result broadcasts against (A, n); constants come back 0-dimensional.
    """
    memo: dict[Formula, np.ndarray] = {}

    def walk(f: Formula) -> np.ndarray:
        cached = memo.get(f)
        if cached is not None:
            return cached
        if isinstance(f, Var):
            try:
                value = arrays[f.name]
            except KeyError:
                raise ValueError(f"no assignment block for variable {f.name!r}") from None
        elif isinstance(f, Const):
            value = np.int32(m if f.value else 0)
        elif isinstance(f, Not):
            value = m - walk(f.arg)
        elif isinstance(f, Box):
            arg = walk(f.arg)
            value = arg if arg.ndim == 0 else arg.min(axis=1, keepdims=True)
        elif isinstance(f, Dia):
            arg = walk(f.arg)
            value = arg if arg.ndim == 0 else arg.max(axis=1, keepdims=True)
        elif isinstance(f, Impl):
            value = np.minimum(m, m - walk(f.left) + walk(f.right))
        elif isinstance(f, Star):
            value = np.maximum(0, walk(f.left) + walk(f.right) - m)
        elif isinstance(f, Oplus):
            value = np.minimum(m, walk(f.left) + walk(f.right))
        elif isinstance(f, Meet):
            value = np.minimum(walk(f.left), walk(f.right))
        elif isinstance(f, Join):
            value = np.maximum(walk(f.left), walk(f.right))
        else:
            raise TypeError(f"cannot evaluate {f!r}")
        memo[f] = value
        return value

    return walk(formula)


def _ones_mask(result: np.ndarray, block: int, m: int) -> np.ndarray:
    """(A,) boolean mask: does the formula take value 1 at every world?"""
    if result.ndim == 0:
        return np.full(block, bool(result == m))
    return np.all(result == m, axis=1)


def _decode_block(
    indices: np.ndarray, m: int, n: int, names: Sequence[str]
) -> dict[str, np.ndarray]:
    """Mixed-radix decode of assignment indices into per-variable blocks.

    Digit d at a position encodes scaled value m - d, so index 0 is the
    all-ones assignment and the order is descending lexicographic.
    """
    digits_total = n * len(names)
    radix = m + 1
    powers = radix ** np.arange(digits_total - 1, -1, -1, dtype=np.int64)
    digits = (indices[:, None] // powers[None, :]) % radix
    values = (m - digits).astype(np.int32)
    block = values.reshape(len(indices), len(names), n)
    return {name: block[:, i, :] for i, name in enumerate(names)}


def _index_to_valuation(
    index: int, m: int, n: int, names: Sequence[str]
) -> dict[str, MonadicElement]:
    digits_total = n * len(names)
    radix = m + 1
    digits = []
    rest = index
    for _ in range(digits_total):
        rest, d = divmod(rest, radix)
        digits.append(d)
    digits.reverse()
    valuation: dict[str, MonadicElement] = {}
    for i, name in enumerate(names):
        coords = digits[i * n : (i + 1) * n]
        valuation[name] = tuple(Fraction(m - d, m) for d in coords)
    return valuation


@dataclass(frozen=True)
class CellResult:
    """Outcome of scanning one (m, n) cell."""

    found: bool
    valuation: dict[str, MonadicElement] | None
    checked: int
    exhaustive: bool


def _scan_blocks(
    m: int, n: int, names: Sequence[str], cap: int, seed: object
) -> Iterator[tuple[dict[str, np.ndarray], np.ndarray | None, int]]:
    """Yield (arrays, indices, block_size) blocks, exhaustive or sampled.

    `indices` is None for sampled blocks; valuations are then read off the
    arrays directly.
    """
    total = cell_size(m, n, len(names))
    if total <= cap:
        start = 0
        while start < total:
            stop = min(start + _CHUNK, total)
            indices = np.arange(start, stop, dtype=np.int64)
            yield _decode_block(indices, m, n, names), indices, stop - start
            start = stop
    else:
        rng = np.random.default_rng(seed)
        remaining = cap
        while remaining > 0:
            block = min(_CHUNK, remaining)
            arrays = {
                name: rng.integers(0, m + 1, size=(block, n), dtype=np.int32)
                for name in names
            }
            yield arrays, None, block
            remaining -= block


def scan_cell(
    premises: Sequence[Formula],
    target: Formula,
    m: int,
    n: int,
    cap: int,
    seed: object,
) -> CellResult:
    """Look for an assignment where every premise holds and the target fails.

    "Holds" means value 1 at every world.  Scans the whole cell when its size
    is within the cap, otherwise samples `cap` assignments with the seed.
    Returns the first hit in scan order.
    """
    names = sorted(set().union(*(variables(f) for f in (*premises, target))))
    total = cell_size(m, n, len(names))
    exhaustive = total <= cap
    checked = 0
    for arrays, indices, block in _scan_blocks(m, n, names, cap, seed):
        mask = np.ones(block, dtype=bool)
        for premise in premises:
            mask &= _ones_mask(eval_bulk(premise, arrays, m), block, m)
            if not mask.any():
                break
        if mask.any():
            mask &= ~_ones_mask(eval_bulk(target, arrays, m), block, m)
            if mask.any():
                hit = int(np.argmax(mask))
                checked += hit + 1
                if indices is not None:
                    valuation = _index_to_valuation(int(indices[hit]), m, n, names)
                else:
                    valuation = {
                        name: tuple(Fraction(int(v), m) for v in arrays[name][hit])
                        for name in names
                    }
                return CellResult(True, valuation, checked, exhaustive)
        checked += block
    return CellResult(False, None, checked, exhaustive)
