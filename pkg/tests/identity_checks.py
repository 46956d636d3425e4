"""Shared checkers for the quantifier identities on power tuples.

Both the unit tests and the acceptance gate check the same three blocks:
the five quantifier identities, the fourteen order/arithmetic items that
hold for all elements a, b and quantifier-image constants c, and the four
items tying the quantifiers to star powers and sums.  Each checker returns
the names of the violated items, so a clean run returns empty lists.
"""

from __future__ import annotations

from fractions import Fraction

from mmv import core
from mmv.core import MonadicElement


def _impl(a, b):
    return core.power_binop("impl", a, b)


def _star(a, b):
    return core.power_binop("star", a, b)


def _oplus(a, b):
    return core.power_binop("oplus", a, b)


def _meet(a, b):
    return core.power_binop("meet", a, b)


def _join(a, b):
    return core.power_binop("join", a, b)


def _leq(a: MonadicElement, b: MonadicElement) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _power(a: MonadicElement, k: int) -> MonadicElement:
    result = core.const_tuple(Fraction(1), len(a))
    for _ in range(k):
        result = _star(result, a)
    return result


def _multiple(a: MonadicElement, k: int) -> MonadicElement:
    result = core.const_tuple(Fraction(0), len(a))
    for _ in range(k):
        result = _oplus(result, a)
    return result


def quantifier_identity_violations(a: MonadicElement, b: MonadicElement) -> list[str]:
    """The five identities that make the sup/inf pair a quantifier."""
    ex, fa = core.exists_sup, core.forall_inf
    ones = core.const_tuple(Fraction(1), len(a))
    failed = []
    if _impl(fa(a), a) != ones:
        failed.append("M1")
    if fa(_impl(a, fa(b))) != _impl(ex(a), fa(b)):
        failed.append("M2")
    if fa(_impl(fa(a), b)) != _impl(fa(a), fa(b)):
        failed.append("M3")
    if fa(_join(ex(a), b)) != _join(ex(a), fa(b)):
        failed.append("M4")
    if ex(_star(a, a)) != _star(ex(a), ex(a)):
        failed.append("M5")
    return failed


def order_fact_violations(
    a: MonadicElement, b: MonadicElement, c: MonadicElement
) -> list[str]:
    """The fourteen order/arithmetic items; c must be a constant tuple."""
    ex, fa, neg = core.exists_sup, core.forall_inf, core.power_neg
    zeros = core.const_tuple(Fraction(0), len(a))
    ones = core.const_tuple(Fraction(1), len(a))
    failed = []
    if not (fa(ones) == ex(ones) == ones and fa(zeros) == ex(zeros) == zeros):
        failed.append("order.1")
    if not (fa(c) == ex(c) == c):
        failed.append("order.2")
    if not (_leq(fa(a), a) and _leq(a, ex(a))):
        failed.append("order.3")
    if _leq(a, b) and not (_leq(fa(a), fa(b)) and _leq(ex(a), ex(b))):
        failed.append("order.4")
    if fa(_join(a, c)) != _join(fa(a), c):
        failed.append("order.5")
    if ex(_join(a, b)) != _join(ex(a), ex(b)):
        failed.append("order.6")
    if fa(_meet(a, b)) != _meet(fa(a), fa(b)):
        failed.append("order.7")
    if ex(_meet(a, c)) != _meet(ex(a), c):
        failed.append("order.8")
    if fa(_impl(a, c)) != _impl(ex(a), c):
        failed.append("order.9")
    if not _leq(ex(_impl(a, c)), _impl(fa(a), c)):
        failed.append("order.10")
    if fa(_impl(c, a)) != _impl(c, fa(a)):
        failed.append("order.11")
    if not _leq(ex(_impl(c, a)), _impl(c, ex(a))):
        failed.append("order.12")
    if fa(neg(a)) != neg(ex(a)):
        failed.append("order.13")
    if not _leq(ex(neg(a)), neg(fa(a))):
        failed.append("order.14")
    return failed


def arithmetic_fact_violations(
    a: MonadicElement, powers: range = range(5)
) -> list[str]:
    """The four items tying the quantifiers to powers and multiples."""
    ex, fa, neg = core.exists_sup, core.forall_inf, core.power_neg
    ones = core.const_tuple(Fraction(1), len(a))
    failed = []
    if not (ex(a) == neg(fa(neg(a))) and fa(a) == neg(ex(neg(a)))):
        failed.append("arith.1")
    if ex(_impl(ex(a), a)) != ones:
        failed.append("arith.2")
    if any(
        ex(_power(a, k)) != _power(ex(a), k) or ex(_multiple(a, k)) != _multiple(ex(a), k)
        for k in powers
    ):
        failed.append("arith.3")
    if any(
        fa(_power(a, k)) != _power(fa(a), k) or fa(_multiple(a, k)) != _multiple(fa(a), k)
        for k in powers
    ):
        failed.append("arith.4")
    return failed


def all_violations(
    a: MonadicElement, b: MonadicElement, c: MonadicElement
) -> list[str]:
    return (
        quantifier_identity_violations(a, b)
        + order_fact_violations(a, b, c)
        + arithmetic_fact_violations(a)
    )
