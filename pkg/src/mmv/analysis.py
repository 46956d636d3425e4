"""Finite monadic MV-algebras: validation, filters, width, representations.

An algebra is given either functionally, as a subset of a finite power of a
finite chain closed under implication, 0, and the sup-quantifier, or by
tables: an implication matrix, a zero element, and a sup-quantifier column.
Everything else is derived: not a = a -> 0, a (+) b = ~a -> b,
a * b = ~(a -> ~b), a \\/ b = (a -> b) -> b, a /\\ b = ~(~a \\/ ~b), 1 = ~0,
and the inf-quantifier as ~exists~.

`validate` checks the MV axioms of the reduct and the five quantifier
identities exhaustively and reports every violation with witnesses.  The
structure theory here is exact and finite: filters are up-sets of idempotent
elements (closure under * forces an idempotent minimum in the finite case),
the orthogonal width is a maximum-clique computation on the join-equals-one
graph, the radical is the intersection of the maximal filters, simple
algebras get a concrete coordinatewise embedding indexed by their maximal
filters, and finite witnessed families of rational-valued functions embed
into a single finite power via a common-denominator chain.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import core
from .core import MonadicElement

_ZERO = Fraction(0)
_ONE = Fraction(1)


class AlgebraError(ValueError):
    """Structurally bad algebra input (shape, closure, failed load checks)."""


class NotSimpleError(AlgebraError):
    """Raised when an operation requiring simplicity meets a non-simple algebra."""

    def __init__(self, message: str, classification: "Classification"):
        super().__init__(message)
        self.classification = classification


class WitnessError(AlgebraError):
    """A claimed quantifier witness does not attain the minimum."""


@dataclass(frozen=True, slots=True)
class Violation:
    identity: str
    witness: tuple[str, ...]

    def to_json(self) -> dict:
        return {"identity": self.identity, "witness": list(self.witness)}


def _element_label(element: MonadicElement) -> str:
    return "(" + ", ".join(core.format_rational(v) for v in element) + ")"


class FiniteMonadicAlgebra:
    """Finite MV-algebra with a sup-quantifier, in table form.

    Elements are indices 0..size-1 with display labels.  Functional algebras
    additionally carry their chain denominator m, power exponent n, and the
    carrier tuples aligned with the indices.
    """

    def __init__(
        self,
        labels: Sequence[str],
        impl: Sequence[Sequence[int]],
        zero: int,
        exists: Sequence[int],
        m: int | None = None,
        n: int | None = None,
        carrier: Sequence[MonadicElement] | None = None,
        generators: Sequence[MonadicElement] | None = None,
        check: bool = True,
    ):
        self.labels = tuple(labels)
        size = len(self.labels)
        if size == 0:
            raise AlgebraError("empty carrier")
        if len(set(self.labels)) != size:
            raise AlgebraError("duplicate element labels")
        self.impl_table = tuple(tuple(row) for row in impl)
        if len(self.impl_table) != size or any(len(row) != size for row in self.impl_table):
            raise AlgebraError(f"implication table must be {size}x{size}")
        self.exists_table = tuple(exists)
        if len(self.exists_table) != size:
            raise AlgebraError(f"exists column must have {size} entries")
        for value in itertools.chain((zero,), self.exists_table, *self.impl_table):
            if not isinstance(value, int) or not 0 <= value < size:
                raise AlgebraError(f"table entry {value!r} is not an element index")
        self.zero = zero
        self.m = m
        self.n = n
        self.carrier = tuple(carrier) if carrier is not None else None
        self.generators = tuple(generators) if generators is not None else None
        if self.carrier is not None and len(self.carrier) != size:
            raise AlgebraError("carrier does not match label count")

        rng = range(size)
        self.neg_table = tuple(self.impl_table[a][zero] for a in rng)
        self.one = self.neg_table[zero]
        neg = self.neg_table
        impl_t = self.impl_table
        self.oplus_table = tuple(tuple(impl_t[neg[a]][b] for b in rng) for a in rng)
        self.star_table = tuple(
            tuple(neg[impl_t[a][neg[b]]] for b in rng) for a in rng
        )
        self.join_table = tuple(tuple(impl_t[impl_t[a][b]][b] for b in rng) for a in rng)
        self.meet_table = tuple(
            tuple(neg[self.join_table[neg[a]][neg[b]]] for b in rng) for a in rng
        )
        self.forall_table = tuple(neg[self.exists_table[neg[a]]] for a in rng)

        if check:
            violations = self.validate()
            if violations:
                summary = "; ".join(
                    f"{v.identity} at ({', '.join(v.witness)})" for v in violations[:3]
                )
                raise AlgebraError(
                    f"algebra fails {len(violations)} identity check(s): {summary}"
                )

    # -- basic access

    @property
    def size(self) -> int:
        return len(self.labels)

    def label(self, index: int) -> str:
        return self.labels[index]

    def leq(self, a: int, b: int) -> bool:
        return self.impl_table[a][b] == self.one

    def idempotents(self) -> list[int]:
        return [a for a in range(self.size) if self.star_table[a][a] == a]

    def star_power(self, a: int, exponent: int) -> int:
        if exponent < 0:
            raise ValueError("negative exponent")
        result = self.one
        for _ in range(exponent):
            result = self.star_table[result][a]
        return result

    def exists_image(self) -> list[int]:
        return sorted(set(self.exists_table))

    # -- construction from a functional carrier

    @classmethod
    def from_carrier(
        cls,
        m: int,
        n: int,
        elements: Sequence[MonadicElement],
        generators: Sequence[MonadicElement] | None = None,
        check: bool = True,
    ) -> "FiniteMonadicAlgebra":
        carrier = sorted(set(elements))
        if not carrier:
            raise AlgebraError("empty carrier")
        for element in carrier:
            if not core.in_power(element, m, n):
                raise AlgebraError(
                    f"element {_element_label(element)} is not an n-tuple over the m-chain"
                )
        index = {element: i for i, element in enumerate(carrier)}
        zero_element = core.const_tuple(_ZERO, n)
        if zero_element not in index:
            raise AlgebraError("carrier lacks the zero tuple")

        def lookup(element: MonadicElement, description: str) -> int:
            found = index.get(element)
            if found is None:
                raise AlgebraError(
                    f"carrier is not closed: {description} gives {_element_label(element)}"
                )
            return found

        impl = [
            [
                lookup(
                    core.power_binop("impl", a, b),
                    f"{_element_label(a)} -> {_element_label(b)}",
                )
                for b in carrier
            ]
            for a in carrier
        ]
        exists = [
            lookup(core.exists_sup(a), f"exists {_element_label(a)}") for a in carrier
        ]
        return cls(
            labels=[_element_label(e) for e in carrier],
            impl=impl,
            zero=index[zero_element],
            exists=exists,
            m=m,
            n=n,
            carrier=carrier,
            generators=generators,
            check=check,
        )

    # -- identity checking

    def validate(self) -> list[Violation]:
        """Exhaustive check of the MV axioms and quantifier identities.

        Returns every violated identity with (labels of) witnessing elements.
        """
        violations: list[Violation] = []
        rng = range(self.size)
        lab = self.labels
        oplus, neg, star = self.oplus_table, self.neg_table, self.star_table
        impl, join, forall, exists = (
            self.impl_table,
            self.join_table,
            self.forall_table,
            self.exists_table,
        )
        zero, one = self.zero, self.one

        def report(identity: str, *witness: int) -> None:
            violations.append(Violation(identity, tuple(lab[w] for w in witness)))

        for a in rng:
            if oplus[a][zero] != a:
                report("MV3: a (+) 0 = a", a)
            if neg[neg[a]] != a:
                report("MV4: ~~a = a", a)
            if oplus[a][one] != one:
                report("MV5: a (+) 1 = 1", a)
        for a in rng:
            for b in rng:
                if oplus[a][b] != oplus[b][a]:
                    report("MV2: a (+) b = b (+) a", a, b)
                if oplus[neg[oplus[neg[a]][b]]][b] != oplus[neg[oplus[neg[b]][a]]][a]:
                    report("MV6: ~(~a (+) b) (+) b = ~(~b (+) a) (+) a", a, b)
        for a in rng:
            for b in rng:
                for c in rng:
                    if oplus[oplus[a][b]][c] != oplus[a][oplus[b][c]]:
                        report("MV1: (a (+) b) (+) c = a (+) (b (+) c)", a, b, c)

        for a in rng:
            if impl[forall[a]][a] != one:
                report("M1: forall a -> a = 1", a)
            if exists[star[a][a]] != star[exists[a]][exists[a]]:
                report("M5: exists (a*a) = exists a * exists a", a)
        for a in rng:
            for b in rng:
                if forall[impl[a][forall[b]]] != impl[exists[a]][forall[b]]:
                    report("M2: forall (a -> forall b) = exists a -> forall b", a, b)
                if forall[impl[forall[a]][b]] != impl[forall[a]][forall[b]]:
                    report("M3: forall (forall a -> b) = forall a -> forall b", a, b)
                if forall[join[exists[a]][b]] != join[exists[a]][forall[b]]:
                    report("M4: forall (exists a \\/ b) = exists a \\/ forall b", a, b)
        return violations


def generate_subalgebra(
    m: int,
    n: int,
    generators: Iterable[MonadicElement],
    max_size: int = 4096,
) -> FiniteMonadicAlgebra:
    """Close the generators under implication, 0, and the sup-quantifier.

    The closure inside a finite power is finite; `max_size` guards against
    blowing up on large chains.
    """
    generators = tuple(generators)
    for element in generators:
        if not core.in_power(element, m, n):
            raise AlgebraError(
                f"generator {_element_label(element)} is not an n-tuple over the m-chain"
            )
    closure: set[MonadicElement] = {core.const_tuple(_ZERO, n)}
    closure.update(generators)
    frontier = list(closure)
    while frontier:
        fresh: set[MonadicElement] = set()

        def consider(element: MonadicElement) -> None:
            if element not in closure:
                fresh.add(element)

        for a in frontier:
            consider(core.exists_sup(a))
            for b in closure:
                consider(core.power_binop("impl", a, b))
                consider(core.power_binop("impl", b, a))
        closure.update(fresh)
        if len(closure) > max_size:
            raise AlgebraError(f"closure exceeds {max_size} elements")
        frontier = list(fresh)
    return FiniteMonadicAlgebra.from_carrier(
        m, n, sorted(closure), generators=generators, check=False
    )


# ---------------------------------------------------------------------------
# Filters


def filters(algebra: FiniteMonadicAlgebra) -> list[frozenset[int]]:
    """Every filter: up-sets of idempotent elements, smallest first."""
    found = {
        frozenset(a for a in range(algebra.size) if algebra.leq(e, a))
        for e in algebra.idempotents()
    }
    return sorted(found, key=lambda f: (len(f), sorted(f)))


def proper_filters(algebra: FiniteMonadicAlgebra) -> list[frozenset[int]]:
    return [f for f in filters(algebra) if algebra.zero not in f]


def prime_filters(algebra: FiniteMonadicAlgebra) -> list[frozenset[int]]:
    """Proper filters where membership of a join forces a member disjunct."""
    result = []
    for f in proper_filters(algebra):
        prime = True
        for a in range(algebra.size):
            if not prime:
                break
            for b in range(algebra.size):
                if algebra.join_table[a][b] in f and a not in f and b not in f:
                    prime = False
                    break
        if prime:
            result.append(f)
    return result


def maximal_filters(algebra: FiniteMonadicAlgebra) -> list[frozenset[int]]:
    proper = proper_filters(algebra)
    return [
        f
        for f in proper
        if not any(other != f and other > f for other in proper)
    ]


def radical(algebra: FiniteMonadicAlgebra) -> frozenset[int]:
    """Intersection of the maximal filters."""
    maximal = maximal_filters(algebra)
    if not maximal:
        return frozenset(range(algebra.size))
    result = set(maximal[0])
    for f in maximal[1:]:
        result &= f
    return frozenset(result)


# ---------------------------------------------------------------------------
# Width


def orthogonal_width(
    algebra: FiniteMonadicAlgebra, cap: int = 64
) -> tuple[int, list[int]]:
    """Size of the largest orthogonal set and one witness.

    Orthogonal: elements below 1, pairwise joining to 1.  This is a maximum
    clique in the join-equals-one graph, found by branch and bound.
    """
    vertices = [a for a in range(algebra.size) if a != algebra.one]
    if len(vertices) > cap:
        raise AlgebraError(
            f"width brute force capped at {cap} elements, carrier has {len(vertices)}"
        )
    adjacency = [0] * len(vertices)
    one = algebra.one
    for i, a in enumerate(vertices):
        for j, b in enumerate(vertices):
            if i != j and algebra.join_table[a][b] == one:
                adjacency[i] |= 1 << j

    best: list[int] = []

    def expand(clique: list[int], candidates: int) -> None:
        nonlocal best
        if not candidates:
            if len(clique) > len(best):
                best = clique[:]
            return
        if len(clique) + candidates.bit_count() <= len(best):
            return
        pivot = (candidates).bit_length() - 1
        rest = candidates & ~adjacency[pivot]
        rest |= 1 << pivot
        while rest:
            v = rest.bit_length() - 1
            rest &= ~(1 << v)
            candidates &= ~(1 << v)
            clique.append(v)
            expand(clique, candidates & adjacency[v])
            clique.pop()

    expand([], (1 << len(vertices)) - 1)
    return len(best), sorted(vertices[i] for i in best)


def width_equation_holds(
    algebra: FiniteMonadicAlgebra, k: int
) -> tuple[bool, tuple[int, ...] | None]:
    """Does the width-k equation hold over the whole algebra?

    The equation bounds the meet of forall(x_i \\/ x_j) over pairs by the
    join of forall(x_i), for any k+1 elements.  Tuples with repeats or
    containing 1 satisfy it trivially, so only (k+1)-subsets of the other
    elements are scanned.  Returns the first violating subset if any.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    one = algebra.one
    meet, join, forall = algebra.meet_table, algebra.join_table, algebra.forall_table
    others = [a for a in range(algebra.size) if a != one]
    for subset in itertools.combinations(others, k + 1):
        premise = one
        for i in range(len(subset)):
            for j in range(i + 1, len(subset)):
                premise = meet[premise][forall[join[subset[i]][subset[j]]]]
        conclusion = algebra.zero
        for a in subset:
            conclusion = join[conclusion][forall[a]]
        if algebra.impl_table[premise][conclusion] != one:
            return False, subset
    return True, None


# ---------------------------------------------------------------------------
# Classification


@dataclass(slots=True)
class Classification:
    fsi: bool
    simple: bool
    width: int
    exists_image: list[int]
    fsi_witness: tuple[int, int] | None
    simple_witness: list[int] | None
    width_witness: list[int]

    def to_json(self, algebra: FiniteMonadicAlgebra) -> dict:
        lab = algebra.labels
        return {
            "fsi": self.fsi,
            "simple": self.simple,
            "width": self.width,
            "exists_image": [lab[a] for a in self.exists_image],
            "fsi_witness": (
                [lab[self.fsi_witness[0]], lab[self.fsi_witness[1]]]
                if self.fsi_witness
                else None
            ),
            "simple_witness": (
                [lab[a] for a in self.simple_witness] if self.simple_witness else None
            ),
            "width_witness": [lab[a] for a in self.width_witness],
        }


def _simplicity(algebra: FiniteMonadicAlgebra) -> tuple[bool, list[int] | None]:
    """Is the quantifier image simple as an MV-algebra?

    A finite MV-algebra is simple exactly when it has no idempotent strictly
    between 0 and 1; the witness returned is the nontrivial filter of the
    image that such an idempotent generates.
    """
    if algebra.zero == algebra.one:
        return False, [algebra.zero]
    image = set(algebra.exists_table)
    for e in algebra.idempotents():
        if e in image and e != algebra.one and e != algebra.zero:
            return False, sorted(a for a in image if algebra.leq(e, a))
    return True, None


def classify(algebra: FiniteMonadicAlgebra, width_cap: int = 64) -> Classification:
    """Subdirect irreducibility, simplicity, and orthogonal width.

    The algebra is finitely subdirectly irreducible exactly when its
    quantifier image is a chain, and simple exactly when that image has no
    filter strictly between {1} and itself.
    """
    image = algebra.exists_image()
    fsi = True
    fsi_witness = None
    for a, b in itertools.combinations(image, 2):
        if not algebra.leq(a, b) and not algebra.leq(b, a):
            fsi = False
            fsi_witness = (a, b)
            break

    simple, simple_witness = _simplicity(algebra)
    width, width_witness = orthogonal_width(algebra, cap=width_cap)
    return Classification(
        fsi=fsi,
        simple=simple,
        width=width,
        exists_image=image,
        fsi_witness=fsi_witness,
        simple_witness=simple_witness,
        width_witness=width_witness,
    )


# ---------------------------------------------------------------------------
# Representation of simple algebras


@dataclass(slots=True)
class Representation:
    """Coordinatewise embedding of a simple algebra, indexed by maximal filters."""

    index_filters: tuple[frozenset[int], ...]
    denominators: tuple[int, ...]
    mapping: dict[int, MonadicElement]

    def to_json(self, algebra: FiniteMonadicAlgebra) -> dict:
        lab = algebra.labels
        return {
            "index": [sorted(lab[a] for a in f) for f in self.index_filters],
            "denominators": list(self.denominators),
            "embedding": {
                lab[a]: [core.format_rational(v) for v in image]
                for a, image in sorted(self.mapping.items())
            },
        }


def _quotient_ranks(
    algebra: FiniteMonadicAlgebra, filter_set: frozenset[int]
) -> tuple[dict[int, int], int]:
    """Rank each element in the chain quotient by a maximal filter.

    Elements are identified when both implications between them land in the
    filter; classes are ordered by one-sided implication.  Returns the rank
    map and the top rank.
    """
    impl = algebra.impl_table
    reps: list[int] = []
    class_of: dict[int, int] = {}
    for a in range(algebra.size):
        for idx, r in enumerate(reps):
            if impl[a][r] in filter_set and impl[r][a] in filter_set:
                class_of[a] = idx
                break
        else:
            reps.append(a)
            class_of[a] = len(reps) - 1
    rank_of_class: list[int] = []
    for i, r in enumerate(reps):
        below = 0
        for j, s in enumerate(reps):
            if i == j:
                continue
            s_le_r = impl[s][r] in filter_set
            r_le_s = impl[r][s] in filter_set
            if not s_le_r and not r_le_s:
                raise RuntimeError(
                    "quotient by a maximal filter is not totally ordered"
                )
            if s_le_r:
                below += 1
        rank_of_class.append(below)
    ranks = {a: rank_of_class[class_of[a]] for a in range(algebra.size)}
    return ranks, len(reps) - 1


def represent_simple(
    algebra: FiniteMonadicAlgebra, width_cap: int = 64
) -> Representation:
    """Embed a simple algebra into tuples over its maximal filters.

    Each maximal filter quotients the algebra onto a finite chain; ranking
    that chain as k/t places every coordinate in [0,1].  The combined map is
    verified to be an injective homomorphism that also turns the quantifiers
    into coordinatewise sup and inf.
    """
    simple, _ = _simplicity(algebra)
    if not simple:
        raise NotSimpleError(
            "algebra is not simple; representation refused",
            classify(algebra, width_cap=width_cap),
        )
    maximal = maximal_filters(algebra)
    if not maximal:
        raise RuntimeError("simple algebra has no maximal filter")
    denominators: list[int] = []
    coordinates: list[dict[int, Fraction]] = []
    for filter_set in maximal:
        ranks, top = _quotient_ranks(algebra, filter_set)
        if top == 0:
            raise RuntimeError("quotient by a proper filter collapsed to a point")
        denominators.append(top)
        coordinates.append({a: Fraction(r, top) for a, r in ranks.items()})
    mapping = {
        a: tuple(coord[a] for coord in coordinates) for a in range(algebra.size)
    }
    _verify_representation(algebra, mapping)
    return Representation(
        index_filters=tuple(maximal),
        denominators=tuple(denominators),
        mapping=mapping,
    )


def _verify_representation(
    algebra: FiniteMonadicAlgebra, mapping: dict[int, MonadicElement]
) -> None:
    size = algebra.size
    if len(set(mapping.values())) != size:
        raise RuntimeError("representation is not injective")
    width_n = len(mapping[algebra.zero])
    if mapping[algebra.zero] != core.const_tuple(_ZERO, width_n):
        raise RuntimeError("representation does not send 0 to 0")
    tables = {
        "impl": algebra.impl_table,
        "star": algebra.star_table,
        "oplus": algebra.oplus_table,
        "meet": algebra.meet_table,
        "join": algebra.join_table,
    }
    for a in range(size):
        image = mapping[a]
        if mapping[algebra.neg_table[a]] != core.power_neg(image):
            raise RuntimeError("representation does not respect negation")
        if mapping[algebra.exists_table[a]] != core.exists_sup(image):
            raise RuntimeError("representation does not respect the sup-quantifier")
        if mapping[algebra.forall_table[a]] != core.forall_inf(image):
            raise RuntimeError("representation does not respect the inf-quantifier")
        for b in range(size):
            other = mapping[b]
            for name, table in tables.items():
                if mapping[table[a][b]] != core.power_binop(name, image, other):
                    raise RuntimeError(
                        f"representation does not respect {name}"
                    )


# ---------------------------------------------------------------------------
# Finite embeddability for witnessed families of rational functions


@dataclass(slots=True)
class FepEmbedding:
    """Restriction map landing a finite family in one finite power."""

    m: int
    n: int
    points: tuple[int, ...]
    mapping: dict[MonadicElement, MonadicElement]

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "points": list(self.points),
            "embedding": [
                {
                    "element": [core.format_rational(v) for v in element],
                    "image": [core.format_rational(v) for v in image],
                }
                for element, image in self.mapping.items()
            ],
        }


def canonical_witnesses(
    elements: Iterable[MonadicElement], points: int
) -> dict[MonadicElement, int]:
    """First point where each function attains its minimum."""
    result = {}
    for element in elements:
        result[element] = min(range(points), key=lambda x: element[x])
    return result


def fep_embed(
    subset: Sequence[MonadicElement],
    witnesses: Mapping[MonadicElement, int] | None = None,
    points: int | None = None,
) -> FepEmbedding:
    """Embed a finite witnessed family into one finite power of one chain.

    The functions live on a common finite point set; each comes with a
    witness point attaining its minimum (so the inf-quantifier is decided by
    that point).  Keeping only the witness points plus enough points to
    separate the functions, and taking the least common denominator of the
    surviving values, yields an injective restriction map into the
    denominator chain's power that preserves 0, implication, and the
    inf-quantifier wherever the family contains the result.
    """
    subset = list(dict.fromkeys(subset))
    if points is None:
        if not subset:
            raise ValueError("cannot infer the point count from an empty family")
        points = len(subset[0])
    if points < 1:
        raise ValueError("the family needs at least one point")
    for element in subset:
        if len(element) != points:
            raise ValueError(
                f"element {_element_label(element)} is not a function on {points} points"
            )
        for value in element:
            if not _ZERO <= value <= _ONE:
                raise ValueError(
                    f"element {_element_label(element)} takes values outside [0,1]"
                )
    if witnesses is None:
        witnesses = canonical_witnesses(subset, points)
    for element in subset:
        if element not in witnesses:
            raise WitnessError(f"no witness point for {_element_label(element)}")
        w = witnesses[element]
        if not 0 <= w < points:
            raise WitnessError(
                f"witness point {w} for {_element_label(element)} is out of range"
            )
        if element[w] != min(element):
            raise WitnessError(
                f"witness point {w} for {_element_label(element)} does not attain "
                f"its minimum {core.format_rational(min(element))}"
            )

    chosen: list[int] = []
    for element in subset:
        w = witnesses[element]
        if w not in chosen:
            chosen.append(w)
    for a, b in itertools.combinations(subset, 2):
        if all(a[x] == b[x] for x in chosen):
            for x in range(points):
                if a[x] != b[x]:
                    chosen.append(x)
                    break
    if not chosen:
        chosen.append(0)

    m = 1
    for element in subset:
        for x in chosen:
            m = math.lcm(m, element[x].denominator)
    mapping = {element: tuple(element[x] for x in chosen) for element in subset}
    _verify_fep(subset, mapping, m, len(chosen))
    return FepEmbedding(m=m, n=len(chosen), points=tuple(chosen), mapping=mapping)


def _verify_fep(
    subset: list[MonadicElement],
    mapping: dict[MonadicElement, MonadicElement],
    m: int,
    n: int,
) -> None:
    if len(set(mapping.values())) != len(subset):
        raise RuntimeError("restriction map is not injective")
    members = set(subset)
    for element, image in mapping.items():
        if not core.in_power(image, m, n):
            raise RuntimeError("restricted values escape the common chain")
    if subset:
        zero_fn = core.const_tuple(_ZERO, len(subset[0]))
        if zero_fn in members and mapping[zero_fn] != core.const_tuple(_ZERO, n):
            raise RuntimeError("restriction map does not send 0 to 0")
    for a in subset:
        forall_a = core.forall_inf(a)
        if forall_a in members and mapping[forall_a] != core.forall_inf(mapping[a]):
            raise RuntimeError(
                "restriction map does not respect the inf-quantifier"
            )
        for b in subset:
            c = core.power_binop("impl", a, b)
            if c in members and mapping[c] != core.power_binop(
                "impl", mapping[a], mapping[b]
            ):
                raise RuntimeError("restriction map does not respect implication")


# ---------------------------------------------------------------------------
# JSON forms


def algebra_from_json(data: Mapping, check: bool = True) -> FiniteMonadicAlgebra:
    """Load an algebra from its functional or tabular JSON form.

    Functional algebras are regenerated from their generators, which makes
    their tables valid by construction; tabular algebras run the full
    identity check unless `check` is false.
    """
    if not isinstance(data, Mapping):
        raise AlgebraError("algebra data must be a JSON object")
    form = data.get("form")
    if form == "functional":
        try:
            m, n = int(data["m"]), int(data["n"])
            generators = [
                tuple(core.parse_rational(v) for v in element)
                for element in data["generators"]
            ]
        except (KeyError, TypeError, ValueError) as exc:
            raise AlgebraError(f"bad functional algebra data: {exc}") from exc
        if m < 1 or n < 1:
            raise AlgebraError("functional form needs m >= 1 and n >= 1")
        for element in generators:
            if len(element) != n:
                raise AlgebraError(
                    f"generator {_element_label(element)} is not an {n}-tuple"
                )
        return generate_subalgebra(m, n, generators)
    if form == "tabular":
        try:
            return FiniteMonadicAlgebra(
                labels=[str(e) for e in data["elements"]],
                impl=data["impl"],
                zero=data["zero"],
                exists=data["exists"],
                check=check,
            )
        except KeyError as exc:
            raise AlgebraError(f"bad tabular algebra data: missing {exc}") from exc
    raise AlgebraError(f"unknown algebra form {form!r}")


def algebra_to_json(algebra: FiniteMonadicAlgebra, form: str | None = None) -> dict:
    if form is None:
        form = "functional" if algebra.carrier is not None else "tabular"
    if form == "functional":
        if algebra.carrier is None or algebra.m is None or algebra.n is None:
            raise AlgebraError("algebra has no functional form")
        generators = (
            algebra.generators if algebra.generators is not None else algebra.carrier
        )
        return {
            "form": "functional",
            "m": algebra.m,
            "n": algebra.n,
            "generators": [
                [core.format_rational(v) for v in element] for element in generators
            ],
        }
    if form == "tabular":
        return {
            "form": "tabular",
            "elements": list(algebra.labels),
            "impl": [list(row) for row in algebra.impl_table],
            "zero": algebra.zero,
            "exists": list(algebra.exists_table),
        }
    raise AlgebraError(f"unknown algebra form {form!r}")
