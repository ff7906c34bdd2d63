"""Multi-adjoint fuzzy contexts and the graded necessity closures.

A fuzzy context carries three grade chains L1 (attribute grades), L2
(object grades) and P (relation grades), one or more adjoint triples, and
a per-cell triple selector.  The three operator families need the triple
domains arranged differently:

    concept-forming   up / down       triple on (L1, L2, P)
    property-oriented up_pi / down_n  triple on (P, L2, L1)
    object-oriented   up_n / down_pi  triple on (L1, P, L2)

A context is constructed for one arrangement; an operator whose
arrangement the triple does not satisfy raises FrameArrangementError.
When all three chains coincide (the usual case in examples) one triple
satisfies every arrangement and all six operators are available.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence

from . import order
from .errors import BudgetExceededError, FrameArrangementError
from .grades import AdjointTriple, Grade, GradeChain

__all__ = [
    "FrameKind",
    "FuzzyContext",
    "GradedObjectSet",
    "GradedAttributeSet",
    "FuzzyNecessityPair",
    "MultiAdjointConcept",
    "FnLattice",
    "FuzzyConceptLattice",
    "Fp4Report",
    "ConceptInterval",
    "DEFAULT_ENUM_BUDGET",
    "f_up",
    "f_down",
    "f_up_pi",
    "f_down_n",
    "f_up_n",
    "f_down_pi",
    "in_fn",
    "fn_enumerate",
    "fn_meet",
    "fuzzy_concepts",
    "is_fuzzy_normalized",
    "is_top_normalized",
    "check_fp1",
    "check_fp2",
    "check_fp3",
    "check_fp4",
    "interval_from_pair",
]

DEFAULT_ENUM_BUDGET = 10_000_000


class FrameKind(enum.Enum):
    CONCEPT_FORMING = "concept-forming"
    PROPERTY_ORIENTED = "property-oriented"
    OBJECT_ORIENTED = "object-oriented"


def _arrangement(
    kind: FrameKind, l1: GradeChain, l2: GradeChain, p: GradeChain
) -> tuple[GradeChain, GradeChain, GradeChain]:
    if kind is FrameKind.CONCEPT_FORMING:
        return (l1, l2, p)
    if kind is FrameKind.PROPERTY_ORIENTED:
        return (p, l2, l1)
    return (l1, p, l2)


@dataclass(frozen=True)
class FuzzyContext:
    """A P-valued relation over a multi-adjoint frame.

    ``relation[i][j]`` is the numerator on P of the grade relating
    attribute i to object j; ``sigma`` picks the triple per cell (None
    means the first triple everywhere).
    """

    attributes: tuple[str, ...]
    objects: tuple[str, ...]
    l1: GradeChain
    l2: GradeChain
    p: GradeChain
    triples: tuple[AdjointTriple, ...]
    relation: tuple[tuple[int, ...], ...]
    sigma: tuple[tuple[int, ...], ...] | None = None
    kind: FrameKind = FrameKind.CONCEPT_FORMING

    def __post_init__(self):
        object.__setattr__(self, "attributes", tuple(self.attributes))
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "triples", tuple(self.triples))
        object.__setattr__(self, "relation", tuple(tuple(r) for r in self.relation))
        if self.sigma is not None:
            object.__setattr__(self, "sigma", tuple(tuple(r) for r in self.sigma))
        if not self.attributes or not self.objects:
            raise ValueError("attribute and object sets must be non-empty")
        if len(set(self.attributes)) != len(self.attributes):
            raise ValueError("duplicate attribute names")
        if len(set(self.objects)) != len(self.objects):
            raise ValueError("duplicate object names")
        if not self.triples:
            raise ValueError("a context needs at least one adjoint triple")
        wanted = _arrangement(self.kind, self.l1, self.l2, self.p)
        for t in self.triples:
            if t.domains != wanted:
                raise FrameArrangementError(
                    f"triple {t.name} has domains {tuple(map(str, t.domains))} but the "
                    f"{self.kind.value} frame needs {tuple(map(str, wanted))}"
                )
        if len(self.relation) != len(self.attributes):
            raise ValueError("relation must have one row per attribute")
        for row in self.relation:
            if len(row) != len(self.objects):
                raise ValueError("relation row length must equal the number of objects")
            for v in row:
                if not 0 <= v <= self.p.m:
                    raise ValueError(f"relation numerator {v} is off the chain {self.p}")
        if self.sigma is not None:
            if len(self.sigma) != len(self.attributes) or any(
                len(r) != len(self.objects) for r in self.sigma
            ):
                raise ValueError("sigma must match the relation shape")
            for row in self.sigma:
                for s in row:
                    if not 0 <= s < len(self.triples):
                        raise ValueError(f"sigma index {s} out of range")

    @classmethod
    def from_values(
        cls,
        attributes: Sequence[str],
        objects: Sequence[str],
        triple: AdjointTriple | Sequence[AdjointTriple],
        values: Iterable[Iterable],
        sigma: Iterable[Iterable[int]] | None = None,
        kind: FrameKind = FrameKind.CONCEPT_FORMING,
    ) -> "FuzzyContext":
        """Build a context from grade values, deriving the chains from the triple."""
        triples = (triple,) if isinstance(triple, AdjointTriple) else tuple(triple)
        d = triples[0].domains
        if kind is FrameKind.CONCEPT_FORMING:
            l1, l2, p = d
        elif kind is FrameKind.PROPERTY_ORIENTED:
            p, l2, l1 = d
        else:
            l1, p, l2 = d
        relation = tuple(tuple(p.numerator_of(v) for v in row) for row in values)
        return cls(
            tuple(attributes), tuple(objects), l1, l2, p, triples, relation,
            None if sigma is None else tuple(tuple(r) for r in sigma), kind,
        )

    def sigma_at(self, i: int, j: int) -> int:
        return 0 if self.sigma is None else self.sigma[i][j]

    def relation_grade(self, attribute: str, obj: str) -> Grade:
        i = self.attributes.index(attribute)
        j = self.objects.index(obj)
        return Grade(self.relation[i][j], self.p)

    def graded_objects(self, values) -> "GradedObjectSet":
        return GradedObjectSet(self._parse_values(values, self.objects, self.l2), self.l2)

    def graded_attributes(self, values) -> "GradedAttributeSet":
        return GradedAttributeSet(
            self._parse_values(values, self.attributes, self.l1), self.l1
        )

    @staticmethod
    def _parse_values(values, names: tuple[str, ...], chain: GradeChain) -> tuple[int, ...]:
        if isinstance(values, Mapping):
            missing = [n for n in names if n not in values]
            if missing:
                raise ValueError(f"missing grades for {missing}")
            seq = [values[n] for n in names]
        else:
            seq = list(values)
            if len(seq) != len(names):
                raise ValueError(f"expected {len(names)} grades, got {len(seq)}")
        return tuple(chain.numerator_of(v) for v in seq)

    @property
    def g_top(self) -> "GradedObjectSet":
        return GradedObjectSet((self.l2.m,) * len(self.objects), self.l2)

    @property
    def g_bottom(self) -> "GradedObjectSet":
        return GradedObjectSet((0,) * len(self.objects), self.l2)

    @property
    def f_top(self) -> "GradedAttributeSet":
        return GradedAttributeSet((self.l1.m,) * len(self.attributes), self.l1)

    @property
    def f_bottom(self) -> "GradedAttributeSet":
        return GradedAttributeSet((0,) * len(self.attributes), self.l1)


class _GradedSet:
    values: tuple[int, ...]
    chain: GradeChain

    def _mate(self, other) -> None:
        if type(other) is not type(self):
            raise TypeError(f"expected {type(self).__name__}, got {type(other).__name__}")
        if other.chain != self.chain or len(other.values) != len(self.values):
            raise ValueError("graded sets live on different chains or universes")

    def __le__(self, other) -> bool:
        self._mate(other)
        return all(a <= b for a, b in zip(self.values, other.values))

    def __lt__(self, other) -> bool:
        self._mate(other)
        return self.values != other.values and self <= other

    def meet(self, other):
        self._mate(other)
        return type(self)(tuple(map(min, self.values, other.values)), self.chain)

    def join(self, other):
        self._mate(other)
        return type(self)(tuple(map(max, self.values, other.values)), self.chain)

    def grade(self, index: int) -> Grade:
        return Grade(self.values[index], self.chain)

    def as_fractions(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(v, self.chain.m) for v in self.values)

    def __repr__(self) -> str:
        body = ", ".join(str(Fraction(v, self.chain.m)) for v in self.values)
        return f"{type(self).__name__}({body})"


@dataclass(frozen=True, repr=False)
class GradedObjectSet(_GradedSet):
    """A fuzzy subset of objects: one L2 grade per object, in object order."""

    values: tuple[int, ...]
    chain: GradeChain


@dataclass(frozen=True, repr=False)
class GradedAttributeSet(_GradedSet):
    """A fuzzy subset of attributes: one L1 grade per attribute."""

    values: tuple[int, ...]
    chain: GradeChain


def _claim_g(ctx: FuzzyContext, g: GradedObjectSet) -> tuple[int, ...]:
    if g.chain != ctx.l2 or len(g.values) != len(ctx.objects):
        raise ValueError("graded object set does not fit this context")
    return g.values


def _claim_f(ctx: FuzzyContext, f: GradedAttributeSet) -> tuple[int, ...]:
    if f.chain != ctx.l1 or len(f.values) != len(ctx.attributes):
        raise ValueError("graded attribute set does not fit this context")
    return f.values


def _require_arrangement(ctx: FuzzyContext, kind: FrameKind, op: str) -> None:
    wanted = _arrangement(kind, ctx.l1, ctx.l2, ctx.p)
    if ctx.triples[0].domains != wanted:
        raise FrameArrangementError(
            f"operator {op} needs an adjoint triple on "
            f"{tuple(map(str, wanted))} ({kind.value} arrangement); this frame "
            f"provides {tuple(map(str, ctx.triples[0].domains))}"
        )


# numerator-level operator cores


def _up_vals(ctx: FuzzyContext, g: tuple[int, ...]) -> tuple[int, ...]:
    out = []
    for i in range(len(ctx.attributes)):
        best = ctx.l1.m
        for j in range(len(ctx.objects)):
            t = ctx.triples[ctx.sigma_at(i, j)]
            v = t.res_left_table[ctx.relation[i][j]][g[j]]
            if v < best:
                best = v
        out.append(best)
    return tuple(out)


def _down_vals(ctx: FuzzyContext, f: tuple[int, ...]) -> tuple[int, ...]:
    out = []
    for j in range(len(ctx.objects)):
        best = ctx.l2.m
        for i in range(len(ctx.attributes)):
            t = ctx.triples[ctx.sigma_at(i, j)]
            v = t.res_right_table[ctx.relation[i][j]][f[i]]
            if v < best:
                best = v
        out.append(best)
    return tuple(out)


def _up_pi_vals(ctx: FuzzyContext, g: tuple[int, ...]) -> tuple[int, ...]:
    out = []
    for i in range(len(ctx.attributes)):
        best = 0
        for j in range(len(ctx.objects)):
            t = ctx.triples[ctx.sigma_at(i, j)]
            v = t.conj_table[ctx.relation[i][j]][g[j]]
            if v > best:
                best = v
        out.append(best)
    return tuple(out)


def _down_n_vals(ctx: FuzzyContext, f: tuple[int, ...]) -> tuple[int, ...]:
    out = []
    for j in range(len(ctx.objects)):
        best = ctx.l2.m
        for i in range(len(ctx.attributes)):
            t = ctx.triples[ctx.sigma_at(i, j)]
            v = t.res_right_table[f[i]][ctx.relation[i][j]]
            if v < best:
                best = v
        out.append(best)
    return tuple(out)


def _up_n_vals(ctx: FuzzyContext, g: tuple[int, ...]) -> tuple[int, ...]:
    out = []
    for i in range(len(ctx.attributes)):
        best = ctx.l1.m
        for j in range(len(ctx.objects)):
            t = ctx.triples[ctx.sigma_at(i, j)]
            v = t.res_left_table[g[j]][ctx.relation[i][j]]
            if v < best:
                best = v
        out.append(best)
    return tuple(out)


def _down_pi_vals(ctx: FuzzyContext, f: tuple[int, ...]) -> tuple[int, ...]:
    out = []
    for j in range(len(ctx.objects)):
        best = 0
        for i in range(len(ctx.attributes)):
            t = ctx.triples[ctx.sigma_at(i, j)]
            v = t.conj_table[f[i]][ctx.relation[i][j]]
            if v > best:
                best = v
        out.append(best)
    return tuple(out)


def f_up(ctx: FuzzyContext, g: GradedObjectSet) -> GradedAttributeSet:
    """Derivation: a -> inf over b of res_left(R(a,b), g(b))."""
    _require_arrangement(ctx, FrameKind.CONCEPT_FORMING, "up")
    return GradedAttributeSet(_up_vals(ctx, _claim_g(ctx, g)), ctx.l1)


def f_down(ctx: FuzzyContext, f: GradedAttributeSet) -> GradedObjectSet:
    """Derivation: b -> inf over a of res_right(R(a,b), f(a))."""
    _require_arrangement(ctx, FrameKind.CONCEPT_FORMING, "down")
    return GradedObjectSet(_down_vals(ctx, _claim_f(ctx, f)), ctx.l2)


def f_up_pi(ctx: FuzzyContext, g: GradedObjectSet) -> GradedAttributeSet:
    """Possibility: a -> sup over b of conj(R(a,b), g(b))."""
    _require_arrangement(ctx, FrameKind.PROPERTY_ORIENTED, "up_pi")
    return GradedAttributeSet(_up_pi_vals(ctx, _claim_g(ctx, g)), ctx.l1)


def f_down_n(ctx: FuzzyContext, f: GradedAttributeSet) -> GradedObjectSet:
    """Necessity: b -> inf over a of res_right(f(a), R(a,b))."""
    _require_arrangement(ctx, FrameKind.PROPERTY_ORIENTED, "down_n")
    return GradedObjectSet(_down_n_vals(ctx, _claim_f(ctx, f)), ctx.l2)


def f_up_n(ctx: FuzzyContext, g: GradedObjectSet) -> GradedAttributeSet:
    """Necessity: a -> inf over b of res_left(g(b), R(a,b))."""
    _require_arrangement(ctx, FrameKind.OBJECT_ORIENTED, "up_n")
    return GradedAttributeSet(_up_n_vals(ctx, _claim_g(ctx, g)), ctx.l1)


def f_down_pi(ctx: FuzzyContext, f: GradedAttributeSet) -> GradedObjectSet:
    """Possibility: b -> sup over a of conj(f(a), R(a,b))."""
    _require_arrangement(ctx, FrameKind.OBJECT_ORIENTED, "down_pi")
    return GradedObjectSet(_down_pi_vals(ctx, _claim_f(ctx, f)), ctx.l2)


@dataclass(frozen=True)
class FuzzyNecessityPair:
    """A pair (g, f) with g-up-N = f and f-down-N = g."""

    g: GradedObjectSet
    f: GradedAttributeSet

    def __repr__(self) -> str:
        return f"({self.g!r}, {self.f!r})"


@dataclass(frozen=True)
class MultiAdjointConcept:
    """An extent/intent pair closed under the fuzzy derivation operators."""

    extent: GradedObjectSet
    intent: GradedAttributeSet

    def __repr__(self) -> str:
        return f"<{self.extent!r}, {self.intent!r}>"


def _require_fn_operators(ctx: FuzzyContext) -> None:
    _require_arrangement(ctx, FrameKind.OBJECT_ORIENTED, "up_n")
    _require_arrangement(ctx, FrameKind.PROPERTY_ORIENTED, "down_n")


def in_fn(ctx: FuzzyContext, pair: FuzzyNecessityPair) -> bool:
    """Membership test for the graded necessity closure system."""
    _require_fn_operators(ctx)
    g = _claim_g(ctx, pair.g)
    f = _claim_f(ctx, pair.f)
    return _up_n_vals(ctx, g) == f and _down_n_vals(ctx, f) == g


def _claim_member(ctx: FuzzyContext, pair: FuzzyNecessityPair) -> None:
    if not in_fn(ctx, pair):
        raise ValueError(f"{pair!r} is not a necessity-closed pair of this context")


@dataclass(frozen=True)
class FnLattice:
    """All necessity-closed pairs, ordered pointwise on the object side."""

    context: FuzzyContext = field(compare=False, repr=False)
    pairs: tuple[FuzzyNecessityPair, ...]

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[FuzzyNecessityPair]:
        return iter(self.pairs)

    def __getitem__(self, i: int) -> FuzzyNecessityPair:
        return self.pairs[i]

    def le(self, i: int, j: int) -> bool:
        a, b = self.pairs[i].g.values, self.pairs[j].g.values
        return all(x <= y for x, y in zip(a, b))

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        return order.hasse_covers(len(self.pairs), self.le)

    @cached_property
    def bottom_index(self) -> int:
        return order.bottom_index(self)

    @cached_property
    def top_index(self) -> int:
        return order.top_index(self)

    def index_of(self, pair: FuzzyNecessityPair) -> int:
        for i, p in enumerate(self.pairs):
            if p == pair:
                return i
        raise ValueError(f"{pair!r} is not in the lattice")


def fn_enumerate(ctx: FuzzyContext, budget: int = DEFAULT_ENUM_BUDGET) -> FnLattice:
    """Scan the whole grid of graded object sets for necessity-closed pairs.

    The composite down-N o up-N is meet-preserving but not a closure
    operator, so fixpoints are found by exhaustive scan rather than
    iteration.  |L2| ** |B| candidates must fit the budget; the result is
    sorted lexicographically on the object grades and verified meet-closed.
    """
    _require_fn_operators(ctx)
    required = len(ctx.l2) ** len(ctx.objects)
    if required > budget:
        raise BudgetExceededError(required, budget)

    pairs = []
    seen = set()
    for g in product(range(ctx.l2.m + 1), repeat=len(ctx.objects)):
        f = _up_n_vals(ctx, g)
        if _down_n_vals(ctx, f) == g:
            pairs.append(
                FuzzyNecessityPair(
                    GradedObjectSet(g, ctx.l2), GradedAttributeSet(f, ctx.l1)
                )
            )
            seen.add(g)

    # the closure system is meet-closed; a miss here is a bug
    members = sorted(seen)
    for a in range(len(members)):
        for b in range(a + 1, len(members)):
            met = tuple(map(min, members[a], members[b]))
            if met not in seen:
                raise RuntimeError(
                    f"meet of two necessity-closed pairs escaped the closure: {met}"
                )
    return FnLattice(ctx, tuple(pairs))


def fn_meet(
    ctx: FuzzyContext, p1: FuzzyNecessityPair, p2: FuzzyNecessityPair
) -> FuzzyNecessityPair:
    """Componentwise infimum of two pairs; stays in the closure system."""
    _claim_member(ctx, p1)
    _claim_member(ctx, p2)
    met = FuzzyNecessityPair(p1.g.meet(p2.g), p1.f.meet(p2.f))
    if not in_fn(ctx, met):
        raise RuntimeError(f"meet {met!r} escaped the closure system")
    return met


@dataclass(frozen=True)
class FuzzyConceptLattice:
    """All multi-adjoint concepts, ordered pointwise on extents."""

    context: FuzzyContext = field(compare=False, repr=False)
    concepts: tuple[MultiAdjointConcept, ...]

    def __len__(self) -> int:
        return len(self.concepts)

    def __iter__(self) -> Iterator[MultiAdjointConcept]:
        return iter(self.concepts)

    def __getitem__(self, i: int) -> MultiAdjointConcept:
        return self.concepts[i]

    def le(self, i: int, j: int) -> bool:
        a, b = self.concepts[i].extent.values, self.concepts[j].extent.values
        return all(x <= y for x, y in zip(a, b))

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        return order.hasse_covers(len(self.concepts), self.le)

    @cached_property
    def bottom_index(self) -> int:
        return order.bottom_index(self)

    @cached_property
    def top_index(self) -> int:
        return order.top_index(self)

    def find_extent(self, g: GradedObjectSet) -> MultiAdjointConcept | None:
        for c in self.concepts:
            if c.extent == g:
                return c
        return None


def fuzzy_concepts(ctx: FuzzyContext, budget: int = DEFAULT_ENUM_BUDGET) -> FuzzyConceptLattice:
    """All concepts <g-up-down, g-up> over the grid of graded object sets."""
    _require_arrangement(ctx, FrameKind.CONCEPT_FORMING, "up")
    required = len(ctx.l2) ** len(ctx.objects)
    if required > budget:
        raise BudgetExceededError(required, budget)

    by_extent: dict[tuple[int, ...], tuple[int, ...]] = {}
    for g in product(range(ctx.l2.m + 1), repeat=len(ctx.objects)):
        f = _up_vals(ctx, g)
        extent = _down_vals(ctx, f)
        by_extent.setdefault(extent, f)
    found = tuple(
        MultiAdjointConcept(
            GradedObjectSet(extent, ctx.l2), GradedAttributeSet(intent, ctx.l1)
        )
        for extent, intent in sorted(by_extent.items())
    )
    return FuzzyConceptLattice(ctx, found)


def is_fuzzy_normalized(ctx: FuzzyContext) -> bool:
    """No relation row or column all-bottom or all non-bottom."""
    for row in ctx.relation:
        if all(v == 0 for v in row) or all(v != 0 for v in row):
            return False
    for j in range(len(ctx.objects)):
        col = [ctx.relation[i][j] for i in range(len(ctx.attributes))]
        if all(v == 0 for v in col) or all(v != 0 for v in col):
            return False
    return True


def is_top_normalized(ctx: FuzzyContext, axis: str = "rows") -> bool:
    """Normalized, and every row (or column) attains the top grade of P.

    ``axis="rows"`` asks each attribute row for a top cell; ``"columns"``
    is the dual, for contexts normal by columns.
    """
    if axis not in ("rows", "columns"):
        raise ValueError(f"axis must be 'rows' or 'columns', got {axis!r}")
    if not is_fuzzy_normalized(ctx):
        return False
    top = ctx.p.m
    if axis == "rows":
        return all(any(v == top for v in row) for row in ctx.relation)
    return all(
        any(ctx.relation[i][j] == top for i in range(len(ctx.attributes)))
        for j in range(len(ctx.objects))
    )


def check_fp1(ctx: FuzzyContext, pair: FuzzyNecessityPair) -> bool:
    """Possibility below necessity: g-up-pi <= g-up-N pointwise."""
    _claim_member(ctx, pair)
    g = pair.g.values
    return all(a <= b for a, b in zip(_up_pi_vals(ctx, g), _up_n_vals(ctx, g)))


def check_fp2(ctx: FuzzyContext, pair: FuzzyNecessityPair) -> bool:
    """<g, g-up-pi> is a property-oriented concept: g-up-pi-down-N = g."""
    _claim_member(ctx, pair)
    g = pair.g.values
    return _down_n_vals(ctx, _up_pi_vals(ctx, g)) == g


def check_fp3(ctx: FuzzyContext, pair: FuzzyNecessityPair) -> bool:
    """Necessity below possibility: g-up-N <= g-up-pi pointwise.

    Guaranteed on top-normalized contexts over the Goedel frame; runnable
    as a probe on any frame where both operators exist.
    """
    _claim_member(ctx, pair)
    g = pair.g.values
    return all(a <= b for a, b in zip(_up_n_vals(ctx, g), _up_pi_vals(ctx, g)))


@dataclass(frozen=True)
class Fp4Report:
    """Per-attribute hypothesis status for the derivation/possibility bound.

    ``strict_hypothesis[a]``: some object has g(b) not below R(a,b).
    ``top_hypothesis[a]``: some object has R(a,b) = g(b) = top.
    When every attribute satisfies one of the two, g-up <= g-up-pi.
    """

    strict_hypothesis: tuple[bool, ...]
    top_hypothesis: tuple[bool, ...]
    hypothesis_holds_per_attribute: tuple[bool, ...]
    all_hypotheses_hold: bool
    inequality_holds: bool
    g_up: GradedAttributeSet
    g_up_pi: GradedAttributeSet


def check_fp4(ctx: FuzzyContext, pair: FuzzyNecessityPair) -> Fp4Report:
    """Check the hypotheses relating g-up to g-up-pi, attribute by attribute."""
    _claim_member(ctx, pair)
    if ctx.l2 != ctx.p:
        raise FrameArrangementError(
            "the hypotheses compare object grades with relation grades; "
            f"they need L2 = P, got {ctx.l2} and {ctx.p}"
        )
    g = pair.g.values
    strict = []
    top = []
    for i in range(len(ctx.attributes)):
        strict.append(any(g[j] > ctx.relation[i][j] for j in range(len(ctx.objects))))
        top.append(
            any(
                g[j] == ctx.l2.m and ctx.relation[i][j] == ctx.p.m
                for j in range(len(ctx.objects))
            )
        )
    either = tuple(s or t for s, t in zip(strict, top))
    g_up = _up_vals(ctx, g)
    g_up_pi = _up_pi_vals(ctx, g)
    return Fp4Report(
        strict_hypothesis=tuple(strict),
        top_hypothesis=tuple(top),
        hypothesis_holds_per_attribute=either,
        all_hypotheses_hold=all(either),
        inequality_holds=all(a <= b for a, b in zip(g_up, g_up_pi)),
        g_up=GradedAttributeSet(g_up, ctx.l1),
        g_up_pi=GradedAttributeSet(g_up_pi, ctx.l1),
    )


@dataclass(frozen=True)
class ConceptInterval:
    """The concept block a necessity-closed pair delimits.

    lower = <f-down, f-down-up>, upper = <g-up-down, g-up>; ``ordered``
    reports whether lower's extent is below upper's, which the
    top-normalized Goedel propositions guarantee under their hypotheses.
    """

    lower: MultiAdjointConcept
    upper: MultiAdjointConcept
    ordered: bool


def interval_from_pair(ctx: FuzzyContext, pair: FuzzyNecessityPair) -> ConceptInterval:
    _claim_member(ctx, pair)
    f_down_vals = _down_vals(ctx, pair.f.values)
    lower = MultiAdjointConcept(
        GradedObjectSet(f_down_vals, ctx.l2),
        GradedAttributeSet(_up_vals(ctx, f_down_vals), ctx.l1),
    )
    g_up = _up_vals(ctx, pair.g.values)
    upper_extent = _down_vals(ctx, g_up)
    upper = MultiAdjointConcept(
        GradedObjectSet(upper_extent, ctx.l2), GradedAttributeSet(g_up, ctx.l1)
    )
    ordered = all(a <= b for a, b in zip(f_down_vals, upper_extent))
    return ConceptInterval(lower=lower, upper=upper, ordered=ordered)
