"""Brute-force reference implementations.

Everything here re-derives results straight from the definitions —
quantifier loops over the incidence, full scans of the candidate space,
residua recomputed from the conjunctor by exhaustive search — so the fast
paths can be validated against an independent route.  Deliberately naive;
used by the test suite and behind the CLI ``--oracle`` flag, never on the
default path.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .contexts import (
    AttributeSubset,
    BooleanContext,
    ConceptLattice,
    FormalConcept,
    ObjectSubset,
)
from .errors import BudgetExceededError
from .fuzzy import (
    FuzzyContext,
    FuzzyNecessityPair,
    GradedAttributeSet,
    GradedObjectSet,
)

__all__ = [
    "OracleReport",
    "brute_concepts",
    "brute_cn",
    "brute_fn",
    "bipartite_components",
    "compare_concepts",
    "compare_cn",
    "compare_fn",
    "compare_atoms",
]

BRUTE_SUBSET_LIMIT = 20
BRUTE_GRID_LIMIT = 10_000_000


@dataclass(frozen=True)
class OracleReport:
    """Agreement record: empty mismatches means the two routes coincide."""

    checked: int
    mismatches: tuple[tuple[str, str, str], ...]  # (input, fast answer, oracle answer)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _guard_subsets(ctx: BooleanContext) -> None:
    if len(ctx.objects) > BRUTE_SUBSET_LIMIT:
        raise BudgetExceededError(1 << len(ctx.objects), 1 << BRUTE_SUBSET_LIMIT)


def _naive_up(ctx: BooleanContext, xs: set[int]) -> set[int]:
    return {
        i
        for i in range(len(ctx.attributes))
        if all(ctx.incidence[i][j] for j in xs)
    }


def _naive_down(ctx: BooleanContext, ys: set[int]) -> set[int]:
    return {
        j
        for j in range(len(ctx.objects))
        if all(ctx.incidence[i][j] for i in ys)
    }


def _naive_up_n(ctx: BooleanContext, xs: set[int]) -> set[int]:
    return {
        i
        for i in range(len(ctx.attributes))
        if all(not ctx.incidence[i][j] or j in xs for j in range(len(ctx.objects)))
    }


def _naive_down_n(ctx: BooleanContext, ys: set[int]) -> set[int]:
    return {
        j
        for j in range(len(ctx.objects))
        if all(not ctx.incidence[i][j] or i in ys for i in range(len(ctx.attributes)))
    }


def _subsets(n: int):
    for mask in range(1 << n):
        yield {i for i in range(n) if mask >> i & 1}


def _to_bits(indices: set[int]) -> int:
    return sum(1 << i for i in indices)


def brute_concepts(ctx: BooleanContext) -> ConceptLattice:
    """Scan all object subsets, keep the fixpoints of down o up."""
    _guard_subsets(ctx)
    found = []
    for xs in _subsets(len(ctx.objects)):
        ys = _naive_up(ctx, xs)
        if _naive_down(ctx, ys) == xs:
            found.append(
                FormalConcept(
                    ObjectSubset(ctx, _to_bits(xs)), AttributeSubset(ctx, _to_bits(ys))
                )
            )
    found.sort(key=lambda c: c.extent.bits)
    return ConceptLattice(ctx, tuple(found))


def brute_cn(ctx: BooleanContext) -> list:
    """Scan all object subsets, keep X with X-up-N-down-N = X."""
    from .factorization import NecessityPair  # local import to avoid a cycle

    _guard_subsets(ctx)
    found = []
    for xs in _subsets(len(ctx.objects)):
        ys = _naive_up_n(ctx, xs)
        if _naive_down_n(ctx, ys) == xs:
            found.append(
                NecessityPair(
                    ObjectSubset(ctx, _to_bits(xs)), AttributeSubset(ctx, _to_bits(ys))
                )
            )
    found.sort(key=lambda p: p.objects.bits)
    return found


def bipartite_components(
    ctx: BooleanContext,
) -> list[tuple[ObjectSubset, AttributeSubset]]:
    """Connected components of the incidence graph, via a small union-find."""
    n_obj, n_attr = len(ctx.objects), len(ctx.attributes)
    parent = list(range(n_obj + n_attr))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for i in range(n_attr):
        for j in range(n_obj):
            if ctx.incidence[i][j]:
                ra, rb = find(j), find(n_obj + i)
                if ra != rb:
                    parent[rb] = ra

    groups: dict[int, tuple[int, int]] = {}
    for j in range(n_obj):
        xb, yb = groups.get(find(j), (0, 0))
        groups[find(j)] = (xb | 1 << j, yb)
    for i in range(n_attr):
        xb, yb = groups.get(find(n_obj + i), (0, 0))
        groups[find(n_obj + i)] = (xb, yb | 1 << i)

    out = [
        (ObjectSubset(ctx, xb), AttributeSubset(ctx, yb)) for xb, yb in groups.values()
    ]
    out.sort(key=lambda pair: pair[0].bits)
    return out


class _SearchResiduum:
    """Residua recomputed from the conjunctor table by maximum search.

    Trusts only the conjunctor; the stored residuum tables of the triple
    are deliberately not consulted.
    """

    def __init__(self, triple):
        self.table = triple.conj_table
        self.m1 = triple.p1.m
        self.m2 = triple.p2.m

    def left(self, z: int, y: int) -> int:
        xs = [x for x in range(self.m1 + 1) if self.table[x][y] <= z]
        if not xs:
            raise ValueError("conjunctor admits no left residuum")
        return max(xs)

    def right(self, z: int, x: int) -> int:
        ys = [y for y in range(self.m2 + 1) if self.table[x][y] <= z]
        if not ys:
            raise ValueError("conjunctor admits no right residuum")
        return max(ys)


def brute_fn(ctx: FuzzyContext) -> list[FuzzyNecessityPair]:
    """Scan the full grid of graded object sets for necessity-closed pairs."""
    required = len(ctx.l2) ** len(ctx.objects)
    if required > BRUTE_GRID_LIMIT:
        raise BudgetExceededError(required, BRUTE_GRID_LIMIT)
    residua = [_SearchResiduum(t) for t in ctx.triples]

    def up_n(g):
        out = []
        for i in range(len(ctx.attributes)):
            vals = [
                residua[ctx.sigma_at(i, j)].left(g[j], ctx.relation[i][j])
                for j in range(len(ctx.objects))
            ]
            out.append(min(vals))
        return tuple(out)

    def down_n(f):
        out = []
        for j in range(len(ctx.objects)):
            vals = [
                residua[ctx.sigma_at(i, j)].right(f[i], ctx.relation[i][j])
                for i in range(len(ctx.attributes))
            ]
            out.append(min(vals))
        return tuple(out)

    found = []
    for g in product(range(ctx.l2.m + 1), repeat=len(ctx.objects)):
        f = up_n(g)
        if down_n(f) == g:
            found.append(
                FuzzyNecessityPair(
                    GradedObjectSet(g, ctx.l2), GradedAttributeSet(f, ctx.l1)
                )
            )
    return found


def _set_compare(kind: str, fast, slow) -> OracleReport:
    fast_set = set(fast)
    slow_set = set(slow)
    mismatches = []
    for item in sorted(fast_set - slow_set, key=repr):
        mismatches.append((kind, repr(item), "absent from oracle enumeration"))
    for item in sorted(slow_set - fast_set, key=repr):
        mismatches.append((kind, "absent from fast enumeration", repr(item)))
    return OracleReport(len(fast_set | slow_set), tuple(mismatches))


def compare_concepts(ctx: BooleanContext, fast: ConceptLattice) -> OracleReport:
    return _set_compare("concept", fast.concepts, brute_concepts(ctx).concepts)


def compare_cn(ctx: BooleanContext, fast_pairs) -> OracleReport:
    return _set_compare("cn-pair", fast_pairs, brute_cn(ctx))


def compare_fn(ctx: FuzzyContext, fast_pairs) -> OracleReport:
    return _set_compare("fn-pair", fast_pairs, brute_fn(ctx))


def compare_atoms(ctx: BooleanContext, fast_atoms) -> OracleReport:
    """Bipartite components against a caller-supplied atom list."""
    from .factorization import NecessityPair

    components = [NecessityPair(xs, ys) for xs, ys in bipartite_components(ctx)]
    return _set_compare("atom", fast_atoms, components)
