"""Closures of the necessity operators and context factorization.

The pairs (X, Y) with X-up-N = Y and Y-down-N = X form a complemented
complete lattice under componentwise union/intersection/complement.  On a
normalized context those pairs are exactly the unions of connected
components of the bipartite incidence graph, so the lattice is built from
its atoms (the components) instead of scanning all object subsets; the
exhaustive scan lives in :mod:`galois_factor.oracles` as the referee.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

from . import order
from .contexts import (
    AttributeSubset,
    BooleanContext,
    ConceptLattice,
    FormalConcept,
    NormalizationReport,
    ObjectSubset,
    _claim_attrs,
    _claim_objects,
    _down_bits,
    _down_n_bits,
    _offending_lines,
    _up_bits,
    _up_n_bits,
    concepts,
    normalize,
    restrict,
)
from .errors import BudgetExceededError, NotNormalizedError

__all__ = [
    "NecessityPair",
    "CnLattice",
    "Block",
    "Factorization",
    "BlockMask",
    "BlockBounds",
    "cn_enumerate",
    "cn_atoms",
    "complement",
    "in_cn",
    "factorize",
    "rstar",
    "block_bounds",
]

MAX_MATERIALIZED_ATOMS = 20


@dataclass(frozen=True)
class NecessityPair:
    """A pair (X, Y) closed under the two necessity operators."""

    objects: ObjectSubset
    attrs: AttributeSubset

    def __repr__(self) -> str:
        return f"({{{', '.join(self.objects.names)}}}, {{{', '.join(self.attrs.names)}}})"


def in_cn(ctx: BooleanContext, pair: NecessityPair) -> bool:
    """Membership test: X-up-N = Y and Y-down-N = X."""
    xbits = _claim_objects(ctx, pair.objects)
    ybits = _claim_attrs(ctx, pair.attrs)
    return _up_n_bits(ctx, xbits) == ybits and _down_n_bits(ctx, ybits) == xbits


def cn_atoms(ctx: BooleanContext) -> list[NecessityPair]:
    """Atoms of the closure lattice: connected components of the incidence graph.

    Vertices are objects and attributes, edges the relation; union-find.
    Requires a normalized context (otherwise components need not be closed).
    """
    _require_normalized(ctx)
    n_obj = len(ctx.objects)
    n_attr = len(ctx.attributes)
    parent = list(range(n_obj + n_attr))  # objects first, then attributes

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    for i, row in enumerate(ctx._row_bits):
        for j in range(n_obj):
            if row >> j & 1:
                union(j, n_obj + i)

    groups: dict[int, tuple[int, int]] = {}  # root -> (object bits, attribute bits)
    for j in range(n_obj):
        root = find(j)
        xb, yb = groups.get(root, (0, 0))
        groups[root] = (xb | 1 << j, yb)
    for i in range(n_attr):
        root = find(n_obj + i)
        xb, yb = groups.get(root, (0, 0))
        groups[root] = (xb, yb | 1 << i)

    pairs = [
        NecessityPair(ObjectSubset(ctx, xb), AttributeSubset(ctx, yb))
        for xb, yb in groups.values()
    ]
    pairs.sort(key=lambda p: p.objects.bits)
    return pairs


@dataclass(frozen=True)
class CnLattice:
    """The complemented complete lattice of necessity-closed pairs.

    ``pairs`` holds every pair, sorted by object bit-pattern, when the
    lattice is materialized; with more than ``max_atoms`` atoms only the
    atoms and the pair count are kept (the lattice is the powerset of the
    atoms) and ``pairs``/``covers``/``atoms`` are None.
    """

    context: BooleanContext = field(compare=False, repr=False)
    atom_pairs: tuple[NecessityPair, ...]
    pairs: tuple[NecessityPair, ...] | None
    atom_masks: tuple[int, ...] | None = field(repr=False)  # per pair: which atoms it joins

    @property
    def materialized(self) -> bool:
        return self.pairs is not None

    @property
    def pair_count(self) -> int:
        return 1 << len(self.atom_pairs)

    def _require_materialized(self) -> tuple[NecessityPair, ...]:
        if self.pairs is None:
            raise BudgetExceededError(self.pair_count, 1 << MAX_MATERIALIZED_ATOMS)
        return self.pairs

    def __len__(self) -> int:
        return len(self._require_materialized())

    def __iter__(self) -> Iterator[NecessityPair]:
        return iter(self._require_materialized())

    def __getitem__(self, i: int) -> NecessityPair:
        return self._require_materialized()[i]

    def le(self, i: int, j: int) -> bool:
        pairs = self._require_materialized()
        return pairs[i].objects.bits & ~pairs[j].objects.bits == 0

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Hasse edges: pairs whose atom sets differ by exactly one atom."""
        self._require_materialized()
        index_of = {mask: i for i, mask in enumerate(self.atom_masks)}
        edges = []
        for i, mask in enumerate(self.atom_masks):
            for a in range(len(self.atom_pairs)):
                if not mask >> a & 1:
                    edges.append((i, index_of[mask | 1 << a]))
        return tuple(sorted(edges))

    @cached_property
    def atoms(self) -> tuple[int, ...]:
        """Indices into ``pairs`` of the atoms."""
        self._require_materialized()
        return tuple(
            i for i, mask in enumerate(self.atom_masks) if mask.bit_count() == 1
        )

    @cached_property
    def bottom_index(self) -> int:
        return order.bottom_index(self)

    @cached_property
    def top_index(self) -> int:
        return order.top_index(self)

    def index_of(self, pair: NecessityPair) -> int:
        for i, p in enumerate(self._require_materialized()):
            if p == pair:
                return i
        raise ValueError(f"{pair!r} is not in the lattice")

    def pair_for_atoms(self, atom_positions: Iterable[int]) -> NecessityPair:
        """Join of the given atoms, available even when not materialized."""
        xbits = 0
        ybits = 0
        for a in atom_positions:
            xbits |= self.atom_pairs[a].objects.bits
            ybits |= self.atom_pairs[a].attrs.bits
        return NecessityPair(
            ObjectSubset(self.context, xbits), AttributeSubset(self.context, ybits)
        )


def _require_normalized(ctx: BooleanContext) -> None:
    problems = _offending_lines(ctx)
    if problems:
        raise NotNormalizedError(
            "context is not normalized: " + "; ".join(problems)
            + " (normalize first and reattach the removals afterwards)"
        )


def cn_enumerate(ctx: BooleanContext, max_atoms: int = MAX_MATERIALIZED_ATOMS) -> CnLattice:
    """All necessity-closed pairs of a normalized context, with covers and atoms.

    Built as the unions of atom subsets; with more than ``max_atoms`` atoms
    the 2**k pairs are not materialized and only the atoms are returned.
    """
    atom_pairs = tuple(cn_atoms(ctx))
    k = len(atom_pairs)
    if k > max_atoms:
        return CnLattice(ctx, atom_pairs, None, None)
    entries = []
    for mask in range(1 << k):
        xbits = 0
        ybits = 0
        for a in range(k):
            if mask >> a & 1:
                xbits |= atom_pairs[a].objects.bits
                ybits |= atom_pairs[a].attrs.bits
        entries.append((xbits, ybits, mask))
    entries.sort()
    pairs = tuple(
        NecessityPair(ObjectSubset(ctx, xb), AttributeSubset(ctx, yb))
        for xb, yb, _ in entries
    )
    masks = tuple(mask for _, _, mask in entries)
    return CnLattice(ctx, atom_pairs, pairs, masks)


def complement(ctx: BooleanContext, pair: NecessityPair) -> NecessityPair:
    """The complement pair (X^c, Y^c), verified to be necessity-closed."""
    if not in_cn(ctx, pair):
        raise ValueError(f"{pair!r} is not a necessity-closed pair of this context")
    result = NecessityPair(pair.objects.complement(), pair.attrs.complement())
    if not in_cn(ctx, result):
        raise NotNormalizedError(
            "complement is not necessity-closed; the context is not normalized"
        )
    return result


@dataclass(frozen=True)
class Block:
    """One independent subcontext of a factorization."""

    objects: ObjectSubset
    attrs: AttributeSubset
    context: BooleanContext  # the relation restricted to attrs x objects


@dataclass(frozen=True)
class Factorization:
    """Independent subcontexts, one per atom, plus the stripped remainders."""

    reattached: NormalizationReport
    blocks: tuple[Block, ...]

    @property
    def core(self) -> BooleanContext:
        return self.reattached.core


def factorize(ctx: BooleanContext) -> Factorization:
    """Split a context into its independent subcontexts.

    The input is normalized internally (removals reported in
    ``reattached``); each bipartite component of the core becomes a block.
    Blocks have pairwise disjoint objects and attributes and their
    relations reassemble the core exactly.
    """
    report = normalize(ctx)
    core = report.core
    blocks = []
    if core.objects or core.attributes:
        for pair in cn_atoms(core):
            blocks.append(
                Block(pair.objects, pair.attrs, restrict(core, pair.objects, pair.attrs))
            )
    return Factorization(report, tuple(blocks))


def reassemble(factorization: Factorization) -> BooleanContext:
    """Rebuild the normalized core from the blocks (zero outside the blocks)."""
    core = factorization.core
    grid = [[False] * len(core.objects) for _ in core.attributes]
    for block in factorization.blocks:
        for bi, i in enumerate(block.attrs.indices):
            for bj, j in enumerate(block.objects.indices):
                if block.context.incidence[bi][bj]:
                    grid[i][j] = True
    return BooleanContext(core.attributes, core.objects, tuple(tuple(r) for r in grid))


@dataclass(frozen=True)
class BlockMask:
    """The relation R*: union of the atom rectangles; always contains R."""

    context: BooleanContext = field(compare=False, repr=False)
    mask: tuple[tuple[bool, ...], ...]

    def contains_relation(self) -> bool:
        return all(
            not v or self.mask[i][j]
            for i, row in enumerate(self.context.incidence)
            for j, v in enumerate(row)
        )


def rstar(ctx: BooleanContext) -> BlockMask:
    """Evaluate the block mask two ways and cross-check.

    Literal form: intersection over every necessity-closed pair (X, Y) of
    (X x Y) union (X^c x Y^c).  Fast form: union of the atom rectangles.
    The two agree by construction of the lattice; a mismatch is a bug.
    """
    lattice = cn_enumerate(ctx)
    pairs = lattice._require_materialized()
    full = ctx._full_objects
    # per attribute, the object bitmask of allowed cells
    allowed = [full] * len(ctx.attributes)
    for pair in pairs:
        xbits = pair.objects.bits
        for i in range(len(ctx.attributes)):
            allowed[i] &= xbits if pair.attrs.bits >> i & 1 else ~xbits & full

    rectangles = [0] * len(ctx.attributes)
    for atom in lattice.atom_pairs:
        for i in atom.attrs.indices:
            rectangles[i] |= atom.objects.bits
    if rectangles != allowed:
        raise RuntimeError("block mask mismatch between intersection and rectangles")

    mask = tuple(
        tuple(bool(allowed[i] >> j & 1) for j in range(len(ctx.objects)))
        for i in range(len(ctx.attributes))
    )
    return BlockMask(ctx, mask)


@dataclass(frozen=True)
class BlockBounds:
    """Concept-lattice interval determined by a necessity-closed pair.

    ``upper`` is <X, X-up> when X-up is nonempty, else None with
    ``upper_identified_with_top`` set; dually for ``lower``.  ``upper_is_coatom``
    reports whether the upper bound sits directly under the lattice top,
    and ``lower_within_upper`` whether Y-down is contained in X.
    """

    pair: NecessityPair
    upper: FormalConcept | None
    upper_identified_with_top: bool
    lower: FormalConcept | None
    lower_identified_with_bottom: bool
    upper_is_coatom: bool | None
    lower_within_upper: bool


def block_bounds(
    ctx: BooleanContext, pair: NecessityPair, lattice: ConceptLattice | None = None
) -> BlockBounds:
    """Bounds of the concept block generated by a nontrivial pair."""
    if not in_cn(ctx, pair):
        raise ValueError(f"{pair!r} is not a necessity-closed pair of this context")
    xbits = pair.objects.bits
    if xbits == 0 or xbits == ctx._full_objects:
        raise ValueError("block bounds are defined for pairs with X not empty and not B")
    if lattice is None:
        lattice = concepts(ctx)

    x_up = _up_bits(ctx, xbits)
    upper = None
    coatom = None
    if x_up:
        upper = FormalConcept(ObjectSubset(ctx, xbits), AttributeSubset(ctx, x_up))
        idx = lattice.index_of(upper)
        coatom = lattice.upper_covers(idx) == (lattice.top_index,)

    y_down = _down_bits(ctx, pair.attrs.bits)
    lower = None
    if y_down:
        lower = FormalConcept(ObjectSubset(ctx, y_down), AttributeSubset(ctx, pair.attrs.bits))

    return BlockBounds(
        pair=pair,
        upper=upper,
        upper_identified_with_top=x_up == 0,
        lower=lower,
        lower_identified_with_bottom=y_down == 0,
        upper_is_coatom=coatom,
        lower_within_upper=y_down & ~xbits == 0,
    )
