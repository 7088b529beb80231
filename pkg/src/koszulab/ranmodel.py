"""Factorization predicates and diagonal families on the finite Ran model.

At d = 0 a (co)algebra over finran(X) is factorizable when, for disjoint
nonempty S1, S2, the structure map component between the stalk at S1 ⊔ S2
and stalk(S1) ⊗ stalk(S2) is a quasi-isomorphism.  The n-fold condition is
checked through pairs; ``check_triple`` does a three-fold split directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .basecat import BaseCategory, BaseObject, finran, restrict_object, subset_key
from .complexes import (Complex, ComplexError, ComplexMap, Window, cohomology_dims, quasi_iso_failures,
                        tensor, tensor_label)
from .linalg import add_into
from .operadic.structures import (StrictCoLie, StrictComAlgebra, StrictComCoalgebra, StrictLieAlgebra,
                                  dual_lie)

Subset = FrozenSet[str]


@dataclass
class FactorizationWitness:
    """A disjoint pair whose comparison map fails to be a quasi-isomorphism."""

    s1: Subset
    s2: Subset
    degree: int
    dims: Tuple[int, int]
    map: Optional[ComplexMap] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if not self.s1 or not self.s2 or self.s1 & self.s2:
            raise ValueError("witness subsets must be nonempty and disjoint")

    def __bool__(self):
        return False

    def to_json(self) -> dict:
        return {"s1": sorted(self.s1), "s2": sorted(self.s2), "degree": self.degree,
                "dims": list(self.dims)}


FactorizationResult = Union[bool, FactorizationWitness]


def disjoint_pairs(base: BaseCategory) -> Iterator[Tuple[Subset, Subset]]:
    """Unordered pairs of disjoint nonempty subsets, in canonical order."""
    subs = base.subsets()
    for i, a in enumerate(subs):
        for b in subs[i + 1:]:
            if not a & b:
                yield a, b


def _window_for(c: Complex, w: Optional[Window]) -> Window:
    if w is not None:
        return w
    if c.certified is not None:
        return c.certified
    degs = c.degrees()
    if not degs:
        return Window(0, 0)
    return Window(min(degs) - 1, max(degs) + 1)


def _tensor_stalks(obj: BaseObject, s1: Subset, s2: Subset) -> Complex:
    return tensor(obj.stalk(s1), obj.stalk(s2))


def _first_failure(f: ComplexMap, w: Window) -> Optional[Tuple[int, int, int]]:
    bad = quasi_iso_failures(f, w)
    if not bad:
        return None
    # report the failing degree nearest 0, where connective and coconnective objects start
    n, hs, ht, _ = min(bad, key=lambda b: (abs(b[0]), b[0]))
    return n, hs, ht


def coalgebra_component(a: StrictComCoalgebra, s1: Subset, s2: Subset) -> ComplexMap:
    """a(S1 ⊔ S2) -> a(S1) ⊗ a(S2), the matching component of Δ."""
    tags = a.carrier.tags
    src = a.carrier.stalk(s1 | s2)
    tgt = _tensor_stalks(a.carrier, s1, s2)
    fmap = {}
    for x in src.labels():
        img = {}
        for (p, q), v in a.table.get(x, {}).items():
            if tags[p] == s1 and tags[q] == s2:
                img[tensor_label(p, q)] = v
        fmap[x] = img
    return ComplexMap.from_maps(src, tgt, fmap)


def algebra_component(b: StrictComAlgebra, s1: Subset, s2: Subset) -> ComplexMap:
    """b(S1) ⊗ b(S2) -> b(S1 ⊔ S2), the matching component of the product."""
    tags = b.carrier.tags
    src = _tensor_stalks(b.carrier, s1, s2)
    tgt = b.carrier.stalk(s1 | s2)
    keep = set(tgt.labels())
    fmap = {}
    for x in b.carrier.stalk(s1).labels():
        for y in b.carrier.stalk(s2).labels():
            img = {z: v for z, v in b.table.get((x, y), {}).items() if z in keep}
            fmap[tensor_label(x, y)] = img
    return ComplexMap.from_maps(src, tgt, fmap)


def _check_pairs(obj, component, window: Optional[Window]) -> FactorizationResult:
    base = obj.base
    if base.kind != "finran":
        raise ComplexError("factorization predicates need a finran base, got %s" % base.describe())
    w = _window_for(obj.complex, window)
    for s1, s2 in disjoint_pairs(base):
        f = component(obj, s1, s2)
        fail = _first_failure(f, w)
        if fail:
            n, hs, ht = fail
            return FactorizationWitness(s1, s2, n, (hs, ht), f)
    return True


def is_factorization_coalgebra(a: StrictComCoalgebra, window: Optional[Window] = None) -> FactorizationResult:
    """True, or a witness pair where a(S1 ⊔ S2) -> a(S1) ⊗ a(S2) is not a quasi-isomorphism."""
    return _check_pairs(a, coalgebra_component, window)


def is_factorization_algebra(b: StrictComAlgebra, window: Optional[Window] = None) -> FactorizationResult:
    """True, or a witness pair where b(S1) ⊗ b(S2) -> b(S1 ⊔ S2) is not a quasi-isomorphism."""
    return _check_pairs(b, algebra_component, window)


def check_triple(obj: Union[StrictComAlgebra, StrictComCoalgebra], s1: Subset, s2: Subset, s3: Subset,
                 window: Optional[Window] = None) -> bool:
    """The three-fold comparison map for pairwise disjoint subsets, checked directly."""
    carrier = obj.carrier
    tags = carrier.tags
    triple = tensor(tensor(carrier.stalk(s1), carrier.stalk(s2)), carrier.stalk(s3))
    whole = carrier.stalk(s1 | s2 | s3)
    if isinstance(obj, StrictComCoalgebra):
        fmap = {}
        for x in whole.labels():
            img: Dict[str, Fraction] = {}
            for (p, q), v in obj.table.get(x, {}).items():
                if tags[p] != s1 | s2 or tags[q] != s3:
                    continue
                for (r, s), u in obj.table.get(p, {}).items():
                    if tags[r] == s1 and tags[s] == s2:
                        add_into(img, {tensor_label(tensor_label(r, s), q): v * u})
            fmap[x] = img
        f = ComplexMap.from_maps(whole, triple, fmap)
    else:
        keep = set(whole.labels())
        fmap = {}
        for x in carrier.stalk(s1).labels():
            for y in carrier.stalk(s2).labels():
                xy = obj.table.get((x, y), {})
                for z in carrier.stalk(s3).labels():
                    img: Dict[str, Fraction] = {}
                    for p, v in xy.items():
                        for q, u in obj.table.get((p, z), {}).items():
                            if q in keep:
                                add_into(img, {q: v * u})
                    fmap[tensor_label(tensor_label(x, y), z)] = img
        f = ComplexMap.from_maps(triple, whole, fmap)
    return not quasi_iso_failures(f, _window_for(obj.complex, window))


# --------------------------------------------------------------------------
# diagonal families


def _point_label(x: str, p: str) -> str:
    return "%s@%s" % (x, p)


def _diagonal_carrier(base: BaseCategory, entries: Mapping[str, BaseObject]) -> BaseObject:
    stalks = {}
    for p in base.points:
        c = entries[p].complex
        if c.is_zero():
            continue
        stalks[frozenset([p])] = c
    return BaseObject.from_stalks(base, stalks, rename=lambda t, s: _point_label(s, next(iter(t))))


def _relabel_pairs(table, p):
    return {(_point_label(x, p), _point_label(y, p)): {_point_label(z, p): v for z, v in img.items()}
            for (x, y), img in table.items()}


def _relabel_co(table, p):
    return {_point_label(z, p): {(_point_label(x, p), _point_label(y, p)): v for (x, y), v in img.items()}
            for z, img in table.items()}


@dataclass
class DiagonalLieFamily:
    """A Lie algebra over finran(X) supported on singletons, one vect entry per point."""

    points: Tuple[str, ...]
    entries: Dict[str, StrictLieAlgebra]

    def __post_init__(self):
        self.points = tuple(self.points)
        for p in self.points:
            g = self.entries.get(p)
            if g is None or g.base.kind != "vect":
                raise ComplexError("entry at %r must be a Lie algebra over vect" % p)
            g.assert_axioms()

    @property
    def base(self) -> BaseCategory:
        return finran(self.points)

    def to_lie(self) -> StrictLieAlgebra:
        carrier = _diagonal_carrier(self.base, {p: self.entries[p].carrier for p in self.points})
        br = {}
        for p in self.points:
            br.update(_relabel_pairs(self.entries[p].table, p))
        return StrictLieAlgebra(carrier, br, name="Diag(%s)" % ",".join(self.entries[p].name or p for p in self.points))

    def dual(self) -> "DiagonalCoLieFamily":
        return DiagonalCoLieFamily(self.points, {p: dual_lie(self.entries[p]) for p in self.points})


@dataclass
class DiagonalCoLieFamily:
    """A coLie coalgebra over finran(X) supported on singletons."""

    points: Tuple[str, ...]
    entries: Dict[str, StrictCoLie]

    def __post_init__(self):
        self.points = tuple(self.points)
        for p in self.points:
            h = self.entries.get(p)
            if h is None or h.base.kind != "vect":
                raise ComplexError("entry at %r must be a coLie coalgebra over vect" % p)
            h.assert_axioms()

    @property
    def base(self) -> BaseCategory:
        return finran(self.points)

    def to_colie(self) -> StrictCoLie:
        carrier = _diagonal_carrier(self.base, {p: self.entries[p].carrier for p in self.points})
        cob = {}
        for p in self.points:
            cob.update(_relabel_co(self.entries[p].table, p))
        return StrictCoLie(carrier, cob, name="Diag(%s)" % ",".join(self.entries[p].name or p for p in self.points))

    def extended(self, points: Sequence[str]) -> "DiagonalCoLieFamily":
        """The same family viewed over a larger point set, zero at the new points."""
        from .operadic.structures import trivial_colie
        missing = [p for p in self.points if p not in points]
        if missing:
            raise ComplexError("extension must contain the old points, missing %s" % missing)
        entries = dict(self.entries)
        for p in points:
            if p not in entries:
                entries[p] = trivial_colie(BaseObject.zero())
        return DiagonalCoLieFamily(tuple(points), entries)


def abelian_on_subset(points: Sequence[str], support: Sequence[str], degree: int, name: str = "t") -> BaseObject:
    """A one-dimensional object in the given degree, supported at one (non-singleton) subset."""
    base = finran(points)
    return BaseObject.from_stalks(base, {frozenset(support): Complex.point(degree, name)})


# --------------------------------------------------------------------------
# open embeddings


def restrict_to_open(f: BaseObject, subpoints: Sequence[str]) -> BaseObject:
    """Keep the stalks over subsets of X'; the result lives over finran(X')."""
    if not subpoints:
        raise ComplexError("open subset must be nonempty")
    if f.base.kind != "finran":
        raise ComplexError("restrict_to_open needs a finran base")
    sub = set(subpoints)
    if not sub <= set(f.base.points):
        raise ComplexError("%s is not a subset of the points" % sorted(sub - set(f.base.points)))
    keep_order = tuple(p for p in f.base.points if p in sub)
    return restrict_object(f, lambda t: t <= sub, base=finran(keep_order))


def extend_by_zero(f: BaseObject, points: Sequence[str]) -> BaseObject:
    """View an object over finran(X') as one over finran(X), zero over subsets meeting X ∖ X'."""
    if f.base.kind != "finran":
        raise ComplexError("extend_by_zero needs a finran base")
    if not set(f.base.points) <= set(points):
        raise ComplexError("extension must contain the old points")
    return BaseObject(finran(points), f.complex, f.tags)


def stalkwise_equal(f: BaseObject, g: BaseObject, window: Optional[Window] = None) -> bool:
    """Same support and equal stalk cohomology dimensions (on the window when given)."""
    if f.base != g.base:
        return False
    sf, sg = f.stalks(), g.stalks()
    for t in set(sf) | set(sg):
        hf = cohomology_dims(sf[t]) if t in sf else {}
        hg = cohomology_dims(sg[t]) if t in sg else {}
        degs = set(hf) | set(hg)
        if window is not None:
            degs = {n for n in degs if window.lo <= n <= window.hi}
        if any(hf.get(n, 0) != hg.get(n, 0) for n in degs):
            return False
    return True


def compactly_supported_colie(family: DiagonalCoLieFamily) -> StrictCoLie:
    """C*_c(X, h) for a diagonal family: the direct sum of the entries, as a coLie coalgebra over vect."""
    h = family.to_colie()
    carrier = BaseObject.from_complex(h.complex)
    return StrictCoLie(carrier, h.table, name="Cc(%s)" % h.name)
