"""Base categories: plain complexes, the finite Ran model, graded and filtered layers.

Every object is stored as one total Complex whose basis labels carry a tag
(the stratum).  The tensor product of two tagged bases is the ordinary
tensor product with tags combined by the base's monoid law:

* ``vect``        tag ``None``; one stratum.
* ``finran``      tag a nonempty frozenset of points; combination is union,
                  which is exactly the stalk formula for the star convolution
                  over a finite discrete space.
* ``graded``      tag ``(inner, weight)``; weights add, maps preserve them.
* ``filtered``    as graded, but maps may lower the weight (split filtrations).
* ``cofiltered``  as graded, but maps may raise the weight.

A stalk is the subcomplex spanned by labels with a given tag, which makes
sense whenever the differential preserves tags.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, FrozenSet, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from .complexes import (Complex, ComplexError, ComplexMap, KoszulabError, Matrix, Window, cohomology_dims,
                        direct_sum, dual, dual_label, tensor_label)

Tag = Hashable

KINDS = ("vect", "finran", "graded", "filtered", "cofiltered")


class BaseMismatch(KoszulabError):
    pass


@dataclass(frozen=True)
class BaseCategory:
    kind: str = "vect"
    points: Tuple[str, ...] = ()
    inner: Optional["BaseCategory"] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError("unknown base kind %r" % self.kind)
        if self.kind == "finran":
            if not self.points:
                raise ValueError("finran needs at least one point")
            if len(set(self.points)) != len(self.points):
                raise ValueError("duplicate points")
            object.__setattr__(self, "points", tuple(sorted(self.points)))
        if self.kind in ("graded", "filtered", "cofiltered") and self.inner is None:
            object.__setattr__(self, "inner", VECT)

    # -- tags
    def combine(self, a: Tag, b: Tag) -> Tag:
        if self.kind == "vect":
            return None
        if self.kind == "finran":
            return a | b
        return (self.inner.combine(a[0], b[0]), a[1] + b[1])

    def combine_all(self, tags: Iterable[Tag]) -> Tag:
        it = iter(tags)
        out = next(it)
        for t in it:
            out = self.combine(out, t)
        return out

    def admissible(self, src: Tag, tgt: Tag) -> bool:
        """May a structure map send something tagged src to something tagged tgt?"""
        if self.kind == "vect":
            return True
        if self.kind == "finran":
            return src == tgt
        if not self.inner.admissible(src[0], tgt[0]):
            return False
        if self.kind == "graded":
            return src[1] == tgt[1]
        if self.kind == "filtered":
            return tgt[1] <= src[1]
        return tgt[1] >= src[1]

    def validate_tag(self, t: Tag):
        if self.kind == "vect":
            if t is not None:
                raise ComplexError("vect tags must be None, got %r" % (t,))
        elif self.kind == "finran":
            if not isinstance(t, frozenset) or not t or not t <= set(self.points):
                raise ComplexError("bad stratum %r for points %r" % (t, self.points))
        else:
            if not (isinstance(t, tuple) and len(t) == 2 and isinstance(t[1], int)):
                raise ComplexError("bad weighted tag %r" % (t,))
            self.inner.validate_tag(t[0])

    def point_tag(self) -> Tag:
        if self.kind == "vect":
            return None
        raise ValueError("no canonical tag for %s" % self.kind)

    def subsets(self) -> List[FrozenSet[str]]:
        """Nonempty subsets ordered by size, then lexicographically."""
        out = []
        for k in range(1, len(self.points) + 1):
            out.extend(frozenset(c) for c in combinations(self.points, k))
        return out

    def tag_sort_key(self, t: Tag):
        if self.kind == "vect":
            return ()
        if self.kind == "finran":
            return (len(t), tuple(sorted(t)))
        return (self.inner.tag_sort_key(t[0]), t[1])

    def describe(self) -> str:
        if self.kind == "finran":
            return "finran(%s)" % ",".join(self.points)
        if self.inner is not None:
            return "%s(%s)" % (self.kind, self.inner.describe())
        return self.kind


VECT = BaseCategory("vect")


def finran(points: Sequence[str]) -> BaseCategory:
    return BaseCategory("finran", tuple(points))


def graded(inner: BaseCategory = VECT) -> BaseCategory:
    return BaseCategory("graded", inner=inner)


def filtered(inner: BaseCategory = VECT) -> BaseCategory:
    return BaseCategory("filtered", inner=inner)


def cofiltered(inner: BaseCategory = VECT) -> BaseCategory:
    return BaseCategory("cofiltered", inner=inner)


def subset_key(s: FrozenSet[str]) -> str:
    return ",".join(sorted(s))


def parse_subset(key: str) -> FrozenSet[str]:
    return frozenset(p for p in key.split(",") if p)


class BaseObject:
    """A tagged complex over a base category."""

    def __init__(self, base: BaseCategory, complex_: Complex, tags: Mapping[str, Tag], check: bool = True):
        self.base = base
        self.complex = complex_
        self.tags: Dict[str, Tag] = dict(tags)
        if check:
            labels = complex_.labels()
            if set(labels) != set(self.tags):
                raise ComplexError("tags must cover exactly the basis labels")
            for t in set(self.tags.values()):
                base.validate_tag(t)
            for n, m in complex_.d.items():
                src, tgt = complex_.basis(n), complex_.basis(n + 1)
                for (i, j) in m.entries:
                    if not base.admissible(self.tags[src[j]], self.tags[tgt[i]]):
                        raise ComplexError("differential %s -> %s is not compatible with %s"
                                           % (src[j], tgt[i], base.describe()))

    # -- constructors
    @classmethod
    def from_complex(cls, c: Complex, tag: Tag = None, base: BaseCategory = VECT) -> "BaseObject":
        return cls(base, c, {lab: tag for lab in c.labels()})

    @classmethod
    def from_stalks(cls, base: BaseCategory, stalks: Mapping[Tag, Complex],
                    rename: Optional[Callable[[Tag, str], str]] = None) -> "BaseObject":
        """Assemble stalks; labels are kept when they are globally unique, else prefixed by the tag."""
        keys = sorted(stalks, key=base.tag_sort_key)
        seen = set()
        clash = False
        for k in keys:
            for lab in stalks[k].labels():
                if lab in seen:
                    clash = True
                seen.add(lab)
        if rename is None:
            if clash:
                rename = lambda t, s: "%s@%s" % (s, _tag_str(t))
            else:
                rename = lambda t, s: s
        parts = []
        tags = {}
        for k in keys:
            c = stalks[k]
            space = {n: [rename(k, x) for x in c.basis(n)] for n in c.degrees()}
            parts.append(Complex(space, c.d, check=False))
            for n in c.degrees():
                for x in c.basis(n):
                    tags[rename(k, x)] = k
        total = direct_sum(*parts) if parts else Complex.zero()
        return cls(base, total, tags)

    @classmethod
    def zero(cls, base: BaseCategory = VECT) -> "BaseObject":
        return cls(base, Complex.zero(), {})

    # -- accessors
    def support(self) -> List[Tag]:
        return sorted(set(self.tags.values()), key=self.base.tag_sort_key)

    def stalk(self, t: Tag) -> Complex:
        c = self.complex
        space = {n: [x for x in c.basis(n) if self.tags[x] == t] for n in c.degrees()}
        space = {n: b for n, b in space.items() if b}
        dmap = {}
        for n, b in space.items():
            for x in b:
                img = {}
                for y, v in c.d_label(x, n).items():
                    if self.tags[y] != t:
                        raise BaseMismatch("differential does not preserve strata on %s" % self.base.describe())
                    img[y] = v
                dmap[x] = img
        return Complex.from_maps(space, dmap, certified=c.certified, check=False)

    def stalks(self) -> Dict[Tag, Complex]:
        return {t: self.stalk(t) for t in self.support()}

    def is_zero(self) -> bool:
        return self.complex.is_zero()

    def degree(self, label: str) -> int:
        return self.complex.degree_of(label)

    def stalk_dims(self) -> Dict[Tag, Dict[int, int]]:
        return {t: s.dims() for t, s in self.stalks().items()}

    def stalk_cohomology(self, degrees: Optional[Iterable[int]] = None) -> Dict[Tag, Dict[int, int]]:
        out = {}
        for t, s in self.stalks().items():
            out[t] = cohomology_dims(s, degrees)
        return out

    def __repr__(self):
        return "BaseObject(%s, %r)" % (self.base.describe(), self.complex)

    # -- serialization
    def to_json(self) -> dict:
        if self.base.kind == "vect":
            return {"base": "vect", "complex": self.complex.to_json()}
        if self.base.kind == "finran":
            return {"points": list(self.base.points),
                    "stalks": {subset_key(t): s.to_json() for t, s in self.stalks().items()}}
        return {"base": self.base.describe(),
                "tags": {lab: _tag_json(t) for lab, t in sorted(self.tags.items())},
                "complex": self.complex.to_json()}

    @classmethod
    def from_json(cls, doc: Mapping) -> "BaseObject":
        if "points" in doc:
            base = finran(doc["points"])
            stalks = {}
            for key, cj in doc.get("stalks", {}).items():
                s = parse_subset(key)
                base.validate_tag(s)
                stalks[s] = Complex.from_json(cj)
            return cls.from_stalks(base, stalks)
        if doc.get("base", "vect") == "vect":
            return cls.from_complex(Complex.from_json(doc["complex"]))
        raise ComplexError("only vect and finran objects can be read back")


def _tag_str(t: Tag) -> str:
    if t is None:
        return "pt"
    if isinstance(t, frozenset):
        return "{%s}" % subset_key(t)
    return "%s;%d" % (_tag_str(t[0]), t[1])


def _tag_json(t: Tag):
    if t is None:
        return None
    if isinstance(t, frozenset):
        return sorted(t)
    return [_tag_json(t[0]), t[1]]


def tag_str(t: Tag) -> str:
    return _tag_str(t)


# --------------------------------------------------------------------------
# operations


def _same_base(*objs: BaseObject):
    b = objs[0].base
    for o in objs[1:]:
        if o.base != b:
            raise BaseMismatch("%s vs %s" % (b.describe(), o.base.describe()))
    return b


def convolve(f: BaseObject, g: BaseObject, label=tensor_label) -> BaseObject:
    """Tensor product in the base: the star convolution over finran, index-additive otherwise."""
    base = _same_base(f, g)
    from .complexes import tensor
    total = tensor(f.complex, g.complex, label=label)
    tags = {}
    for x, tx in f.tags.items():
        for y, ty in g.tags.items():
            tags[label(x, y)] = base.combine(tx, ty)
    return BaseObject(base, total, tags)


def object_sum(*objs: BaseObject, tags: Optional[Sequence[str]] = None) -> BaseObject:
    base = _same_base(*objs)
    total = direct_sum(*(o.complex for o in objs), tags=tags)
    out = {}
    for i, o in enumerate(objs):
        for lab, t in o.tags.items():
            out["%s|%s" % (tags[i], lab) if tags else lab] = t
    return BaseObject(base, total, out)


def shift_object(f: BaseObject, k: int) -> BaseObject:
    from .complexes import shift
    return BaseObject(f.base, shift(f.complex, k), f.tags, check=False)


def verdier_dual(f: BaseObject) -> BaseObject:
    """Stalkwise linear dual."""
    if f.base.kind != "finran":
        raise BaseMismatch("verdier_dual needs a finran base, got %s" % f.base.describe())
    total = dual(f.complex)
    tags = {dual_label(x): t for x, t in f.tags.items()}
    return BaseObject(f.base, total, tags)


def compactly_supported_cohomology(f: BaseObject, n: Optional[int] = None) -> Complex:
    """Direct sum of the stalks over subsets of size at most n (all subsets when n is None)."""
    if f.base.kind != "finran":
        raise BaseMismatch("compactly_supported_cohomology needs a finran base")
    keep = [x for x, t in f.tags.items() if n is None or len(t) <= n]
    c = f.complex
    keepset = set(keep)
    space = {k: [x for x in c.basis(k) if x in keepset] for k in c.degrees()}
    dmap = {x: {y: v for y, v in c.d_label(x).items() if y in keepset} for x in keep}
    return Complex.from_maps(space, dmap, certified=c.certified)


def stratum_inclusion(f: BaseObject, k: int) -> ComplexMap:
    """C*_c over subsets of size < k included into C*_c over subsets of size <= k."""
    small = compactly_supported_cohomology(f, k - 1)
    big = compactly_supported_cohomology(f, k)
    return ComplexMap.from_maps(small, big, {x: {x: 1} for x in small.labels()})


@dataclass
class ConnectivityResult:
    ok: bool
    subset: Optional[FrozenSet[str]] = None
    degree: Optional[int] = None
    bound: Optional[int] = None

    def __bool__(self):
        return self.ok


def connectivity_bound(mode, size: int, d: int = 0) -> Tuple[str, int]:
    """('le', b) or ('ge', b) for a stratum of the given size."""
    if mode == "c_L":
        return "le", (-1 - d) * size
    if mode == "c_cA":
        return "le", (-1 - d) * size - 1
    if isinstance(mode, tuple) and mode[0] == "at_least":
        return "ge", mode[1]
    raise ValueError("unknown connectivity mode %r" % (mode,))


def connectivity_check(f: BaseObject, mode, on_cohomology: bool = False) -> ConnectivityResult:
    """Check the stalkwise degree bounds; ``mode`` is "c_L", "c_cA" or ("at_least", n)."""
    if f.base.kind != "finran":
        raise BaseMismatch("connectivity_check needs a finran base")
    for t in f.support():
        s = f.stalk(t)
        kind, b = connectivity_bound(mode, len(t))
        if on_cohomology:
            degs = [n for n, h in cohomology_dims(s).items() if h]
        else:
            degs = s.degrees()
        for n in sorted(degs, reverse=(kind == "le")):
            if (kind == "le" and n > b) or (kind == "ge" and n < b):
                return ConnectivityResult(False, t, n, b)
    return ConnectivityResult(True)


def diagonal_embed(base: BaseCategory, family: Mapping[str, Complex]) -> BaseObject:
    """Stalk at {x} is family[x]; larger subsets carry nothing."""
    if base.kind != "finran":
        raise BaseMismatch("diagonal_embed needs a finran base")
    missing = set(base.points) - set(family)
    if missing:
        raise ComplexError("family misses points %s" % sorted(missing))
    return BaseObject.from_stalks(base, {frozenset([p]): family[p] for p in base.points if not family[p].is_zero()})


def restrict_object(f: BaseObject, keep: Callable[[Tag], bool], base: Optional[BaseCategory] = None) -> BaseObject:
    labels = [x for x, t in f.tags.items() if keep(t)]
    keepset = set(labels)
    c = f.complex
    space = {k: [x for x in c.basis(k) if x in keepset] for k in c.degrees()}
    dmap = {x: {y: v for y, v in c.d_label(x).items() if y in keepset} for x in labels}
    sub = Complex.from_maps(space, dmap, certified=c.certified)
    return BaseObject(base or f.base, sub, {x: f.tags[x] for x in labels})


def omega(base: BaseCategory) -> BaseObject:
    """Every stalk a copy of Q in degree 0."""
    if base.kind != "finran":
        raise BaseMismatch("omega needs a finran base")
    return BaseObject.from_stalks(base, {s: Complex.point(0, "w") for s in base.subsets()})
