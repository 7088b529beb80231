"""Filtered, cofiltered and graded objects indexed by positive integers.

A filtered object stores stages 1..top and is constant (identity maps) past
``top``.  A cofiltered object stores stages 1..extent computed from a rule;
whether it stabilizes is a property checked on a window, and its limit is
only ever taken through that check.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional

from .basecat import BaseObject, _same_base
from .complexes import (Complex, ComplexMap, KoszulabError, Window, cohomology_dims, cone,
                        quasi_iso_failures, shift)
from .operadic.chevalley import chevalley, cochev_stage, cochevalley, stage_projection
from .operadic.cutoff import CutoffPolicy
from .operadic.structures import StrictCoLie, StrictLieAlgebra, trivial_colie, trivial_lie
from .verifysuite.report import CaseResult, VerificationReport


class NotStabilizing(KoszulabError):
    pass


def sub_object(obj: BaseObject, labels: Iterable[str]) -> BaseObject:
    """The span of some basis labels; the caller guarantees it is a subcomplex."""
    keep = set(labels)
    c = obj.complex
    space = {n: [x for x in c.basis(n) if x in keep] for n in c.degrees()}
    dmap = {x: {y: v for y, v in c.d_label(x).items() if y in keep} for x in keep}
    sub = Complex.from_maps(space, dmap, certified=c.certified)
    return BaseObject(obj.base, sub, {x: obj.tags[x] for x in keep})


def inclusion(small: BaseObject, big: BaseObject) -> ComplexMap:
    return ComplexMap.from_maps(small.complex, big.complex, {x: {x: 1} for x in small.complex.labels()})


def projection(big: BaseObject, small: BaseObject) -> ComplexMap:
    keep = set(small.complex.labels())
    return ComplexMap.from_maps(big.complex, small.complex,
                                {x: {x: 1} for x in big.complex.labels() if x in keep})


def cone_object(f: ComplexMap, src: BaseObject, tgt: BaseObject) -> BaseObject:
    c = cone(f)
    tags = {"c[%s]" % x: t for x, t in src.tags.items()}
    tags.update({"t[%s]" % y: t for y, t in tgt.tags.items()})
    return BaseObject(_same_base(src, tgt), c, tags)


def fiber_object(f: ComplexMap, src: BaseObject, tgt: BaseObject) -> BaseObject:
    c = cone_object(f, src, tgt)
    return BaseObject(c.base, shift(c.complex, -1), c.tags, check=False)


@dataclass
class GradedObject:
    pieces: Dict[int, BaseObject]
    extent: int = 0

    def __post_init__(self):
        if any(i < 1 for i in self.pieces):
            raise ValueError("graded pieces are indexed by positive integers")
        self.extent = max([self.extent, *self.pieces]) if self.pieces else self.extent

    def piece(self, i: int) -> Optional[BaseObject]:
        return self.pieces.get(i)

    def to_json(self) -> dict:
        return {str(i): p.to_json() for i, p in sorted(self.pieces.items())}


@dataclass
class FilteredObject:
    """Stages V_1 -> V_2 -> ... -> V_top, constant afterwards; V_0 = 0."""

    stages: Dict[int, BaseObject]
    maps: Dict[int, ComplexMap] = field(default_factory=dict)

    def __post_init__(self):
        if self.stages and sorted(self.stages) != list(range(1, len(self.stages) + 1)):
            raise ValueError("stages must be indexed 1..top")
        for i in range(1, self.top):
            if i not in self.maps:
                raise ValueError("missing stage map %d -> %d" % (i, i + 1))

    @property
    def top(self) -> int:
        return max(self.stages) if self.stages else 0

    def to_json(self) -> dict:
        return {str(i): s.to_json() for i, s in sorted(self.stages.items())}


@dataclass
class CoFilteredObject:
    """Stages V_1 <- V_2 <- ... <- V_extent; V_0 = 0.  maps[i]: V_{i+1} -> V_i."""

    stages: Dict[int, BaseObject]
    maps: Dict[int, ComplexMap] = field(default_factory=dict)
    constant: bool = False

    def __post_init__(self):
        if self.stages and sorted(self.stages) != list(range(1, len(self.stages) + 1)):
            raise ValueError("stages must be indexed 1..extent")
        for i in range(1, self.extent):
            if i not in self.maps:
                raise ValueError("missing stage map %d -> %d" % (i + 1, i))

    @property
    def extent(self) -> int:
        return max(self.stages) if self.stages else 0

    @classmethod
    def from_rule(cls, stage: Callable[[int], BaseObject], tower_map: Callable[[BaseObject, BaseObject], ComplexMap],
                  extent: int) -> "CoFilteredObject":
        stages = {i: stage(i) for i in range(1, extent + 1)}
        maps = {i: tower_map(stages[i + 1], stages[i]) for i in range(1, extent)}
        return cls(stages, maps)

    def to_json(self) -> dict:
        return {str(i): s.to_json() for i, s in sorted(self.stages.items())}


def add_fil(v: BaseObject) -> FilteredObject:
    if v.is_zero():
        return FilteredObject({})
    return FilteredObject({1: v})


def add_cofil(v: BaseObject) -> CoFilteredObject:
    if v.is_zero():
        return CoFilteredObject({}, constant=True)
    return CoFilteredObject({1: v}, constant=True)


def assgr(f) -> GradedObject:
    """Pieces cofib(V_{n-1} -> V_n) (filtered) or fib(V_n -> V_{n-1}) (cofiltered)."""
    if isinstance(f, FilteredObject):
        pieces = {}
        for n in range(1, f.top + 1):
            if n == 1:
                pieces[1] = f.stages[1]
            else:
                pieces[n] = cone_object(f.maps[n - 1], f.stages[n - 1], f.stages[n])
        # past top the maps are identities, whose cones are acyclic
        return GradedObject(pieces, extent=f.top + 1)
    if isinstance(f, CoFilteredObject):
        pieces = {}
        for n in range(1, f.extent + 1):
            if n == 1:
                pieces[1] = f.stages[1]
            else:
                pieces[n] = fiber_object(f.maps[n - 1], f.stages[n], f.stages[n - 1])
        # a constant tower has acyclic fibers from the second stage on
        return GradedObject(pieces, extent=f.extent + 1 if f.constant else f.extent)
    raise TypeError("assgr takes a filtered or cofiltered object")


def _qiso_on(f: ComplexMap, window: Window) -> bool:
    return not quasi_iso_failures(f, window)


def stabilization_threshold(c: CoFilteredObject, window: Window) -> Optional[int]:
    """Smallest m such that every computed map V_{i+1} -> V_i with i >= m is a
    quasi-isomorphism on the window; None if even the last map is not."""
    if c.constant or c.extent <= 1:
        return 1 if c.constant else None
    m = c.extent
    for i in range(c.extent - 1, 0, -1):
        if _qiso_on(c.maps[i], window):
            m = i
        else:
            break
    return m if m < c.extent else None


def is_stabilizing(c: CoFilteredObject, window: Window) -> bool:
    return stabilization_threshold(c, window) is not None


def decay_threshold(g: GradedObject, window: Window) -> Optional[int]:
    """Smallest m such that pieces m..extent have no cohomology in the window."""
    def vanishes(i):
        p = g.pieces.get(i)
        if p is None:
            return True
        h = cohomology_dims(p.complex)
        return all(h.get(n, 0) == 0 for n in range(window.lo, window.hi + 1))

    m = None
    for i in range(g.extent, 0, -1):
        if vanishes(i):
            m = i
        else:
            break
    return m


def is_decaying(g: GradedObject, window: Window) -> bool:
    return decay_threshold(g, window) is not None


def oblv(f, window: Optional[Window] = None) -> BaseObject:
    """Colimit of a filtration (its top stage); limit of a stabilizing tower (its last stage)."""
    if isinstance(f, FilteredObject):
        return f.stages[f.top] if f.top else BaseObject.zero()
    if isinstance(f, CoFilteredObject):
        if f.extent == 0:
            return BaseObject.zero()
        if not f.constant:
            if window is None:
                raise NotStabilizing("the limit of a tower needs a window")
            if not is_stabilizing(f, window):
                raise NotStabilizing("tower does not stabilize on [%d, %d] within %d stages"
                                     % (window.lo, window.hi, f.extent))
        return f.stages[f.extent]
    raise TypeError("oblv takes a filtered or cofiltered object")


def _window_dims(c: Complex, window: Window) -> Dict[int, int]:
    h = cohomology_dims(c)
    return {n: h.get(n, 0) for n in range(window.lo, window.hi + 1)}


def _stalk_dims(obj: BaseObject, window: Window) -> Dict[str, Dict[int, int]]:
    from .basecat import tag_str
    out = {}
    for t, s in obj.stalks().items():
        d = _window_dims(s, window)
        if any(d.values()):
            out[tag_str(t)] = d
    return out


def graded_sum_dims(g: GradedObject, window: Window) -> Dict[str, Dict[int, int]]:
    """Stalkwise cohomology of ⊕ pieces on the window (all computed pieces)."""
    return _sum_pieces(g, window, g.extent)


def graded_product_dims(g: GradedObject, window: Window) -> Dict[str, Dict[int, int]]:
    """Stalkwise cohomology of ∏ pieces on the window; needs decay to be finite."""
    m = decay_threshold(g, window)
    if m is None:
        raise NotStabilizing("product of a non-decaying graded object is not windowwise finite")
    return _sum_pieces(g, window, m - 1)


def _sum_pieces(g: GradedObject, window: Window, upto: int) -> Dict[str, Dict[int, int]]:
    total: Dict[str, Dict[int, int]] = {}
    for i in range(1, upto + 1):
        p = g.pieces.get(i)
        if p is None:
            continue
        for t, d in _stalk_dims(p, window).items():
            acc = total.setdefault(t, {n: 0 for n in range(window.lo, window.hi + 1)})
            for n, v in d.items():
                acc[n] += v
    return total


# --------------------------------------------------------------------------
# the two wired functors on filtered / cofiltered inputs


def chevalley_fil(g: StrictLieAlgebra, cutoff: CutoffPolicy) -> FilteredObject:
    """Chev_Fil(addFil g): stage n is the Sym-weight <= n subcomplex of Chev g."""
    ch = chevalley(g, cutoff)
    top = max(ch.weight.values()) if ch.weight else 0
    stages = {n: sub_object(ch.carrier, [x for x, w in ch.weight.items() if w <= n]) for n in range(1, top + 1)}
    maps = {n: inclusion(stages[n], stages[n + 1]) for n in range(1, top)}
    out = FilteredObject(stages, maps)
    out.total = ch
    return out


def cochevalley_cofil(h: StrictCoLie, cutoff: CutoffPolicy, extent: Optional[int] = None) -> CoFilteredObject:
    """coChev_coFil(addCoFil h): stage i is the weight <= i quotient, i = 1..extent."""
    full = cochevalley(h, cutoff)
    top = max(full.weight.values()) if full.weight else 0
    extent = extent or top + 1
    out = CoFilteredObject.from_rule(lambda i: cochev_stage(h, i, cutoff).carrier,
                                     lambda big, small: projection(big, small), extent)
    out.total = full
    return out


def _weight_piece(obj, n: int) -> BaseObject:
    return sub_object(obj.carrier, [x for x, w in obj.weight.items() if w == n])


def check_fundamental_diagram(g, functor: str, window: Window,
                              cutoff: Optional[CutoffPolicy] = None) -> VerificationReport:
    """The addFil (chevalley) or addCoFil (cochevalley) diagram on one input, by exact computation."""
    if functor not in ("chevalley", "cochevalley"):
        raise ValueError("functor must be 'chevalley' or 'cochevalley'")
    cutoff = cutoff or CutoffPolicy(window)
    rep = VerificationReport("fundamental-diagram/%s/%s" % (functor, g.name or "input"))
    w = [window.lo, window.hi]
    t0 = time.perf_counter()
    if functor == "chevalley":
        fil = chevalley_fil(g, cutoff)
        total = fil.total
        gr = assgr(fil)
        top = fil.top
        last = fil.stages[top] if top else BaseObject.zero(g.base)
        f = inclusion(last, total.carrier)
        triv = chevalley(trivial_lie(g.carrier), cutoff)
        path_b = chevalley(trivial_lie(assgr(add_fil(g.carrier)).pieces[1]), cutoff) if not g.carrier.is_zero() else triv
    else:
        cof = cochevalley_cofil(g, cutoff)
        total = cof.total
        gr = assgr(cof)
        top = cof.extent
        last = oblv(cof, window)
        f = projection(total.carrier, last)
        triv = cochevalley(trivial_colie(g.carrier), cutoff)
        path_b = cochevalley(trivial_colie(assgr(add_cofil(g.carrier)).pieces[1]), cutoff) if not g.carrier.is_zero() else triv
        stab = stabilization_threshold(cof, window)
        rep.add(CaseResult("stabilizing<=>decaying", is_stabilizing(cof, window) == is_decaying(gr, window),
                           window=w, dims={"stabilization_threshold": stab,
                                           "decay_threshold": decay_threshold(gr, window)}))
        late = all(_window_dims(cof.stages[i].complex, window) == _window_dims(total.complex, window)
                   for i in range(stab or top, top + 1))
        rep.add(CaseResult("limit=late-stage", bool(stab) and late, window=w,
                           dims={"limit": _window_dims(total.complex, window)}))
    rep.add(CaseResult("oblv", _qiso_on(f, window), window=w,
                       dims={"oblv": _window_dims(last.complex, window),
                             "functor": _window_dims(total.complex, window)},
                       cutoff=total.cutoff.to_json() if total.cutoff else None))
    pieces_ok = True
    table = {}
    for n in range(1, top + 1):
        a = _stalk_dims(gr.pieces[n], window) if n in gr.pieces else {}
        b = _stalk_dims(_weight_piece(path_b, n), window)
        c = _stalk_dims(_weight_piece(triv, n), window)
        table[n] = {"assgr": a, "functor_gr": b, "trivialized": c}
        pieces_ok = pieces_ok and a == b == c
    rep.add(CaseResult("assgr=trivialized", pieces_ok, window=w, dims=table))
    if is_decaying(gr, window):
        ok = graded_sum_dims(gr, window) == graded_product_dims(gr, window)
    else:
        ok = False
    rep.add(CaseResult("sum=product", ok, window=w, dims={"decay_threshold": decay_threshold(gr, window)}))
    rep.cases[-1].seconds = time.perf_counter() - t0
    return rep
