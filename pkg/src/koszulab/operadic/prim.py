"""Prim[-1] as a free Lie algebra with twisted differential.

For a cocommutative coalgebra c the model is the free Lie algebra on c[-1]
with d(w_y) = -w_{dy} + Σ (-1)^{|y'|} w_{y'} w_{y''} for Δy = Σ y' ⊗ y'';
the quadratic part is a Lie element because Δ is cocommutative.  All
computations happen in the tensor algebra on the generators.

Window handling: everything of degree >= lo - 1 is built, and degree lo is
replaced by its quotient by d(degree lo - 1).  That quotient is a dg Lie
algebra whose cohomology agrees with the untruncated one in degrees >= lo.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from ..basecat import BaseObject
from ..complexes import Complex, ComplexMap, Window
from ..linalg import Echelon, add_into
from .cutoff import CutoffInfeasible, CutoffPolicy
from .freelie import TElem, TensorLieModel, t_bracket
from .structures import HypothesisViolation, StrictComCoalgebra, StrictLieAlgebra


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


def gen_label(y: str) -> str:
    return "<%s>" % y


class PrimModel:
    """The windowed free-Lie model of Prim[-1](c), with its bookkeeping."""

    def __init__(self, c: StrictComCoalgebra, cutoff: CutoffPolicy):
        self.c = c
        self.cutoff = cutoff
        lo = cutoff.window.lo
        self.lo = lo
        bottom = lo - 1
        cx = c.complex
        gens: List[str] = []
        gdeg: List[int] = []
        self.base = c.base
        for n in cx.degrees():
            if n + 1 >= bottom:
                for y in cx.basis(n):
                    gens.append(y)
                    gdeg.append(n + 1)
        evens_nonneg = [d for d in gdeg if d >= 0 and d % 2 == 0]
        if any(d >= 0 for d in gdeg):
            if not (cutoff.forced and cutoff.max_weight):
                raise CutoffInfeasible("generators in degree %d >= 0: no finite window model" % max(gdeg))
            max_len = cutoff.max_weight
            why = "forced word-length cap %d" % max_len
        else:
            max_len = max(1, -bottom)
            if cutoff.max_weight is not None and cutoff.max_weight < max_len and not cutoff.forced:
                raise CutoffInfeasible("max_weight %d < %d needed for degrees >= %d"
                                       % (cutoff.max_weight, max_len, bottom))
            if cutoff.forced and cutoff.max_weight:
                max_len = min(max_len, cutoff.max_weight)
            why = "generators in degrees <= -1, so words of length w lie in degrees <= -w; lengths <= %d cover degrees >= %d" % (
                max_len, bottom)
        # the coalgebra must be complete down to the generators we need
        if c.cutoff is not None and c.cutoff.floor > bottom - 1:
            raise CutoffInfeasible("coalgebra is only built down to degree %d, need %d"
                                   % (c.cutoff.floor, bottom - 1))
        self.policy = cutoff.with_note(why, max_weight=max_len)
        self.gens = gens
        self.gen_tags = [c.carrier.tags[y] for y in gens]
        self.gen_index = {y: i for i, y in enumerate(gens)}
        self.degs = gdeg
        self.model = TensorLieModel(gdeg, [gen_label(y) for y in gens], max_len,
                                    keep=lambda length, d: d >= bottom)
        self.bottom = bottom
        self._dgen: Dict[int, TElem] = {}
        self._build_quotient()

    # -- differential on the tensor algebra
    def d_gen(self, i: int) -> TElem:
        if i in self._dgen:
            return self._dgen[i]
        y = self.gens[i]
        cx = self.c.complex
        out: TElem = {}
        for z, v in cx.d_label(y, self.degs[i] - 1).items():
            j = self.gen_index.get(z)
            if j is not None:
                add_into(out, {(j,): -v})
        for (a, b), v in self.c.delta.get(y, {}).items():
            ia, ib = self.gen_index.get(a), self.gen_index.get(b)
            if ia is None or ib is None:
                continue
            add_into(out, {(ia, ib): v * _sign(self.degs[ia] - 1)})
        self._dgen[i] = out
        return out

    def d_tensor(self, x: TElem) -> TElem:
        out: TElem = {}
        maxlen = self.model.max_length
        for w, v in x.items():
            prefix = 0
            for pos, letter in enumerate(w):
                img = self.d_gen(letter)
                if img:
                    s = _sign(prefix) * v
                    head, tail = w[:pos], w[pos + 1:]
                    for u, c in img.items():
                        nw = head + u + tail
                        if len(nw) <= maxlen:
                            nv = out.get(nw, 0) + s * c
                            if nv:
                                out[nw] = nv
                            else:
                                out.pop(nw, None)
                prefix += self.degs[letter]
        return out

    # -- the windowed quotient
    def _build_quotient(self):
        m = self.model
        lo = self.lo
        self.keep: List[int] = [i for i, b in enumerate(m.basis) if b.degree >= lo]
        low = m.by_degree.get(lo, [])
        below = m.by_degree.get(lo - 1, [])
        ech = Echelon(track=True)
        n_img = 0
        for i in below:
            img = self.model.coordinates(self.d_tensor(m.expansions[i]), lo)
            if ech.insert(img):
                n_img += 1
        complement = []
        for i in low:
            if ech.insert({i: Fraction(1)}):
                complement.append(i)
        self._quot = ech
        self._n_img = n_img
        self._complement = complement
        drop = set(low) - set(complement)
        self.keep = [i for i in self.keep if i not in drop]
        self.keep_set = set(self.keep)

    def reduce(self, coords: Dict[int, Fraction], degree: int) -> Dict[int, Fraction]:
        """Express a vector of the given degree in the kept basis (projecting the bottom degree)."""
        if degree < self.lo:
            return {}
        if degree > self.lo:
            return coords
        if not coords:
            return {}
        full = self._quot.coordinates(coords)
        out = {}
        for k, v in full.items():
            if k >= self._n_img:
                out[self._complement[k - self._n_img]] = v
        return out

    def element(self, x: TElem, degree: int) -> Dict[int, Fraction]:
        return self.reduce(self.model.coordinates(x, degree), degree)

    def tag(self, i: int):
        """Support of a basis element: union of its letters' tags (d = 0 convolution)."""
        return self.base.combine_all(self.gen_tags[j] for j in self.model.basis[i].word)

    def tags(self) -> Dict[str, object]:
        return {self.model.labels[i]: self.tag(i) for i in self.keep}

    def labels(self) -> List[str]:
        return [self.model.labels[i] for i in self.keep]

    def complex(self) -> Complex:
        m = self.model
        space: Dict[int, List[str]] = {}
        for i in self.keep:
            space.setdefault(m.basis[i].degree, []).append(m.labels[i])
        dmap = {}
        for i in self.keep:
            deg = m.basis[i].degree
            img = self.element(self.d_tensor(m.expansions[i]), deg + 1)
            dmap[m.labels[i]] = {m.labels[k]: v for k, v in img.items()}
        return Complex.from_maps(space, dmap, certified=self.cutoff.window)

    def bracket_table(self) -> Dict[Tuple[str, str], Dict[str, Fraction]]:
        m = self.model
        br = {}
        for i in self.keep:
            bi = m.basis[i]
            for j in self.keep:
                bj = m.basis[j]
                deg = bi.degree + bj.degree
                if deg < self.lo or bi.length + bj.length > m.max_length:
                    continue
                x = t_bracket(m.expansions[i], m.expansions[j], m.degs)
                if not x:
                    continue
                img = self.element(x, deg)
                if img:
                    br[(m.labels[i], m.labels[j])] = {m.labels[k]: v for k, v in img.items()}
        return br

    def generator_element(self, y: str) -> Dict[str, Fraction]:
        """The (projected) generator w_y as a vector in the kept basis."""
        i = self.gen_index[y]
        deg = self.degs[i]
        img = self.element({(i,): Fraction(1)}, deg)
        return {self.model.labels[k]: v for k, v in img.items()}


def prim_lie(c: StrictComCoalgebra, cutoff: CutoffPolicy, with_bracket: bool = True,
             name: Optional[str] = None) -> StrictLieAlgebra:
    """Prim[-1](c) on the window of ``cutoff``; cohomology exact in degrees >= window.lo."""
    if c.base.kind not in ("vect", "finran"):
        raise HypothesisViolation("prim_lie is wired for vect and finran coalgebras")
    pm = PrimModel(c, cutoff)
    cx = pm.complex()
    carrier = BaseObject(c.base, cx, pm.tags())
    br = pm.bracket_table() if with_bracket else {}
    out = StrictLieAlgebra(carrier, br, name=name or "Prim(%s)" % c.name, cutoff=pm.policy, check=False)
    out.prim_model = pm
    return out


def unit_map(g: StrictLieAlgebra, chev, prim: StrictLieAlgebra) -> ComplexMap:
    """g -> Prim[-1](Chev g), x -> w_{sx}."""
    pm: PrimModel = prim.prim_model
    fmap = {}
    src = g.complex
    for n in src.degrees():
        for x in src.basis(n):
            y = "s" + x
            if n < pm.lo or y not in pm.gen_index:
                continue
            fmap[x] = pm.generator_element(y)
    return ComplexMap.from_maps(src, prim.complex, fmap)


def bracket_rank_on_cohomology(p: StrictLieAlgebra, window: Window) -> Dict[int, int]:
    """Degree n -> rank of the induced bracket H^a ⊗ H^b -> H^n, a + b = n, on the window."""
    from ..complexes import _boundaries, cohomology
    c = p.complex
    reps = {n: cohomology(c, n)[1] for n in range(window.lo, window.hi + 1)}
    out = {}
    for n in range(window.lo, window.hi + 1):
        if c.dim(n) == 0:
            continue
        images = []
        for a in reps:
            b = n - a
            if b < a or b not in reps:
                continue
            for i, u in enumerate(reps[a]):
                for j, v in enumerate(reps[b]):
                    if a == b and j < i:
                        continue
                    images.append(p.br(u, v))
        if not images:
            continue
        bnd = _boundaries(c, n)
        idx = c.index(n)
        base = len(bnd)
        for e in images:
            vec = {idx[x]: v for x, v in e.items() if v}
            if vec:
                bnd.insert(vec)
        if len(bnd) > base:
            out[n] = len(bnd) - base
    return out
