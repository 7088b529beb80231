"""The cosimplicial cobar tower of a conilpotent cocommutative coalgebra.

Level n of the cosimplicial object is T^n(c) with T = Sym^{>0} the cofree
conilpotent cocommutative comonad.  A level-n basis element is a nested
monomial: level 0 elements are leaf indices, level j elements are sorted
tuples of level j-1 elements.

Coface maps X^n -> X^{n+1}:
  d^0      wrap in a length-one monomial (coaugmentation at the root);
  d^i      comultiplication T -> TT at depth i-1, for 1 <= i <= n;
  d^{n+1}  the coaction c -> Tc at the leaves.
Codegeneracies s^j: X^{n+1} -> X^n apply the counit T -> id at depth j.

coBar^n is the totalization of the conormalized levels 0..n, i.e.
⊕_{k<=n} N^k[-k] with D = d_int + (-1)^p Σ (-1)^i d^i on internal degree p.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from ..complexes import Complex, ComplexMap, Window
from ..linalg import Echelon, add_into, nullspace
from .cutoff import CutoffInfeasible, CutoffPolicy
from .structures import HypothesisViolation, StrictComCoalgebra
from .sym import enumerate_monomials, koszul_sort

Elem = Dict[object, Fraction]


def stabilization_bound(window_lo: int) -> int:
    """Smallest m with 2^{m+1} - m - 1 >= |window_lo|."""
    target = abs(window_lo)
    m = 0
    while 2 ** (m + 1) - m - 1 < target:
        m += 1
    return m


def fiber_degree_bound(n: int) -> int:
    """Top degree of the fiber of coBar^n -> coBar^{n-1} for carriers in degrees <= -2.

    A conormalized level-n element needs a branching at every level, hence
    at least n + 1 leaves, so it sits in internal degree <= -2(n + 1) and
    total degree <= -n - 2.
    """
    return -n - 2


def certified_floor(stage: int) -> int:
    """Lowest degree where coBar^stage has the cohomology of the full limit (carrier <= -2)."""
    return -stage - 2


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


class CobarTower:
    """Builds the conormalized cosimplicial levels of c down to a total-degree floor."""

    def __init__(self, c: StrictComCoalgebra, floor: int, max_level: int):
        self.c = c
        cx = c.complex
        self.leaves: List[str] = []
        self.leaf_deg: List[int] = []
        for n in cx.degrees():
            for y in cx.basis(n):
                self.leaves.append(y)
                self.leaf_deg.append(n)
        if any(d > -2 for d in self.leaf_deg):
            raise HypothesisViolation("cobar tower needs a carrier in degrees <= -2 (found %d)" % max(self.leaf_deg))
        if c.cutoff is not None and c.cutoff.floor > floor - max_level:
            raise CutoffInfeasible("coalgebra is built down to degree %d, the tower needs %d"
                                   % (c.cutoff.floor, floor - max_level))
        self.leaf_index = {y: i for i, y in enumerate(self.leaves)}
        self.floor = floor
        self.max_level = max_level
        self._deg: Dict[object, int] = {}
        self.levels: List[List[object]] = []
        # level k keeps internal degree >= floor - k
        base = [i for i in range(len(self.leaves)) if self.leaf_deg[i] >= floor - max_level - 1]
        self.levels.append(base)
        for k in range(1, max_level + 2):
            prev = self.levels[-1]
            fl = floor - k
            monos = enumerate_monomials(prev, self.deg, accept=lambda w, d, fl=fl: d >= fl,
                                        prune=lambda w, d, fl=fl: d < fl)
            self.levels.append(monos)
        self._coaction = {}
        self._mu = {}
        self._norm: Dict[Tuple[int, int], List[Elem]] = {}

    # -- degrees and products
    def deg(self, e) -> int:
        if isinstance(e, int):
            return self.leaf_deg[e]
        d = self._deg.get(e)
        if d is None:
            d = sum(self.deg(x) for x in e)
            self._deg[e] = d
        return d

    def mul(self, factors: Sequence[Elem]) -> Elem:
        out: Elem = {(): Fraction(1)}
        for f in factors:
            nxt: Elem = {}
            for m, a in out.items():
                for e, b in f.items():
                    s, mm = koszul_sort(m + (e,), self.deg)
                    if s:
                        add_into(nxt, {mm: a * b * s})
            out = nxt
            if not out:
                break
        return out

    # -- structure maps on single elements
    def coaction(self, i: int) -> Elem:
        """c -> Tc: Σ_k S^{-1} Δ^{(k-1)}(y)."""
        if i in self._coaction:
            return self._coaction[i]
        delta = self.c.delta
        out: Elem = {(i,): Fraction(1)}
        terms = {(i,): Fraction(1)}
        while terms:
            nxt = {}
            for word, v in terms.items():
                for (a, b), w in delta.get(self.leaves[word[0]], {}).items():
                    ia, ib = self.leaf_index.get(a), self.leaf_index.get(b)
                    if ia is None or ib is None:
                        continue
                    k = (ia, ib) + word[1:]
                    nxt[k] = nxt.get(k, 0) + v * w
            terms = {k: v for k, v in nxt.items() if v}
            add_into(out, _desymmetrize(terms, self.deg))
        self._coaction[i] = out
        return out

    def mu(self, m: Tuple) -> Elem:
        """TV -> TTV on a monomial: Σ_k S^{-1} of the k-fold unshuffle coproduct."""
        if m in self._mu:
            return self._mu[m]
        n = len(m)
        out: Elem = {}
        for k in range(1, n + 1):
            terms: Dict[Tuple, Fraction] = {}
            for assign in product(range(k), repeat=n):
                if len(set(assign)) != k:
                    continue
                blocks = tuple(tuple(m[p] for p in range(n) if assign[p] == b) for b in range(k))
                if any(blocks[b] > blocks[b + 1] for b in range(k - 1)):
                    continue
                order = [p for b in range(k) for p in range(n) if assign[p] == b]
                s = _perm_sign(m, order, self.deg)
                terms[blocks] = terms.get(blocks, 0) + s
            add_into(out, _desymmetrize({b: Fraction(v) for b, v in terms.items() if v}, self.deg))
        self._mu[m] = out
        return out

    def apply_at_depth(self, e, depth: int, f) -> Elem:
        if depth == 0:
            return f(e)
        return self.mul([self.apply_at_depth(x, depth - 1, f) for x in e])

    def coface(self, e, level: int, i: int) -> Elem:
        if i == 0:
            return {(e,): Fraction(1)}
        if i <= level:
            return self.apply_at_depth(e, i - 1, self.mu)
        return self.apply_at_depth(e, level, self.coaction)

    def codegeneracy(self, e, j: int) -> Elem:
        def eps(m):
            return {m[0]: Fraction(1)} if len(m) == 1 else {}
        return self.apply_at_depth(e, j, eps)

    def d_internal(self, e, level: int) -> Elem:
        if level == 0:
            cx = self.c.complex
            out = {}
            for z, v in cx.d_label(self.leaves[e], self.leaf_deg[e]).items():
                j = self.leaf_index.get(z)
                if j is not None:
                    out[j] = v
            return out
        out: Elem = {}
        prefix = 0
        for pos, x in enumerate(e):
            img = self.d_internal(x, level - 1)
            if img:
                s0 = _sign(prefix)
                for y, v in img.items():
                    s, mm = koszul_sort(e[:pos] + (y,) + e[pos + 1:], self.deg)
                    if s:
                        add_into(out, {mm: v * s * s0})
            prefix += self.deg(x)
        return out

    def coboundary(self, e, level: int) -> Elem:
        out: Elem = {}
        for i in range(level + 2):
            add_into(out, self.coface(e, level, i), _sign(i))
        return out

    # -- conormalization
    def level_basis(self, k: int, p: int) -> List[object]:
        return [e for e in self.levels[k] if self.deg(e) == p]

    def normalized(self, k: int, p: int) -> List[Elem]:
        key = (k, p)
        if key in self._norm:
            return self._norm[key]
        basis = self.level_basis(k, p)
        if k == 0:
            out = [{e: Fraction(1)} for e in basis]
        else:
            cols = []
            for e in basis:
                col = {}
                for j in range(k):
                    for x, v in self.codegeneracy(e, j).items():
                        col[(j, x)] = v
                cols.append(col)
            out = [{basis[i]: v for i, v in vec.items()} for vec in nullspace(cols)]
        self._norm[key] = out
        return out

    def check_cosimplicial(self, level: int) -> List[str]:
        """Cosimplicial identities on the basis of a level (used by tests)."""
        bad = []

        def lin(f, x: Elem) -> Elem:
            out: Elem = {}
            for e, v in x.items():
                add_into(out, f(e), v)
            return out

        for e in self.levels[level]:
            one = {e: Fraction(1)}
            for i in range(level + 2):
                for j in range(i + 1, level + 3):
                    lhs = lin(lambda z: self.coface(z, level + 1, j), self.coface(e, level, i))
                    rhs = lin(lambda z: self.coface(z, level + 1, i), self.coface(e, level, j - 1))
                    if lhs != rhs:
                        bad.append("d^%d d^%d != d^%d d^%d on %r" % (j, i, i, j - 1, e))
            for i in range(level + 2):
                for j in range(level + 1):
                    got = lin(lambda z: self.codegeneracy(z, j), self.coface(e, level, i))
                    if i in (j, j + 1):
                        want = one
                    elif i < j:
                        want = lin(lambda z: self.coface(z, level - 1, i),
                                   self.codegeneracy(e, j - 1)) if level >= 1 else None
                    else:
                        want = lin(lambda z: self.coface(z, level - 1, i - 1),
                                   self.codegeneracy(e, j)) if level >= 1 else None
                    if want is not None and got != want:
                        bad.append("s^%d d^%d wrong on %r" % (j, i, e))
        return bad


def _perm_sign(word, order, deg) -> int:
    s = 0
    for i in range(len(order)):
        if deg(word[order[i]]) % 2:
            for j in range(i + 1, len(order)):
                if order[j] < order[i] and deg(word[order[j]]) % 2:
                    s += 1
    return -1 if s % 2 else 1


def _desymmetrize(terms: Dict[Tuple, Fraction], deg) -> Elem:
    """Symmetric tensor -> monomial: keep sorted tuples, divide by multiplicity factorials."""
    out: Elem = {}
    for t, v in terms.items():
        if any(t[i] > t[i + 1] for i in range(len(t) - 1)):
            continue
        mult = 1
        run = 1
        for i in range(1, len(t) + 1):
            if i < len(t) and t[i] == t[i - 1]:
                run += 1
            else:
                mult *= factorial(run)
                run = 1
        s, mm = koszul_sort(t, deg)
        if s:
            add_into(out, {mm: v * s / mult})
    return out


class CobarStage:
    """coBar^n(c) on total degrees >= floor, with the projection to coBar^{n-1}."""

    def __init__(self, tower: CobarTower, n: int):
        self.tower = tower
        self.n = n
        floor = tower.floor
        space: Dict[int, List[str]] = {}
        self.vec: Dict[str, Tuple[int, int, int]] = {}
        names: Dict[Tuple[int, int, int], str] = {}
        ech: Dict[Tuple[int, int], Tuple[Echelon, int]] = {}
        for k in range(n + 1):
            for p in sorted({tower.deg(e) for e in tower.levels[k]}):
                if p + k < floor:
                    continue
                vecs = tower.normalized(k, p)
                for i in range(len(vecs)):
                    lab = "N%d|%d|%d" % (k, p, i)
                    names[(k, p, i)] = lab
                    self.vec[lab] = (k, p, i)
                    space.setdefault(p + k, []).append(lab)
        self._ech = {}

        def coords(k, p, x: Elem):
            key = (k, p)
            if key not in self._ech:
                e = Echelon(track=True)
                for v in tower.normalized(k, p):
                    e.insert(v)
                self._ech[key] = e
            got = self._ech[key].coordinates(x)
            if got is None:
                raise AssertionError("image left the conormalized subspace at level %d" % k)
            return got

        dmap: Dict[str, Dict[str, Fraction]] = {}
        for lab, (k, p, i) in self.vec.items():
            x = tower.normalized(k, p)[i]
            img: Dict[str, Fraction] = {}
            dint: Elem = {}
            for e, v in x.items():
                add_into(dint, tower.d_internal(e, k), v)
            if dint:
                for j, v in coords(k, p + 1, dint).items():
                    img[names[(k, p + 1, j)]] = v
            if k < n:
                cob: Elem = {}
                for e, v in x.items():
                    add_into(cob, tower.coboundary(e, k), v)
                if cob:
                    s = _sign(p)
                    for j, v in coords(k + 1, p, cob).items():
                        img[names[(k + 1, p, j)]] = v * s
            dmap[lab] = img
        self.complex = Complex.from_maps(space, dmap, certified=Window(floor + 1, 0))


def cobar_tower(c: StrictComCoalgebra, max_stage: int, floor: int) -> List[Complex]:
    """coBar^0 .. coBar^max_stage, each on total degrees >= floor (exact above floor)."""
    tower = CobarTower(c, floor, max_stage)
    return [CobarStage(tower, n).complex for n in range(max_stage + 1)]


def cobar_stage(c: StrictComCoalgebra, n: int, cutoff: CutoffPolicy) -> Tuple[Complex, Optional[ComplexMap]]:
    """coBar^n(c) exact on cutoff.window, with the tower map to coBar^{n-1} (None for n = 0)."""
    floor = cutoff.floor
    tower = CobarTower(c, floor, n)
    stage = CobarStage(tower, n).complex.with_certified(cutoff.window)
    if n == 0:
        return stage, None
    prev = CobarStage(tower, n - 1).complex.with_certified(cutoff.window)
    return stage, tower_map(stage, prev)


def tower_map(big: Complex, small: Complex) -> ComplexMap:
    keep = set(small.labels())
    return ComplexMap.from_maps(big, small, {x: {x: 1} for x in big.labels() if x in keep})
