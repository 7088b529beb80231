"""Chevalley–Eilenberg coalgebras and their duals as exact finite complexes.

``chevalley(g)`` is Sym^{>0}(g[1]) with d = d_I + d_II and the unshuffle
comultiplication.  ``cochevalley(h)`` is Sym^{>0}(h[-1]) with the
derivation extending the cobracket, truncated to a degree ceiling (the
completed product over weights agrees with the sum in every degree once
the carrier sits in degrees >= 1).
"""

from __future__ import annotations

import warnings
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ..basecat import BaseObject
from ..complexes import Complex, ComplexMap, Window
from ..linalg import add_into
from .cutoff import CutoffInfeasible, CutoffPolicy
from .structures import HypothesisViolation, StrictCoLie, StrictComAlgebra, StrictComCoalgebra, StrictLieAlgebra
from .sym import enumerate_monomials, koszul_sort, mono_label, move_sign


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


class _Letters:
    """Shifted copy of a carrier basis: letter i has degree src_deg[i] - shift."""

    def __init__(self, carrier: BaseObject, shift: int, prefix: str):
        c = carrier.complex
        self.src: List[str] = []
        self.src_deg: List[int] = []
        for n in c.degrees():
            for x in c.basis(n):
                self.src.append(x)
                self.src_deg.append(n)
        self.index = {x: i for i, x in enumerate(self.src)}
        self.deg = [d - shift for d in self.src_deg]
        self.names = ["%s%s" % (prefix, x) for x in self.src]
        self.tags = [carrier.tags[x] for x in self.src]
        self.base = carrier.base

    def degf(self, i: int) -> int:
        return self.deg[i]

    def max_degree(self, w: int) -> Optional[int]:
        """Largest degree of a weight-w monomial, None if there are none."""
        odd = sorted((d for d in self.deg if d % 2), reverse=True)
        even = [d for d in self.deg if d % 2 == 0]
        best = None
        for k in range(0, min(w, len(odd)) + 1):
            rest = w - k
            if rest and not even:
                continue
            val = sum(odd[:k]) + (rest * max(even) if rest else 0)
            best = val if best is None else max(best, val)
        return best

    def min_degree(self, w: int) -> Optional[int]:
        odd = sorted(d for d in self.deg if d % 2)
        even = [d for d in self.deg if d % 2 == 0]
        best = None
        for k in range(0, min(w, len(odd)) + 1):
            rest = w - k
            if rest and not even:
                continue
            val = sum(odd[:k]) + (rest * min(even) if rest else 0)
            best = val if best is None else min(best, val)
        return best


def _weight_bound_below(letters: _Letters, floor: int, policy: CutoffPolicy) -> Tuple[int, str]:
    """Weight cap for a negatively graded Sym so that dropped weights lie below ``floor``."""
    if not letters.deg:
        return 0, "empty carrier"
    n_odd = sum(1 for d in letters.deg if d % 2)
    evens = [d for d in letters.deg if d % 2 == 0]
    if evens and max(evens) >= 0:
        if policy.forced and policy.max_weight:
            return policy.max_weight, "forced weight cap %d (even letters in degree >= 0)" % policy.max_weight
        raise CutoffInfeasible("even generators in degree %d: infinitely many weights meet the window"
                               % max(evens))
    w = 1
    while True:
        md = letters.max_degree(w)
        if md is None or (w >= n_odd and md < floor):
            break
        w += 1
    need = w - 1
    if policy.max_weight is not None and policy.max_weight < need:
        if not policy.forced:
            raise CutoffInfeasible("max_weight %d < %d needed for degrees >= %d"
                                   % (policy.max_weight, need, floor))
        return policy.max_weight, "forced weight cap %d" % policy.max_weight
    return need, "weight w summand lies in degrees <= %s; weights > %d fall below degree %d" % (
        ", ".join(str(letters.max_degree(k)) for k in range(1, min(need, 4) + 1)) + (", ..." if need > 4 else ""),
        need, floor)


def _weight_bound_above(letters: _Letters, ceiling: int, policy: CutoffPolicy) -> Tuple[int, str]:
    if not letters.deg:
        return 0, "empty carrier"
    n_odd = sum(1 for d in letters.deg if d % 2)
    evens = [d for d in letters.deg if d % 2 == 0]
    if evens and min(evens) <= 0:
        if policy.forced and policy.max_weight:
            return policy.max_weight, "forced weight cap %d (even letters in degree <= 0)" % policy.max_weight
        raise CutoffInfeasible("even generators in degree %d: infinitely many weights meet the window"
                               % min(evens))
    w = 1
    while True:
        md = letters.min_degree(w)
        if md is None or (w >= n_odd and md > ceiling):
            break
        w += 1
    need = w - 1
    if policy.max_weight is not None and policy.max_weight < need:
        if not policy.forced:
            raise CutoffInfeasible("max_weight %d < %d needed for degrees <= %d"
                                   % (policy.max_weight, need, ceiling))
        return policy.max_weight, "forced weight cap %d" % policy.max_weight
    return need, "weight w summand lies in degrees >= %d*w; weights > %d exceed degree %d" % (
        max(1, min(letters.deg)), need, ceiling)


class SymModel:
    """A finite set of monomials in shifted letters, with labels and tags."""

    def __init__(self, letters: _Letters, monos: List[Tuple[int, ...]]):
        self.letters = letters
        self.monos = monos
        self.label = {m: mono_label(m, lambda i: letters.names[i]) for m in monos}
        self.mono_of = {l: m for m, l in self.label.items()}
        if len(self.mono_of) != len(monos):
            raise ValueError("monomial labels collide")
        self.degree = {m: sum(letters.deg[i] for i in m) for m in monos}

    def space(self) -> Dict[int, List[str]]:
        out: Dict[int, List[str]] = {}
        for m in sorted(self.monos, key=lambda m: (len(m), m)):
            out.setdefault(self.degree[m], []).append(self.label[m])
        return out

    def tags(self) -> Dict[str, object]:
        L = self.letters
        return {self.label[m]: L.base.combine_all(L.tags[i] for i in m) for m in self.monos}

    def weights(self) -> Dict[str, int]:
        return {self.label[m]: len(m) for m in self.monos}

    def to_labels(self, e: Dict[Tuple[int, ...], Fraction]) -> Dict[str, Fraction]:
        return {self.label[m]: v for m, v in e.items() if m in self.label}


def _derivation_linear(mono, letter_image, degf) -> Dict[Tuple[int, ...], Fraction]:
    """Apply the derivation extending ``letter_image`` (letter -> {mono: coeff}, odd degree)."""
    out: Dict[Tuple[int, ...], Fraction] = {}
    prefix = 0
    for i, x in enumerate(mono):
        img = letter_image(x)
        if img:
            s0 = _sign(prefix)
            rest_before = mono[:i]
            rest_after = mono[i + 1:]
            for m, v in img.items():
                s, mm = koszul_sort(rest_before + m + rest_after, degf)
                if s:
                    add_into(out, {mm: v * s * s0})
        prefix += degf(x)
    return out


def _build_complex(model: SymModel, dfun, certified: Window, check: bool = True) -> Complex:
    dmap = {}
    for m in model.monos:
        dmap[model.label[m]] = model.to_labels(dfun(m))
    return Complex.from_maps(model.space(), dmap, certified=certified, check=check)


def _warn_connectivity(g, upper: int, what: str):
    bad = [n for n in g.complex.degrees() if n > upper]
    if bad:
        warnings.warn("%s: carrier has classes in degree %d, outside the recommended range" % (what, max(bad)),
                      stacklevel=3)


def chevalley(g: StrictLieAlgebra, cutoff: CutoffPolicy, name: Optional[str] = None) -> StrictComCoalgebra:
    """Reduced Chevalley–Eilenberg coalgebra Sym^{>0}(g[1]), exact in degrees >= cutoff.window.lo."""
    if g.base.kind == "vect":
        if not cutoff.forced:
            _warn_connectivity(g, -1, "chevalley")
    L = _Letters(g.carrier, 1, "s")
    floor = cutoff.floor
    W, why = _weight_bound_below(L, floor, cutoff)
    monos = enumerate_monomials(list(range(len(L.deg))), L.degf,
                                accept=lambda w, d: d >= floor,
                                prune=lambda w, d: False if cutoff.forced else (d < floor and _all_neg(L)),
                                max_weight=W)
    model = SymModel(L, monos)
    deg = g.complex.labels()

    def lin(i):
        # d(sx) = -s(dx)
        out = {}
        for y, v in g.complex.d_label(L.src[i], L.src_deg[i]).items():
            out[(L.index[y],)] = -v
        return out

    def ell(i, j):
        # ℓ(sx, sy) = (-1)^{|x|} s[x, y]
        img = g.bracket.get((L.src[i], L.src[j]))
        if not img:
            return {}
        s = _sign(L.src_deg[i])
        return {L.index[z]: v * s for z, v in img.items()}

    def dfun(m):
        out = _derivation_linear(m, lin, L.degf)
        n = len(m)
        for a in range(n):
            for b in range(a + 1, n):
                img = ell(m[a], m[b])
                if not img:
                    continue
                sg = move_sign(m, (a, b), L.degf)
                rest = m[:a] + m[a + 1:b] + m[b + 1:]
                for z, v in img.items():
                    s, mm = koszul_sort((z,) + rest, L.degf)
                    if s:
                        add_into(out, {mm: v * s * sg})
        return out

    policy = cutoff.with_note(why, max_weight=W)
    cx = _build_complex(model, dfun, certified=cutoff.window)
    carrier = BaseObject(g.base, cx, model.tags())
    from .sym import coproduct
    delta = {}
    for m in model.monos:
        img = {}
        for (a, b), v in coproduct(m, L.degf).items():
            if a in model.label and b in model.label:
                img[(model.label[a], model.label[b])] = v
        if img:
            delta[model.label[m]] = img
    out = StrictComCoalgebra(carrier, delta, name=name or "Chev(%s)" % g.name, cutoff=policy, check=False)
    out.model = model
    out.weight = model.weights()
    return out


def _all_neg(L: _Letters) -> bool:
    return all(d < 0 for d in L.deg)


def _check_coconnective(h, lower: int = 1):
    for t in h.carrier.support():
        s = h.carrier.stalk(t)
        for n in s.degrees():
            if n < lower:
                raise HypothesisViolation("carrier has classes in degree %d (needs >= %d)" % (n, lower))


def cochevalley(h: StrictCoLie, cutoff: CutoffPolicy, name: Optional[str] = None,
                max_weight: Optional[int] = None) -> StrictComAlgebra:
    """Sym^{>0}(h[-1]) with cobracket differential, exact in degrees <= cutoff.window.hi.

    ``max_weight`` truncates to weights <= max_weight (a quotient, since the
    differential raises weight); this is the cofiltration stage.
    """
    if not cutoff.forced:
        _check_coconnective(h)
    L = _Letters(h.carrier, -1, "u")
    ceiling = cutoff.ceiling
    W, why = _weight_bound_above(L, ceiling, cutoff)
    if max_weight is not None:
        W = min(W, max_weight)
        why += "; stage truncation at weight %d" % max_weight
    monos = enumerate_monomials(list(range(len(L.deg))), L.degf,
                                accept=lambda w, d: d <= ceiling,
                                prune=lambda w, d: False if cutoff.forced else (d > ceiling and all(x > 0 for x in L.deg)),
                                max_weight=W)
    model = SymModel(L, monos)

    def lin(i):
        # d(ux) = -u(dx) + Σ (-1)^{|x'|} ux'·ux''
        out: Dict[Tuple[int, ...], Fraction] = {}
        for y, v in h.complex.d_label(L.src[i], L.src_deg[i]).items():
            add_into(out, {(L.index[y],): -v})
        for (a, b), v in h.cobracket.get(L.src[i], {}).items():
            ia, ib = L.index[a], L.index[b]
            s, mm = koszul_sort((ia, ib), L.degf)
            if s:
                add_into(out, {mm: v * s * _sign(L.src_deg[ia])})
        return out

    def dfun(m):
        out = _derivation_linear(m, lin, L.degf)
        return {k: v for k, v in out.items() if len(k) <= W}

    policy = cutoff.with_note(why, max_weight=W)
    cx = _build_complex(model, dfun, certified=cutoff.window)
    carrier = BaseObject(h.base, cx, model.tags())
    mult = {}
    for a in model.monos:
        for b in model.monos:
            s, mm = koszul_sort(a + b, L.degf)
            if s and mm in model.label:
                mult[(model.label[a], model.label[b])] = {model.label[mm]: Fraction(s)}
    out = StrictComAlgebra(carrier, mult, name=name or "coChev(%s)" % h.name, cutoff=policy, check=False)
    out.model = model
    out.weight = model.weights()
    return out


def cochev_stage(h: StrictCoLie, i: int, cutoff: CutoffPolicy) -> StrictComAlgebra:
    """Quotient of cochevalley onto weights <= i."""
    if i < 1:
        raise ValueError("stage index must be positive")
    return cochevalley(h, cutoff, name="coChev^%d(%s)" % (i, h.name), max_weight=i)


def stage_projection(big: StrictComAlgebra, small: StrictComAlgebra) -> ComplexMap:
    """The tower map stage i -> stage i-1 (or limit -> stage): drop the labels missing downstairs."""
    keep = set(small.complex.labels())
    fmap = {x: {x: 1} for x in big.complex.labels() if x in keep}
    return ComplexMap.from_maps(big.complex, small.complex, fmap)
