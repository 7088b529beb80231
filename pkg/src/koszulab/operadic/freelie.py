"""Free graded Lie algebras inside the tensor algebra.

Elements of the tensor algebra are dicts ``word -> Fraction`` with words
tuples of generator indices.  The basis of the free Lie superalgebra is
given by the standard bracketings of Lyndon words together with the
squares ``[w, w]`` of odd Lyndon words.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ..basecat import VECT, BaseObject
from ..complexes import Complex
from ..linalg import Echelon, add_into
from .cutoff import CutoffPolicy
from .structures import StrictLieAlgebra

Word = Tuple[int, ...]
TElem = Dict[Word, Fraction]


def word_degree(w: Word, degs: Sequence[int]) -> int:
    return sum(degs[i] for i in w)


def t_mul(a: TElem, b: TElem) -> TElem:
    out: TElem = {}
    for u, x in a.items():
        for v, y in b.items():
            k = u + v
            nv = out.get(k, 0) + x * y
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
    return out


def t_bracket(a: TElem, b: TElem, degs: Sequence[int]) -> TElem:
    """Graded commutator ab - (-1)^{|a||b|} ba on homogeneous elements."""
    if not a or not b:
        return {}
    da = word_degree(next(iter(a)), degs)
    db = word_degree(next(iter(b)), degs)
    out = t_mul(a, b)
    add_into(out, t_mul(b, a), -1 if (da * db) % 2 == 0 else 1)
    return out


def is_lyndon(w: Word) -> bool:
    n = len(w)
    return all(w < w[i:] for i in range(1, n))


def lyndon_words(n_letters: int, length: int) -> List[Word]:
    """Duval's algorithm: Lyndon words of exactly the given length."""
    out = []
    if n_letters == 0 or length == 0:
        return out
    w = [-1]
    while w:
        w[-1] += 1
        m = len(w)
        if m == length:
            out.append(tuple(w))
        while len(w) < length:
            w.append(w[len(w) - m])
        while w and w[-1] == n_letters - 1:
            w.pop()
    return out


def standard_factorization(w: Word) -> Tuple[Word, Word]:
    """w = uv with v the longest proper Lyndon suffix."""
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise ValueError("word of length 1 has no factorization")


@lru_cache(maxsize=None)
def _lyndon_expansion(w: Word, degs: Tuple[int, ...]) -> Tuple[Tuple[Word, Fraction], ...]:
    if len(w) == 1:
        return ((w, Fraction(1)),)
    u, v = standard_factorization(w)
    e = t_bracket(dict(_lyndon_expansion(u, degs)), dict(_lyndon_expansion(v, degs)), degs)
    return tuple(sorted(e.items()))


def lyndon_expansion(w: Word, degs: Sequence[int]) -> TElem:
    return dict(_lyndon_expansion(tuple(w), tuple(degs)))


class LieBasisElement:
    __slots__ = ("word", "square", "degree", "length")

    def __init__(self, word: Word, square: bool, degree: int):
        self.word = word
        self.square = square
        self.degree = degree
        self.length = len(word) * (2 if square else 1)

    def expansion(self, degs: Sequence[int]) -> TElem:
        e = lyndon_expansion(self.word, degs)
        if self.square:
            return t_bracket(e, e, degs)
        return e

    def label(self, names: Sequence[str]) -> str:
        inner = _bracket_label(self.word, names)
        if self.square:
            return "[%s,%s]" % (inner, inner)
        return inner

    def __repr__(self):
        return "LieBasisElement(%r, square=%r)" % (self.word, self.square)


def _bracket_label(w: Word, names: Sequence[str]) -> str:
    if len(w) == 1:
        return names[w[0]]
    u, v = standard_factorization(w)
    return "[%s,%s]" % (_bracket_label(u, names), _bracket_label(v, names))


def lie_basis(degs: Sequence[int], max_length: int,
              keep: Optional[Callable[[int, int], bool]] = None) -> List[LieBasisElement]:
    """Basis of the free Lie superalgebra up to the given word length.

    ``keep(length, degree)`` filters elements (e.g. by a degree floor).  When
    every generator has negative degree, words are only extended while some
    extension can still be kept.
    """
    n = len(degs)
    out = []
    all_neg = all(d < 0 for d in degs)
    for w in _words(degs, max_length, keep if all_neg else None):
        if not is_lyndon(w):
            continue
        d = word_degree(w, degs)
        if keep is None or keep(len(w), d):
            out.append(LieBasisElement(w, False, d))
        if d % 2 and 2 * len(w) <= max_length and (keep is None or keep(2 * len(w), 2 * d)):
            out.append(LieBasisElement(w, True, 2 * d))
    out.sort(key=lambda b: (b.length, b.word, b.square))
    return out


def _words(degs: Sequence[int], max_length: int, keep) -> List[Word]:
    """Words up to max_length; with ``keep`` given (negative degrees), prune by degree."""
    out: List[Word] = []
    n = len(degs)

    def rec(w: List[int], d: int):
        for i in range(n):
            nd = d + degs[i]
            if keep is not None and not keep(len(w) + 1, nd):
                continue
            w.append(i)
            out.append(tuple(w))
            if len(w) < max_length:
                rec(w, nd)
            w.pop()

    rec([], 0)
    return out


def free_lie_dimensions(degs: Sequence[int], max_length: int) -> Dict[Tuple[int, int], int]:
    """(length, degree) -> dimension, read off the Lyndon basis."""
    out: Dict[Tuple[int, int], int] = {}
    for b in lie_basis(degs, max_length):
        out[(b.length, b.degree)] = out.get((b.length, b.degree), 0) + 1
    return out


def witt_dimensions(degs: Sequence[int], max_length: int) -> Dict[Tuple[int, int], int]:
    """Independent oracle: solve PBW, T(V) ≅ U(L) ≅ Sym(L) as bigraded spaces.

    The symmetric algebra is graded-commutative: even basis elements
    contribute 1/(1 - x), odd ones (1 + x).
    """
    from collections import Counter
    # words of each (length, degree)
    words: Dict[Tuple[int, int], int] = Counter({(0, 0): 1})
    for length in range(1, max_length + 1):
        for (l, d), c in list(words.items()):
            if l == length - 1:
                for g in degs:
                    words[(length, d + g)] += c
    dims: Dict[Tuple[int, int], int] = {}
    for length in range(1, max_length + 1):
        # series of Sym of the part of L of length < length, truncated
        sym = _sym_series(dims, max_length)
        for deg in sorted({d for (l, d) in words if l == length}):
            # coefficient of Sym(L_{<length}) at (length, deg) plus dim L_(length, deg)
            dims[(length, deg)] = words[(length, deg)] - sym.get((length, deg), 0)
    return {k: v for k, v in dims.items() if v}


def _sym_series(dims: Dict[Tuple[int, int], int], max_length: int) -> Dict[Tuple[int, int], int]:
    series: Dict[Tuple[int, int], int] = {(0, 0): 1}
    for (l, d), mult in dims.items():
        for _ in range(mult):
            new: Dict[Tuple[int, int], int] = {}
            for (a, b), c in series.items():
                k = 0
                while a + k * l <= max_length:
                    key = (a + k * l, b + k * d)
                    new[key] = new.get(key, 0) + c
                    k += 1
                    if d % 2 and k > 1:
                        break
            series = new
    return series


def free_lie(v: BaseObject, max_weight: int, name: str = "") -> StrictLieAlgebra:
    """Free graded Lie algebra on the basis of v (differential ignored), weights <= max_weight.

    Brackets of total weight above the cutoff are set to zero, i.e. the
    result is the quotient by the ideal of long brackets.
    """
    if max_weight < 1:
        raise ValueError("max_weight must be >= 1")
    if v.base.kind != "vect":
        raise ValueError("free_lie is defined over vect")
    names = []
    degs = []
    for n in v.complex.degrees():
        for x in v.complex.basis(n):
            names.append(x)
            degs.append(n)
    model = TensorLieModel(degs, names, max_weight)
    return model.lie_algebra(name=name or "Free(%s)" % ",".join(names))


class TensorLieModel:
    """A finite piece of a free Lie algebra with coordinates in its basis."""

    def __init__(self, degs: Sequence[int], names: Sequence[str], max_length: int,
                 keep: Optional[Callable[[int, int], bool]] = None):
        self.degs = tuple(degs)
        self.names = list(names)
        self.max_length = max_length
        self.basis = lie_basis(self.degs, max_length, keep)
        self.labels = [b.label(self.names) for b in self.basis]
        self.expansions = [b.expansion(self.degs) for b in self.basis]
        self._ech: Dict[int, Tuple[Echelon, List[int]]] = {}
        by_deg: Dict[int, List[int]] = {}
        for i, b in enumerate(self.basis):
            by_deg.setdefault(b.degree, []).append(i)
        self.by_degree = by_deg

    def _echelon(self, degree: int) -> Tuple[Echelon, List[int]]:
        if degree not in self._ech:
            e = Echelon(track=True)
            idx = self.by_degree.get(degree, [])
            for i in idx:
                if not e.insert(self.expansions[i]):
                    raise AssertionError("Lie basis is not independent")
            self._ech[degree] = (e, idx)
        return self._ech[degree]

    def coordinates(self, x: TElem, degree: int) -> Dict[int, Fraction]:
        """Coordinates of a Lie element (words longer than the cutoff are dropped)."""
        x = {w: c for w, c in x.items() if len(w) <= self.max_length}
        if not x:
            return {}
        e, idx = self._echelon(degree)
        coords = e.coordinates(x)
        if coords is None:
            raise ValueError("element is not in the span of the Lie basis in degree %d" % degree)
        return {idx[k]: v for k, v in coords.items()}

    def lie_algebra(self, name: str = "") -> StrictLieAlgebra:
        space: Dict[int, List[str]] = {}
        for lab, b in zip(self.labels, self.basis):
            space.setdefault(b.degree, []).append(lab)
        carrier = BaseObject.from_complex(Complex(space))
        br = {}
        for i, bi in enumerate(self.basis):
            for j, bj in enumerate(self.basis):
                if bi.length + bj.length > self.max_length:
                    continue
                x = t_bracket(self.expansions[i], self.expansions[j], self.degs)
                if not x:
                    continue
                coords = self.coordinates(x, bi.degree + bj.degree)
                if coords:
                    br[(self.labels[i], self.labels[j])] = {self.labels[k]: v for k, v in coords.items()}
        return StrictLieAlgebra(carrier, br, name=name, check=False)
