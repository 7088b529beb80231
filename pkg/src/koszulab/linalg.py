"""Exact sparse linear algebra over the rationals.

Vectors are dicts ``key -> Fraction`` with no stored zeros.  Keys are any
hashable, orderable values (column indices, basis labels, words).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Optional, Tuple

Vector = Dict[Hashable, Fraction]


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


def fstr(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def add_into(target: Vector, source: Vector, scale=1) -> Vector:
    """target += scale * source, in place; zeros are dropped."""
    if not scale:
        return target
    for k, v in source.items():
        nv = target.get(k, 0) + scale * v
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)
    return target


def scaled(v: Vector, scale) -> Vector:
    if not scale:
        return {}
    return {k: c * scale for k, c in v.items()}


class Echelon:
    """Incrementally maintained row-echelon basis of a subspace.

    Every stored row remembers how it was built from the vectors inserted
    so far, so membership queries can return coordinates with respect to
    the inserted (independent) vectors.
    """

    def __init__(self, track: bool = False):
        self.track = track
        self.rows: Dict[Hashable, Vector] = {}       # pivot -> row (pivot coeff 1)
        self.combo: Dict[Hashable, Vector] = {}      # pivot -> coords in inserted basis
        self.order: List[Hashable] = []              # pivots in insertion order
        self.n_inserted = 0

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: Vector) -> Tuple[Vector, Vector]:
        """Return (remainder, combination) with v = remainder + sum combo[p]*rows[p]."""
        r = dict(v)
        used: Vector = {}
        # stored rows are fully reduced, so one pass over the pivots of v suffices
        for k in [k for k in v if k in self.rows]:
            c = r.get(k)
            if not c:
                continue
            add_into(r, self.rows[k], -c)
            used[k] = c
        return r, used

    def insert(self, v: Vector) -> bool:
        """Add v to the span; returns False when v was already dependent."""
        r, used = self.reduce(v)
        if not r:
            return False
        pivot = min(r)
        c = r[pivot]
        row = {k: x / c for k, x in r.items()}
        new_combo = None
        if self.track:
            new_combo = {self.n_inserted: Fraction(1) / c}
            for p, u in used.items():
                add_into(new_combo, self.combo[p], -u / c)
        for p, other in self.rows.items():
            f = other.get(pivot)
            if f:
                add_into(other, row, -f)
                if self.track:
                    add_into(self.combo[p], new_combo, -f)
        if self.track:
            self.combo[pivot] = new_combo
        self.rows[pivot] = row
        self.order.append(pivot)
        self.n_inserted += 1
        return True

    def coordinates(self, v: Vector) -> Optional[Vector]:
        """Coordinates of v in terms of the inserted vectors, or None if outside the span."""
        r, used = self.reduce(v)
        if r:
            return None
        out: Vector = {}
        for p, u in used.items():
            add_into(out, self.combo[p], u)
        return out

    def contains(self, v: Vector) -> bool:
        r, _ = self.reduce(v)
        return not r


def rank_of_vectors(vectors: Iterable[Vector]) -> int:
    e = Echelon()
    for v in vectors:
        e.insert(v)
    return len(e)


def independent_subset(vectors: List[Vector]) -> List[int]:
    """Indices of a maximal independent subset, greedily in order."""
    e = Echelon()
    keep = []
    for i, v in enumerate(vectors):
        if e.insert(v):
            keep.append(i)
    return keep


def nullspace(columns: List[Vector]) -> List[Vector]:
    """Basis of {x : sum x_j columns[j] = 0}, each returned as a dict j -> coeff."""
    e = Echelon(track=True)
    kernel = []
    inserted_to_col = []
    for j, col in enumerate(columns):
        r, used = e.reduce(col)
        if r:
            inserted_to_col.append(j)
            e.insert(col)
            continue
        # col = sum used[p] rows[p] = sum coeffs * inserted columns
        vec: Vector = {j: Fraction(1)}
        for p, u in used.items():
            for idx, c in e.combo[p].items():
                jj = inserted_to_col[idx]
                nv = vec.get(jj, 0) - u * c
                if nv:
                    vec[jj] = nv
                else:
                    vec.pop(jj, None)
        kernel.append(vec)
    return kernel
