"""Graded symmetric algebra on a labeled basis, with Koszul signs.

A monomial is a tuple of basis keys sorted by the ambient order; an odd key
appears at most once.  ``Elem`` is a dict monomial -> Fraction.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import factorial
from typing import Callable, Dict, Hashable, Iterable, Iterator, List, Optional, Sequence, Tuple

from ..basecat import BaseObject, BaseCategory
from ..complexes import Complex
from ..linalg import add_into

Key = Hashable
Mono = Tuple
Elem = Dict[Mono, Fraction]
DegFn = Callable[[Key], int]


def mono_degree(m: Mono, deg: DegFn) -> int:
    return sum(deg(x) for x in m)


def koszul_sort(word: Sequence[Key], deg: DegFn, key=None) -> Tuple[int, Mono]:
    """Sort ``word`` into a monomial; returns (sign, mono), sign 0 when an odd key repeats."""
    w = list(word)
    sign = 1
    k = key or (lambda x: x)
    for i in range(1, len(w)):
        j = i
        while j > 0 and k(w[j - 1]) > k(w[j]):
            if deg(w[j - 1]) % 2 and deg(w[j]) % 2:
                sign = -sign
            w[j - 1], w[j] = w[j], w[j - 1]
            j -= 1
    for a, b in zip(w, w[1:]):
        if a == b and deg(a) % 2:
            return 0, ()
    return sign, tuple(w)


def mono_mul(a: Mono, b: Mono, deg: DegFn, key=None) -> Tuple[int, Mono]:
    return koszul_sort(a + b, deg, key)


def elem_mul(x: Elem, y: Elem, deg: DegFn, key=None) -> Elem:
    out: Elem = {}
    for a, ca in x.items():
        for b, cb in y.items():
            s, m = mono_mul(a, b, deg, key)
            if s:
                add_into(out, {m: ca * cb * s})
    return out


def move_sign(word: Sequence[Key], picked: Sequence[int], deg: DegFn) -> int:
    """Koszul sign of moving the positions ``picked`` (increasing) to the front, keeping order."""
    chosen = set(picked)
    s = 0
    for p in picked:
        if deg(word[p]) % 2:
            for q in range(p):
                if q not in chosen and deg(word[q]) % 2:
                    s += 1
    return -1 if s % 2 else 1


def unshuffles(m: Mono, deg: DegFn, parts: int = 2) -> Iterator[Tuple[int, Tuple[Mono, ...]]]:
    """All ways to distribute the factors of m into ``parts`` nonempty ordered blocks.

    Yields (sign, blocks); blocks keep the positional order, so each is sorted.
    Equal blocks arising from repeated even factors are yielded repeatedly,
    which is the shuffle-coproduct multiplicity.
    """
    n = len(m)
    if n < parts:
        return
    for assign in product(range(parts), repeat=n):
        if len(set(assign)) != parts:
            continue
        order = [i for b in range(parts) for i in range(n) if assign[i] == b]
        sign = _perm_sign(m, order, deg)
        blocks = tuple(tuple(m[i] for i in range(n) if assign[i] == b) for b in range(parts))
        yield sign, blocks


def _perm_sign(word: Sequence[Key], order: Sequence[int], deg: DegFn) -> int:
    """Koszul sign of the rearrangement word[order[0]], word[order[1]], ..."""
    s = 0
    for i in range(len(order)):
        if deg(word[order[i]]) % 2:
            for j in range(i + 1, len(order)):
                if order[j] < order[i] and deg(word[order[j]]) % 2:
                    s += 1
    return -1 if s % 2 else 1


def coproduct(m: Mono, deg: DegFn) -> Dict[Tuple[Mono, Mono], Fraction]:
    """Reduced unshuffle coproduct of a monomial."""
    out: Dict[Tuple[Mono, Mono], Fraction] = {}
    for sign, (a, b) in unshuffles(m, deg, 2):
        out[(a, b)] = out.get((a, b), 0) + sign
    return {k: Fraction(v) for k, v in out.items() if v}


def symmetric_tensor_to_mono(terms: Dict[Tuple, Fraction], key=None) -> Dict[Tuple, Fraction]:
    """Invert symmetrization: keep sorted tensors, divide by the multiplicity factorials."""
    k = key or (lambda x: x)
    out = {}
    for t, v in terms.items():
        if all(k(t[i]) <= k(t[i + 1]) for i in range(len(t) - 1)):
            mult = 1
            run = 1
            for i in range(1, len(t) + 1):
                if i < len(t) and t[i] == t[i - 1]:
                    run += 1
                else:
                    mult *= factorial(run)
                    run = 1
            out[t] = v / mult
    return {t: v for t, v in out.items() if v}


def enumerate_monomials(keys: Sequence[Key], deg: DegFn, accept: Callable[[int, int], bool],
                        prune: Callable[[int, int], bool], max_weight: Optional[int] = None) -> List[Mono]:
    """Monomials (weight >= 1) in the given ordered keys.

    ``accept(weight, degree)`` decides whether a monomial is kept and
    ``prune(weight, degree)`` whether extending it further is pointless.
    """
    out: List[Mono] = []

    def rec(start: int, cur: List[Key], d: int):
        if cur and accept(len(cur), d):
            out.append(tuple(cur))
        if max_weight is not None and len(cur) >= max_weight:
            return
        for i in range(start, len(keys)):
            x = keys[i]
            odd = deg(x) % 2
            nd = d + deg(x)
            if prune(len(cur) + 1, nd):
                continue
            cur.append(x)
            rec(i + 1 if odd else i, cur, nd)
            cur.pop()

    rec(0, [], 0)
    return out


def mono_label(m: Mono, name: Callable[[Key], str] = str) -> str:
    if len(m) == 1:
        return name(m[0])
    parts = []
    i = 0
    while i < len(m):
        j = i
        while j < len(m) and m[j] == m[i]:
            j += 1
        p = name(m[i])
        parts.append(p if j - i == 1 else "%s^%d" % (p, j - i))
        i = j
    return "·".join(parts)


def sym_power(v: BaseObject, m: int) -> BaseObject:
    """m-th graded symmetric power (tensor = the base's tensor)."""
    if m < 1:
        raise ValueError("m must be positive")
    c = v.complex
    order = []
    degree = {}
    for n in c.degrees():
        for x in c.basis(n):
            order.append(x)
            degree[x] = n
    pos = {x: i for i, x in enumerate(order)}
    deg = degree.__getitem__
    keyf = pos.__getitem__
    monos = []

    def rec(start, cur):
        if len(cur) == m:
            monos.append(tuple(cur))
            return
        for i in range(start, len(order)):
            x = order[i]
            cur.append(x)
            rec(i + 1 if deg(x) % 2 else i, cur)
            cur.pop()

    rec(0, [])
    space: Dict[int, List[str]] = {}
    lab = {}
    for mono in monos:
        s = mono_label(mono)
        lab[mono] = s
        space.setdefault(sum(deg(x) for x in mono), []).append(s)
    dmap = {}
    for mono in monos:
        img: Elem = {}
        sgn = 0
        for i, x in enumerate(mono):
            for y, a in c.d_label(x, degree[x]).items():
                w = list(mono)
                w[i] = y
                s, mm = koszul_sort(w, deg, keyf)
                if s:
                    add_into(img, {mm: a * s * (-1 if sgn % 2 else 1)})
            sgn += deg(x)
        dmap[lab[mono]] = {lab[k]: val for k, val in img.items()}
    total = Complex.from_maps(space, dmap)
    tags = {}
    for mono in monos:
        tags[lab[mono]] = v.base.combine_all(v.tags[x] for x in mono)
    return BaseObject(v.base, total, tags)
