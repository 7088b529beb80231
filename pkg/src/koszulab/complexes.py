"""Bounded cochain complexes of finite-dimensional rational vector spaces.

Grading is cohomological: ``d^n`` goes from degree ``n`` to ``n + 1``, and
the shift ``c[k]`` has ``(c[k])^n = c^{n+k}``, so a class of degree -1
sits in degree -2 of ``c[1]``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .linalg import Echelon, Vector, add_into, frac, fstr, nullspace


class KoszulabError(Exception):
    pass


class WindowNotCertified(KoszulabError):
    pass


class ComplexError(KoszulabError):
    pass


# --------------------------------------------------------------------------
# matrices


class Matrix:
    """Sparse rational matrix; ``entries[(i, j)]`` never stores a zero."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Optional[Mapping[Tuple[int, int], object]] = None):
        self.rows = rows
        self.cols = cols
        self.entries: Dict[Tuple[int, int], Fraction] = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise ComplexError("entry (%d, %d) outside a %dx%d matrix" % (i, j, rows, cols))
            v = frac(v)
            if v:
                self.entries[(i, j)] = v

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Matrix":
        n = len(rows)
        m = len(rows[0]) if n else 0
        return cls(n, m, {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v})

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __repr__(self):
        return "Matrix(%d, %d, %r)" % (self.rows, self.cols, {k: fstr(v) for k, v in sorted(self.entries.items())})

    def is_zero(self) -> bool:
        return not self.entries

    def to_dense(self) -> List[List[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def column(self, j: int) -> Vector:
        return {i: v for (i, jj), v in self.entries.items() if jj == j}

    def columns(self) -> List[Vector]:
        cols: List[Vector] = [dict() for _ in range(self.cols)]
        for (i, j), v in self.entries.items():
            cols[j][i] = v
        return cols

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def scale(self, s) -> "Matrix":
        return Matrix(self.rows, self.cols, {k: v * s for k, v in self.entries.items()})

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ComplexError("shape mismatch %dx%d @ %dx%d" % (self.rows, self.cols, other.rows, other.cols))
        by_row: Dict[int, List[Tuple[int, Fraction]]] = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        out: Dict[Tuple[int, int], Fraction] = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                out[(i, j)] = out.get((i, j), 0) + a * b
        return Matrix(self.rows, other.cols, {k: v for k, v in out.items() if v})

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ComplexError("shape mismatch in sum")
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, 0) + v
        return Matrix(self.rows, self.cols, out)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scale(-1)

    def apply(self, v: Vector) -> Vector:
        out: Vector = {}
        for (i, j), a in self.entries.items():
            x = v.get(j)
            if x:
                out[i] = out.get(i, 0) + a * x
        return {k: c for k, c in out.items() if c}


def rank(m: Matrix) -> int:
    e = Echelon()
    for col in m.columns():
        if col:
            e.insert(col)
    return len(e)


def kernel_basis(m: Matrix) -> List[List[Fraction]]:
    """Basis of the right kernel, as dense rational vectors of length ``m.cols``."""
    out = []
    for vec in nullspace(m.columns()):
        out.append([vec.get(j, Fraction(0)) for j in range(m.cols)])
    return out


def block(blocks: Sequence[Sequence[Optional[Matrix]]], row_sizes: Sequence[int], col_sizes: Sequence[int]) -> Matrix:
    entries = {}
    r0 = 0
    for bi, rs in enumerate(row_sizes):
        c0 = 0
        for bj, cs in enumerate(col_sizes):
            b = blocks[bi][bj]
            if b is not None:
                for (i, j), v in b.entries.items():
                    entries[(r0 + i, c0 + j)] = v
            c0 += cs
        r0 += rs
    return Matrix(sum(row_sizes), sum(col_sizes), entries)


# --------------------------------------------------------------------------
# windows


@dataclass(frozen=True)
class Window:
    lo: int
    hi: int
    guard: int = 2

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("window lo=%d exceeds hi=%d" % (self.lo, self.hi))
        if self.guard < 0:
            raise ValueError("negative guard")

    def __contains__(self, n: int) -> bool:
        return self.lo <= n <= self.hi

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def contains_window(self, other: "Window") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def shifted(self, k: int) -> "Window":
        return Window(self.lo + k, self.hi + k, self.guard)

    def to_json(self):
        return {"lo": self.lo, "hi": self.hi, "guard": self.guard}


# --------------------------------------------------------------------------
# complexes


class Complex:
    """A bounded cochain complex with named bases.

    ``space[n]`` is the ordered list of basis labels in degree n and
    ``d[n]`` the matrix of ``d^n: space[n] -> space[n+1]`` (rows index the
    target).  ``certified`` is the degree range on which the cohomology of
    this complex is guaranteed to equal that of the object it models; None
    means every degree.
    """

    def __init__(self, space: Mapping[int, Sequence[str]], d: Optional[Mapping[int, Matrix]] = None,
                 certified: Optional[Window] = None, check: bool = True):
        self.space: Dict[int, Tuple[str, ...]] = {int(n): tuple(b) for n, b in space.items() if len(b)}
        for n, b in self.space.items():
            if len(set(b)) != len(b):
                raise ComplexError("duplicate basis labels in degree %d" % n)
        self.d: Dict[int, Matrix] = {}
        for n, m in (d or {}).items():
            n = int(n)
            src, tgt = self.dim(n), self.dim(n + 1)
            if (m.rows, m.cols) != (tgt, src):
                raise ComplexError("d^%d has shape %dx%d, expected %dx%d" % (n, m.rows, m.cols, tgt, src))
            if not m.is_zero():
                self.d[n] = m
        self.certified = certified
        self._index: Dict[int, Dict[str, int]] = {}
        if check:
            self.check_d_squared()

    # -- construction helpers
    @classmethod
    def from_maps(cls, space: Mapping[int, Sequence[str]], dmap: Mapping[str, Mapping[str, object]],
                  certified: Optional[Window] = None, check: bool = True) -> "Complex":
        """Build from ``dmap[label] = {target_label: coeff}``; targets outside the space are dropped."""
        where = {}
        for n, b in space.items():
            for i, lab in enumerate(b):
                where[lab] = (n, i)
        entries: Dict[int, Dict[Tuple[int, int], Fraction]] = {}
        for lab, img in dmap.items():
            if lab not in where:
                continue
            n, j = where[lab]
            for t, v in img.items():
                loc = where.get(t)
                if loc is None:
                    continue
                if loc[0] != n + 1:
                    raise ComplexError("differential of %s lands in degree %d" % (lab, loc[0]))
                entries.setdefault(n, {})
                entries[n][(loc[1], j)] = entries[n].get((loc[1], j), 0) + frac(v)
        d = {}
        for n, e in entries.items():
            d[n] = Matrix(len(space.get(n + 1, ())), len(space[n]), e)
        return cls(space, d, certified=certified, check=check)

    @classmethod
    def zero(cls) -> "Complex":
        return cls({})

    @classmethod
    def point(cls, degree: int, label: str = "x") -> "Complex":
        return cls({degree: [label]})

    # -- basic accessors
    def degrees(self) -> List[int]:
        return sorted(self.space)

    def dim(self, n: int) -> int:
        return len(self.space.get(n, ()))

    def total_dim(self) -> int:
        return sum(len(b) for b in self.space.values())

    def is_zero(self) -> bool:
        return not self.space

    def basis(self, n: int) -> Tuple[str, ...]:
        return self.space.get(n, ())

    def index(self, n: int) -> Dict[str, int]:
        if n not in self._index:
            self._index[n] = {lab: i for i, lab in enumerate(self.basis(n))}
        return self._index[n]

    def degree_of(self, label: str) -> int:
        for n, b in self.space.items():
            if label in self.index(n):
                return n
        raise KeyError(label)

    def labels(self) -> Dict[str, int]:
        return {lab: n for n, b in self.space.items() for lab in b}

    def differential(self, n: int) -> Matrix:
        return self.d.get(n) or Matrix.zero(self.dim(n + 1), self.dim(n))

    def d_label(self, label: str, n: Optional[int] = None) -> Dict[str, Fraction]:
        if n is None:
            n = self.degree_of(label)
        j = self.index(n)[label]
        m = self.d.get(n)
        if m is None:
            return {}
        tgt = self.basis(n + 1)
        return {tgt[i]: v for (i, jj), v in m.entries.items() if jj == j}

    def dims(self) -> Dict[int, int]:
        return {n: len(b) for n, b in sorted(self.space.items())}

    def check_d_squared(self):
        for n, m in self.d.items():
            nxt = self.d.get(n + 1)
            if nxt is not None and not (nxt @ m).is_zero():
                raise ComplexError("d^%d d^%d != 0" % (n + 1, n))

    def euler_characteristic(self) -> int:
        return sum((-1) ** (n % 2) * len(b) for n, b in self.space.items())

    def with_certified(self, w: Optional[Window]) -> "Complex":
        c = Complex(self.space, self.d, certified=w, check=False)
        return c

    def __repr__(self):
        return "Complex(%s)" % ", ".join("%d:%d" % (n, len(b)) for n, b in sorted(self.space.items()))

    def __eq__(self, other):
        return isinstance(other, Complex) and self.space == other.space and self.d == other.d

    # -- serialization
    def to_json(self) -> dict:
        out = {"degrees": {str(n): list(b) for n, b in sorted(self.space.items())}, "d": []}
        for n in sorted(self.d):
            src, tgt = self.basis(n), self.basis(n + 1)
            entries = [[tgt[i], src[j], fstr(v)] for (i, j), v in sorted(self.d[n].entries.items())]
            out["d"].append({"from": n, "entries": entries})
        if self.certified is not None:
            out["certified"] = self.certified.to_json()
        return out

    @classmethod
    def from_json(cls, doc: Mapping) -> "Complex":
        space = {int(n): list(b) for n, b in doc.get("degrees", {}).items()}
        dmap: Dict[str, Dict[str, Fraction]] = {}
        for block_ in doc.get("d", []):
            n = int(block_["from"])
            src = set(space.get(n, ()))
            tgt = set(space.get(n + 1, ()))
            for row, col, v in block_["entries"]:
                if col not in src or row not in tgt:
                    raise ComplexError("differential entry (%s <- %s) does not match degree %d" % (row, col, n))
                dmap.setdefault(col, {})
                dmap[col][row] = dmap[col].get(row, 0) + Fraction(v)
        cert = doc.get("certified")
        w = Window(cert["lo"], cert["hi"], cert.get("guard", 2)) if cert else None
        return cls.from_maps(space, dmap, certified=w)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


# --------------------------------------------------------------------------
# cohomology


def _boundaries(c: Complex, n: int) -> Echelon:
    e = Echelon()
    m = c.d.get(n - 1)
    if m is not None:
        for col in m.columns():
            if col:
                e.insert(col)
    return e


def _cycles(c: Complex, n: int) -> List[Vector]:
    m = c.d.get(n)
    if m is None:
        return [{i: Fraction(1)} for i in range(c.dim(n))]
    return nullspace(m.columns())


def cohomology(c: Complex, n: int) -> Tuple[int, List[Dict[str, Fraction]]]:
    """(dim H^n, cycle representatives spanning a complement of the boundaries)."""
    if c.dim(n) == 0:
        return 0, []
    bnd = _boundaries(c, n)
    reps = []
    basis = c.basis(n)
    for z in _cycles(c, n):
        if bnd.insert(z):
            reps.append({basis[i]: v for i, v in sorted(z.items())})
    return len(reps), reps


def cohomology_dims(c: Complex, degrees: Optional[Iterable[int]] = None) -> Dict[int, int]:
    if degrees is None:
        degrees = c.degrees()
    out = {}
    for n in degrees:
        if c.dim(n) == 0:
            out[n] = 0
            continue
        z = c.dim(n) - (rank(c.d[n]) if n in c.d else 0)
        b = rank(c.d[n - 1]) if (n - 1) in c.d else 0
        out[n] = z - b
    return out


def betti(c: Complex) -> Dict[int, int]:
    """Nonzero cohomology dimensions."""
    return {n: h for n, h in cohomology_dims(c).items() if h}


# --------------------------------------------------------------------------
# maps


class ComplexMap:
    def __init__(self, source: Complex, target: Complex, components: Mapping[int, Matrix], check: bool = True):
        self.source = source
        self.target = target
        self.components: Dict[int, Matrix] = {}
        for n, m in components.items():
            if (m.rows, m.cols) != (target.dim(n), source.dim(n)):
                raise ComplexError("component %d has shape %dx%d, expected %dx%d"
                                   % (n, m.rows, m.cols, target.dim(n), source.dim(n)))
            if not m.is_zero():
                self.components[n] = m
        if check:
            self.check_chain_map()

    @classmethod
    def from_maps(cls, source: Complex, target: Complex, fmap: Mapping[str, Mapping[str, object]],
                  check: bool = True) -> "ComplexMap":
        entries: Dict[int, Dict[Tuple[int, int], Fraction]] = {}
        tlabels = target.labels()
        for n in source.degrees():
            sidx = source.index(n)
            tidx = target.index(n)
            for lab, j in sidx.items():
                for t, v in fmap.get(lab, {}).items():
                    if t not in tidx:
                        if t in tlabels:
                            raise ComplexError("map sends %s to degree %d" % (lab, tlabels[t]))
                        raise ComplexError("unknown target label %s" % t)
                    entries.setdefault(n, {})
                    key = (tidx[t], j)
                    entries[n][key] = entries[n].get(key, 0) + frac(v)
        comps = {n: Matrix(target.dim(n), source.dim(n), e) for n, e in entries.items()}
        return cls(source, target, comps, check=check)

    @classmethod
    def identity(cls, c: Complex) -> "ComplexMap":
        return cls(c, c, {n: Matrix.identity(c.dim(n)) for n in c.degrees()})

    def component(self, n: int) -> Matrix:
        return self.components.get(n) or Matrix.zero(self.target.dim(n), self.source.dim(n))

    def check_chain_map(self):
        degs = set(self.source.degrees()) | set(self.target.degrees())
        for n in degs:
            lhs = self.target.differential(n) @ self.component(n)
            rhs = self.component(n + 1) @ self.source.differential(n)
            if lhs != rhs:
                raise ComplexError("map does not commute with d in degree %d" % n)


def _require_certified(c: Complex, w: Window, what: str):
    if c.certified is not None and not c.certified.contains_window(w):
        raise WindowNotCertified("%s is certified on [%d, %d], not on [%d, %d]"
                                 % (what, c.certified.lo, c.certified.hi, w.lo, w.hi))


def induced_rank(f: ComplexMap, n: int) -> int:
    """Rank of H^n(f)."""
    src, tgt = f.source, f.target
    _, reps = cohomology(src, n)
    if not reps:
        return 0
    bnd = _boundaries(tgt, n)
    base = len(bnd)
    sidx = src.index(n)
    comp = f.component(n)
    for z in reps:
        bnd.insert(comp.apply({sidx[k]: v for k, v in z.items()}))
    return len(bnd) - base


def quasi_iso_failures(f: ComplexMap, w: Window) -> List[Tuple[int, int, int, int]]:
    """Degrees in w where H^n(f) is not bijective: (n, dim H^n src, dim H^n tgt, rank)."""
    bad = []
    for n in w.degrees():
        hs = cohomology_dims(f.source, [n])[n]
        ht = cohomology_dims(f.target, [n])[n]
        r = induced_rank(f, n) if hs and ht else 0
        if not (hs == ht == r):
            bad.append((n, hs, ht, r))
    return bad


def is_quasi_iso(f: ComplexMap, w: Window, report: Optional[list] = None) -> bool:
    _require_certified(f.source, w, "source")
    _require_certified(f.target, w, "target")
    bad = quasi_iso_failures(f, w)
    if report is not None:
        report.extend(bad)
    return not bad


# --------------------------------------------------------------------------
# functors


def shift(c: Complex, k: int) -> Complex:
    """``c[k]``: degree n of the result is degree n + k of c; d gets the sign (-1)^k."""
    space = {n - k: b for n, b in c.space.items()}
    sign = -1 if k % 2 else 1
    d = {n - k: m.scale(sign) for n, m in c.d.items()}
    cert = c.certified.shifted(-k) if c.certified else None
    return Complex(space, d, certified=cert, check=False)


def direct_sum(*cs: Complex, tags: Optional[Sequence[str]] = None) -> Complex:
    """Direct sum; labels are kept unless ``tags`` are given (then ``tag|label``)."""
    space: Dict[int, List[str]] = {}
    dmap: Dict[str, Dict[str, Fraction]] = {}
    for i, c in enumerate(cs):
        rename = (lambda s, t=tags[i]: "%s|%s" % (t, s)) if tags else (lambda s: s)
        for n in c.degrees():
            space.setdefault(n, []).extend(rename(b) for b in c.basis(n))
        for n, m in c.d.items():
            src, tgt = c.basis(n), c.basis(n + 1)
            for (r, col), v in m.entries.items():
                dmap.setdefault(rename(src[col]), {})[rename(tgt[r])] = v
    certs = [c.certified for c in cs if c.certified is not None]
    cert = None
    if certs:
        cert = Window(max(w.lo for w in certs), min(w.hi for w in certs)) if max(w.lo for w in certs) <= min(w.hi for w in certs) else None
    return Complex.from_maps(space, dmap, certified=cert, check=False)


def tensor_label(a: str, b: str) -> str:
    return "(%s)⊗(%s)" % (a, b)


def tensor(a: Complex, b: Complex, label=tensor_label) -> Complex:
    """Graded tensor product with d(x⊗y) = dx⊗y + (-1)^{|x|} x⊗dy."""
    space: Dict[int, List[str]] = {}
    for p in a.degrees():
        for q in b.degrees():
            space.setdefault(p + q, []).extend(label(x, y) for x in a.basis(p) for y in b.basis(q))
    dmap: Dict[str, Dict[str, Fraction]] = {}
    for p in a.degrees():
        for q in b.degrees():
            sign = -1 if p % 2 else 1
            for x in a.basis(p):
                dx = a.d_label(x, p)
                for y in b.basis(q):
                    img: Dict[str, Fraction] = {}
                    for x2, v in dx.items():
                        img[label(x2, y)] = img.get(label(x2, y), 0) + v
                    for y2, v in b.d_label(y, q).items():
                        img[label(x, y2)] = img.get(label(x, y2), 0) + sign * v
                    dmap[label(x, y)] = img
    return Complex.from_maps(space, dmap, check=False)


def dual_label(a: str) -> str:
    return a[:-1] if a.endswith("*") else a + "*"


def dual(c: Complex, label=dual_label) -> Complex:
    """Linear dual: (c^∨)^n = (c^{-n})^*; d^n_∨ = (-1)^{n+1} (d^{-n-1})^T."""
    space = {-n: [label(x) for x in b] for n, b in c.space.items()}
    d = {}
    for n, m in c.d.items():
        # d^n: c^n -> c^{n+1};  dual differential from degree -(n+1) to -n
        k = -(n + 1)
        d[k] = m.transpose().scale(-1 if (k + 1) % 2 else 1)
    cert = Window(-c.certified.hi, -c.certified.lo, c.certified.guard) if c.certified else None
    return Complex(space, d, certified=cert, check=False)


def truncate(c: Complex, mode: str, n: int) -> Complex:
    """Smart truncation: ``mode`` is ``"at_most"`` (τ_{≤n}) or ``"at_least"`` (τ_{≥n})."""
    if mode == "at_most":
        space = {k: list(b) for k, b in c.space.items() if k < n}
        dmap = {}
        for k in space:
            for lab in c.basis(k):
                dmap[lab] = c.d_label(lab, k)
        # degree n becomes the cycles Z^n, written in the old basis
        cycles = _cycles(c, n) if c.dim(n) else []
        basis_n = c.basis(n)
        names = ["Z%d[%d]" % (n, i) for i in range(len(cycles))]
        if names:
            space[n] = names
            # d^{n-1} lands in the cycles; express it in the cycle basis
            e = Echelon(track=True)
            for z in cycles:
                e.insert(z)
            idx = c.index(n)
            for lab in c.basis(n - 1):
                img = c.d_label(lab, n - 1)
                coords = e.coordinates({idx[t]: v for t, v in img.items()})
                dmap[lab] = {names[i]: v for i, v in coords.items()}
        out = Complex.from_maps(space, dmap, check=True)
    elif mode == "at_least":
        space = {k: list(b) for k, b in c.space.items() if k > n}
        dmap = {}
        for k in space:
            for lab in c.basis(k):
                dmap[lab] = c.d_label(lab, k)
        # degree n becomes the cokernel of d^{n-1}: pick basis vectors complementing the image
        bnd = _boundaries(c, n)
        keep = []
        for i, lab in enumerate(c.basis(n)):
            if bnd.insert({i: Fraction(1)}):
                keep.append(lab)
        if keep:
            space[n] = keep
            # d^n factors through the cokernel; restrict to the chosen complement
            for lab in keep:
                dmap[lab] = c.d_label(lab, n)
        out = Complex.from_maps(space, dmap, check=True)
    else:
        raise ValueError("mode must be 'at_most' or 'at_least'")
    return out


def cone(f: ComplexMap) -> Complex:
    """Mapping cone: cone^n = source^{n+1} ⊕ target^n, d(s, t) = (-ds, f(s) + dt)."""
    src, tgt = f.source, f.target
    sl = lambda s: "c[%s]" % s
    tl = lambda t: "t[%s]" % t
    space: Dict[int, List[str]] = {}
    for n in src.degrees():
        space.setdefault(n - 1, []).extend(sl(x) for x in src.basis(n))
    for n in tgt.degrees():
        space.setdefault(n, []).extend(tl(x) for x in tgt.basis(n))
    dmap: Dict[str, Dict[str, Fraction]] = {}
    for n in src.degrees():
        comp = f.components.get(n)
        tb = tgt.basis(n)
        for j, x in enumerate(src.basis(n)):
            img = {sl(y): -v for y, v in src.d_label(x, n).items()}
            if comp is not None:
                for (i, jj), v in comp.entries.items():
                    if jj == j:
                        img[tl(tb[i])] = img.get(tl(tb[i]), 0) + v
            dmap[sl(x)] = img
    for n in tgt.degrees():
        for x in tgt.basis(n):
            dmap[tl(x)] = {tl(y): v for y, v in tgt.d_label(x, n).items()}
    return Complex.from_maps(space, dmap, check=True)


def fiber(f: ComplexMap) -> Complex:
    return shift(cone(f), -1)


def zero_map(source: Complex, target: Complex) -> ComplexMap:
    return ComplexMap(source, target, {})
