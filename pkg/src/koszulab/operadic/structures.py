"""Strict Lie, coLie, commutative and cocommutative structures on tagged complexes.

Structure maps are sparse tables on basis labels:

* bracket / multiplication: ``(x, y) -> {z: coeff}``
* cobracket / comultiplication: ``x -> {(y, z): coeff}``

Signs follow the Koszul rule; ``(1 ⊗ f)(a ⊗ b) = (-1)^{|f||a|} a ⊗ f(b)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from ..basecat import VECT, BaseCategory, BaseObject, verdier_dual
from ..complexes import Complex, KoszulabError, dual, dual_label
from ..linalg import add_into, frac, fstr

Pair = Tuple[str, str]
Elem = Dict[str, Fraction]
Elem2 = Dict[Pair, Fraction]


class AxiomViolation(KoszulabError):
    pass


class HypothesisViolation(KoszulabError):
    pass


def _clean(table: Mapping, key2=False):
    out = {}
    for k, img in table.items():
        img2 = {t: frac(v) for t, v in img.items() if frac(v)}
        if img2:
            out[k] = img2
    return out


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


class _Structured:
    carrier: BaseObject
    kind = "structure"

    @property
    def complex(self) -> Complex:
        return self.carrier.complex

    @property
    def base(self) -> BaseCategory:
        return self.carrier.base

    def degree(self, x: str) -> int:
        return self._deg[x]

    def _init_degrees(self):
        self._deg = self.carrier.complex.labels()

    def d(self, u: Elem) -> Elem:
        out: Elem = {}
        c = self.complex
        for x, a in u.items():
            add_into(out, c.d_label(x, self._deg[x]), a)
        return out

    def d2(self, t: Elem2) -> Elem2:
        """(d ⊗ 1 + 1 ⊗ d) on a two-fold tensor."""
        out: Elem2 = {}
        c = self.complex
        for (a, b), v in t.items():
            for a2, w in c.d_label(a, self._deg[a]).items():
                add_into(out, {(a2, b): v * w})
            s = _sign(self._deg[a])
            for b2, w in c.d_label(b, self._deg[b]).items():
                add_into(out, {(a, b2): v * w * s})
        return out

    def check(self) -> List[str]:
        raise NotImplementedError

    def assert_axioms(self):
        bad = self.check()
        if bad:
            raise AxiomViolation("%s: %s" % (self.kind, "; ".join(bad[:5])))


# --------------------------------------------------------------------------


class _Binary(_Structured):
    """A degree-0 map carrier ⊗ carrier -> carrier."""

    table: Dict[Pair, Elem]

    def op(self, u: Elem, v: Elem) -> Elem:
        out: Elem = {}
        for x, a in u.items():
            for y, b in v.items():
                img = self.table.get((x, y))
                if img:
                    add_into(out, img, a * b)
        return out

    def op_basis(self, x: str, y: str) -> Elem:
        return dict(self.table.get((x, y), {}))

    def _check_common(self) -> List[str]:
        bad = []
        base = self.base
        for (x, y), img in self.table.items():
            if x not in self._deg or y not in self._deg:
                bad.append("unknown label in (%s, %s)" % (x, y))
                continue
            t = base.combine(self.carrier.tags[x], self.carrier.tags[y])
            for z in img:
                if z not in self._deg:
                    bad.append("unknown label %s" % z)
                elif self._deg[z] != self._deg[x] + self._deg[y]:
                    bad.append("(%s, %s) -> %s changes degree" % (x, y, z))
                elif not base.admissible(t, self.carrier.tags[z]):
                    bad.append("(%s, %s) -> %s violates strata" % (x, y, z))
        return bad

    def _leibniz(self) -> List[str]:
        bad = []
        labels = list(self._deg)
        nonzero_d = {x for x in labels if self.complex.d_label(x, self._deg[x])}
        for x in labels:
            for y in labels:
                if (x, y) not in self.table and x not in nonzero_d and y not in nonzero_d:
                    continue
                lhs = self.d(self.op_basis(x, y))
                rhs = self.op(self.d({x: Fraction(1)}), {y: Fraction(1)})
                add_into(rhs, self.op({x: Fraction(1)}, self.d({y: Fraction(1)})), _sign(self._deg[x]))
                add_into(lhs, rhs, -1)
                if lhs:
                    bad.append("Leibniz fails on (%s, %s)" % (x, y))
        return bad

    def _pairs_nonzero(self):
        return list(self.table)


class StrictLieAlgebra(_Binary):
    kind = "Lie"

    def __init__(self, carrier: BaseObject, bracket: Mapping[Pair, Mapping[str, object]], name: str = "",
                 cutoff=None, complete: bool = False, check: bool = True):
        self.carrier = carrier
        self._init_degrees()
        table = _clean(bracket)
        if complete:
            for (x, y), img in list(table.items()):
                if (y, x) not in table:
                    s = -_sign(self._deg[x] * self._deg[y])
                    table[(y, x)] = {z: v * s for z, v in img.items()}
        self.table = table
        self.name = name
        self.cutoff = cutoff
        if check:
            self.assert_axioms()

    @property
    def bracket(self) -> Dict[Pair, Elem]:
        return self.table

    def br(self, u: Elem, v: Elem) -> Elem:
        return self.op(u, v)

    def check(self) -> List[str]:
        bad = self._check_common()
        for (x, y), img in self.table.items():
            other = self.table.get((y, x), {})
            s = _sign(self._deg[x] * self._deg[y])
            tot = dict(img)
            add_into(tot, other, s)
            if tot:
                bad.append("antisymmetry fails on (%s, %s)" % (x, y))
        bad += self._jacobi()
        bad += self._leibniz()
        return bad

    def _jacobi(self) -> List[str]:
        bad = []
        labels = list(self._deg)
        seen = set()
        for (p, q) in self.table:
            for r in labels:
                for (x, y, z) in ((r, p, q), (p, q, r), (p, r, q)):
                    if (x, y, z) in seen:
                        continue
                    seen.add((x, y, z))
                    ex, ey, ez = {x: Fraction(1)}, {y: Fraction(1)}, {z: Fraction(1)}
                    lhs = self.br(ex, self.br(ey, ez))
                    add_into(lhs, self.br(self.br(ex, ey), ez), -1)
                    add_into(lhs, self.br(ey, self.br(ex, ez)), -_sign(self._deg[x] * self._deg[y]))
                    if lhs:
                        bad.append("Jacobi fails on (%s, %s, %s)" % (x, y, z))
        return bad

    def to_json(self) -> dict:
        return {"type": "lie", "name": self.name, "carrier": self.carrier.to_json(),
                "bracket": _table_json(self.table),
                "cutoff": self.cutoff.to_json() if self.cutoff else None}


class StrictComAlgebra(_Binary):
    kind = "ComAlg"

    def __init__(self, carrier: BaseObject, mult: Mapping[Pair, Mapping[str, object]], name: str = "",
                 cutoff=None, complete: bool = False, check: bool = True):
        self.carrier = carrier
        self._init_degrees()
        table = _clean(mult)
        if complete:
            for (x, y), img in list(table.items()):
                if (y, x) not in table:
                    s = _sign(self._deg[x] * self._deg[y])
                    table[(y, x)] = {z: v * s for z, v in img.items()}
        self.table = table
        self.name = name
        self.cutoff = cutoff
        if check:
            self.assert_axioms()

    @property
    def mult(self) -> Dict[Pair, Elem]:
        return self.table

    def mul(self, u: Elem, v: Elem) -> Elem:
        return self.op(u, v)

    def check(self) -> List[str]:
        bad = self._check_common()
        for (x, y), img in self.table.items():
            other = self.table.get((y, x), {})
            tot = dict(img)
            add_into(tot, other, -_sign(self._deg[x] * self._deg[y]))
            if tot:
                bad.append("commutativity fails on (%s, %s)" % (x, y))
        labels = list(self._deg)
        for (x, y), img in self.table.items():
            for z in labels:
                lhs = self.mul(img, {z: Fraction(1)})
                add_into(lhs, self.mul({x: Fraction(1)}, self.op_basis(y, z)), -1)
                if lhs:
                    bad.append("associativity fails on (%s, %s, %s)" % (x, y, z))
        for (y, z), img in self.table.items():
            for x in labels:
                if (x, y) in self.table:
                    continue
                if self.mul({x: Fraction(1)}, img):
                    bad.append("associativity fails on (%s, %s, %s)" % (x, y, z))
        bad += self._leibniz()
        return bad

    def to_json(self) -> dict:
        return {"type": "comalg", "name": self.name, "carrier": self.carrier.to_json(),
                "mult": _table_json(self.table),
                "cutoff": self.cutoff.to_json() if self.cutoff else None}


# --------------------------------------------------------------------------


class _Unary(_Structured):
    """A degree-0 map carrier -> carrier ⊗ carrier."""

    table: Dict[str, Elem2]

    def co(self, u: Elem) -> Elem2:
        out: Elem2 = {}
        for x, a in u.items():
            img = self.table.get(x)
            if img:
                add_into(out, img, a)
        return out

    def co_left(self, t: Elem2) -> Dict[Tuple[str, str, str], Fraction]:
        """(Δ ⊗ 1)."""
        out = {}
        for (a, b), v in t.items():
            for (a1, a2), w in self.table.get(a, {}).items():
                k = (a1, a2, b)
                out[k] = out.get(k, 0) + v * w
        return {k: v for k, v in out.items() if v}

    def co_right(self, t: Elem2) -> Dict[Tuple[str, str, str], Fraction]:
        """(1 ⊗ Δ); Δ has degree 0 so no sign."""
        out = {}
        for (a, b), v in t.items():
            for (b1, b2), w in self.table.get(b, {}).items():
                k = (a, b1, b2)
                out[k] = out.get(k, 0) + v * w
        return {k: v for k, v in out.items() if v}

    def swap(self, t: Elem2) -> Elem2:
        out: Elem2 = {}
        for (a, b), v in t.items():
            add_into(out, {(b, a): v * _sign(self._deg[a] * self._deg[b])})
        return out

    def _check_common(self) -> List[str]:
        bad = []
        base = self.base
        for x, img in self.table.items():
            if x not in self._deg:
                bad.append("unknown label %s" % x)
                continue
            for (y, z) in img:
                if y not in self._deg or z not in self._deg:
                    bad.append("unknown label in (%s, %s)" % (y, z))
                elif self._deg[y] + self._deg[z] != self._deg[x]:
                    bad.append("%s -> (%s, %s) changes degree" % (x, y, z))
                elif not base.admissible(self.carrier.tags[x],
                                         base.combine(self.carrier.tags[y], self.carrier.tags[z])):
                    bad.append("%s -> (%s, %s) violates strata" % (x, y, z))
        return bad

    def _coleibniz(self) -> List[str]:
        bad = []
        for x in self._deg:
            lhs = self.co(self.d({x: Fraction(1)}))
            rhs = self.d2(self.table.get(x, {}))
            add_into(lhs, rhs, -1)
            if lhs:
                bad.append("co-Leibniz fails on %s" % x)
        return bad


def _tsub(a, b):
    out = dict(a)
    for k, v in b.items():
        nv = out.get(k, 0) - v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


class StrictComCoalgebra(_Unary):
    kind = "ComCoAlg"

    def __init__(self, carrier: BaseObject, delta: Mapping[str, Mapping[Pair, object]], name: str = "",
                 cutoff=None, check: bool = True):
        self.carrier = carrier
        self._init_degrees()
        self.table = _clean(delta)
        self.name = name
        self.cutoff = cutoff
        if check:
            self.assert_axioms()

    @property
    def delta(self) -> Dict[str, Elem2]:
        return self.table

    def check(self) -> List[str]:
        bad = self._check_common()
        for x, img in self.table.items():
            if _tsub(img, self.swap(img)):
                bad.append("cocommutativity fails on %s" % x)
            if _tsub(self.co_left(img), self.co_right(img)):
                bad.append("coassociativity fails on %s" % x)
        bad += self._coleibniz()
        if not self.is_conilpotent():
            bad.append("not conilpotent")
        return bad

    def is_conilpotent(self) -> bool:
        """Iterated reduced comultiplication dies after at most dim steps."""
        frontier = {x: {(x,): Fraction(1)} for x in self._deg}
        for _ in range(len(self._deg) + 1):
            nxt = {}
            alive = False
            for x, terms in frontier.items():
                out = {}
                for word, v in terms.items():
                    for (a, b), w in self.table.get(word[0], {}).items():
                        k = (a, b) + word[1:]
                        out[k] = out.get(k, 0) + v * w
                out = {k: v for k, v in out.items() if v}
                if out:
                    alive = True
                nxt[x] = out
            if not alive:
                return True
            frontier = nxt
        return False

    def to_json(self) -> dict:
        return {"type": "comcoalg", "name": self.name, "carrier": self.carrier.to_json(),
                "delta": _cotable_json(self.table),
                "cutoff": self.cutoff.to_json() if self.cutoff else None}


class StrictCoLie(_Unary):
    kind = "coLie"

    def __init__(self, carrier: BaseObject, cobracket: Mapping[str, Mapping[Pair, object]], name: str = "",
                 cutoff=None, check: bool = True):
        self.carrier = carrier
        self._init_degrees()
        self.table = _clean(cobracket)
        self.name = name
        self.cutoff = cutoff
        if check:
            self.assert_axioms()

    @property
    def cobracket(self) -> Dict[str, Elem2]:
        return self.table

    def check(self) -> List[str]:
        bad = self._check_common()
        for x, img in self.table.items():
            tot = dict(img)
            add_into(tot, self.swap(img))
            if tot:
                bad.append("co-antisymmetry fails on %s" % x)
            # (δ⊗1)δ = (1⊗δ)δ − (τ⊗1)(1⊗δ)δ
            right = self.co_right(img)
            swapped = {}
            for (a, b, c), v in right.items():
                k = (b, a, c)
                swapped[k] = swapped.get(k, 0) + v * _sign(self._deg[a] * self._deg[b])
            lhs = _tsub(_tsub(self.co_left(img), right), {k: -v for k, v in swapped.items() if v})
            if lhs:
                bad.append("co-Jacobi fails on %s" % x)
        bad += self._coleibniz()
        return bad

    def to_json(self) -> dict:
        return {"type": "colie", "name": self.name, "carrier": self.carrier.to_json(),
                "cobracket": _cotable_json(self.table),
                "cutoff": self.cutoff.to_json() if self.cutoff else None}


# --------------------------------------------------------------------------
# serialization helpers


def _table_json(table):
    rows = []
    for (x, y), img in sorted(table.items()):
        for z, v in sorted(img.items()):
            rows.append([x, y, z, fstr(v)])
    return rows


def _cotable_json(table):
    rows = []
    for x, img in sorted(table.items()):
        for (y, z), v in sorted(img.items()):
            rows.append([x, y, z, fstr(v)])
    return rows


def structure_from_json(doc: Mapping):
    carrier = BaseObject.from_json(doc["carrier"])
    kind = doc["type"]
    if kind in ("lie", "comalg"):
        table: Dict[Pair, Dict[str, Fraction]] = {}
        for x, y, z, v in doc.get("bracket" if kind == "lie" else "mult", []):
            table.setdefault((x, y), {})
            table[(x, y)][z] = table[(x, y)].get(z, 0) + Fraction(v)
        cls = StrictLieAlgebra if kind == "lie" else StrictComAlgebra
        return cls(carrier, table, name=doc.get("name", ""), complete=True)
    if kind in ("colie", "comcoalg"):
        cot: Dict[str, Dict[Pair, Fraction]] = {}
        for x, y, z, v in doc.get("cobracket" if kind == "colie" else "delta", []):
            cot.setdefault(x, {})
            cot[x][(y, z)] = cot[x].get((y, z), 0) + Fraction(v)
        cls = StrictCoLie if kind == "colie" else StrictComCoalgebra
        return cls(carrier, cot, name=doc.get("name", ""))
    raise KoszulabError("unknown structure type %r" % kind)


# --------------------------------------------------------------------------
# trivial structures and duals


def trivial_lie(v: BaseObject, name: str = "") -> StrictLieAlgebra:
    return StrictLieAlgebra(v, {}, name=name)


def trivial_colie(v: BaseObject, name: str = "") -> StrictCoLie:
    return StrictCoLie(v, {}, name=name)


def trivial_comcoalg(v: BaseObject, name: str = "") -> StrictComCoalgebra:
    return StrictComCoalgebra(v, {}, name=name)


def trivial_comalg(v: BaseObject, name: str = "") -> StrictComAlgebra:
    return StrictComAlgebra(v, {}, name=name)


def _dual_carrier(v: BaseObject) -> BaseObject:
    if v.base.kind == "finran":
        return verdier_dual(v)
    if v.base.kind != "vect":
        raise KoszulabError("duals are only wired for vect and finran carriers")
    c = dual(v.complex)
    return BaseObject(v.base, c, {dual_label(x): t for x, t in v.tags.items()})


def _pairing_sign(s: _Structured, x: str, y: str) -> int:
    # <f ⊗ g, a ⊗ b> = (-1)^{|g||a|} f(a) g(b), nonzero only when |a| = -|f|
    return _sign(s.degree(x) * s.degree(y))


def dual_lie(g: StrictLieAlgebra, name: Optional[str] = None) -> StrictCoLie:
    """Linear dual with cobracket the transpose of the bracket."""
    cob: Dict[str, Dict[Pair, Fraction]] = {}
    for (x, y), img in g.table.items():
        for z, v in img.items():
            cob.setdefault(dual_label(z), {})
            k = (dual_label(x), dual_label(y))
            cob[dual_label(z)][k] = cob[dual_label(z)].get(k, 0) + _pairing_sign(g, x, y) * v
    return StrictCoLie(_dual_carrier(g.carrier), cob, name=name if name is not None else g.name + "^v")


def dual_colie(h: StrictCoLie, name: Optional[str] = None) -> StrictLieAlgebra:
    br: Dict[Pair, Dict[str, Fraction]] = {}
    for z, img in h.table.items():
        for (x, y), v in img.items():
            k = (dual_label(x), dual_label(y))
            br.setdefault(k, {})
            br[k][dual_label(z)] = br[k].get(dual_label(z), 0) + _pairing_sign(h, x, y) * v
    return StrictLieAlgebra(_dual_carrier(h.carrier), br, name=name if name is not None else h.name + "^v")


def dual_comcoalg(a: StrictComCoalgebra, name: Optional[str] = None) -> StrictComAlgebra:
    mult: Dict[Pair, Dict[str, Fraction]] = {}
    for z, img in a.table.items():
        for (x, y), v in img.items():
            k = (dual_label(x), dual_label(y))
            mult.setdefault(k, {})
            mult[k][dual_label(z)] = mult[k].get(dual_label(z), 0) + _pairing_sign(a, x, y) * v
    return StrictComAlgebra(_dual_carrier(a.carrier), mult, name=name if name is not None else a.name + "^v",
                            check=False)
