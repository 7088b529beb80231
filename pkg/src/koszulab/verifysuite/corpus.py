"""The standard, versioned test corpus.

Everything is rebuilt on each call, so suites never share mutable state.
"""

from __future__ import annotations

from typing import Callable, Dict, List, Tuple

from ..basecat import BaseObject
from ..complexes import Complex
from ..operadic.chevalley import chevalley
from ..operadic.cutoff import CutoffPolicy
from ..operadic.freelie import free_lie
from ..operadic.structures import (StrictComCoalgebra, StrictLieAlgebra, dual_lie, trivial_colie,
                                   trivial_comcoalg, trivial_lie)
from ..ranmodel import DiagonalCoLieFamily, DiagonalLieFamily, abelian_on_subset

CORPUS_VERSION = "1"


def _vect(space: Dict[int, List[str]]) -> BaseObject:
    return BaseObject.from_complex(Complex(space))


def abelian(space: Dict[int, List[str]], name: str) -> StrictLieAlgebra:
    return trivial_lie(_vect(space), name=name)


def free_odd() -> StrictLieAlgebra:
    """Free Lie algebra on one generator of degree -1: x and [x,x]."""
    return free_lie(_vect({-1: ["x"]}), 3, name="free1")


def semidirect() -> StrictLieAlgebra:
    """e, v1, v2, u in degrees -1..-4 with [e,v1] = v2 and du = v2."""
    c = Complex.from_maps({-1: ["e"], -2: ["v1"], -3: ["v2"], -4: ["u"]}, {"u": {"v2": 1}})
    return StrictLieAlgebra(BaseObject.from_complex(c), {("e", "v1"): {"v2": 1}}, name="semidirect",
                            complete=True)


def sl2() -> StrictLieAlgebra:
    """sl2 in degree 0: violates the connectivity hypothesis."""
    br = {("h", "e"): {"e": 2}, ("h", "f"): {"f": -2}, ("e", "f"): {"h": 1}}
    return StrictLieAlgebra(_vect({0: ["e", "f", "h"]}), br, name="sl2", complete=True)


LIE: Dict[str, Callable[[], StrictLieAlgebra]] = {
    "ab1(-1)": lambda: abelian({-1: ["x"]}, "ab1(-1)"),
    "ab1(-2)": lambda: abelian({-2: ["x"]}, "ab1(-2)"),
    "ab2(-1)": lambda: abelian({-1: ["x", "y"]}, "ab2(-1)"),
    "ab2(-2)": lambda: abelian({-2: ["x", "y"]}, "ab2(-2)"),
    "ab2(-1,-2)": lambda: abelian({-1: ["x"], -2: ["y"]}, "ab2(-1,-2)"),
    "free1": free_odd,
    "semidirect": semidirect,
}

# forced word-length cap for the degree-0 expected failure
SL2_CAP = 4


def lie_corpus() -> List[StrictLieAlgebra]:
    return [f() for f in LIE.values()]


def colie_corpus() -> List:
    return [dual_lie(g) for g in lie_corpus()]


def coalgebra_corpus(cutoff: CutoffPolicy) -> List[Tuple[str, StrictComCoalgebra, str]]:
    """(name, coalgebra, class); equal classes are known quasi-isomorphic.

    Chev(free1) ~ triv(Q[-2]) because Chev of a free Lie algebra is trivial on
    its generators, and triv(Q[-3]) is literally Chev(ab1(-2)) (one odd
    letter, so no higher weights).  Chev(semidirect) ~ Chev(ab2(-1,-2)) because the
    semidirect algebra is formal with abelian cohomology: the only bracket
    lands on v2 = du and the transferred ternary operation [e, h[e,v1]] = [e,u]
    vanishes.
    """
    out = [("triv(-2)", trivial_comcoalg(_vect({-2: ["x"]}), name="triv(-2)"), "A"),
           ("triv(-3)", trivial_comcoalg(_vect({-3: ["x"]}), name="triv(-3)"), "C")]
    classes = {"ab1(-1)": "B", "ab1(-2)": "C", "ab2(-1)": "D", "ab2(-2)": "F", "ab2(-1,-2)": "E",
               "free1": "A", "semidirect": "E"}
    for name, f in LIE.items():
        out.append(("Chev(%s)" % name, chevalley(f(), cutoff), classes[name]))
    return out


def tower_corpus() -> List[StrictComCoalgebra]:
    """Coalgebras for the tower lemma (degrees <= -2), kept small enough for stage 3."""
    cut = CutoffPolicy.for_window(-15, -1)
    return [trivial_comcoalg(_vect({-2: ["x"]}), name="triv(-2)"),
            chevalley(LIE["ab1(-1)"](), cut, name="Chev(ab1(-1))")]


def cross_model_corpus() -> List[StrictComCoalgebra]:
    cut = CutoffPolicy.for_window(-8, -1)
    out = [trivial_comcoalg(_vect({-2: ["x"]}), name="triv(-2)"),
           trivial_comcoalg(_vect({-3: ["x"]}), name="triv(-3)")]
    for name in ("ab1(-1)", "ab2(-1)", "ab2(-1,-2)", "free1", "semidirect"):
        out.append(chevalley(LIE[name](), cut, name="Chev(%s)" % name))
    return out


FAMILY_SPECS: List[Tuple[Tuple[str, ...], Tuple[str, ...]]] = [
    (("a", "b"), ("ab1(-1)", "ab1(-1)")),
    (("a", "b"), ("ab1(-1)", "free1")),
    (("a", "b"), ("ab2(-1,-2)", "semidirect")),
    (("a", "b", "c"), ("ab1(-1)", "ab1(-1)", "ab1(-1)")),
    (("a", "b", "c"), ("ab1(-1)", "ab1(-2)", "free1")),
]


def lie_families() -> List[DiagonalLieFamily]:
    return [DiagonalLieFamily(pts, {p: LIE[n]() for p, n in zip(pts, names)}) for pts, names in FAMILY_SPECS]


def colie_families() -> List[DiagonalCoLieFamily]:
    return [f.dual() for f in lie_families()]


def offdiagonal_lie() -> StrictLieAlgebra:
    """Abelian, one-dimensional, supported only at the doubleton {a, b}."""
    return trivial_lie(abelian_on_subset(("a", "b"), ("a", "b"), -1, "t"), name="offdiag")


def offdiagonal_colie():
    return trivial_colie(abelian_on_subset(("a", "b"), ("a", "b"), 1, "t"), name="offdiag^v")


def cl_doubleton_lie() -> StrictLieAlgebra:
    """An abelian Lie object at the doubleton in degree -2 (within c_L at size 2)."""
    return trivial_lie(abelian_on_subset(("a", "b"), ("a", "b"), -2, "t"), name="doubleton(-2)")


def describe() -> dict:
    return {"version": CORPUS_VERSION, "lie": list(LIE), "families": [
        {"points": list(p), "entries": list(n)} for p, n in FAMILY_SPECS]}
