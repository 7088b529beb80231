"""Integer audits of the degree estimates, and the Atiyah–Bott Poincaré series."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product
from typing import Dict, Iterator, List, Sequence, Tuple

from .report import CaseResult, VerificationReport


@lru_cache(maxsize=None)
def covers(size: int, parts: int) -> Tuple[Tuple[int, ...], ...]:
    """Sizes (|I_1|, ..., |I_k|) of all ordered covers of a size-element set by k nonempty subsets."""
    full = (1 << size) - 1
    masks = range(1, full + 1)
    out = []
    for choice in product(masks, repeat=parts):
        acc = 0
        for m in choice:
            acc |= m
        if acc == full:
            out.append(tuple(bin(m).count("1") for m in choice))
    return tuple(out)


def cover_sums(size: int, parts: int) -> range:
    """Achievable values of Σ|I_i| over covers by ``parts`` nonempty subsets."""
    return range(max(parts, size), parts * size + 1)


def _chain(values: Sequence[int], strict_last: bool = False) -> Tuple[bool, int]:
    """Is values[0] <= values[1] <= ... (last step strict if asked)?  Returns (ok, final margin)."""
    ok = True
    for i in range(len(values) - 1):
        if strict_last and i == len(values) - 2:
            ok = ok and values[i] < values[i + 1]
        else:
            ok = ok and values[i] <= values[i + 1]
    return ok, values[-1] - values[0]


def bound_audit(d: int, max_parts: int = 4, max_size: int = 4, max_stage: int = 4) -> VerificationReport:
    """Check every quoted inequality chain as integer arithmetic over the parameter ranges."""
    rep = VerificationReport("bound-audit(d=%d)" % d)

    # star convolution of objects within c_L: upper degree bound of each summand
    ok, n, margin = True, 0, None
    for size in range(1, max_size + 1):
        for k in range(1, max_parts + 1):
            for sizes in covers(size, k):
                s = sum(sizes)
                e1 = (-1 - d) * s + d * (s - size)
                good, m = _chain([e1, (-1 - d) * size])
                ok, n = ok and good, n + 1
                margin = m if margin is None else min(margin, m)
    rep.add(CaseResult("otimes-star c_L", ok, dims={"decompositions": n, "min_margin": margin}))

    # star convolution within c_cA: three-step chain
    ok, n, margin = True, 0, None
    for size in range(1, max_size + 1):
        for k in range(1, max_parts + 1):
            for sizes in covers(size, k):
                s = sum(sizes)
                e1 = (-1 - d) * s - k + d * (s - size)
                e2 = -s - k - d * size
                e3 = (-1 - d) * size - 1
                good, m = _chain([e1, e2, e3])
                ok, n = ok and good and e1 == e2, n + 1
                margin = m if margin is None else min(margin, m)
    rep.add(CaseResult("otimes-star c_cA", ok, dims={"decompositions": n, "min_margin": margin}))

    # tower fiber F^n over a stratum of size |I| with 2^n tensor factors; the
    # expression depends on the decomposition only through Σ|I_i|
    ok, n, margin = True, 0, None
    for size in range(1, max_size + 1):
        for stage in range(1, max_stage + 1):
            parts = 2 ** stage
            for s in cover_sums(size, parts):
                e1 = (-1 - d) * s - parts + d * (s - size) + stage
                e2 = -s - parts - d * size + stage
                e3 = -2 ** (stage + 1) - d * size + stage
                good, m = _chain([e1, e2, e3])
                ok, n = ok and good and e1 == e2, n + 1
                margin = m if margin is None else min(margin, m)
                if d == 0 and e3 != -2 ** (stage + 1) + stage:
                    ok = False
    rep.add(CaseResult("tower-fiber", ok, dims={"decompositions": n, "min_margin": margin}))

    # conservativity: the difference of two fibers sits strictly below the first differing degree
    ok, n, margin = True, 0, None
    for size in range(1, max_size + 1):
        for stage in range(1, max_stage + 1):
            parts = 2 ** stage - 1
            for k in range(0, max_parts + 1):
                for s in range(parts, parts * size + 1):
                    target = (-1 - d) * size - 1 - k
                    e1 = target + (-1 - d) * s - parts + stage + d * (size + s - size)
                    e2 = target - s - 2 ** stage + 1 + stage
                    good, m = _chain([e1, e2, target], strict_last=True)
                    ok, n = ok and good and e1 == e2, n + 1
                    margin = m if margin is None else min(margin, m)
    rep.add(CaseResult("conservativity", ok, dims={"cases": n, "min_margin": margin}))
    if d == 0:
        good = all(-2 * (2 ** stage - 1) - k + stage == -2 ** (stage + 1) - k + stage + 2 < -k
                   for stage in range(1, max_stage + 1) for k in range(0, max_parts + 1))
        rep.add(CaseResult("conservativity (vect)", good))

    # coChev of h in coLie^{>= 1+d}: weight-w summand over a w-part cover
    ok, n, margin = True, 0, None
    for size in range(1, max_size + 1):
        for w in range(1, max_parts + 1):
            for sizes in covers(size, w):
                s = sum(sizes)
                low = sum((1 + d) * t + 1 for t in sizes) - d * (s - size)
                good, m = _chain([(1 + d) * size + 1, low])
                ok, n = ok and good, n + 1
                margin = m if margin is None else min(margin, m)
    rep.add(CaseResult("coChev lower bound", ok, dims={"decompositions": n, "min_margin": margin}))
    return rep


# --------------------------------------------------------------------------


def _mul(a: List[int], b: List[int], order: int) -> List[int]:
    out = [0] * (order + 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b[:order + 1 - i]):
                out[i + j] += x * y
    return out


def _geometric(k: int, order: int) -> List[int]:
    """1 / (1 - t^k)."""
    return [1 if i % k == 0 else 0 for i in range(order + 1)]


def _binomial_poly(k: int, power: int, order: int) -> List[int]:
    """(1 + t^k)^power."""
    from math import comb
    out = [0] * (order + 1)
    for j in range(power + 1):
        if j * k <= order:
            out[j * k] += comb(power, j)
    return out


def atiyah_bott_series(exponents: Sequence[int], genus: int, order: int) -> List[int]:
    """Coefficients t^0..t^order of ∏_e (1 + t^{2e+1})^{2g} / ((1 - t^{2e})(1 - t^{2e+2}))."""
    if order < 1:
        raise ValueError("order must be >= 1")
    if genus < 0 or any(e < 1 for e in exponents):
        raise ValueError("need genus >= 0 and positive exponents")
    series = [1] + [0] * order
    for e in exponents:
        series = _mul(series, _binomial_poly(2 * e + 1, 2 * genus, order), order)
        series = _mul(series, _geometric(2 * e, order), order)
        series = _mul(series, _geometric(2 * e + 2, order), order)
    return series


def atiyah_bott_generators(exponents: Sequence[int], genus: int) -> Dict[int, int]:
    """Degree -> number of generators: H*(curve) ⊗ Q[-2e] per exponent."""
    out: Dict[int, int] = {}
    for e in exponents:
        for deg, mult in ((2 * e, 1), (2 * e + 1, 2 * genus), (2 * e + 2, 1)):
            if mult:
                out[deg] = out.get(deg, 0) + mult
    return out


def sym_dimension_series(exponents: Sequence[int], genus: int, order: int) -> List[int]:
    """Independent count: degreewise dimensions of Sym of the generator space, via sym_power."""
    from ..basecat import BaseObject
    from ..complexes import Complex
    from ..operadic.sym import sym_power
    gens = atiyah_bott_generators(exponents, genus)
    out = [1] + [0] * order
    if not gens:
        return out
    space = {deg: ["g%d_%d" % (deg, i) for i in range(m)] for deg, m in sorted(gens.items())}
    v = BaseObject.from_complex(Complex(space))
    low = min(gens)
    for m in range(1, order // low + 1):
        for deg, dim in sym_power(v, m).complex.dims().items():
            if deg <= order:
                out[deg] += dim
    return out
