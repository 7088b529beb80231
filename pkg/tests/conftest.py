import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from koszulab.complexes import Complex, ComplexMap, Matrix, cone

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=15, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def _graded(draw, prefix, lo, hi, max_dim):
    return {n: ["%s%s%d_%d" % (prefix, "m" if n < 0 else "", abs(n), i) for i in range(draw(st.integers(0, max_dim)))]
            for n in range(lo, hi + 1)}


@st.composite
def complexes(draw, lo=-2, hi=2, max_dim=2):
    """cone(f: A -> B) for A, B with zero differential and a random degreewise f.

    Every bounded complex over a field arises this way up to isomorphism.
    """
    a = Complex(_graded(draw, "a", lo, hi, max_dim))
    b = Complex(_graded(draw, "b", lo, hi, max_dim))
    comps = {}
    for n in range(lo, hi + 1):
        rows, cols = b.dim(n), a.dim(n)
        entries = {(i, j): draw(st.integers(-2, 2)) for i in range(rows) for j in range(cols)}
        comps[n] = Matrix(rows, cols, entries)
    return cone(ComplexMap(a, b, comps))


ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, title = ACCEPTANCE[n]
        terminalreporter.write_line("criterion %2d: %s  %s" % (n, "PASS" if ok else "FAIL", title))
