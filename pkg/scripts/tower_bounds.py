"""Where does coBar^n -> coBar^{n-1} stop being a quasi-isomorphism?

Prints, per coalgebra and stage, the lowest degree that survives, next to the
literal bound -2^{n+1} + n + 1 and the fiber bound -n - 1.
The "holds>=" column is the lowest degree from which the map is a quasi-isomorphism.
"""

import argparse

from koszulab.complexes import Window, quasi_iso_failures
from koszulab.operadic import CutoffPolicy, cobar_stage
from koszulab.verifysuite import corpus


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-stage", type=int, default=3)
    args = p.parse_args()
    print("%-16s %2s %8s %6s %8s  failing degrees" % ("coalgebra", "n", "literal", "fiber", "holds>="))
    for c in corpus.tower_corpus():
        for n in range(1, args.max_stage + 1):
            literal = -2 ** (n + 1) + n + 1
            w = Window(literal, -1)
            _, f = cobar_stage(c, n, CutoffPolicy(w))
            failing = sorted(x[0] for x in quasi_iso_failures(f, w))
            lowest = max(failing) + 1 if failing else literal
            print("%-16s %2d %8d %6d %8d  %s" % (c.name, n, literal, -n - 1, lowest, failing or "-"))


if __name__ == "__main__":
    main()
