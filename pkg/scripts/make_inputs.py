"""Write the corpus as JSON files usable with ``koszulab compute`` and ``koszulab ran``."""

import argparse
import json
from pathlib import Path

from koszulab.operadic import CutoffPolicy, chevalley, dual_lie
from koszulab.verifysuite import corpus


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("outdir", type=Path)
    args = p.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)
    cut = CutoffPolicy.for_window(-8, -1)
    docs = {}
    for name, make in corpus.LIE.items():
        g = make()
        docs["lie_%s" % name] = g.to_json()
        docs["colie_%s" % name] = dual_lie(g).to_json()
    for name, c, _ in corpus.coalgebra_corpus(cut):
        docs["coalg_%s" % name] = c.to_json()
    for i, fam in enumerate(corpus.lie_families()):
        docs["family%d_chev" % i] = chevalley(fam.to_lie(), cut).to_json()
    docs["offdiag_chev"] = chevalley(corpus.offdiagonal_lie(), cut).to_json()
    for stem, doc in docs.items():
        safe = stem.replace("(", "").replace(")", "").replace(",", "_")
        (args.outdir / (safe + ".json")).write_text(json.dumps(doc, sort_keys=True, indent=1))
    print("wrote %d files to %s" % (len(docs), args.outdir))


if __name__ == "__main__":
    main()
