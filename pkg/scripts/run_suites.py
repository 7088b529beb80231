"""Run suites and print the table plus per-suite wall time."""

import argparse
import time

from koszulab.verifysuite import SuiteConfig, run_suite, suite_names


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("names", nargs="*", help="default: all suites")
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    config = SuiteConfig.from_env(seed=args.seed)
    for name in args.names or suite_names():
        t0 = time.perf_counter()
        rep = run_suite(name, config)
        print(rep.table())
        print("[%s: %.1fs]\n" % (name, time.perf_counter() - t0))


if __name__ == "__main__":
    main()
