"""Survey of pipeline verdicts on random COSC systems paired with their mirror candidates.

For symmetric digit sets every pair should certify as symmetric; for
asymmetric ones the pair should be refuted. Prints a tally per digit count.

    python scripts/mirror_survey.py --seed 1 --count 100
"""

import argparse
import random
from collections import Counter, defaultdict
from fractions import Fraction

from homifs.campaign import Config, random_cosc_ifs
from homifs.symmetry import mirror_candidate, theorem_pipeline


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--count", type=int, default=100, help="systems per (n, symmetric) cell")
    parser.add_argument("--n-max", type=int, default=5)
    args = parser.parse_args()

    cfg = Config(n_max=args.n_max)
    table: dict[tuple[int, bool], Counter] = defaultdict(Counter)
    for n in range(2, args.n_max + 1):
        for symmetric in (True, False):
            if n == 2 and not symmetric:
                continue  # every two-point set is symmetric
            for i in range(args.count):
                rng = random.Random(f"survey:{args.seed}:{n}:{symmetric}:{i}")
                phi = random_cosc_ifs(rng, n, cfg, symmetric)
                v = theorem_pipeline(phi, mirror_candidate(phi), epsilon=Fraction(1, 10**4), k_max=20,
                                     symmetry_level=4)
                label = v.kind if v.kind != "precondition_failed" else f"precondition_failed:{v.name}"
                table[n, symmetric][label] += 1

    print(f"{'n':>2} {'digits':10} verdicts")
    for (n, symmetric), tally in sorted(table.items()):
        shown = ", ".join(f"{k} {c}" for k, c in sorted(tally.items()))
        print(f"{n:>2} {'symmetric' if symmetric else 'asymmetric':10} {shown}")


if __name__ == "__main__":
    main()
