"""Survey torus bundles over random Anosov monodromies.

For each sampled matrix, compares the three translation-length methods, the
two continued-fraction readings of the Sol bound, and the size and homology
of the triangulation built from the monodromy.

    python3 scripts/sol_survey.py --samples 50 --seed 1
"""
from __future__ import annotations

import argparse
import random
from collections import Counter
from dataclasses import dataclass

from tricomplex.complexity import sol_bounds_cf
from tricomplex.farey import translation_length
from tricomplex.psl2z import random_anosov, word_length
from tricomplex.triangulate import build_sol, homology


@dataclass
class SurveyConfig:
    samples: int = 30
    max_length: int = 20  # generator word length before reduction
    seed: int = 0


def survey(cfg: SurveyConfig) -> Counter:
    rng = random.Random(cfg.seed)
    tally = Counter()
    print(f"{'matrix':<24} {'ell':>4} {'tlen':>4} {'(i)':>5} {'(ii)':>5} {'tets':>5}  H1")
    for _ in range(cfg.samples):
        A = random_anosov(rng, cfg.max_length)
        lengths = {m: translation_length(A, m) for m in ("word", "axis_oracle", "fixed_point_cf")}
        tally["methods agree"] += len(set(lengths.values())) == 1
        rep = sol_bounds_cf(A)
        tally["readings disagree"] += rep.details["disagreement"] == "true"
        g = build_sol(A)
        tally["within 6 + ell/2"] += len(g) <= 6 + word_length(A) // 2
        print(
            f"{str(A):<24} {word_length(A):>4} {lengths['word']:>4} "
            f"{rep.details['sqrt_reading']:>5} {rep.details['fixed_point_reading']:>5} {len(g):>5}  {homology(g).h1}"
        )
    return tally


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=SurveyConfig.samples)
    ap.add_argument("--max-length", type=int, default=SurveyConfig.max_length)
    ap.add_argument("--seed", type=int, default=SurveyConfig.seed)
    args = ap.parse_args(argv)
    cfg = SurveyConfig(args.samples, args.max_length, args.seed)
    for key, n in survey(cfg).items():
        print(f"{key}: {n}/{cfg.samples}")


if __name__ == "__main__":
    main()
