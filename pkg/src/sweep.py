#!/usr/bin/env python3
"""sweep.py – randomized check of the certificate implication chain.

For every fixture fan, draws random decorations (split sums and flags of
rank <= 3, coefficients in [-3, 3]) and evaluates

    primitive-collection criterion => nefly decorated
        => acyclicly decorated => acyclic (Cech)

Each sample becomes one CSV row; a row breaking the chain is a counterexample.

Usage
-----
    python src/sweep.py --fixtures f1,p2 --samples 100 -o sweep.csv
"""
from __future__ import annotations

import argparse
import logging
import random
import sys
from pathlib import Path

import pandas as pd
from tqdm import tqdm

from cohomology.cech import is_acyclic
from cohomology.sheaf import ToricSheafData
from configs.toric import toric
from decoration.weil import WeilDecoration, from_flag, from_line_bundle_sum
from divisors.divisor import TDivisor
from fixtures.catalog import FAN_NAMES, build_fan
from lattice import exact
from lattice.fan import Fan
from vanishing.criteria import check_perlman_smith, is_acyclicly_decorated, is_nefly_decorated

logger = logging.getLogger(__name__)

DEFAULT_FIXTURES = FAN_NAMES
COEFF_RANGE = (-3, 3)


def random_divisor(rng: random.Random, n: int, lo: int = COEFF_RANGE[0], hi: int = COEFF_RANGE[1]) -> TDivisor:
    return TDivisor(tuple(rng.randint(lo, hi) for _ in range(n)))


def random_flag(rng: random.Random, n: int, rank: int) -> WeilDecoration:
    """A flag decoration with strictly decreasing divisors, all inside COEFF_RANGE."""
    while True:
        basis = [[rng.randint(-2, 2) for _ in range(rank)] for _ in range(rank)]
        if exact.rank(basis, rank) == rank:
            break
    k = rng.randint(1, rank)
    lo, hi = COEFF_RANGE
    # generic divisor first; every step up adds a nonzero nonnegative vector
    D = random_divisor(rng, n, lo, hi - (k - 1))
    divisors = [D]
    for _ in range(k - 1):
        step = [rng.randint(0, 1) for _ in range(n)]
        if not any(step):
            step[rng.randrange(n)] = 1
        D = D + TDivisor(tuple(step))
        divisors.append(D)
    return from_flag(basis, list(reversed(divisors)))


def random_decoration(rng: random.Random, fan: Fan, max_rank: int = 3) -> tuple[str, WeilDecoration]:
    rank = rng.randint(1, max_rank)
    if rank > 1 and rng.random() < 0.5:
        return "flag", random_flag(rng, fan.n_rays, rank)
    return "split", from_line_bundle_sum(fan, [random_divisor(rng, fan.n_rays) for _ in range(rank)])


def evaluate(fan: Fan, dec: WeilDecoration) -> dict:
    """The four verdicts for one decoration.

    The Cech oracle only runs when the decoration is acyclicly decorated,
    the one case where the chain makes a claim about it.
    """
    ps = check_perlman_smith(fan, dec).satisfied
    nefly = bool(is_nefly_decorated(fan, dec))
    acyclicly = bool(is_acyclicly_decorated(fan, dec))
    acyclic = is_acyclic(fan, ToricSheafData.from_decoration(dec)) if acyclicly else None
    broken = (ps and not nefly) or (nefly and not acyclicly) or (acyclicly and not acyclic)
    return {"ps": ps, "nefly": nefly, "acyclicly": acyclicly, "acyclic": acyclic,
            "counterexample": bool(broken)}


def run_sweep(fixtures=DEFAULT_FIXTURES, samples: int = 100, seed: int | None = None,
              max_rank: int = 3, progress: bool = True) -> pd.DataFrame:
    """Runs the randomized sweep and returns one row per sample.

    Args:
        fixtures: Fixture fan names.
        samples: Decorations drawn per fixture.
        seed: PRNG seed; defaults to toric.RANDOM_SEED.
        max_rank: Largest rank drawn.
        progress: Show a tqdm progress bar.

    Returns:
        A DataFrame with columns fixture, sample, kind, rank, divisors and the verdicts.
    """
    rng = random.Random(toric.RANDOM_SEED if seed is None else seed)
    rows = []
    jobs = [(name, i) for name in fixtures for i in range(samples)]
    fans = {name: build_fan(name) for name in fixtures}
    for name, i in tqdm(jobs, desc="sweep", disable=not progress):
        fan = fans[name]
        kind, dec = random_decoration(rng, fan, max_rank)
        row = {"fixture": name, "sample": i, "kind": kind, "rank": dec.ambient_dim,
               "divisors": ";".join(",".join(map(str, D.coeffs)) for D in dec.divisors)}
        row.update(evaluate(fan, dec))
        if row["counterexample"]:
            logger.warning("counterexample on %s: %s", name, row["divisors"])
        rows.append(row)
    df = pd.DataFrame(rows)
    logger.info("sweep: %d samples, %d counterexamples", len(df), int(df["counterexample"].sum()) if len(df) else 0)
    return df


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sweep.py", description="Randomized implication-chain sweep.")
    ap.add_argument("--fixtures", default=",".join(DEFAULT_FIXTURES),
                    help="Comma-separated fixture fan names")
    ap.add_argument("--samples", type=int, default=100, help="Decorations per fixture")
    ap.add_argument("--seed", type=int, default=None, help="PRNG seed")
    ap.add_argument("--max-rank", type=int, default=3)
    ap.add_argument("-o", "--output", type=Path, default=Path("sweep.csv"), help="CSV path")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    df = run_sweep(args.fixtures.split(","), args.samples, args.seed, args.max_rank)
    df.to_csv(args.output, index=False)
    bad = int(df["counterexample"].sum()) if len(df) else 0
    print(f"[sweep] {len(df)} rows, {bad} counterexamples -> {args.output}")
    return 0 if bad == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
