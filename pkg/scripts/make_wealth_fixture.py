"""Write the synthetic wealth-like fixture used by the fit tests.

The values are ParetoI(1) draws scaled by 1e9 from a fixed seed.  They are
synthetic and are not real billionaire data.
"""

import argparse
from pathlib import Path

from heavytail import ParetoI, sample
from heavytail.io import write_csv

SEED = 1_000_000_007
N = 100


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parents[1] / "tests" / "data" / "wealth_like_synthetic.csv")
    args = ap.parse_args(argv)
    wealth = 1e9 * sample(ParetoI(1.0), N, SEED).values
    write_csv(args.out, ["wealth"], ((w,) for w in wealth))
    print(f"wrote {N} synthetic values to {args.out}")


if __name__ == "__main__":
    main()
