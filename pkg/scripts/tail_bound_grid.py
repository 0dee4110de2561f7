"""Power-law certificate u**(log S(v)/log v) against true survival for several laws.

Reports, per law and v, the range of bound/truth over u in (v, 1e3].  For a
phi-IFRA law the ratio stays >= 1 (upper bound); for the phi-DFRA
log-Weibull it stays <= 1 (lower bound).  Truth that underflows to 0 is
skipped.
"""

import argparse
import math

import numpy as np

from heavytail import ParetoI
from heavytail.tail_bounds import phi_ifra_bound

LAWS = {
    "pareto(1.5)": ParetoI(1.5).upper_survival,
    "exponential": lambda x: np.exp(-np.asarray(x)),
    "shifted exp": lambda x: np.exp(-(np.asarray(x) - 1.0)),
    "log-weibull(1/2)": lambda x: np.exp(-np.sqrt(np.log(x))),
}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--v", type=float, nargs="+", default=[1.5, 2.0, math.e, 10.0, 100.0])
    args = ap.parse_args(argv)
    for name, s in LAWS.items():
        cells = []
        for v in args.v:
            u = np.geomspace(v * (1 + 1e-9), 1e3, 200)
            truth = s(u)
            ok = truth > 0
            with np.errstate(over="ignore"):
                ratio = phi_ifra_bound(float(s(v)), v, u[ok]) / truth[ok]
            cells.append(f"v={v:<5.3g} [{ratio.min():8.3g}, {ratio.max():8.3g}]")
        print(f"{name:18s} " + "  ".join(cells))


if __name__ == "__main__":
    main()
