#!/usr/bin/env python3
"""How rho_n approaches ||g||_{B2(G)} as the level curves close in on dG.

Prints CSV: domain, g, n, r_n - 1, rho_n / ||g||.  Uses the exact residue
path for K g, so levels far closer to the boundary than the quadrature guard
are fine.

    python scripts/exhaustion_profile.py --levels 16 --delta 0.1
"""

import argparse

from bergcauchy.criterion import rho_sequence
from bergcauchy.domains import DEFAULT_CATALOG, exhaust, load_catalog
from bergcauchy.quadrature import bergman_norm_on_domain, build_rule
from bergcauchy.series import CoefficientSeries
from bergcauchy.transforms import cauchy_transform


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--levels", type=int, default=16)
    ap.add_argument("--delta", type=float, default=0.1)
    ap.add_argument("--samples", type=int, default=512)
    ap.add_argument("--max-degree", type=int, default=3)
    args = ap.parse_args()
    rule = build_rule()
    print("domain,g,n,r_minus_1,ratio")
    for name, phi in load_catalog(DEFAULT_CATALOG).items():
        if phi.kind != "interior":
            continue
        ex = exhaust(phi, args.levels, args.delta)
        for k in range(args.max_degree + 1):
            g = CoefficientSeries.monomial(k)
            norm = bergman_norm_on_domain(g, phi, rule)
            for (n, rho), r in zip(rho_sequence(cauchy_transform(g, phi), ex, args.samples), ex.radii):
                print(f"{name},z^{k},{n},{r - 1:.3e},{rho / norm:.12f}")


if __name__ == "__main__":
    main()
