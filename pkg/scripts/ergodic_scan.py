"""Fixed-space dimension of the coaction on words of degree <= d, over a grid.

Usage: python3 scripts/ergodic_scan.py [d] [grid]
"""
import sys

from uqgalois.coaction import fixed_space
from uqgalois.suites import default_grid, parse_grid


def main(d: int, grid) -> None:
    print("mu nu tau  unknowns  rank  fixed  exact")
    for mu, nu, tau in grid:
        r = fixed_space(mu, nu, tau, d)
        print(f"{mu!s:>2} {nu!s:>2} {tau!s:>3}  {r.unknowns:>8}  {r.certificate.rank:>4}  "
              f"{r.fixed_dimension:>5}  {r.certificate.exact}")


if __name__ == "__main__":
    d = int(sys.argv[1]) if len(sys.argv) > 1 else 6
    grid = parse_grid(sys.argv[2]) if len(sys.argv) > 2 else default_grid()[::9]
    main(d, grid)
