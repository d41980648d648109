"""Gram ranks of the pairing for the literal 2d Pol window and the default window.

Usage: python3 scripts/gram_window.py [max_degree]
"""
import sys

from uqgalois.pairing import default_pol_length, pairing_gram_rank, perturbed


def main(max_degree: int = 2) -> None:
    print("mu  d  full  rank(2d)  rank(default)  window")
    for mu in ("+", "-", "0"):
        for d in range(max_degree + 1):
            full = (2 * d + 1) * (d + 1) ** 2
            lit = pairing_gram_rank(mu, d, 2 * d)
            dft = pairing_gram_rank(mu, d)
            print(f"{mu:>2}  {d}  {full:>4}  {lit:>8}  {dft:>13}  {default_pol_length(d, mu)}")
    # control: kill one primitive value and watch the rank drop
    print("control e_b=0, d=1:", pairing_gram_rank("+", 1, data=perturbed("+", e_b=0)))


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 2)
