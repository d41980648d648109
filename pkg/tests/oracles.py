"""Decision tables written out directly from the classification statements.

Kept separate from the library's decision functions so that the tests compare
two independent encodings.
"""
from fractions import Fraction


def embeddable(nu, tau) -> bool:
    """Right *-coideal: for tau != 0 iff nu <= 0; for tau = 0 iff nu = -1."""
    nu, tau = Fraction(nu), Fraction(tau)
    return nu <= 0 if tau != 0 else nu == -1


def isomorphic(nu, tau, nu2, tau2) -> bool:
    """nu = nu' and tau = theta*tau' for some theta in {-1, 1} (nu = +/-) or in R minus 0 (nu = 0)."""
    nu, tau, nu2, tau2 = (Fraction(v) for v in (nu, tau, nu2, tau2))
    if nu != nu2:
        return False
    if tau2 == 0:
        return tau == 0
    theta = tau / tau2
    return theta in (1, -1) if nu != 0 else theta != 0
