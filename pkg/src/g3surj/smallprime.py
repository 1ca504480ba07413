"""Image certificate for a small prime l via Frobenius element orders.

For l = 3 the divisor bound says nothing (it needs l >= 5); instead, the
multiplicative order N_p of t in F_l[t]/(P_p mod l) divides the order of
the image of Frobenius at p, hence of the whole image G.  When the lcm of
a few N_p is divisible by a threshold that only the (general) symplectic
group itself attains among subgroups of GSp_6(F_l), and the determinant
(the mod-l cyclotomic character) is surjective, the image must be all of
GSp_6(F_l).  The subgroup-order threshold is a group-theoretic input, not
recomputed here; the default 32760 = 2^3 * 3^2 * 5 * 7 * 13 is the value
for l = 3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

from .curve import WeilPolynomial
from .finitefield import unit_order

DEFAULT_REQUIRED_ORDER = 32760
DEFAULT_AUX_PRIMES = (2, 5, 19, 37)


@dataclass(frozen=True)
class SmallPrimeCertificate:
    ell: int
    orders: Mapping[int, int]
    required_order: int
    achieved_lcm: int
    certified: bool
    assumption: str

    def __post_init__(self):
        object.__setattr__(self, "orders", MappingProxyType(dict(self.orders)))

    def to_dict(self) -> dict:
        return {
            "ell": self.ell,
            "orders": {str(p): n for p, n in sorted(self.orders.items())},
            "required_order": str(self.required_order),
            "achieved_lcm": str(self.achieved_lcm),
            "certified": self.certified,
            "assumption": self.assumption,
        }


def frobenius_order(weil: WeilPolynomial, ell: int) -> int:
    """N_p: multiplicative order of t in F_ell[t]/(P_p mod ell); needs p != ell."""
    if weil.p == ell:
        raise ValueError(f"p = ell = {ell}: t is not a unit in the quotient algebra")
    return unit_order(weil.reduce_mod(ell))


def certify(
    orders: Mapping[int, int],
    required_order: int = DEFAULT_REQUIRED_ORDER,
    ell: int = 3,
) -> SmallPrimeCertificate:
    """Divisibility check: certified iff required_order | lcm(N_p)."""
    if not orders:
        raise ValueError("no Frobenius orders supplied")
    if required_order <= 0:
        raise ValueError("required_order must be positive")
    achieved = math.lcm(*orders.values())
    return SmallPrimeCertificate(
        ell=ell,
        orders=dict(orders),
        required_order=required_order,
        achieved_lcm=achieved,
        certified=achieved % required_order == 0,
        assumption=(
            f"conditional on the subgroup-order classification for GSp_6(F_{ell}): "
            "only the symplectic group and its full similitude group have order "
            "divisible by the required threshold, and the surjective cyclotomic "
            "determinant then forces the similitude group"
        ),
    )
