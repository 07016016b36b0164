"""Waring data over Z/pZ and the reduction of p-free exponents to e = 1."""

from __future__ import annotations

from dataclasses import dataclass, replace
from math import gcd


class NotApplicable(ValueError):
    pass


@dataclass(frozen=True)
class PrimePowerData:
    p: int
    k: int
    residues: frozenset[int]
    g0: int


def kth_residues_mod_p(p: int, k: int) -> frozenset[int]:
    return frozenset(pow(x, k, p) for x in range(1, p))


def g0(p: int, k: int) -> int:
    """Fewest nonzero k-th powers mod p adding to zero (BFS over Z/p)."""
    return prime_power_data(p, k).g0


def prime_power_data(p: int, k: int) -> PrimePowerData:
    from .ring import is_prime

    if not is_prime(p) or k < 2:
        raise ValueError("need p prime and k >= 2")
    res = kth_residues_mod_p(p, k)
    layer, n = set(res), 1
    # 1 + ... + 1 (p times) vanishes, so this stops by n = p
    while 0 not in layer:
        layer = {(a + r) % p for a in layer for r in res}
        n += 1
    return PrimePowerData(p, k, res, n)


def delegate_unramified(spec, lb_precision=None, n_cap=32):
    """g_{p,e}(k) for p not dividing k, computed at e = 1 and relabelled."""
    from .engine import waring_number
    from .ring import RingSpec

    if spec.k % spec.p == 0:
        raise NotApplicable(f"p = {spec.p} divides k = {spec.k}")
    base = waring_number(RingSpec(spec.p, 1, spec.k), lb_precision=lb_precision, n_cap=n_cap)
    return replace(base, e=spec.e, delegated_from=1)


def same_residues_as_gcd(p: int, k: int) -> bool:
    return kth_residues_mod_p(p, k) == kth_residues_mod_p(p, gcd(k, p - 1))
