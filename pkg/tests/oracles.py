"""Slow reference implementations over Python sets, independent of the kernels."""

from itertools import product

from waring import ring
from waring.ring import Element, RingSpec


def all_elements(spec):
    return [Element(d) for d in product(range(spec.p), repeat=spec.N)]


def summands(spec):
    """Nonzero residues mod w^N of k-th powers, by brute force over every x."""
    out = {ring.power(spec, x, spec.k) for x in all_elements(spec)}
    out.discard(ring.zero(spec))
    return out


def unit_powers(spec):
    return {ring.power(spec, x, spec.k) for x in all_elements(spec) if x.digits[0]}


def layered(spec, start, steps):
    """Minimal counts by set layers: start classes at count 1 (or zero at 0)."""
    dist = {a: (0 if a == ring.zero(spec) and start == {a} else 1) for a in start}
    frontier = set(start)
    n = max(dist.values())
    while frontier:
        n += 1
        nxt = set()
        for a in frontier:
            for s in steps:
                b = ring.add(spec, a, s)
                if b not in dist:
                    dist[b] = n
                    nxt.add(b)
        frontier = nxt
    return dist


def plain_counts(spec):
    return layered(spec, {ring.zero(spec)}, summands(spec))


def anchored_counts(spec):
    return layered(spec, unit_powers(spec), summands(spec))


def primitive_classes(spec):
    """Classes r mod w^M holding some b in R^k with b / w^k not in R^k (by definition)."""
    M, k = spec.hensel_precision, spec.k
    sM = spec.at(M)
    att = set(plain_counts(sM))
    big = spec.at(M + k)
    out = set()
    for b in all_elements(big):
        r = ring.truncate(big, b, M)
        if r not in att or r in out:
            continue
        if ring.valuation(big, b) < k:
            out.add(r)
            continue
        q = ring.truncate(big, ring.shift(big, b, -k), M)
        if q not in att:
            out.add(r)
    return out


def upper(spec):
    sM = spec.at(spec.hensel_precision)
    counts = anchored_counts(sM)
    return max(counts[r] for r in primitive_classes(spec))


def lower(spec, N):
    counts = plain_counts(spec.at(N))
    return max(v for a, v in counts.items() if a != ring.zero(spec.at(N)))
