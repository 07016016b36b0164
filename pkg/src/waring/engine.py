"""Waring numbers g_{p,e}(k) with certified upper and lower bounds.

Upper bound
    Every nonzero a in R^k (the semigroup of sums of k-th powers) equals
    w^{kj} b with b in R^k and b / w^k not in R^k.  Such a *primitive* b has
    a representation containing a unit k-th power, and for any class r mod w^M
    a decomposition r = u + s_2 + ... + s_n (u a unit k-th power residue, s_i
    k-th power residues) covers *every* element of the class: subtracting
    exact k-th powers lifting s_2..s_n leaves a unit congruent to u mod w^M,
    which is a k-th power.  The upper bound is the largest anchored count
    over classes that contain a primitive element.

    R^k is a Z_p-module containing w^M O (differences of lifts of one unit
    k-th power), so membership in R^k is decided mod w^M and the primitive
    classes are decided at precision M.

Lower bound
    If a class mod w^N' is not a sum of <= m k-th power residues mod w^N',
    no element of it is a sum of <= m k-th powers: powers of valuation >= N'
    vanish mod w^N' and only shorten the sum.
"""

from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

import numpy as np

from . import ring
from ._space import UNREACHED, ResidueSpace, layered_bfs
from .powers import PowerResidues, PrecisionTooLow, power_residues
from .ring import Element, RingSpec

SIZE_LIMIT = 2**24
DEFAULT_N_CAP = 32


class RingTooLarge(ValueError):
    """The residue ring p^N exceeds the dense-bitmap budget."""


@dataclass(frozen=True)
class Decomposition:
    """target = anchor + sum(tail) mod w^M, anchor a unit k-th power residue.

    ``anchor_root`` and ``tail_roots`` are elements whose k-th powers give the
    anchor and tail terms, so the decomposition re-checks by ring arithmetic.
    """

    target: Element
    anchor: Element
    tail: tuple[Element, ...]
    anchor_root: Element
    tail_roots: tuple[Element, ...]

    @property
    def size(self) -> int:
        return 1 + len(self.tail)


@dataclass(frozen=True)
class LowerBoundCertificate:
    """``witness`` mod w^N' is not a sum of <= m k-th power residues."""

    witness: Element
    N_prime: int
    m: int

    @property
    def bound(self) -> int:
        return self.m + 1


@dataclass
class WaringResult:
    p: int
    e: int
    k: int
    M: int
    N_prime: int
    lower: int
    upper: int
    witness: LowerBoundCertificate
    worst_class_decomposition: Decomposition
    delegated_from: int | None = None

    def __post_init__(self):
        if self.lower > self.upper:
            raise AssertionError(f"lower {self.lower} > upper {self.upper} for {self.spec}")

    @property
    def g(self) -> int | None:
        return self.upper if self.lower == self.upper else None

    @property
    def resolved(self) -> bool:
        return self.lower == self.upper

    @property
    def spec(self) -> RingSpec:
        return RingSpec(self.p, self.e, self.k)

    @property
    def certificate_spec(self) -> RingSpec:
        """Ring the certificates live in (e = 1 for delegated results)."""
        e = self.e if self.delegated_from is None else self.delegated_from
        return RingSpec(self.p, e, self.k)


def _check_size(p: int, N: int, limit: int = SIZE_LIMIT) -> None:
    if p**N > limit:
        raise RingTooLarge(f"{p}^{N} residue classes exceed the limit {limit}")


class CountTable(Mapping):
    """Minimal summand counts per reached class (mapping Element -> int)."""

    def __init__(self, spec: RingSpec, space: ResidueSpace, dist: np.ndarray, parent: np.ndarray,
                 summand_cidx: np.ndarray, saturated: bool):
        self.spec = spec
        self.space = space
        self.dist = dist
        self.parent = parent
        self.summand_cidx = summand_cidx
        self.saturated = saturated

    def __getitem__(self, a: Element) -> int:
        d = int(self.dist[self.space.element_cidx(a)])
        if d == UNREACHED:
            raise KeyError(a)
        return d

    def __iter__(self) -> Iterator[Element]:
        cidx = np.flatnonzero(self.dist != UNREACHED)
        for d in np.sort(self.space.cidx_to_didx[cidx]).tolist():
            yield self.space.didx_element(d)

    def __len__(self) -> int:
        return int((self.dist != UNREACHED).sum())

    def max(self) -> int:
        return int(self.dist[self.dist != UNREACHED].max())

    def classes_with(self, count: int) -> np.ndarray:
        """Digit indices of classes with the given count, ascending."""
        return np.sort(self.space.cidx_to_didx[np.flatnonzero(self.dist == count)])

    def path(self, a: Element) -> tuple[int, list[int]]:
        """Walk parents back from ``a``: (start class cidx, summand cidx list)."""
        c = self.space.element_cidx(a)
        if self.dist[c] == UNREACHED:
            raise KeyError(a)
        steps = []
        while self.parent[c] >= 0:
            s = int(self.summand_cidx[self.parent[c]])
            steps.append(s)
            c = self.space.sub_cidx(c, s)
        return c, steps


def _bfs_table(spec: RingSpec, pr: PowerResidues, sources, source_level, n_max=None) -> CountTable:
    dist, parent, saturated = layered_bfs(pr.space, sources, source_level, pr.summand_comps, n_max)
    return CountTable(spec.at(pr.N), pr.space, dist, parent, pr.summand_cidx, saturated)


def min_counts(spec: RingSpec, summands, n_max: int = DEFAULT_N_CAP) -> CountTable:
    """Minimal number of elements of ``summands`` adding up to each class mod w^N.

    Layered breadth-first expansion from zero (count 0); stops after
    ``n_max`` layers or at saturation.
    """
    space = ResidueSpace.of(spec)
    summands = sorted({ring.index_of(spec, s) for s in summands} - {0})
    if not summands:
        raise ValueError("summand set is empty")
    comps = space.digits_to_comps(np.array(summands, dtype=np.int64))
    dist, parent, saturated = layered_bfs(space, np.array([0]), 0, comps, n_max)
    return CountTable(spec, space, dist, parent, space.comps_to_cidx(comps), saturated)


class AnchoredBounds(Mapping):
    """Mapping class mod w^M -> (anchored count, Decomposition)."""

    def __init__(self, spec: RingSpec, pr: PowerResidues):
        self.spec = spec.at(pr.M)
        self.pr = pr
        self.table = _bfs_table(self.spec, pr, pr.unit_cidx, 1)

    def count(self, a: Element) -> int:
        return self.table[a]

    def decomposition(self, a: Element) -> Decomposition:
        pr, space = self.pr, self.pr.space
        start, steps = self.table.path(a)
        anchor = space.cidx_element(start)
        tail = tuple(space.cidx_element(s) for s in reversed(steps))
        return Decomposition(
            target=a,
            anchor=anchor,
            tail=tail,
            anchor_root=pr.root_of(anchor),
            tail_roots=tuple(pr.root_of(t) for t in tail),
        )

    def __getitem__(self, a: Element):
        return self.count(a), self.decomposition(a)

    def __iter__(self):
        return iter(self.table)

    def __len__(self):
        return len(self.table)


def anchored_upper_bounds(spec: RingSpec) -> AnchoredBounds:
    """Anchored decompositions of every attainable class mod w^M."""
    _check_size(spec.p, spec.hensel_precision)
    return AnchoredBounds(spec, power_residues(spec, spec.hensel_precision))


def primitive_classes(spec: RingSpec, attainable_didx_mask: np.ndarray) -> np.ndarray:
    """Boolean mask (digit-indexed, mod w^M) of classes holding a primitive element.

    A class r holds some b in R^k with b / w^k not in R^k.  Classes of
    valuation < k always do.  For valuation >= k the quotients b / w^k of the
    lifts of r fill the coset x0 + w^{M-k} O (x0 = r / w^k), so r qualifies
    unless that whole coset lies in R^k.  The zero class with k > M always
    qualifies (it holds elements of valuation M < k).
    """
    p, k, M = spec.p, spec.k, spec.hensel_precision
    att = attainable_didx_mask
    size = att.size
    idx = np.arange(size, dtype=np.int64)
    if k > M:
        return att.copy()
    low_val = idx % p**k != 0
    kernel_in = bool(att[:: p ** (M - k)].all())
    if kernel_in:
        quotient_in = att[idx // p**k]
        high = ~low_val & ~quotient_in
    else:
        high = ~low_val
    return att & (low_val | high)


def global_upper_bound(spec: RingSpec, limit: int = 16):
    """(U, {class: Decomposition}) for up to ``limit`` classes attaining U."""
    ub = _upper(spec)
    return ub.value, ub.witnesses(limit)


@dataclass
class _Upper:
    spec: RingSpec
    anchored: AnchoredBounds
    primitive: np.ndarray
    value: int
    worst_didx: np.ndarray = field(repr=False)

    def witnesses(self, limit: int) -> dict[Element, Decomposition]:
        space = self.anchored.pr.space
        out = {}
        for d in self.worst_didx[:limit].tolist():
            a = space.didx_element(d)
            out[a] = self.anchored.decomposition(a)
        return out

    @cached_property
    def worst(self) -> Decomposition:
        a = self.anchored.pr.space.didx_element(int(self.worst_didx[0]))
        return self.anchored.decomposition(a)


def _upper(spec: RingSpec) -> _Upper:
    anchored = anchored_upper_bounds(spec)
    pr = anchored.pr
    table = anchored.table
    att = pr.attainable.bitmap
    reached = np.zeros_like(att)
    reached[pr.space.cidx_to_didx[table.dist != UNREACHED]] = True
    if not np.array_equal(reached, att):
        raise AssertionError("anchored decompositions do not cover the attainable set")
    prim = primitive_classes(spec, att)
    counts = table.dist[pr.space.didx_to_cidx]  # digit-indexed
    value = int(counts[prim].max())
    worst = np.flatnonzero(prim & (counts == value))
    return _Upper(spec.at(pr.M), anchored, prim, value, worst)


def lower_bound(spec: RingSpec, N_prime: int, n_cap: int = DEFAULT_N_CAP) -> LowerBoundCertificate:
    """Certificate from the attainable class of largest minimal count mod w^N'."""
    if N_prime < spec.hensel_precision:
        raise PrecisionTooLow(f"N' = {N_prime} < Hensel precision {spec.hensel_precision}")
    _check_size(spec.p, N_prime)
    pr = power_residues(spec, N_prime)
    dist = pr.plain_bfs[0]
    reached = dist != UNREACHED
    reached_nonzero = reached.copy()
    reached_nonzero[0] = False
    if not reached_nonzero.any():
        return LowerBoundCertificate(ring.zero(spec.at(N_prime)), N_prime, 0)
    top = int(dist[reached_nonzero].max())
    cands = np.flatnonzero(reached_nonzero & (dist == top))
    witness = int(pr.space.cidx_to_didx[cands].min())
    m = min(top, n_cap + 1) - 1
    return LowerBoundCertificate(pr.space.didx_element(witness), N_prime, m)


def default_lb_precision(spec: RingSpec, limit: int = SIZE_LIMIT) -> int:
    """M + k when p^(M+k) fits the bitmap budget, else the largest N' that fits."""
    M = spec.hensel_precision
    if spec.p ** (M + spec.k) <= limit:
        return M + spec.k
    n = int(math.floor(math.log(limit, spec.p)))
    while spec.p ** (n + 1) <= limit:
        n += 1
    while spec.p**n > limit:
        n -= 1
    return max(M, n)


def waring_number(spec: RingSpec, lb_precision: int | None = None, n_cap: int = DEFAULT_N_CAP,
                  direct: bool = False) -> WaringResult:
    """Bounds for g_{p,e}(k); ``g`` is set when they meet.

    With ``lb_precision`` the lower bound is taken at exactly that N'.
    Otherwise N' climbs from M to :func:`default_lb_precision`, stopping as
    soon as the bounds meet (the lower bound is monotone in N').

    For p not dividing k and e > 1 the e = 1 value is returned unless
    ``direct`` is set.
    """
    p, e, k = spec.p, spec.e, spec.k
    if k < 2:
        raise ValueError("Waring exponent k must be >= 2")
    if k % p and e > 1 and not direct:
        from .primefield import delegate_unramified

        return delegate_unramified(spec, lb_precision=lb_precision, n_cap=n_cap)
    M = spec.hensel_precision
    _check_size(p, M)
    upper = _upper(spec)
    if lb_precision is not None:
        precisions = [lb_precision]
    else:
        precisions = range(M, default_lb_precision(spec) + 1)
    cert = None
    for n in precisions:
        cert = lower_bound(spec, n, n_cap)
        if cert.bound >= upper.value:
            break
    return WaringResult(p, e, k, M, cert.N_prime, cert.bound, upper.value, cert, upper.worst)


def decomposition_table(spec: RingSpec) -> list[tuple[Element, str, Decomposition]]:
    """One anchored decomposition per attainable class mod w^M, by digit index."""
    anchored = anchored_upper_bounds(spec)
    rows = []
    for a in anchored:
        rows.append((a, ring.folded(anchored.spec, a), anchored.decomposition(a)))
    return rows


def render_decomposition(spec: RingSpec, dec: Decomposition, var: str = "w") -> str:
    """Table-style rendering ``(a - t) + s_2 + ...`` with t the tail sum."""
    s = spec.at(len(dec.target.digits))
    if not dec.tail:
        return "a"
    t = ring.total(s, dec.tail)
    parts = [f"(a - ({ring.folded(s, t, var)}))"]
    parts += [_paren(ring.folded(s, x, var)) for x in dec.tail]
    return " + ".join(parts)


def _paren(text: str) -> str:
    return f"({text})" if " " in text else text


@dataclass(frozen=True)
class ScanCell:
    e: int
    k: int
    g: int | None
    base: int | None  # g_{p,1}(k)
    verdict: str  # consistent / violation / unresolved
    applies: bool  # k even and gcd(e, k) > 1


def scan_conjecture(p: int, e_values, k_values, compute=None) -> list[ScanCell]:
    """Check g_{p,e}(k) < g_{p,1}(k) wherever k is even and gcd(e, k) > 1.

    ``compute(spec)`` returns a WaringResult (defaults to waring_number) or
    raises RingTooLarge.  Cells outside the hypothesis are consistent by
    definition.  The scan reports what it finds and proves nothing.
    """
    compute = compute or waring_number

    def g_of(e, k):
        try:
            return compute(RingSpec(p, e, k)).g
        except RingTooLarge:
            return None

    cells = []
    for k in k_values:
        base = g_of(1, k)
        for e in e_values:
            g = base if e == 1 else g_of(e, k)
            applies = k % 2 == 0 and math.gcd(e, k) > 1
            if not applies:
                verdict = "consistent"
            elif g is None or base is None:
                verdict = "unresolved"
            else:
                verdict = "consistent" if g < base else "violation"
            cells.append(ScanCell(e, k, g, base, verdict, applies))
    return cells
