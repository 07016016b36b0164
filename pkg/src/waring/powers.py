"""k-th power residues of Z_p[w] at Hensel-certified precision.

A unit of Z_p[w] is a k-th power as soon as it is congruent to one modulo
w^M, M = 2 e nu_p(k) + 1.  Residue sets are therefore enumerated exactly at
any precision N >= M by raising every unit digit vector to the k-th power.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from . import ring
from ._space import UNREACHED, ResidueSpace, layered_bfs
from .ring import Element, RingSpec


class PrecisionTooLow(ValueError):
    """Requested precision is below the Hensel precision M."""


def hensel_precision(spec: RingSpec) -> int:
    return spec.hensel_precision


def _require(spec: RingSpec, N: int) -> None:
    M = hensel_precision(spec)
    if N < M:
        raise PrecisionTooLow(f"precision {N} < Hensel precision {M} for {spec}")


class ResidueSet:
    """Dense bitmap of classes mod w^N, indexed by digit index sum c_i p^i."""

    def __init__(self, spec: RingSpec, bitmap: np.ndarray):
        self.spec = spec
        self.bitmap = bitmap

    def __contains__(self, a: Element) -> bool:
        return len(a.digits) == self.spec.N and bool(self.bitmap[ring.index_of(self.spec, a)])

    def __len__(self) -> int:
        return int(self.bitmap.sum())

    def __iter__(self):
        for i in self.indices().tolist():
            yield ring.from_index(self.spec, i)

    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.bitmap)

    def __eq__(self, other):
        if isinstance(other, ResidueSet):
            return self.spec.N == other.spec.N and np.array_equal(self.bitmap, other.bitmap)
        return set(self) == set(other)

    def __repr__(self):
        return f"ResidueSet({self.spec}, {len(self)} classes)"


@dataclass(eq=False)
class PowerResidues:
    """k-th power data of one ring at precision N.

    ``unit_residues`` are the classes x^k, x a unit; ``summands`` adds the
    scaled classes w^{kj} u (1 <= j, kj < N).  Each residue keeps one k-th
    root so that decompositions can be re-checked by plain ring arithmetic.
    """

    spec: RingSpec
    M: int
    N: int
    space: ResidueSpace = field(repr=False)
    unit_didx: np.ndarray = field(repr=False)
    unit_root_didx: np.ndarray = field(repr=False)
    summand_didx: np.ndarray = field(repr=False)
    summand_root_didx: np.ndarray = field(repr=False)

    @cached_property
    def unit_residues(self) -> frozenset[Element]:
        return frozenset(self.space.didx_element(d) for d in self.unit_didx.tolist())

    @cached_property
    def summands(self) -> frozenset[Element]:
        return frozenset(self.space.didx_element(d) for d in self.summand_didx.tolist())

    @cached_property
    def unit_cidx(self) -> np.ndarray:
        return self.space.comps_to_cidx(self.space.digits_to_comps(self.unit_didx))

    @cached_property
    def summand_comps(self) -> np.ndarray:
        return self.space.digits_to_comps(self.summand_didx)

    @cached_property
    def summand_cidx(self) -> np.ndarray:
        return self.space.comps_to_cidx(self.summand_comps)

    @cached_property
    def _roots(self) -> dict[int, int]:
        return dict(zip(self.summand_didx.tolist(), self.summand_root_didx.tolist()))

    def root_of(self, a: Element) -> Element:
        """A y with y^k = a mod w^N, for a summand a."""
        return self.space.didx_element(self._roots[ring.index_of(self.spec.at(self.N), a)])

    @cached_property
    def plain_bfs(self):
        """Saturated sumset BFS from zero (minimal summand counts)."""
        return layered_bfs(self.space, np.array([0]), 0, self.summand_comps)

    @cached_property
    def attainable(self) -> ResidueSet:
        dist = self.plain_bfs[0]
        bitmap = np.zeros(self.space.size, dtype=bool)
        bitmap[self.space.cidx_to_didx[dist != UNREACHED]] = True
        return ResidueSet(self.spec.at(self.N), bitmap)


@lru_cache(maxsize=16)
def _power_residues(p: int, e: int, k: int, N: int) -> PowerResidues:
    spec = RingSpec(p, e, k, N)
    space = ResidueSpace(p, e, N)
    cidx, roots = space.kth_power_residues(k)
    unit_didx = space.cidx_to_didx[cidx]
    order = np.argsort(unit_didx)
    unit_didx, roots = unit_didx[order], roots[order]

    parts, part_roots = [unit_didx], [roots]
    j = 1
    while k * j < N:
        parts.append(space.shift_didx(unit_didx, k * j))
        part_roots.append(space.shift_didx(roots, j))
        j += 1
    allv = np.concatenate(parts)
    allr = np.concatenate(part_roots)
    # first occurrence wins, so units keep their own roots
    uniq, first = np.unique(allv, return_index=True)
    keep = uniq != 0
    return PowerResidues(
        spec=RingSpec(p, e, k),
        M=spec.hensel_precision,
        N=N,
        space=space,
        unit_didx=unit_didx,
        unit_root_didx=roots,
        summand_didx=uniq[keep],
        summand_root_didx=allr[first[keep]],
    )


def power_residues(spec: RingSpec, N: int | None = None) -> PowerResidues:
    N = spec.N if N is None else N
    _require(spec, N)
    return _power_residues(spec.p, spec.e, spec.k, N)


def enumerate_unit_residues(spec: RingSpec, N: int | None = None) -> frozenset[Element]:
    return power_residues(spec, N).unit_residues


def full_summand_set(spec: RingSpec, N: int | None = None) -> frozenset[Element]:
    return power_residues(spec, N).summands


def attainable_set(spec: RingSpec, N: int | None = None) -> ResidueSet:
    return power_residues(spec, N).attainable
