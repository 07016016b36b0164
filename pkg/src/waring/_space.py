"""Vectorized arithmetic on all of Z_p[w]/(w^N) at once.

An element sum c_i w^i is stored by its *components* a_r = sum_q c_{qe+r} p^q
(0 <= r < e), so that x = sum_r a_r w^r with a_r taken mod p^{n_r}, where
n_r = #{i < N : i = r mod e}.  In this layout addition is coordinatewise
modular addition and the additive group is Z/p^{n_0} x ... x Z/p^{n_{e-1}},
which is what the breadth-first sumset kernels rely on.

Two flat encodings of a class coexist:

* the *digit index* sum c_i p^i (public, used for ordering and bitmaps);
* the *component index* sum a_r * stride_r in C order (internal, cheap to add).
"""

from __future__ import annotations

from functools import cached_property

import numba
import numpy as np

from .ring import Element, RingSpec

UNREACHED = 255
CHUNK = 1 << 20


class ResidueSpace:
    def __init__(self, p: int, e: int, N: int):
        self.p, self.e, self.N = p, e, N
        self.lengths = [max(0, -(-(N - r) // e)) for r in range(e)]
        self.moduli = np.array([p**n for n in self.lengths], dtype=np.int64)
        strides = [1] * e
        for r in range(e - 2, -1, -1):
            strides[r] = strides[r + 1] * int(self.moduli[r + 1])
        self.strides = np.array(strides, dtype=np.int64)
        self.size = p**N
        if int(self.moduli.max()) ** 2 * p * e >= 2**62:
            raise OverflowError(f"precision {N} too large for 64-bit components")

    @classmethod
    def of(cls, spec: RingSpec) -> "ResidueSpace":
        return cls(spec.p, spec.e, spec.N)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(int(m) for m in self.moduli)

    # -- conversions ---------------------------------------------------------

    def digits_to_comps(self, didx: np.ndarray) -> np.ndarray:
        p, e = self.p, self.e
        didx = np.asarray(didx, dtype=np.int64)
        comps = np.zeros((e, didx.size), dtype=np.int64)
        rest = didx.copy()
        for i in range(self.N):
            rest, c = np.divmod(rest, p)
            q, r = divmod(i, e)
            comps[r] += c * p**q
        return comps

    def comps_to_digits(self, comps: np.ndarray) -> np.ndarray:
        p, e = self.p, self.e
        didx = np.zeros(comps.shape[1], dtype=np.int64)
        for r in range(e):
            rest = comps[r].copy()
            for q in range(self.lengths[r]):
                rest, c = np.divmod(rest, p)
                didx += c * p ** (q * e + r)
        return didx

    def comps_to_cidx(self, comps: np.ndarray) -> np.ndarray:
        return (comps * self.strides[:, None]).sum(axis=0)

    def cidx_to_comps(self, cidx: np.ndarray) -> np.ndarray:
        cidx = np.asarray(cidx, dtype=np.int64)
        return (cidx[None, :] // self.strides[:, None]) % self.moduli[:, None]

    @cached_property
    def cidx_to_didx(self) -> np.ndarray:
        """Permutation array: component index -> digit index."""
        out = np.empty(self.size, dtype=np.int64)
        for start in range(0, self.size, CHUNK):
            c = np.arange(start, min(start + CHUNK, self.size), dtype=np.int64)
            out[start : start + c.size] = self.comps_to_digits(self.cidx_to_comps(c))
        return out

    @cached_property
    def didx_to_cidx(self) -> np.ndarray:
        out = np.empty(self.size, dtype=np.int64)
        out[self.cidx_to_didx] = np.arange(self.size, dtype=np.int64)
        return out

    def element_cidx(self, a: Element) -> int:
        comps = np.array([[0]] * self.e, dtype=np.int64)
        for i, c in enumerate(a.digits):
            q, r = divmod(i, self.e)
            comps[r, 0] += c * self.p**q
        return int(self.comps_to_cidx(comps)[0])

    def cidx_element(self, cidx: int) -> Element:
        comps = self.cidx_to_comps(np.array([cidx]))
        digits = []
        for i in range(self.N):
            q, r = divmod(i, self.e)
            digits.append(int(comps[r, 0] // self.p**q % self.p))
        return Element(tuple(digits))

    def didx_element(self, didx: int) -> Element:
        digits = []
        for _ in range(self.N):
            didx, d = divmod(int(didx), self.p)
            digits.append(d)
        return Element(tuple(digits))

    # -- arithmetic ----------------------------------------------------------

    def mul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        e, p, m = self.e, self.p, self.moduli
        C = np.zeros_like(A)
        for r in range(e):
            for s in range(e):
                t = r + s
                prod = A[r] * B[s]
                if t >= e:
                    t -= e
                    prod *= p
                C[t] = (C[t] + prod) % m[t]
        return C

    def power(self, A: np.ndarray, k: int) -> np.ndarray:
        result = np.zeros_like(A)
        result[0] = 1 % self.moduli[0]
        base = A
        while k:
            if k & 1:
                result = self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result

    def add_cidx(self, x: int, y: int) -> int:
        c = self.cidx_to_comps(np.array([x, y]))
        return int(((c[:, 0] + c[:, 1]) % self.moduli * self.strides).sum())

    def sub_cidx(self, x: int, y: int) -> int:
        c = self.cidx_to_comps(np.array([x, y]))
        return int(((c[:, 0] - c[:, 1]) % self.moduli * self.strides).sum())

    def shift_didx(self, didx: np.ndarray, j: int) -> np.ndarray:
        """Multiply by w^j in digit-index form (a plain base-p shift)."""
        return (np.asarray(didx, dtype=np.int64) * self.p**j) % self.size

    def unit_digit_indices(self, start: int, stop: int) -> np.ndarray:
        d = np.arange(start, stop, dtype=np.int64)
        return d[d % self.p != 0]

    def kth_power_residues(self, k: int) -> tuple[np.ndarray, np.ndarray]:
        """All x^k for units x, deduplicated.

        Returns ``(cidx, root_didx)``: sorted component indices of the residues
        and, for each, the digit index of one unit whose k-th power it is.
        """
        seen = np.zeros(self.size, dtype=bool)
        roots = {}
        for start in range(0, self.size, CHUNK):
            didx = self.unit_digit_indices(start, min(start + CHUNK, self.size))
            if didx.size == 0:
                continue
            cid = self.comps_to_cidx(self.power(self.digits_to_comps(didx), k))
            uniq, first = np.unique(cid, return_index=True)
            fresh = ~seen[uniq]
            seen[uniq[fresh]] = True
            roots.update(zip(uniq[fresh].tolist(), didx[first[fresh]].tolist()))
        cidx = np.flatnonzero(seen)
        return cidx, np.array([roots[c] for c in cidx.tolist()], dtype=np.int64)


# -- breadth-first sumset kernels ----------------------------------------------


@numba.njit(cache=True, nogil=True)
def _expand(frontier, nf, level, dist, parent, summ, moduli, strides, out):
    """Add every summand to every frontier class; record first arrivals.

    ``summ`` holds summand components (S x e).  Returns the number of newly
    reached classes written to ``out``.
    """
    e = moduli.size
    S = summ.shape[0]
    a = np.empty(e, dtype=np.int64)
    n = 0
    for i in range(nf):
        c = frontier[i]
        for r in range(e):
            a[r] = (c // strides[r]) % moduli[r]
        for j in range(S):
            t = 0
            for r in range(e):
                v = a[r] + summ[j, r]
                if v >= moduli[r]:
                    v -= moduli[r]
                t += v * strides[r]
            if dist[t] == 255:
                dist[t] = level
                parent[t] = j
                out[n] = t
                n += 1
    return n


def layered_bfs(space: ResidueSpace, sources: np.ndarray, source_level: int,
                summand_comps: np.ndarray, max_level: int | None = None):
    """Minimal summand counts over the component-indexed space.

    ``sources`` (component indices) start at ``source_level`` with parent -1.
    Each later level adds one summand.  Stops at saturation or after
    ``max_level``.  Returns ``(dist, parent, saturated)`` where ``dist`` is
    uint8 with 255 for unreached classes.
    """
    if max_level is None:
        max_level = 254
    max_level = min(max_level, 254)
    dist = np.full(space.size, UNREACHED, dtype=np.uint8)
    parent = np.full(space.size, -1, dtype=np.int32)
    sources = np.unique(np.asarray(sources, dtype=np.int64))
    dist[sources] = source_level
    summ = np.ascontiguousarray(summand_comps.T, dtype=np.int64)
    buf_a = np.empty(space.size, dtype=np.int64)
    buf_b = np.empty(space.size, dtype=np.int64)
    buf_a[: sources.size] = sources
    nf = sources.size
    level = source_level
    while nf and level < max_level and summ.shape[0]:
        level += 1
        nf = _expand(buf_a, nf, level, dist, parent, summ, space.moduli, space.strides, buf_b)
        buf_a, buf_b = buf_b, buf_a
    saturated = nf == 0 or summ.shape[0] == 0
    return dist, parent, saturated
