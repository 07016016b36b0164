"""Independent re-checks of emitted certificates.

Decompositions are re-checked with the scalar ring arithmetic of
:mod:`waring.ring` only.  Lower-bound certificates are re-checked without the
breadth-first kernel: k-th powers are re-enumerated by digit convolution and
the exact-n sumsets are built with FFT convolutions over the additive group.
"""

from __future__ import annotations

import numpy as np

from . import ring
from .engine import Decomposition, LowerBoundCertificate
from .ring import RingSpec


class CertificateError(AssertionError):
    pass


def verify_decomposition(spec: RingSpec, dec: Decomposition) -> bool:
    """Check roots, anchor unit-ness and the sum, all mod w^len(target).

    Raises CertificateError with the failing clause; returns True otherwise.
    """
    N = len(dec.target.digits)
    if N < spec.hensel_precision:
        raise CertificateError(f"decomposition precision {N} < M = {spec.hensel_precision}")
    s = spec.at(N)
    k = spec.k
    if not ring.is_unit(dec.anchor) or not ring.is_unit(dec.anchor_root):
        raise CertificateError("anchor is not a unit")
    if ring.power(s, dec.anchor_root, k) != dec.anchor:
        raise CertificateError("anchor root does not give the anchor")
    if len(dec.tail) != len(dec.tail_roots):
        raise CertificateError("tail and roots differ in length")
    for t, y in zip(dec.tail, dec.tail_roots):
        if t == ring.zero(s) or ring.power(s, y, k) != t:
            raise CertificateError(f"tail term {t} is not the k-th power of {y}")
    if ring.add(s, dec.anchor, ring.total(s, dec.tail)) != dec.target:
        raise CertificateError("terms do not add up to the target")
    return True


# -- lower-bound re-run ---------------------------------------------------------


def _digit_powers(p: int, e: int, N: int, k: int, digits: np.ndarray) -> np.ndarray:
    """x^k mod w^N for rows of ``digits`` (shape (n, N)) by schoolbook convolution."""

    def normalize(c):
        for i in range(N):
            q, c[:, i] = np.divmod(c[:, i], p)
            if i + e < N:
                c[:, i + e] += q
        return c

    def mul(a, b):
        c = np.zeros_like(a)
        for i in range(N):
            c[:, i:] += a[:, i : i + 1] * b[:, : N - i]
        return normalize(c)

    result = np.zeros_like(digits)
    result[:, 0] = 1
    base = digits.copy()
    while k:
        if k & 1:
            result = mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return result


def power_residue_indicator(p: int, e: int, k: int, N: int) -> np.ndarray:
    """Indicator (over digit indices mod p^N) of nonzero k-th power residues."""
    size = p**N
    weights = p ** np.arange(N, dtype=np.int64)
    ind = np.zeros(size, dtype=bool)
    chunk = 1 << 18
    for start in range(0, size, chunk):
        idx = np.arange(start, min(size, start + chunk), dtype=np.int64)
        digits = (idx[:, None] // weights[None, :]) % p
        ind[_digit_powers(p, e, N, k, digits) @ weights] = True
    ind[0] = False
    return ind


def _to_group(p: int, e: int, N: int, didx_indicator: np.ndarray) -> np.ndarray:
    """Reshape a digit-indexed indicator onto the group prod Z/p^{n_r}."""
    lengths = [-(-(N - r) // e) for r in range(e)]
    idx = np.arange(p**N, dtype=np.int64)
    comps = []
    for r in range(e):
        a = np.zeros_like(idx)
        for q in range(lengths[r]):
            a += (idx // p ** (q * e + r)) % p * p**q
        comps.append(a)
    grid = np.zeros([p**n for n in lengths], dtype=np.float64)
    grid[tuple(comps)] = didx_indicator
    return grid, comps


def _cyclic_convolve(a: np.ndarray, b_hat: np.ndarray) -> np.ndarray:
    axes = tuple(range(a.ndim))
    x = np.fft.irfftn(np.fft.rfftn(a) * b_hat, s=a.shape, axes=axes)
    r = np.round(x)
    if np.abs(x - r).max() >= 0.25:
        raise CertificateError("FFT rounding guard tripped")
    return r > 0.5


def verify_lower_certificate(spec: RingSpec, cert: LowerBoundCertificate) -> bool:
    """Re-run the sumset at N': the witness lies outside every <= m-fold sum.

    Also checks that the witness does lie in the (m+1)-fold sumset, so the
    certificate describes the true minimal count of its class.
    """
    p, e, k, N = spec.p, spec.e, spec.k, cert.N_prime
    if N < spec.hensel_precision:
        raise CertificateError(f"N' = {N} < M")
    if len(cert.witness.digits) != N:
        raise CertificateError("witness precision differs from N'")
    ind = power_residue_indicator(p, e, k, N)
    grid, comps = _to_group(p, e, N, ind)
    w = ring.index_of(spec.at(N), cert.witness)
    pos = tuple(int(c[w]) for c in comps)
    s_hat = np.fft.rfftn(grid)
    layer = np.zeros_like(grid, dtype=bool)
    layer[(0,) * e] = True  # exact-0 sums
    for n in range(1, cert.m + 2):
        layer = _cyclic_convolve(layer.astype(np.float64), s_hat)
        if n <= cert.m:
            if layer[pos]:
                raise CertificateError(f"witness is a sum of {n} k-th power residues")
        elif not layer[pos]:
            raise CertificateError(f"witness is not a sum of {n} k-th power residues")
    if cert.m == 0 and w == 0:
        raise CertificateError("zero witness")
    return True
