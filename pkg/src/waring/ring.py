"""Exact arithmetic in Z_p[w]/(w^N) with w^e = p.

Elements are canonical digit vectors ``(c_0, ..., c_{N-1})`` with
``0 <= c_i < p`` standing for ``sum c_i w^i``.  A digit overflow of ``p`` at
position ``i`` carries one unit to position ``i + e``; carries that run past
position ``N - 1`` are dropped, which is exactly reduction mod ``w^N``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

INF = math.inf


class DivisionByOmega(ArithmeticError):
    """Raised when dividing by w^j an element of valuation < j."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def nu(p: int, n: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class RingSpec:
    """A ring Z_p[p^(1/e)] truncated at w^N, with the Waring exponent k.

    ``N`` defaults to the Hensel precision ``2 e nu_p(k) + 1``.
    """

    p: int
    e: int = 1
    k: int = 1
    N: int = field(default=0)

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.e < 1 or self.k < 1:
            raise ValueError("e and k must be positive")
        if self.N == 0:
            object.__setattr__(self, "N", self.hensel_precision)
        if self.N < 1:
            raise ValueError("precision N must be >= 1")

    @property
    def hensel_precision(self) -> int:
        return 2 * self.e * nu(self.p, self.k) + 1

    def at(self, N: int) -> "RingSpec":
        """Same ring and exponent at another precision."""
        return RingSpec(self.p, self.e, self.k, N)

    def __str__(self):
        return f"(p={self.p}, e={self.e}, k={self.k}, N={self.N})"


@dataclass(frozen=True)
class Element:
    digits: tuple[int, ...]

    def __str__(self):
        return to_text(self)


def _normalize(spec: RingSpec, coeffs: list[int]) -> Element:
    p, e, N = spec.p, spec.e, spec.N
    c = list(coeffs)
    for i in range(N):
        q, c[i] = divmod(c[i], p)
        if q and i + e < N:
            c[i + e] += q
    return Element(tuple(c[:N]))


def _check(spec: RingSpec, a: Element) -> None:
    if len(a.digits) != spec.N:
        raise ValueError(f"element has {len(a.digits)} digits, ring precision is {spec.N}")


def zero(spec: RingSpec) -> Element:
    return Element((0,) * spec.N)


def one(spec: RingSpec) -> Element:
    return Element((1,) + (0,) * (spec.N - 1))


def element(spec: RingSpec, digits: Sequence[int]) -> Element:
    """Build an element from digits, padding with zeros and validating range."""
    digits = tuple(int(d) for d in digits)
    if len(digits) > spec.N:
        raise ValueError("too many digits for precision")
    if any(not 0 <= d < spec.p for d in digits):
        raise ValueError(f"digits must lie in [0, {spec.p})")
    return Element(digits + (0,) * (spec.N - len(digits)))


def monomial(spec: RingSpec, i: int, c: int = 1) -> Element:
    """c * w^i (zero if i >= N)."""
    coeffs = [0] * spec.N
    if i < spec.N:
        coeffs[i] = c
    return _normalize(spec, coeffs)


def from_integer(spec: RingSpec, n: int) -> Element:
    if n < 0:
        return neg(spec, from_integer(spec, -n))
    coeffs = [0] * spec.N
    coeffs[0] = n
    return _normalize(spec, coeffs)


def add(spec: RingSpec, a: Element, b: Element) -> Element:
    return _normalize(spec, [x + y for x, y in zip(a.digits, b.digits)])


def sub(spec: RingSpec, a: Element, b: Element) -> Element:
    return add(spec, a, neg(spec, b))


def neg(spec: RingSpec, a: Element) -> Element:
    # floor divmod turns -c into a borrow chain; borrows past N vanish mod w^N
    return _normalize(spec, [-x for x in a.digits])


def mul(spec: RingSpec, a: Element, b: Element) -> Element:
    N = spec.N
    coeffs = [0] * N
    bd = b.digits
    for i, x in enumerate(a.digits):
        if x:
            for j in range(N - i):
                coeffs[i + j] += x * bd[j]
    return _normalize(spec, coeffs)


def power(spec: RingSpec, a: Element, m: int) -> Element:
    """a^m by square-and-multiply; power(a, 0) is one."""
    if m < 0:
        raise ValueError("negative exponent")
    result = one(spec)
    base = a
    while m:
        if m & 1:
            result = mul(spec, result, base)
        m >>= 1
        if m:
            base = mul(spec, base, base)
    return result


def total(spec: RingSpec, items: Iterable[Element]) -> Element:
    s = zero(spec)
    for x in items:
        s = add(spec, s, x)
    return s


def valuation(spec: RingSpec, a: Element) -> float:
    """Index of the first nonzero digit, ``math.inf`` for zero."""
    for i, d in enumerate(a.digits):
        if d:
            return i
    return INF


def is_unit(a: Element) -> bool:
    return a.digits[0] != 0


def shift(spec: RingSpec, a: Element, j: int) -> Element:
    """Multiply by w^j (j >= 0) or divide by w^-j (j < 0).

    Division is exact: the top ``-j`` digits of the quotient are unknown mod
    w^N and come back as zeros.
    """
    N = spec.N
    if j >= 0:
        return Element(((0,) * j + a.digits)[:N])
    j = -j
    if valuation(spec, a) < j:
        raise DivisionByOmega(f"valuation {valuation(spec, a)} < {j}")
    return Element(a.digits[j:] + (0,) * min(j, N))


def truncate(spec: RingSpec, a: Element, n: int) -> Element:
    if not 1 <= n <= len(a.digits):
        raise ValueError(f"truncation level {n} outside [1, {len(a.digits)}]")
    return Element(a.digits[:n])


def index_of(spec: RingSpec, a: Element) -> int:
    """Mixed-radix index sum c_i p^i used by dense bitmaps."""
    idx = 0
    for d in reversed(a.digits):
        idx = idx * spec.p + d
    return idx


def from_index(spec: RingSpec, idx: int) -> Element:
    digits = []
    for _ in range(spec.N):
        idx, d = divmod(idx, spec.p)
        digits.append(d)
    return Element(tuple(digits))


def components(spec: RingSpec, a: Element) -> list[int]:
    """Integers a_r with a = sum_r a_r w^r, 0 <= r < e (folded form)."""
    p, e = spec.p, spec.e
    comps = [0] * e
    for i in reversed(range(len(a.digits))):
        q, r = divmod(i, e)
        comps[r] += a.digits[i] * p**q
    return comps


# -- text forms ---------------------------------------------------------------

def to_text(a: Element) -> str:
    """Interchange form: space-separated digits, lowest position first."""
    return " ".join(str(d) for d in a.digits)


def parse_text(spec: RingSpec, text: str) -> Element:
    return element(spec, [int(t) for t in text.split()])


def _term(c: int, i: int, var: str = "w") -> str:
    if i == 0:
        return str(c)
    mono = var if i == 1 else f"{var}^{i}"
    return mono if c == 1 else f"{c}{mono}"


def pretty(a: Element, var: str = "w") -> str:
    """Digit-wise form such as ``1 + w^2 + w^3``."""
    terms = [_term(c, i, var) for i, c in enumerate(a.digits) if c]
    return " + ".join(terms) if terms else "0"


def folded(spec: RingSpec, a: Element, var: str = "w") -> str:
    """Form with integer parts folded, e.g. ``3 + 2w`` for 1 + w^2 + w^3 when e = 2."""
    terms = [_term(c, r, var) for r, c in enumerate(components(spec, a)) if c]
    return " + ".join(terms) if terms else "0"
