"""Root data of osp(1|2n): simple roots, Cartan matrix, integrality, graded 2rho.

Weights are tuples of :class:`fractions.Fraction` holding coordinates in the
orthonormal epsilon basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

WeightVec = tuple  # tuple[Fraction, ...] in the epsilon basis


def weight(coords: Iterable) -> WeightVec:
    return tuple(Fraction(c) for c in coords)


def zero_weight(n: int) -> WeightVec:
    return (Fraction(0),) * n


def eps(n: int, i: int) -> WeightVec:
    """``epsilon_i`` (1-based); ``eps(n, -i)`` is ``-epsilon_i`` and ``eps(n, 0)`` is 0."""
    v = [Fraction(0)] * n
    if i:
        v[abs(i) - 1] = Fraction(1 if i > 0 else -1)
    return tuple(v)


def inner(a: WeightVec, b: WeightVec) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def wadd(a: WeightVec, b: WeightVec) -> WeightVec:
    return tuple(x + y for x, y in zip(a, b))


def wsub(a: WeightVec, b: WeightVec) -> WeightVec:
    return tuple(x - y for x, y in zip(a, b))


def wneg(a: WeightVec) -> WeightVec:
    return tuple(-x for x in a)


def wscale(c, a: WeightVec) -> WeightVec:
    return tuple(c * x for x in a)


def weight_str(w: WeightVec) -> str:
    return ",".join(str(x) for x in w)


def parse_weight(text: str, n: int | None = None) -> WeightVec:
    """Parse ``"1,0"`` or ``"1/2,-1"`` (epsilon coordinates)."""
    parts = [p.strip() for p in text.split(",") if p.strip()]
    w = tuple(Fraction(p) for p in parts)
    if n is not None:
        if len(w) > n:
            raise ValueError(f"weight {text!r} has more than {n} coordinates")
        w = w + (Fraction(0),) * (n - len(w))
    return w


@dataclass(frozen=True)
class RootDatum:
    n: int
    simple_roots: tuple[WeightVec, ...]
    parity: tuple[int, ...]
    cartan: tuple[tuple[int, ...], ...]
    highest_root: WeightVec

    def alpha(self, i: int) -> WeightVec:
        """Simple root ``alpha_i`` (1-based)."""
        return self.simple_roots[i - 1]

    def pairing(self, i: int, mu: WeightVec) -> Fraction:
        """``(alpha_i, mu)``."""
        return inner(self.simple_roots[i - 1], mu)


@lru_cache(maxsize=None)
def build_root_datum(n: int) -> RootDatum:
    if n < 1:
        raise ValueError("rank must be at least 1")
    roots = tuple(
        wsub(eps(n, i), eps(n, i + 1)) if i < n else eps(n, n) for i in range(1, n + 1)
    )
    parity = tuple(1 if i == n else 0 for i in range(1, n + 1))
    cartan = []
    for a in roots:
        row = []
        for b in roots:
            v = 2 * inner(a, b) / inner(a, a)
            assert v.denominator == 1
            row.append(int(v))
        cartan.append(tuple(row))
    return RootDatum(n, roots, parity, tuple(cartan), wscale(2, eps(n, 1)))


def integral_labels(d: RootDatum, mu: WeightVec) -> tuple[Fraction, ...]:
    """Labels ``2(mu, a_i)/(a_i, a_i)`` for even simple roots and
    ``(mu, a_n)/(a_n, a_n)`` for the odd one."""
    out = []
    for i, a in enumerate(d.simple_roots, start=1):
        c = 1 if i == d.n else 2
        out.append(c * inner(mu, a) / inner(a, a))
    return tuple(out)


def is_integral(d: RootDatum, mu: WeightVec) -> bool:
    return all(l.denominator == 1 for l in integral_labels(d, mu))


def is_dominant(d: RootDatum, mu: WeightVec) -> bool:
    return all(l.denominator == 1 and l >= 0 for l in integral_labels(d, mu))


def positive_roots(n: int) -> tuple[list[WeightVec], list[WeightVec]]:
    """(even positive roots, odd positive roots)."""
    even = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            even.append(wsub(eps(n, i), eps(n, j)))
            even.append(wadd(eps(n, i), eps(n, j)))
        even.append(wscale(2, eps(n, i)))
    odd = [eps(n, i) for i in range(1, n + 1)]
    return even, odd


@lru_cache(maxsize=None)
def two_rho(d: RootDatum) -> WeightVec:
    """Graded sum of positive roots: even roots minus odd roots."""
    even, odd = positive_roots(d.n)
    acc = zero_weight(d.n)
    for r in even:
        acc = wadd(acc, r)
    for r in odd:
        acc = wsub(acc, r)
    return acc


@lru_cache(maxsize=None)
def k2rho_exponents(d: RootDatum) -> tuple[int, ...]:
    """Integers ``c_j`` with ``sum c_j alpha_j = 2rho``.

    Since ``eps_i = alpha_i + ... + alpha_n``, the coefficient of
    ``alpha_j`` is the partial sum of the first ``j`` coordinates.
    """
    target = two_rho(d)
    coeffs, acc = [], Fraction(0)
    for x in target:
        acc += x
        coeffs.append(acc)
    recon = zero_weight(d.n)
    for c, a in zip(coeffs, d.simple_roots):
        recon = wadd(recon, wscale(c, a))
    if recon != target or any(c.denominator != 1 for c in coeffs):
        raise ArithmeticError("2rho is not an integral combination of simple roots")
    return tuple(int(c) for c in coeffs)


def dominant_in_weyl_orbit(d: RootDatum, mu: WeightVec) -> WeightVec:
    """Dominant representative under signed permutations of coordinates."""
    if not is_integral(d, mu):
        raise ValueError(f"weight {weight_str(mu)} is not integral")
    return tuple(sorted((abs(x) for x in mu), reverse=True))


def signed_permutations(mu: Sequence) -> list[WeightVec]:
    """All images of ``mu`` under the hyperoctahedral group (with repeats removed)."""
    from itertools import permutations, product

    out = set()
    for perm in permutations(mu):
        for signs in product((1, -1), repeat=len(mu)):
            out.add(tuple(s * x for s, x in zip(signs, perm)))
    return sorted(out, reverse=True)


def dominant_weights(n: int, max_size: int) -> list[WeightVec]:
    """Dominant integral weights (partitions with at most ``n`` parts) with
    ``|lambda| <= max_size``, ordered by size then lexicographically."""
    out = []

    def parts(remaining: int, max_part: int, k: int):
        if k == 0:
            yield ()
            return
        for p in range(min(remaining, max_part), -1, -1):
            for rest in parts(remaining - p, p, k - 1):
                yield (p,) + rest

    for size in range(max_size + 1):
        for p in parts(size, size, n):
            if sum(p) == size:
                out.append(weight(p))
    return out


def size(mu: WeightVec) -> Fraction:
    return sum(mu, Fraction(0))
