"""Small finite fields GF(p^e) as lookup tables.

An element is an integer in ``0..q-1`` whose base-p digits are the
coefficients of a polynomial of degree < e (digit i is the coefficient of
x^i). Multiplication reduces modulo the first monic irreducible polynomial of
degree e, where "first" means smallest when its lower coefficients are read as
a base-p number.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from .bounds import prime_power


class NotPrimePower(ValueError):
    def __init__(self, q: int):
        super().__init__(f"{q} is not a prime power")
        self.q = q


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    """a mod m over GF(p); m monic, lists are low-order first."""
    a = a[:]
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return [c % p for c in a[:dm]] if dm else []


def _monic(degree: int, p: int):
    for low in product(range(p), repeat=degree):
        yield list(low[::-1]) + [1]


def is_irreducible(poly: list[int], p: int) -> bool:
    e = len(poly) - 1
    for d in range(1, e // 2 + 1):
        for m in _monic(d, p):
            if not any(_poly_mod(poly, m, p)):
                return False
    return True


def first_irreducible(p: int, e: int) -> list[int]:
    for code in range(p**e):
        low = [(code // p**i) % p for i in range(e)]
        poly = low + [1]
        if is_irreducible(poly, p):
            return poly
    raise AssertionError("every degree has an irreducible polynomial")


@dataclass(frozen=True, eq=False)
class GaloisField:
    q: int
    p: int
    e: int
    modulus: tuple[int, ...]
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray  # inv[0] is 0 by convention

    def sub(self, a, b):
        return self.add[a, self.neg[b]]

    def div(self, a, b):
        return self.mul[a, self.inv[b]]


@lru_cache(maxsize=None)
def galois_field(q: int) -> GaloisField:
    pe = prime_power(q)
    if pe is None:
        raise NotPrimePower(q)
    p, e = pe
    digits = np.array([[(x // p**i) % p for i in range(e)] for x in range(q)], dtype=np.int64)
    weights = p ** np.arange(e)
    add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
    modulus = first_irreducible(p, e) if e > 1 else [0, 1]
    mul = np.zeros((q, q), dtype=np.int64)
    for a in range(q):
        for b in range(a, q):
            prod = [0] * (2 * e - 1)
            for i in range(e):
                for j in range(e):
                    prod[i + j] += digits[a, i] * digits[b, j]
            red = _poly_mod(prod, modulus, p) if e > 1 else [prod[0] % p]
            val = sum(c * p**i for i, c in enumerate(red))
            mul[a, b] = mul[b, a] = val
    neg = np.array([int(np.flatnonzero(add[a] == 0)[0]) for a in range(q)])
    inv = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        inv[a] = int(np.flatnonzero(mul[a] == 1)[0])
    for arr in (add, mul, neg, inv):
        arr.flags.writeable = False
    return GaloisField(q, p, e, tuple(modulus), add, mul, neg, inv)
