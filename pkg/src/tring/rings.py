"""Finite commutative rings with identity: Z/n and the Galois fields F_{p^k}.

Elements are kept in canonical form (reduced residue, or reduced coefficient
vector over F_p), so structural equality is ring equality.  Every ring can
enumerate its elements, its units and its shape set

    Sh(R) = {x in R : x and 1-x are units},

the set of admissible per-tetrahedron values for the gluing equations.
Enumeration order is fixed (ascending residue / lexicographic coefficient
vector from the constant term up) and downstream solvers inherit their
determinism from it.
"""
from __future__ import annotations

import math
from functools import cached_property

from .errors import (
    ModulusTooSmall,
    NotAUnit,
    NotPrime,
    ParseError,
    ReduciblePolynomial,
    RingMismatch,
    RingTooLarge,
)

SIZE_CAP = 2 ** 16  # everything downstream enumerates; keep worst cases bounded


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, int(math.isqrt(n)) + 1):
        if n % d == 0:
            return False
    return True


class RingElement:
    """An element of a Ring, stored in canonical form.

    `payload` is an int residue for Z/n and a tuple of k residues mod p
    (constant term first) for F_{p^k}.  Arithmetic between elements of
    different rings raises RingMismatch rather than coercing.
    """

    __slots__ = ("ring", "payload")

    def __init__(self, ring: Ring, payload):
        self.ring = ring
        self.payload = payload

    def _check(self, other: RingElement) -> None:
        if not isinstance(other, RingElement) or self.ring != other.ring:
            raise RingMismatch(f"cannot combine {self!r} with {other!r}")

    def __add__(self, other: RingElement) -> RingElement:
        self._check(other)
        return RingElement(self.ring, self.ring._add(self.payload, other.payload))

    def __sub__(self, other: RingElement) -> RingElement:
        self._check(other)
        return RingElement(self.ring, self.ring._add(self.payload, self.ring._neg(other.payload)))

    def __neg__(self) -> RingElement:
        return RingElement(self.ring, self.ring._neg(self.payload))

    def __mul__(self, other: RingElement) -> RingElement:
        self._check(other)
        return RingElement(self.ring, self.ring._mul(self.payload, other.payload))

    def __pow__(self, n: int) -> RingElement:
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_unit(self) -> bool:
        return self.ring._is_unit(self.payload)

    def inverse(self) -> RingElement:
        if not self.is_unit():
            raise NotAUnit(f"{self} is not invertible in {self.ring}")
        return RingElement(self.ring, self.ring._inv(self.payload))

    def is_zero(self) -> bool:
        return self == self.ring.zero

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RingElement)
            and self.ring == other.ring
            and self.payload == other.payload
        )

    def __hash__(self) -> int:
        return hash((self.ring, self.payload))

    def to_wire(self):
        """JSON-ready encoding: int residue for Z/n, [c0..c_{k-1}] for F_{p^k}."""
        return self.ring._to_wire(self.payload)

    def __str__(self) -> str:
        return self.ring._fmt(self.payload)

    def __repr__(self) -> str:
        return f"<{self} in {self.ring}>"


class Ring:
    """Common interface of Zn and GaloisField."""

    def element(self, raw) -> RingElement:
        return RingElement(self, self._canon(raw))

    @cached_property
    def zero(self) -> RingElement:
        return self.element(0)

    @cached_property
    def one(self) -> RingElement:
        return self.element(1)

    def from_int(self, n: int) -> RingElement:
        """Image of the integer n under the canonical map Z -> R."""
        out = self.zero
        step = self.one if n >= 0 else -self.one
        for _ in range(abs(n)):
            out = out + step
        return out

    def elements(self) -> list[RingElement]:
        """All elements in the fixed enumeration order."""
        return [RingElement(self, p) for p in self._payloads()]

    @cached_property
    def units(self) -> list[RingElement]:
        return [a for a in self.elements() if a.is_unit()]

    @cached_property
    def shapes(self) -> list[RingElement]:
        """Sh(R): elements x with x and 1-x both invertible, enumeration order."""
        one = self.one
        return [x for x in self.elements() if x.is_unit() and (one - x).is_unit()]

    def from_wire(self, wire) -> RingElement:
        return self.element(self._from_wire(wire))

    # subclass responsibilities -------------------------------------------------

    def _canon(self, raw):
        raise NotImplementedError

    def _payloads(self):
        raise NotImplementedError

    def _add(self, a, b):
        raise NotImplementedError

    def _neg(self, a):
        raise NotImplementedError

    def _mul(self, a, b):
        raise NotImplementedError

    def _is_unit(self, a) -> bool:
        raise NotImplementedError

    def _inv(self, a):
        raise NotImplementedError

    def _to_wire(self, a):
        raise NotImplementedError

    def _from_wire(self, wire):
        raise NotImplementedError

    def _fmt(self, a) -> str:
        raise NotImplementedError


class Zn(Ring):
    """The ring Z/nZ of residues, n >= 2."""

    def __init__(self, n: int):
        if n < 2:
            raise ModulusTooSmall(f"Z/{n} is not a ring with 0 != 1")
        if n > SIZE_CAP:
            raise RingTooLarge(f"|Z/{n}| exceeds the cap {SIZE_CAP}")
        self.n = n

    @property
    def size(self) -> int:
        return self.n

    def spec_string(self) -> str:
        return f"Z/{self.n}"

    def _canon(self, raw):
        return int(raw) % self.n

    def _payloads(self):
        return range(self.n)

    def _add(self, a, b):
        return (a + b) % self.n

    def _neg(self, a):
        return (-a) % self.n

    def _mul(self, a, b):
        return (a * b) % self.n

    def _is_unit(self, a) -> bool:
        return math.gcd(a, self.n) == 1

    def _inv(self, a):
        return pow(a, -1, self.n)

    def _to_wire(self, a):
        return a

    def _from_wire(self, wire):
        if not isinstance(wire, int):
            raise ParseError(f"Z/{self.n} element must be an integer, got {wire!r}")
        return wire

    def _fmt(self, a) -> str:
        return str(a)

    def ideal_contains_unit(self, a: int, b: int) -> bool:
        """Whether the ideal (a, b) is all of Z/n."""
        return math.gcd(math.gcd(a, b), self.n) == 1

    def __eq__(self, other) -> bool:
        return isinstance(other, Zn) and other.n == self.n

    def __hash__(self) -> int:
        return hash(("Zn", self.n))

    def __repr__(self) -> str:
        return f"Z/{self.n}"


# ---------------------------------------------------------------------------
# polynomial helpers over F_p (coefficient lists, constant term first)

def _poly_trim(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mul(a, b, p: int) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_divmod(a, b, p: int):
    """Quotient and remainder of a by b (b nonzero) in F_p[x]."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    inv_lb = pow(lb, -1, p)
    q = [0] * max(len(a) - db, 0)
    while len(a) - 1 >= db and any(a):
        da = len(a) - 1
        if a[-1] == 0:
            a.pop()
            continue
        coef = a[-1] * inv_lb % p
        q[da - db] = coef
        for i in range(db + 1):
            a[da - db + i] = (a[da - db + i] - coef * b[i]) % p
        a.pop()
    return _poly_trim(q), _poly_trim(a)


def _poly_ext_gcd(a, b, p: int):
    """(g, u, v) with u*a + v*b = g in F_p[x]."""
    r0, r1 = tuple(a), tuple(b)
    s0, s1 = (1,), ()
    t0, t1 = (), (1,)
    while r1:
        q, r = _poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1, p), p)
        t0, t1 = t1, _poly_sub(t0, _poly_mul(q, t1, p), p)
    return r0, s0, t0


def _poly_sub(a, b, p: int) -> tuple[int, ...]:
    out = [0] * max(len(a), len(b))
    for i, ai in enumerate(a):
        out[i] = ai
    for i, bi in enumerate(b):
        out[i] = (out[i] - bi) % p
    return _poly_trim(out)


def _monic_polys(p: int, deg: int):
    """All monic polynomials of the given degree over F_p."""
    def rec(prefix, i):
        if i == deg:
            yield tuple(prefix) + (1,)
            return
        for c in range(p):
            prefix.append(c)
            yield from rec(prefix, i + 1)
            prefix.pop()
    yield from rec([], 0)


def _is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    k = len(modulus) - 1
    if k < 1:
        return False
    for d in range(1, k // 2 + 1):
        for g in _monic_polys(p, d):
            _, r = _poly_divmod(modulus, g, p)
            if not r:
                return False
    return True


class GaloisField(Ring):
    """F_{p^k} presented as F_p[x] modulo a monic irreducible polynomial.

    Elements are coefficient vectors of length k, constant term first.
    """

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        if not _is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if k < 1:
            raise ParseError("extension degree must be >= 1")
        if p ** k > SIZE_CAP:
            raise RingTooLarge(f"|F_{p}^{k}| exceeds the cap {SIZE_CAP}")
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ParseError(f"modulus must be monic of degree {k}")
        if not _is_irreducible(modulus, p):
            raise ReduciblePolynomial(
                f"modulus {list(modulus)} is reducible over F_{p}"
            )
        self.p = p
        self.k = k
        self.modulus = modulus

    @property
    def size(self) -> int:
        return self.p ** self.k

    def spec_string(self) -> str:
        return f"F:{self.p}:{self.k}:" + ",".join(str(c) for c in self.modulus)

    def _canon(self, raw):
        if isinstance(raw, int):
            vec = (raw % self.p,) + (0,) * (self.k - 1)
            return vec
        vec = tuple(int(c) % self.p for c in raw)
        if len(vec) > self.k:
            _, r = _poly_divmod(vec, self.modulus, self.p)
            vec = r
        return vec + (0,) * (self.k - len(vec))

    def _payloads(self):
        # ascending value sum c_i p^i, constant term least significant:
        # F_4 enumerates 0, 1, a, a+1
        out = []
        for idx in range(self.p ** self.k):
            vec = []
            rem = idx
            for _ in range(self.k):
                rem, c = divmod(rem, self.p)
                vec.append(c)
            out.append(tuple(vec))
        return out

    def _add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def _neg(self, a):
        return tuple((-x) % self.p for x in a)

    def _mul(self, a, b):
        prod = _poly_mul(_poly_trim(list(a)), _poly_trim(list(b)), self.p)
        _, r = _poly_divmod(prod, self.modulus, self.p)
        return r + (0,) * (self.k - len(r))

    def _is_unit(self, a) -> bool:
        return any(a)

    def _inv(self, a):
        g, u, _ = _poly_ext_gcd(_poly_trim(list(a)), self.modulus, self.p)
        # g is a nonzero constant; scale u by its inverse
        c_inv = pow(g[0], -1, self.p)
        inv = tuple(x * c_inv % self.p for x in u)
        _, r = _poly_divmod(inv, self.modulus, self.p)
        return r + (0,) * (self.k - len(r))

    def _to_wire(self, a):
        return list(a)

    def _from_wire(self, wire):
        if not isinstance(wire, (list, tuple)) or len(wire) != self.k:
            raise ParseError(
                f"F_{self.p}^{self.k} element must be a list of {self.k} ints, got {wire!r}"
            )
        return wire

    def _fmt(self, a) -> str:
        if self.k == 1:
            return str(a[0])
        terms = []
        for i, c in enumerate(a):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                var = "a" if i == 1 else f"a^{i}"
                terms.append(var if c == 1 else f"{c}{var}")
        return "+".join(reversed(terms)) if terms else "0"

    def ideal_contains_unit(self, a, b) -> bool:
        return any(a) or any(b)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GaloisField)
            and (other.p, other.k, other.modulus) == (self.p, self.k, self.modulus)
        )

    def __hash__(self) -> int:
        return hash(("GF", self.p, self.k, self.modulus))

    def __repr__(self) -> str:
        return f"F_{self.p}^{self.k}" if self.k > 1 else f"F_{self.p}"


def make_ring(spec: str) -> Ring:
    """Parse a ring spec string.

    Grammar: ``Z/<n>`` for the residue ring, ``F:<p>:<k>:<c0>,...,<ck>`` for
    F_{p^k} with the given monic irreducible modulus polynomial.
    """
    spec = spec.strip()
    if spec.startswith("Z/"):
        body = spec[2:]
        if not body.isdigit():
            raise ParseError(f"bad ring spec {spec!r}: expected Z/<decimal>")
        return Zn(int(body))
    if spec.startswith("F:"):
        parts = spec.split(":")
        if len(parts) != 4:
            raise ParseError(f"bad ring spec {spec!r}: expected F:<p>:<k>:<c0,...,ck>")
        try:
            p = int(parts[1])
            k = int(parts[2])
            coeffs = tuple(int(c) for c in parts[3].split(","))
        except ValueError as exc:
            raise ParseError(f"bad ring spec {spec!r}: {exc}") from None
        return GaloisField(p, k, coeffs)
    raise ParseError(f"bad ring spec {spec!r}: expected Z/<n> or F:<p>:<k>:<coeffs>")
