"""Skew bilinear form, cross ratio and PGL(2) over a finite commutative ring.

The form on column vectors is <(a,b)^t, (c,d)^t> = ad - bc.  The cross ratio
of four vectors is the pair

    (A1, A2; A3, A4) = (<A1,A4><A2,A3>, <A1,A3><A2,A4>)

which scales by a single unit when any argument is rescaled by a unit, so it
descends to projective points.  Projective equality is decided by scanning
unit scalars; no canonical representative exists over rings with zero
divisors, so none is attempted.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    FormNotUnit,
    NotAdmissible,
    NotAUnit,
    RingMismatch,
)
from .rings import Ring, RingElement


@dataclass(frozen=True)
class Vec2:
    a: RingElement
    b: RingElement

    def __post_init__(self):
        if self.a.ring != self.b.ring:
            raise RingMismatch("vector entries from different rings")

    @property
    def ring(self) -> Ring:
        return self.a.ring

    def scale(self, c: RingElement) -> Vec2:
        return Vec2(c * self.a, c * self.b)

    def __add__(self, other: Vec2) -> Vec2:
        return Vec2(self.a + other.a, self.b + other.b)

    def __neg__(self) -> Vec2:
        return Vec2(-self.a, -self.b)

    def __str__(self) -> str:
        return f"({self.a},{self.b})"


def vec(ring: Ring, a, b) -> Vec2:
    return Vec2(ring.element(a), ring.element(b))


def form(A: Vec2, B: Vec2) -> RingElement:
    """<A, B> = det [A B] = a d - b c."""
    if A.ring != B.ring:
        raise RingMismatch("form arguments from different rings")
    return A.a * B.b - A.b * B.a


@dataclass(frozen=True)
class Mat2:
    """2x2 matrix [[a, c], [b, d]] acting on column vectors from the left."""

    a: RingElement
    c: RingElement
    b: RingElement
    d: RingElement

    @property
    def ring(self) -> Ring:
        return self.a.ring

    def det(self) -> RingElement:
        return self.a * self.d - self.b * self.c

    def adjugate(self) -> Mat2:
        return Mat2(self.d, -self.c, -self.b, self.a)

    def __mul__(self, other: Mat2) -> Mat2:
        return Mat2(
            self.a * other.a + self.c * other.b,
            self.a * other.c + self.c * other.d,
            self.b * other.a + self.d * other.b,
            self.b * other.c + self.d * other.d,
        )

    def act(self, v: Vec2) -> Vec2:
        return Vec2(self.a * v.a + self.c * v.b, self.b * v.a + self.d * v.b)

    def scale(self, c: RingElement) -> Mat2:
        return Mat2(c * self.a, c * self.c, c * self.b, c * self.d)

    def inverse(self) -> Mat2:
        d = self.det()
        if not d.is_unit():
            raise NotAUnit("matrix determinant is not a unit")
        return self.adjugate().scale(d.inverse())

    def is_scalar(self) -> bool:
        zero = self.ring.zero
        return self.b == zero and self.c == zero and self.a == self.d

    def rows(self):
        return [[self.a, self.c], [self.b, self.d]]

    def __str__(self) -> str:
        return f"[[{self.a},{self.c}],[{self.b},{self.d}]]"


def identity(ring: Ring) -> Mat2:
    return Mat2(ring.one, ring.zero, ring.zero, ring.one)


def adjugate(X: Mat2) -> Mat2:
    return X.adjugate()


def cross_ratio(A1: Vec2, A2: Vec2, A3: Vec2, A4: Vec2) -> Vec2:
    """(A1, A2; A3, A4) as the vector (<A1,A4><A2,A3>, <A1,A3><A2,A4>)."""
    return Vec2(form(A1, A4) * form(A2, A3), form(A1, A3) * form(A2, A4))


def is_admissible(vectors) -> bool:
    """Pairwise form values are all units."""
    vecs = [v.rep if isinstance(v, ProjPoint) else v for v in vectors]
    for i in range(len(vecs)):
        for j in range(i + 1, len(vecs)):
            if not form(vecs[i], vecs[j]).is_unit():
                return False
    return True


def normalize_pair(A: Vec2, B: Vec2) -> Mat2:
    """The matrix sending A to (1,0)^t and B to (0,1)^t.

    Requires <A, B> invertible; the matrix is adj([A B]) / <A, B>.
    """
    f = form(A, B)
    if not f.is_unit():
        raise FormNotUnit(f"<A,B> = {f} is not invertible")
    inv = f.inverse()
    return Mat2(B.b, -B.a, -A.b, A.a).scale(inv)


def fourth_point(A1: Vec2, A2: Vec2, A3: Vec2, v: Vec2) -> Vec2:
    """The unique A4 with (A1, A2; A3, A4) = v, for an admissible triple.

    Solved in coordinates normalised by N = normalize_pair(A1, A2): there
    (A1,A2;A3,A4) = (-a3 y4, -b3 x4) with A3 -> (a3, b3), so

        x4 = -c2 / b3,   y4 = -c1 / a3

    for the rescaled target (c1, c2) = det(N)^2 v, and A4 is mapped back by
    N^{-1}.  The result is asserted by substitution.
    """
    if not is_admissible([A1, A2, A3]):
        raise NotAdmissible("fourth_point needs an admissible triple")
    N = normalize_pair(A1, A2)
    d = N.det()
    target = v.scale(d * d)
    A3n = N.act(A3)
    a3, b3 = A3n.a, A3n.b
    x4 = -(target.b * b3.inverse())
    y4 = -(target.a * a3.inverse())
    A4 = N.inverse().act(Vec2(x4, y4))
    got = cross_ratio(A1, A2, A3, A4)
    assert got == v, f"fourth point substitution failed: {got} != {v}"
    return A4


class ProjPoint:
    """A point of the projective line: a vector with a unit form partner,
    taken up to unit scalars."""

    __slots__ = ("rep",)

    def __init__(self, rep: Vec2):
        ring = rep.ring
        if not ring.ideal_contains_unit(rep.a.payload, rep.b.payload):
            raise NotAdmissible(f"{rep} does not represent a projective point")
        self.rep = rep

    @property
    def ring(self) -> Ring:
        return self.rep.ring

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return vec_unit_multiple(self.rep, other.rep)

    def __hash__(self):
        raise TypeError("ProjPoint is unhashable (no canonical representative)")

    def __str__(self) -> str:
        return f"[{self.rep.a},{self.rep.b}]"

    def __repr__(self) -> str:
        return f"ProjPoint{self}"


def vec_unit_multiple(u: Vec2, v: Vec2) -> bool:
    """Whether u = lambda v for some unit lambda (exhaustive unit scan)."""
    if u.ring != v.ring:
        raise RingMismatch("comparing vectors over different rings")
    for lam in u.ring.units:
        if u.a == lam * v.a and u.b == lam * v.b:
            return True
    return False


class PGLElement:
    """A class of GL(2) matrices modulo unit scalars.

    Stores an arbitrary unit-determinant representative; equality via the
    adjugate test: X ~ Y iff X adj(Y) is scalar (the scalar is then
    automatically a unit because its square is det X det Y).
    """

    __slots__ = ("rep",)

    def __init__(self, rep: Mat2):
        if not rep.det().is_unit():
            raise NotAUnit(f"determinant {rep.det()} is not a unit")
        self.rep = rep

    @property
    def ring(self) -> Ring:
        return self.rep.ring

    def __mul__(self, other: PGLElement) -> PGLElement:
        return PGLElement(self.rep * other.rep)

    def inverse(self) -> PGLElement:
        return PGLElement(self.rep.adjugate())

    def is_identity(self) -> bool:
        return self.rep.is_scalar()

    def __eq__(self, other) -> bool:
        if not isinstance(other, PGLElement):
            return NotImplemented
        return (self.rep * other.rep.adjugate()).is_scalar()

    def __hash__(self):
        raise TypeError("PGLElement is unhashable (no canonical representative)")

    def apply(self, P: ProjPoint) -> ProjPoint:
        return ProjPoint(self.rep.act(P.rep))

    def __str__(self) -> str:
        return str(self.rep)

    def __repr__(self) -> str:
        return f"PGLElement{self}"


def pgl_identity(ring: Ring) -> PGLElement:
    return PGLElement(identity(ring))


def pgl_equal(X: PGLElement, Y: PGLElement) -> bool:
    return X == Y


def apply_pgl(X: PGLElement, P: ProjPoint) -> ProjPoint:
    return X.apply(P)


def _to_standard_triple(A1: Vec2, A2: Vec2, A3: Vec2) -> Mat2:
    """A matrix sending [A1], [A2], [A3] to [1,0], [0,1], [1,1]."""
    N = normalize_pair(A1, A2)
    A3n = N.act(A3)
    a3, b3 = A3n.a, A3n.b
    if not (a3.is_unit() and b3.is_unit()):
        raise NotAdmissible("triple is not admissible")
    ring = A1.ring
    D = Mat2(a3.inverse(), ring.zero, ring.zero, b3.inverse())
    return D * N


def mobius_from_triples(A_triple, B_triple) -> PGLElement:
    """The unique projective transformation with [X A_i] = [B_i], i = 1,2,3."""
    if not is_admissible(list(A_triple)) or not is_admissible(list(B_triple)):
        raise NotAdmissible("both triples must be admissible")
    A = [p.rep if isinstance(p, ProjPoint) else p for p in A_triple]
    B = [p.rep if isinstance(p, ProjPoint) else p for p in B_triple]
    MA = _to_standard_triple(*A)
    MB = _to_standard_triple(*B)
    X = PGLElement(MB.inverse() * MA)
    for Ai, Bi in zip(A, B):
        assert vec_unit_multiple(X.rep.act(Ai), Bi), "mobius construction failed"
    return X
