"""The gluing equations over a finite commutative ring and their solutions.

A Thurston solution assigns x(q) in R to every quad so that

    x(q') (1 - x(q)) = 1                     for q -> q' in each tetrahedron,
    prod over quads facing e of x(q) = 1     for each interior edge e,

products taken with multiplicity around the edge.  The homogeneous variant
(HTE) asks for z with sum of z over each tetrahedron zero and
prod z(q) = prod(-z(q')) around each interior edge.  Unit-valued HTE
solutions correspond to Thurston solutions via x(q) = -z(q) / z(q').
"""
from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .crossratio import ProjPoint, Vec2, cross_ratio
from .errors import (
    InvalidSolution,
    MissingQuadValue,
    NonUnitValue,
    NotAnHTESolution,
    NotAShape,
    ParseError,
)
from .rings import Ring, RingElement, make_ring
from .triangulation import (
    QUAD_VERTEX_ORDER,
    Derived,
    Triangulation,
    quad_succ,
)


def tet_completion(x: RingElement) -> tuple[RingElement, RingElement, RingElement]:
    """The full shape triple (x, 1/(1-x), (x-1)/x) of a tetrahedron.

    Applying the map x -> 1/(1-x) three times is the identity; the triple
    multiplies to -1.
    """
    one = x.ring.one
    if not x.is_unit() or not (one - x).is_unit():
        raise NotAShape(f"{x} or 1-{x} is not invertible")
    second = (one - x).inverse()
    third = (x - one) * x.inverse()
    return (x, second, third)


@dataclass(frozen=True)
class ThurstonSolution:
    ring: Ring
    values: tuple[tuple[RingElement, RingElement, RingElement], ...]

    def value(self, tet: int, quad: int) -> RingElement:
        return self.values[tet][quad]

    def shapes(self) -> tuple[RingElement, ...]:
        """The quad-0 value of each tetrahedron (a full parameterisation)."""
        return tuple(v[0] for v in self.values)


@dataclass(frozen=True)
class HTESolution:
    ring: Ring
    values: tuple[tuple[RingElement, RingElement, RingElement], ...]

    def value(self, tet: int, quad: int) -> RingElement:
        return self.values[tet][quad]

    @property
    def units_only(self) -> bool:
        return all(v.is_unit() for row in self.values for v in row)


@dataclass
class VerifyReport:
    ok: bool
    tet_failures: list = field(default_factory=list)
    edge_failures: list = field(default_factory=list)

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        parts = []
        for tet, msg in self.tet_failures:
            parts.append(f"tet {tet}: {msg}")
        for edge, val in self.edge_failures:
            parts.append(f"edge {edge}: {val}")
        return "; ".join(parts)


def _check_assigned(tri: Triangulation, values) -> None:
    if len(values) != tri.tet_count:
        raise MissingQuadValue(
            f"solution covers {len(values)} tetrahedra, triangulation has {tri.tet_count}"
        )
    for t, row in enumerate(values):
        if len(row) != 3 or any(v is None for v in row):
            raise MissingQuadValue(f"tetrahedron {t} is not fully assigned")


def verify_thurston(tri: Triangulation, sol: ThurstonSolution) -> VerifyReport:
    """Exact check of the per-tetrahedron and per-interior-edge conditions."""
    _check_assigned(tri, sol.values)
    d = tri.derive()
    one = sol.ring.one
    report = VerifyReport(ok=True)
    for t, row in enumerate(sol.values):
        for m in range(3):
            x, xn = row[m], row[quad_succ(m)]
            if xn * (one - x) != one:
                report.tet_failures.append(
                    (t, f"x(q{quad_succ(m)})(1-x(q{m})) = {xn * (one - x)}")
                )
    for e in d.interior_edges():
        w = one
        for t, m in d.quads_facing(e):
            w = w * sol.value(t, m)
        if w != one:
            report.edge_failures.append((e.index, w))
    report.ok = not report.tet_failures and not report.edge_failures
    return report


def edge_holonomies(tri: Triangulation, values) -> dict[int, RingElement]:
    """W_e = product over quads facing e (with multiplicity), all edges.

    ``values`` is a ThurstonSolution or a per-tet list of triples that may
    contain None; an edge whose facing quads are all assigned gets a value,
    one that touches a missing quad raises MissingQuadValue.
    """
    if isinstance(values, ThurstonSolution):
        rows = values.values
    else:
        rows = values
    d = tri.derive()
    out = {}
    for e in d.edges:
        w = None
        for t, m in d.quads_facing(e):
            v = rows[t][m]
            if v is None:
                raise MissingQuadValue(
                    f"edge {e.index} faces unassigned quad ({t}, {m})"
                )
            w = v if w is None else w * v
        out[e.index] = w
    return out


def solve_thurston(
    tri: Triangulation,
    ring: Ring,
    limit: int | None = None,
    jobs: int = 1,
) -> list[ThurstonSolution]:
    """Exhaustive backtracking over one shape per tetrahedron.

    The per-tetrahedron relations make the quad-0 value a complete
    parameterisation; candidates are drawn from Sh(R) in enumeration order.
    Tetrahedra are processed in descending count of edge incidences shared
    with already-processed ones (ties by index), and an interior edge is
    checked as soon as all its incidences are assigned.  Output order is the
    deterministic DFS order; ``jobs`` shards the top-level branches without
    changing it.
    """
    d = tri.derive()
    shapes = ring.shapes
    if not shapes:
        return []
    order = _tet_order(tri, d)
    pos_of = {t: i for i, t in enumerate(order)}

    # per position: edges that become fully assigned there
    edge_tets = []
    for e in d.edges:
        tets = {t for t, _ in e.incidences}
        edge_tets.append(max(pos_of[t] for t in tets) if e.interior else None)
    check_at: list[list[int]] = [[] for _ in order]
    for ei, pos in enumerate(edge_tets):
        if pos is not None:
            check_at[pos].append(ei)

    facing = [d.quads_facing(e) for e in d.edges]
    one = ring.one

    def run_branch(first_shape_index: int) -> list[tuple[tuple, ...]]:
        found: list[tuple] = []
        assign: list = [None] * tri.tet_count

        def place(pos: int) -> bool:
            """Returns False when the global limit is hit."""
            if pos == len(order):
                found.append(tuple(assign))
                return limit is None or len(found) < limit
            tet = order[pos]
            choices = (
                [shapes[first_shape_index]] if pos == 0 else shapes
            )
            for s in choices:
                assign[tet] = tet_completion(s)
                ok = True
                for ei in check_at[pos]:
                    w = one
                    for t, m in facing[ei]:
                        w = w * assign[t][m]
                    if w != one:
                        ok = False
                        break
                if ok and not place(pos + 1):
                    assign[tet] = None
                    return False
                assign[tet] = None
            return True

        place(0)
        return found

    merged: list[tuple] = []
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            branch_results = list(pool.map(run_branch, range(len(shapes))))
        for chunk in branch_results:
            merged.extend(chunk)
            if limit is not None and len(merged) >= limit:
                merged = merged[:limit]
                break
    else:
        for i in range(len(shapes)):
            merged.extend(run_branch(i))
            if limit is not None and len(merged) >= limit:
                merged = merged[:limit]
                break
    return [ThurstonSolution(ring, rows) for rows in merged]


def _tet_order(tri: Triangulation, d: Derived) -> list[int]:
    tet_edges: list[set[int]] = [set() for _ in range(tri.tet_count)]
    for e in d.edges:
        for t, _ in e.incidences:
            tet_edges[t].add(e.index)
    order: list[int] = []
    done: set[int] = set()
    covered: set[int] = set()
    while len(order) < tri.tet_count:
        best_t, best_score = -1, -1
        for t in range(tri.tet_count):
            if t in done:
                continue
            score = len(tet_edges[t] & covered)
            if score > best_score:
                best_t, best_score = t, score
        order.append(best_t)
        done.add(best_t)
        covered |= tet_edges[best_t]
    return order


def thurston_to_hte(
    tri: Triangulation,
    sol: ThurstonSolution,
    base_quads: list[int] | None = None,
) -> HTESolution:
    """Unit-valued homogeneous solution from a Thurston solution.

    With designated quad q1 in each tetrahedron (default: quad 0) the values
    z(q1) = x(q1), z(q2) = -1, z(q3) = 1 - x(q1) sum to zero and recover
    x(q) = -z(q)/z(q').
    """
    report = verify_thurston(tri, sol)
    if not report.ok:
        raise InvalidSolution(f"input does not solve the equations: {report}")
    if base_quads is None:
        base_quads = [0] * tri.tet_count
    ring = sol.ring
    one = ring.one
    rows = []
    for t in range(tri.tet_count):
        q1 = base_quads[t]
        x = sol.value(t, q1)
        row = [None, None, None]
        row[q1] = x
        row[quad_succ(q1)] = -one
        row[quad_succ(quad_succ(q1))] = one - x
        rows.append(tuple(row))
    z = HTESolution(ring, tuple(rows))
    assert z.units_only
    return z


def hte_to_thurston(tri: Triangulation, z: HTESolution) -> ThurstonSolution:
    """x(q) = -z(q) z(q')^{-1}; requires unit values and a valid z."""
    _check_assigned(tri, z.values)
    for t, row in enumerate(z.values):
        for v in row:
            if not v.is_unit():
                raise NonUnitValue(f"z value {v} at tetrahedron {t} is not a unit")
    report = verify_hte(tri, z)
    if not report.ok:
        raise NotAnHTESolution(f"input does not solve the homogeneous equations: {report}")
    rows = []
    for row in z.values:
        rows.append(
            tuple(
                -(row[m] * row[quad_succ(m)].inverse())
                for m in range(3)
            )
        )
    sol = ThurstonSolution(z.ring, tuple(rows))
    rep = verify_thurston(tri, sol)
    assert rep.ok, f"converted solution failed verification: {rep}"
    return sol


def verify_hte(tri: Triangulation, z: HTESolution) -> VerifyReport:
    """Exact check; per-edge defects U_e = prod z(q) - prod(-z(q')) reported."""
    _check_assigned(tri, z.values)
    d = tri.derive()
    ring = z.ring
    report = VerifyReport(ok=True)
    for t, row in enumerate(z.values):
        total = row[0] + row[1] + row[2]
        if total != ring.zero:
            report.tet_failures.append((t, f"sum = {total}"))
    for e in d.interior_edges():
        lhs = ring.one
        rhs = ring.one
        for t, m in d.quads_facing(e):
            lhs = lhs * z.value(t, m)
            rhs = rhs * (-z.value(t, quad_succ(m)))
        defect = lhs - rhs
        if defect != ring.zero:
            report.edge_failures.append((e.index, defect))
    report.ok = not report.tet_failures and not report.edge_failures
    return report


def hte_edge_defects(tri: Triangulation, z: HTESolution) -> dict[int, RingElement]:
    """U_e for every interior edge (zero iff the edge equation holds)."""
    d = tri.derive()
    out = {}
    for e in d.interior_edges():
        lhs = z.ring.one
        rhs = z.ring.one
        for t, m in d.quads_facing(e):
            lhs = lhs * z.value(t, m)
            rhs = rhs * (-z.value(t, quad_succ(m)))
        out[e.index] = lhs - rhs
    return out


def hte_from_vertex_vectors(tri: Triangulation, f) -> HTESolution:
    """Homogeneous solution from vectors attached to vertex classes.

    ``f`` maps a vertex-class index to a Vec2 (dict or callable).  For each
    quad, z(q) is the first component of the cross ratio of the four vertex
    vectors of its tetrahedron taken in the quad's vertex order; the second
    component is -z(q') identically, which is why the edge equations hold for
    any f.  Admissibility is not required.
    """
    d = tri.derive()
    lookup = f if callable(f) else (lambda i: f[i])
    rows = []
    for t in range(tri.tet_count):
        at = [lookup(d.vertex_of[(t, v)]) for v in range(4)]
        row = []
        for m in range(3):
            o = QUAD_VERTEX_ORDER[m]
            cr = cross_ratio(at[o[0]], at[o[1]], at[o[2]], at[o[3]])
            row.append(cr.a)
        rows.append(tuple(row))
    ring = rows[0][0].ring
    return HTESolution(ring, tuple(rows))


def quad_companions(tri: Triangulation, f) -> list[tuple[Vec2, ...]]:
    """Full cross-ratio vectors (z(q), y(q)) per quad for the vertex map f."""
    d = tri.derive()
    lookup = f if callable(f) else (lambda i: f[i])
    out = []
    for t in range(tri.tet_count):
        at = [lookup(d.vertex_of[(t, v)]) for v in range(4)]
        row = []
        for m in range(3):
            o = QUAD_VERTEX_ORDER[m]
            row.append(cross_ratio(at[o[0]], at[o[1]], at[o[2]], at[o[3]]))
        out.append(tuple(row))
    return out


def even_degree_criterion(tri: Triangulation) -> bool:
    """True iff every interior edge has even degree.

    Coincides with solvability over the three-element field, where the only
    admissible shape is 2 and 2^k = 1 exactly for even k.
    """
    return all(e.degree % 2 == 0 for e in tri.derive().interior_edges())


def quad_target_vector(z: HTESolution, tet: int, quad: int) -> Vec2:
    """The vector (z(q), -z(q')) driving the developing map at quad q."""
    zq = z.value(tet, quad)
    zqn = z.value(tet, quad_succ(quad))
    if not (zq.is_unit() and zqn.is_unit()):
        raise NonUnitValue(f"quad ({tet},{quad}) has non-unit z values")
    return Vec2(zq, -zqn)


def quad_cross_ratio_target(z: HTESolution, tet: int, quad: int) -> ProjPoint:
    """w(q) = [z(q), -z(q')] as a projective point."""
    return ProjPoint(quad_target_vector(z, tet, quad))


# ---------------------------------------------------------------------------
# solution files


def solution_to_dict(kind: str, ring: Ring, values) -> dict:
    return {
        "ring": ring.spec_string(),
        "kind": kind,
        "values": [[v.to_wire() for v in row] for row in values],
    }


def solution_to_json(sol: ThurstonSolution | HTESolution) -> str:
    kind = "thurston" if isinstance(sol, ThurstonSolution) else "hte"
    return json.dumps(solution_to_dict(kind, sol.ring, sol.values), indent=1) + "\n"


def solution_from_dict(data: dict, tri: Triangulation | None = None):
    if not isinstance(data, dict):
        raise ParseError("solution file must be a JSON object")
    for key in ("ring", "kind", "values"):
        if key not in data:
            raise ParseError(f"solution file missing {key!r}")
    ring = make_ring(data["ring"])
    kind = data["kind"]
    if kind not in ("thurston", "hte"):
        raise ParseError(f"unknown solution kind {kind!r}")
    values = data["values"]
    if tri is not None and len(values) != tri.tet_count:
        raise ParseError(
            f"solution lists {len(values)} tetrahedra, triangulation has {tri.tet_count}"
        )
    rows = []
    for t, row in enumerate(values):
        if len(row) != 3:
            raise ParseError(f"tetrahedron {t}: expected 3 quad values")
        rows.append(tuple(ring.from_wire(v) for v in row))
    cls = ThurstonSolution if kind == "thurston" else HTESolution
    return cls(ring, tuple(rows))


def solution_from_json(text: str, tri: Triangulation | None = None):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from None
    return solution_from_dict(data, tri)
