"""Compact oriented triangulated pseudo 3-manifolds and derived combinatorics.

Data model conventions, fixed once for the whole package:

* Tetrahedra have vertices 0..3 and are positively oriented in that order.
  Face f is the face opposite vertex f.
* A face gluing carries a full vertex permutation ``perm`` with
  ``perm[face] = to_face``; it must be odd (orientation reversing).
* The three quads of a tetrahedron are indexed by m in {0,1,2}; quad m faces
  (is disjoint from) the opposite-edge pair containing {0, m+1}:

      quad 0 ~ {0,1}, {2,3}    quad 1 ~ {0,2}, {1,3}    quad 2 ~ {0,3}, {1,2}

  The cyclic action is m -> m+1 (mod 3); even vertex relabelings rotate quad
  indices, so the action only depends on the orientation.
* For an oriented edge (u, w) inside a tetrahedron the side vertices are the
  ordered pair (p, r) making (u, w, p, r) an even permutation of (0,1,2,3).
  Walking around the edge exits through face p (the face containing u, w, r);
  crossing an odd gluing swaps the roles of p and r, so the walk progresses.
* ``QUAD_VERTEX_ORDER[m]`` lists the four vertices in the order whose cross
  ratio realises quad m's target vector.  With vectors A_v at the vertices,
  the first component z_m of the cross ratio taken in this order satisfies
  the companion identity  (second component of q_m) = -z_{m+1}  identically.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import (
    EdgeNotInterior,
    EvenPermutation,
    FaceNotFree,
    FaceReused,
    NonInvolutiveGluing,
    ParseError,
)

VERTICES = (0, 1, 2, 3)

EDGE_SLOTS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))

# quad index for each edge slot it faces
QUAD_OF_SLOT = {
    (0, 1): 0, (2, 3): 0,
    (0, 2): 1, (1, 3): 1,
    (0, 3): 2, (1, 2): 2,
}

# the two opposite edge slots of each quad
QUAD_SLOTS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))

OPPOSITE_SLOT = {
    (0, 1): (2, 3), (2, 3): (0, 1),
    (0, 2): (1, 3), (1, 3): (0, 2),
    (0, 3): (1, 2), (1, 2): (0, 3),
}

# vertex order realising quad m's cross-ratio target (see module docstring)
QUAD_VERTEX_ORDER = ((1, 0, 2, 3), (2, 0, 3, 1), (3, 0, 1, 2))


def perm_parity(perm) -> int:
    """0 for even, 1 for odd."""
    inv = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                inv += 1
    return inv & 1


def perm_inverse(perm) -> tuple[int, ...]:
    out = [0] * len(perm)
    for i, v in enumerate(perm):
        out[v] = i
    return tuple(out)


def perm_compose(outer, inner) -> tuple[int, ...]:
    """outer o inner: apply inner first."""
    return tuple(outer[inner[i]] for i in range(len(inner)))


def quad_succ(m: int) -> int:
    return (m + 1) % 3


def quad_image(perm, m: int) -> int:
    """Quad index whose edge pair is the image of quad m's pair under perm."""
    a, b = QUAD_SLOTS[m][0]
    u, v = perm[a], perm[b]
    return QUAD_OF_SLOT[(u, v) if u < v else (v, u)]


def edge_frame(u: int, w: int) -> tuple[int, int]:
    """Side vertices (p, r) with (u, w, p, r) an even permutation."""
    c, d = (x for x in VERTICES if x not in (u, w))
    if perm_parity((u, w, c, d)) == 0:
        return c, d
    return d, c


@dataclass(frozen=True)
class FaceGluing:
    tet: int
    face: int
    to_tet: int
    to_face: int
    perm: tuple[int, int, int, int]


class Triangulation:
    """A disjoint union of oriented tetrahedra with odd face identifications.

    Immutable after construction; derived data is computed once by derive().
    """

    def __init__(self, tet_count: int, gluings):
        if tet_count < 1:
            raise ParseError("need at least one tetrahedron")
        self.tet_count = tet_count
        glus = []
        seen: dict[tuple[int, int], int] = {}
        for idx, g in enumerate(gluings):
            g = FaceGluing(g.tet, g.face, g.to_tet, g.to_face, tuple(g.perm))
            if not (0 <= g.tet < tet_count and 0 <= g.to_tet < tet_count):
                raise ParseError(f"gluing {idx}: tetrahedron index out of range")
            if not (0 <= g.face < 4 and 0 <= g.to_face < 4):
                raise ParseError(f"gluing {idx}: face index out of range")
            if sorted(g.perm) != [0, 1, 2, 3]:
                raise ParseError(f"gluing {idx}: perm {g.perm} is not a permutation")
            if g.perm[g.face] != g.to_face:
                raise NonInvolutiveGluing(
                    f"gluing {idx}: perm does not send face {g.face} to face {g.to_face}"
                )
            if perm_parity(g.perm) == 0:
                raise EvenPermutation(
                    f"gluing {idx}: permutation {g.perm} is even; "
                    "face identifications must reverse orientation"
                )
            if (g.tet, g.face) == (g.to_tet, g.to_face):
                raise FaceReused(f"gluing {idx}: face glued to itself")
            for side in ((g.tet, g.face), (g.to_tet, g.to_face)):
                if side in seen:
                    raise FaceReused(
                        f"gluing {idx}: face {side} already used in gluing {seen[side]}"
                    )
            seen[(g.tet, g.face)] = idx
            seen[(g.to_tet, g.to_face)] = idx
            glus.append(g)
        self.gluings = tuple(glus)
        # both directions; value = (other tet, other face, vertex map this->other)
        self.glued: dict[tuple[int, int], tuple[int, int, tuple[int, ...]]] = {}
        for g in self.gluings:
            self.glued[(g.tet, g.face)] = (g.to_tet, g.to_face, g.perm)
            self.glued[(g.to_tet, g.to_face)] = (g.tet, g.face, perm_inverse(g.perm))
        self._derived: Derived | None = None

    # -- basic queries -------------------------------------------------------

    def is_glued(self, tet: int, face: int) -> bool:
        return (tet, face) in self.glued

    def boundary_faces(self) -> list[tuple[int, int]]:
        return [
            (t, f)
            for t in range(self.tet_count)
            for f in range(4)
            if (t, f) not in self.glued
        ]

    def derive(self) -> Derived:
        if self._derived is None:
            self._derived = Derived(self)
        return self._derived

    # -- serialization -------------------------------------------------------

    def to_dict(self) -> dict:
        glus = sorted(self.gluings, key=lambda g: (g.tet, g.face))
        return {
            "tetrahedra": self.tet_count,
            "gluings": [
                {
                    "tet": g.tet,
                    "face": g.face,
                    "to_tet": g.to_tet,
                    "to_face": g.to_face,
                    "perm": list(g.perm),
                }
                for g in glus
            ],
        }

    def serialize(self) -> str:
        return json.dumps(self.to_dict(), indent=1) + "\n"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Triangulation)
            and self.tet_count == other.tet_count
            and self._gluing_set() == other._gluing_set()
        )

    def _gluing_set(self):
        out = set()
        for g in self.gluings:
            a, b = (g.tet, g.face), (g.to_tet, g.to_face)
            if a <= b:
                out.add((a, b, g.perm))
            else:
                out.add((b, a, perm_inverse(g.perm)))
        return out

    def __repr__(self) -> str:
        return f"Triangulation({self.tet_count} tets, {len(self.gluings)} gluings)"


def parse_triangulation(text: str) -> Triangulation:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from None
    if not isinstance(data, dict) or "tetrahedra" not in data:
        raise ParseError('expected an object with "tetrahedra" and "gluings"')
    n = data["tetrahedra"]
    if not isinstance(n, int):
        raise ParseError('"tetrahedra" must be an integer')
    raw = data.get("gluings", [])
    glus = []
    for idx, item in enumerate(raw):
        try:
            glus.append(
                FaceGluing(
                    item["tet"],
                    item["face"],
                    item["to_tet"],
                    item["to_face"],
                    tuple(item["perm"]),
                )
            )
        except (KeyError, TypeError) as exc:
            raise ParseError(f"gluing {idx}: missing or malformed field ({exc})") from None
    return Triangulation(n, glus)


# ---------------------------------------------------------------------------
# derived combinatorics


@dataclass(frozen=True)
class EdgeClass:
    """An edge of the quotient complex.

    ``incidences`` lists (tet, (u, w)) around the edge, consistently oriented
    u -> w; for interior edges the list is cyclic, for boundary edges it is a
    chain.  ``exit_faces[i]`` is the face crossed between incidence i and
    i+1 (wrapping for interior edges).
    """

    index: int
    incidences: tuple[tuple[int, tuple[int, int]], ...]
    exit_faces: tuple[int, ...]
    interior: bool

    @property
    def degree(self) -> int:
        return len(self.incidences)

    def slots(self) -> list[tuple[int, tuple[int, int]]]:
        return [(t, (min(u, w), max(u, w))) for t, (u, w) in self.incidences]


@dataclass(frozen=True)
class VertexClass:
    index: int
    corners: tuple[tuple[int, int], ...]  # (tet, vertex)


@dataclass
class LinkSurface:
    triangle_count: int
    euler: int
    components: int
    closed: bool


@dataclass(frozen=True)
class DualPath:
    """Edge path [tets; faces] in the dual graph.

    ``faces[i]`` is the face of ``tets[i]`` crossed to reach ``tets[i+1]``.
    """

    tets: tuple[int, ...]
    faces: tuple[int, ...]

    def __post_init__(self):
        if len(self.tets) != len(self.faces) + 1:
            raise ParseError("dual path needs one more tetrahedron than faces")

    @property
    def steps(self) -> int:
        return len(self.faces)

    def is_loop(self) -> bool:
        return self.tets[0] == self.tets[-1]

    def reversed(self, tri: Triangulation) -> DualPath:
        tets = tuple(reversed(self.tets))
        faces = []
        for i in reversed(range(len(self.faces))):
            t, f = self.tets[i], self.faces[i]
            to_tet, to_face, _ = tri.glued[(t, f)]
            faces.append(to_face)
        return DualPath(tets, tuple(faces))


class Derived:
    """Edge classes, vertex classes, normal-arc pairing, links, dual graph."""

    def __init__(self, tri: Triangulation):
        self.tri = tri
        self.edges: list[EdgeClass] = []
        self.edge_of_slot: dict[tuple[int, tuple[int, int]], int] = {}
        self._build_edges()
        self.vertex_classes: list[VertexClass] = []
        self.vertex_of: dict[tuple[int, int], int] = {}
        self._build_vertices()
        self.dual_adjacency = self._build_dual()
        total = sum(e.degree for e in self.edges)
        assert total == 6 * tri.tet_count

    # edges -------------------------------------------------------------------

    def _cross(self, tet: int, u: int, w: int, exit_face: int):
        entry = self.tri.glued.get((tet, exit_face))
        if entry is None:
            return None
        to_tet, _, vmap = entry
        return to_tet, vmap[u], vmap[w]

    def _walk(self, tet: int, u: int, w: int):
        """Forward walk from an oriented incidence; (incidences, exits, closed)."""
        start = (tet, u, w)
        inc = [(tet, (u, w))]
        exits = []
        cur = start
        while True:
            t, a, b = cur
            p, _ = edge_frame(a, b)
            nxt = self._cross(t, a, b, p)
            if nxt is None:
                return inc, exits, False
            exits.append(p)
            if nxt == start:
                return inc, exits, True
            # a closed walk must return with the starting orientation
            assert (nxt[0], (nxt[1], nxt[2])) != (start[0], (start[2], start[1])), (
                "edge walk returned with reversed orientation; "
                "input is not coherently oriented"
            )
            inc.append((nxt[0], (nxt[1], nxt[2])))
            cur = nxt

    @staticmethod
    def _flip_chain(incidences):
        return [(t, (b, a)) for t, (a, b) in reversed(incidences)]

    @staticmethod
    def _forward_exits(incidences, interior):
        n = len(incidences) if interior else len(incidences) - 1
        exits = []
        for i in range(n):
            _, (a, b) = incidences[i]
            p, _ = edge_frame(a, b)
            exits.append(p)
        return exits

    def _build_edges(self):
        seen: set[tuple[int, tuple[int, int]]] = set()
        for tet in range(self.tri.tet_count):
            for slot in EDGE_SLOTS:
                if (tet, slot) in seen:
                    continue
                u, w = slot
                inc_f, _, closed = self._walk(tet, u, w)
                if closed:
                    incidences, interior = inc_f, True
                else:
                    inc_b, _, closed_b = self._walk(tet, w, u)
                    assert not closed_b
                    incidences = self._flip_chain(inc_b)[:-1] + inc_f
                    interior = False
                # canonical form: least (tet, sorted-slot) incidence carries u < w;
                # interior cycles additionally start at that incidence
                keyed = [
                    ((t, (min(a, b), max(a, b))), i)
                    for i, (t, (a, b)) in enumerate(incidences)
                ]
                _, best_i = min(keyed)
                a0, b0 = incidences[best_i][1]
                if a0 > b0:
                    incidences = self._flip_chain(incidences)
                    keyed = [
                        ((t, (min(a, b), max(a, b))), i)
                        for i, (t, (a, b)) in enumerate(incidences)
                    ]
                    _, best_i = min(keyed)
                if interior:
                    incidences = incidences[best_i:] + incidences[:best_i]
                exits = self._forward_exits(incidences, interior)
                idx = len(self.edges)
                ec = EdgeClass(idx, tuple(incidences), tuple(exits), interior)
                self.edges.append(ec)
                for t, s in ec.slots():
                    assert (t, s) not in seen
                    seen.add((t, s))
                    self.edge_of_slot[(t, s)] = idx

    # vertices ------------------------------------------------------------------

    def _build_vertices(self):
        parent: dict[tuple[int, int], tuple[int, int]] = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for t in range(self.tri.tet_count):
            for v in VERTICES:
                parent[(t, v)] = (t, v)
        for (t, f), (t2, _, vmap) in self.tri.glued.items():
            for v in VERTICES:
                if v == f:
                    continue
                a, b = find((t, v)), find((t2, vmap[v]))
                if a != b:
                    parent[max(a, b)] = min(a, b)
        groups: dict[tuple[int, int], list[tuple[int, int]]] = {}
        for t in range(self.tri.tet_count):
            for v in VERTICES:
                groups.setdefault(find((t, v)), []).append((t, v))
        for i, rep in enumerate(sorted(groups)):
            cls = VertexClass(i, tuple(sorted(groups[rep])))
            self.vertex_classes.append(cls)
            for c in cls.corners:
                self.vertex_of[c] = i

    # dual graph ------------------------------------------------------------------

    def _build_dual(self):
        adj: dict[int, list[tuple[int, int]]] = {
            t: [] for t in range(self.tri.tet_count)
        }
        for g in self.tri.gluings:
            adj[g.tet].append((g.to_tet, g.face))
            adj[g.to_tet].append((g.tet, g.to_face))
        for t in adj:
            adj[t].sort()
        n_boundary = len(self.tri.boundary_faces())
        assert len(self.tri.gluings) == (4 * self.tri.tet_count - n_boundary) // 2
        return adj

    # queries -----------------------------------------------------------------

    def interior_edges(self) -> list[EdgeClass]:
        return [e for e in self.edges if e.interior]

    def quads_facing(self, edge: EdgeClass) -> list[tuple[int, int]]:
        """Quads facing the edge, one per incidence, cyclically ordered."""
        return [
            (t, QUAD_OF_SLOT[(min(u, w), max(u, w))])
            for t, (u, w) in edge.incidences
        ]

    def dual_edge_cycle(self, edge: EdgeClass) -> DualPath:
        if not edge.interior:
            raise EdgeNotInterior(f"edge {edge.index} lies in the boundary")
        tets = [t for t, _ in edge.incidences]
        return DualPath(tuple(tets + [tets[0]]), tuple(edge.exit_faces))

    def vertex_links(self) -> list[LinkSurface]:
        out = []
        for cls in self.vertex_classes:
            triangles = list(cls.corners)
            tri_index = {c: i for i, c in enumerate(triangles)}
            # arcs: (tet, face, vertex) with vertex on the face
            paired = 0
            unpaired = 0
            uf = list(range(len(triangles)))

            def find(i):
                while uf[i] != i:
                    uf[i] = uf[uf[i]]
                    i = uf[i]
                return i

            seen_arcs = set()
            for (t, v) in triangles:
                for f in VERTICES:
                    if f == v:
                        continue
                    if (t, f, v) in seen_arcs:
                        continue
                    entry = self.tri.glued.get((t, f))
                    if entry is None:
                        unpaired += 1
                        seen_arcs.add((t, f, v))
                        continue
                    t2, f2, vmap = entry
                    seen_arcs.add((t, f, v))
                    seen_arcs.add((t2, f2, vmap[v]))
                    paired += 1
                    a, b = find(tri_index[(t, v)]), find(tri_index[(t2, vmap[v])])
                    if a != b:
                        uf[max(a, b)] = min(a, b)
            arc_classes = paired + unpaired
            # link vertices = edge-class ends landing on this vertex class
            corners = 0
            for e in self.edges:
                t, (u, w) = e.incidences[0]
                for end in (u, w):
                    if self.vertex_of[(t, end)] == cls.index:
                        corners += 1
            comps = len({find(i) for i in range(len(triangles))})
            out.append(
                LinkSurface(
                    triangle_count=len(triangles),
                    euler=corners - arc_classes + len(triangles),
                    components=comps,
                    closed=unpaired == 0,
                )
            )
        return out

    def is_closed(self) -> bool:
        return not self.tri.boundary_faces()


# ---------------------------------------------------------------------------
# assembling triangulations


def glue(
    t1: Triangulation,
    t2: Triangulation | None,
    pairings,
) -> Triangulation:
    """Glue t2 onto t1 (or self-glue t1 if t2 is None) along free boundary faces.

    ``pairings`` is a list of ((tet, face), (tet, face), perm); the second
    member indexes into t2 when present, with perm mapping first-side vertices
    to second-side vertices.
    """
    offset = t1.tet_count if t2 is not None else 0
    tet_count = t1.tet_count + (t2.tet_count if t2 is not None else 0)
    glus = list(t1.gluings)
    if t2 is not None:
        for g in t2.gluings:
            glus.append(
                FaceGluing(g.tet + offset, g.face, g.to_tet + offset, g.to_face, g.perm)
            )
    combined = Triangulation(tet_count, glus)
    used = set(combined.glued)
    new = list(glus)
    for (a_tet, a_face), (b_tet, b_face), perm in pairings:
        b_tet_g = b_tet + offset if t2 is not None else b_tet
        for side in ((a_tet, a_face), (b_tet_g, b_face)):
            if side in used:
                raise FaceNotFree(f"face {side} is not free")
        if (a_tet, a_face) == (b_tet_g, b_face):
            raise FaceNotFree(f"cannot glue face {(a_tet, a_face)} to itself")
        used.add((a_tet, a_face))
        used.add((b_tet_g, b_face))
        new.append(FaceGluing(a_tet, a_face, b_tet_g, b_face, tuple(perm)))
    return Triangulation(tet_count, new)
