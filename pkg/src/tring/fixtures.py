"""Built-in triangulations with labelled combinatorial metadata.

The two-tetrahedron 3-ball blocks T_021, T_022, T_023 and the three-around-
an-edge block T_33 carry the quad/edge labels used by the Pachner machinery:
a shared triangle tau with edges e_1, e_2, e_3, quads x_i (in sigma+) and
y_i (in sigma-) facing e_i, satisfying the chains

    x_1 -> x_2 -> x_3      y_3 -> y_2 -> y_1

under the cyclic quad action, and for T_33 the quads a_i facing the interior
edge e_0 with b_i = a_i', c_i = b_i'.

The closed fixtures were produced by the exhaustive gluing search in
scripts/search_closed.py and frozen here; the test suite re-checks their
defining properties (closed, all vertex links spheres, edge degrees).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ParseError
from .triangulation import FaceGluing, Triangulation

Slot = tuple[int, tuple[int, int]]
QuadRef = tuple[int, int]


@dataclass
class Fixture:
    name: str
    triangulation: Triangulation
    labels: dict = field(default_factory=dict)

    def derived(self):
        return self.triangulation.derive()

    def edge_index(self, slot: Slot) -> int:
        return self.derived().edge_of_slot[(slot[0], slot[1])]


def build_T021() -> Fixture:
    """Two tetrahedra sharing one face; no interior edges."""
    tri = Triangulation(2, [FaceGluing(0, 0, 1, 0, (0, 1, 3, 2))])
    labels = {
        "shared_face": (0, 0),
        "e": [(0, (2, 3)), (0, (1, 3)), (0, (1, 2))],
        "e_plus": [(0, (0, 1)), (0, (0, 2)), (0, (0, 3))],
        "e_minus": [(1, (0, 1)), (1, (0, 3)), (1, (0, 2))],
        "x_quads": [(0, 0), (0, 1), (0, 2)],
        "y_quads": [(1, 0), (1, 2), (1, 1)],
    }
    return Fixture("T021", tri, labels)


def build_T022() -> Fixture:
    """Two tetrahedra sharing two faces; one interior edge of degree 2."""
    tri = Triangulation(
        2,
        [
            FaceGluing(0, 2, 1, 2, (1, 0, 2, 3)),
            FaceGluing(0, 3, 1, 3, (1, 0, 2, 3)),
        ],
    )
    labels = {
        "shared_face": (0, 3),
        "e": [(0, (0, 1)), (0, (0, 2)), (0, (1, 2))],
        "x_quads": [(0, 0), (0, 1), (0, 2)],
        "y_quads": [(1, 0), (1, 2), (1, 1)],
        "interior_edge": (0, (0, 1)),
        "e0_plus": (0, (2, 3)),
        "e0_minus": (1, (2, 3)),
        "q1_plus": (0, 0),
        "q1_minus": (1, 0),
    }
    return Fixture("T022", tri, labels)


def build_T023() -> Fixture:
    """Two tetrahedra sharing three faces: the triangle pillow.

    One interior vertex, three interior edges of degree 2, boundary a
    two-triangle sphere.
    """
    tri = Triangulation(
        2,
        [
            FaceGluing(0, 1, 1, 1, (0, 1, 3, 2)),
            FaceGluing(0, 2, 1, 3, (0, 1, 3, 2)),
            FaceGluing(0, 3, 1, 2, (0, 1, 3, 2)),
        ],
    )
    labels = {
        "shared_face": (0, 3),
        "e": [(0, (0, 1)), (0, (0, 2)), (0, (1, 2))],
        "x_quads": [(0, 0), (0, 1), (0, 2)],
        "y_quads": [(1, 0), (1, 2), (1, 1)],
        "interior_edges": [(0, (0, 1)), (0, (0, 2)), (0, (0, 3))],
    }
    return Fixture("T023", tri, labels)


def build_T33() -> Fixture:
    """Three tetrahedra around one interior edge of degree 3."""
    tri = Triangulation(
        3,
        [
            FaceGluing(0, 2, 1, 3, (0, 1, 3, 2)),
            FaceGluing(1, 2, 2, 3, (0, 1, 3, 2)),
            FaceGluing(2, 2, 0, 3, (0, 1, 3, 2)),
        ],
    )
    labels = {
        "e0": (0, (0, 1)),
        "a_quads": [(0, 0), (1, 0), (2, 0)],
        "b_quads": [(0, 1), (1, 1), (2, 1)],
        "c_quads": [(0, 2), (1, 2), (2, 2)],
        "degree_one_edges": [(0, (2, 3)), (1, (2, 3)), (2, (2, 3))],
    }
    return Fixture("T33", tri, labels)


def build_lone() -> Fixture:
    """A single unglued tetrahedron."""
    return Fixture("lone", Triangulation(1, []))


# Frozen results of the exhaustive closed-triangulation search
# (scripts/search_closed.py): first hits in enumeration order.

# 1 tet, 1 vertex, edge degrees (2, 4), all links spheres: a closed manifold
_CLOSED1_EVEN_GLUINGS = [
    (0, 0, 0, 1, (1, 2, 3, 0)),
    (0, 2, 0, 3, (1, 2, 3, 0)),
]

# 1 tet, closed pseudo 3-manifold with odd edge degrees (1, 1, 4)
_CLOSED1_ODD_GLUINGS = [
    (0, 0, 0, 1, (1, 0, 2, 3)),
    (0, 2, 0, 3, (0, 1, 3, 2)),
]

# 2 tets, connected, edge degrees (4, 4, 4), all links spheres
_CLOSED2_EVEN_GLUINGS = [
    (0, 0, 0, 1, (1, 2, 3, 0)),
    (0, 2, 1, 0, (2, 1, 0, 3)),
    (0, 3, 1, 1, (0, 3, 2, 1)),
    (1, 2, 1, 3, (1, 2, 3, 0)),
]

# 1 tet, one self-gluing; the edge class through slots (1,3) and (0,2)
# faces quad 1 with multiplicity two
_SELF_DOUBLE_SLOT_GLUINGS = [
    (0, 0, 0, 1, (1, 2, 3, 0)),
]


def _from_table(name: str, tet_count: int, table) -> Fixture:
    tri = Triangulation(tet_count, [FaceGluing(*row) for row in table])
    return Fixture(name, tri)


def build_closed1_even() -> Fixture:
    return _from_table("closed1_even", 1, _CLOSED1_EVEN_GLUINGS)


def build_closed1_odd() -> Fixture:
    return _from_table("closed1_odd", 1, _CLOSED1_ODD_GLUINGS)


def build_closed2_even() -> Fixture:
    return _from_table("closed2_even", 2, _CLOSED2_EVEN_GLUINGS)


def build_self_double() -> Fixture:
    """One tetrahedron, self-glued so that some edge class contains two
    opposite slots of the same quad (the quad is listed twice around it)."""
    return _from_table("self_double", 1, _SELF_DOUBLE_SLOT_GLUINGS)


BUILDERS = {
    "lone": build_lone,
    "T021": build_T021,
    "T022": build_T022,
    "T023": build_T023,
    "T33": build_T33,
    "closed1_even": build_closed1_even,
    "closed1_odd": build_closed1_odd,
    "closed2_even": build_closed2_even,
    "self_double": build_self_double,
}


def get_fixture(name: str) -> Fixture:
    if name not in BUILDERS:
        raise ParseError(
            f"unknown fixture {name!r}; available: {', '.join(sorted(BUILDERS))}"
        )
    return BUILDERS[name]()


def corpus() -> list[Fixture]:
    """The standard test corpus: blocks, self-glued and closed examples."""
    return [BUILDERS[name]() for name in sorted(BUILDERS)]
