"""Builtin triangulations and small posets/DAGs used as known-answer
fixtures: the 7-vertex torus, the 6-vertex projective plane, the Sorkin
4-point circle, and a few stock block DAGs.
"""

from .posets import FinToposet
from .protocol import BlockDAG
from .simplicial import SimplicialComplex, closure


def torus7() -> SimplicialComplex:
    """Cyclic 7-vertex triangulation of the torus.

    Triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7: 7 vertices, 21 edges,
    14 triangles, Euler characteristic 0, Betti (1, 2, 1).
    """
    tris = []
    for i in range(7):
        tris.append(tuple(sorted(((i) % 7, (i + 1) % 7, (i + 3) % 7))))
        tris.append(tuple(sorted(((i) % 7, (i + 2) % 7, (i + 3) % 7))))
    return closure(tris)


def projective_plane6() -> SimplicialComplex:
    """6-vertex triangulation of the real projective plane.

    10 triangles on the complete graph K6; Betti (1, 0, 0) with torsion
    Z/2 in degree 1, non-orientable.
    """
    tris = [(0, 1, 4), (0, 1, 5), (0, 2, 3), (0, 2, 5), (0, 3, 4),
            (1, 2, 3), (1, 2, 4), (1, 3, 5), (2, 4, 5), (3, 4, 5)]
    return closure(tris)


def sorkin_circle() -> FinToposet:
    """Sorkin's 4-point finite model of the circle.

    Two minimal points below two maximal points; the order complex is a
    4-cycle, cohomology (1, 1).
    """
    return FinToposet.from_covers(
        ["x1", "x2", "y1", "y2"],
        [("x1", "y1"), ("x1", "y2"), ("x2", "y1"), ("x2", "y2")])


def diamond_poset() -> FinToposet:
    return FinToposet.from_covers(
        ["bot", "l", "r", "top"],
        [("bot", "l"), ("bot", "r"), ("l", "top"), ("r", "top")])


def diamond_dag() -> BlockDAG:
    """Genesis forking into two blocks that merge again."""
    return BlockDAG.build(
        ["a", "b", "genesis", "merge"],
        {"a": {"genesis"}, "b": {"genesis"}, "merge": {"a", "b"}})


def chain_dag(n: int) -> BlockDAG:
    """Linear chain of n blocks b0 <- b1 <- ... <- b_{n-1}."""
    blocks = [f"b{i}" for i in range(n)]
    parents = {f"b{i}": {f"b{i - 1}"} for i in range(1, n)}
    return BlockDAG.build(blocks, parents)


def two_tip_tree() -> BlockDAG:
    """A fork that never merges: two tips above a common genesis."""
    return BlockDAG.build(
        ["genesis", "left", "right"],
        {"left": {"genesis"}, "right": {"genesis"}})
