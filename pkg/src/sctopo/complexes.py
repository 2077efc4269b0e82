"""Candidate simplicial complexes over a fixed node set.

A candidate complex enumerates every possible edge and triangle on ``n0``
nodes, in lexicographic order, together with the oriented incidence
(boundary) matrices ``b1`` (nodes x edges) and ``b2`` (edges x triangles)
and the unoriented ``b2_plus = |b2|``.  Binary selection vectors over the
candidate index spaces then pick out the active structure; the routines
here build the selection-dependent Laplacians and check the face-inclusion
property.

Index conventions (used by every module in this package):

* edges are pairs ``(i, j)`` with ``i < j``, sorted lexicographically;
* triangles are triples ``(i, j, k)`` with ``i < j < k``, lexicographic;
* edges are oriented low -> high vertex; the boundary of triangle
  ``(i, j, k)`` carries signs ``(+1, -1, +1)`` on its faces
  ``(i, j), (i, k), (j, k)`` listed in lexicographic face order.

With this convention ``b1 @ b2 == 0`` holds exactly in integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

# Boundary signs of a triangle on its faces (i,j), (i,k), (j,k).
TRIANGLE_FACE_SIGNS = np.array([1, -1, 1], dtype=np.int64)


def enumerate_simplices(n0, k):
    """Enumerate all candidate k-simplices over ``n0`` nodes.

    Returns the sorted (k+1)-subsets of ``{0..n0-1}`` as a list of tuples in
    lexicographic order.  Only ``k=1`` (edges) and ``k=2`` (triangles) are
    supported.
    """
    if k not in (1, 2):
        raise ValueError(f"k must be 1 or 2, got {k}")
    if n0 < k + 1:
        raise ValueError(f"need at least {k + 1} nodes for {k}-simplices, got n0={n0}")
    return list(combinations(range(n0), k + 1))


@dataclass(frozen=True, eq=False)
class CandidateComplex:
    """The complete candidate complex on ``n0`` nodes.

    Attributes
    ----------
    n0 : int
        Number of nodes.
    edges, triangles : tuple of tuples
        Candidate simplices in lexicographic order.
    b1 : ndarray, shape (n0, n_edges)
        Oriented node-to-edge incidence; column of edge ``(i, j)`` has
        ``-1`` at row ``i`` and ``+1`` at row ``j``.
    b2 : ndarray, shape (n_edges, n_triangles)
        Oriented edge-to-triangle incidence with the sign convention above.
    b2_plus : ndarray
        Entrywise absolute value of ``b2``.
    triangle_edges : ndarray, shape (n_triangles, 3)
        Edge indices of each triangle's faces, in lexicographic face order.
        This is the sparse column-list view of ``b2`` that the solver and
        the learners consume.
    """

    n0: int
    edges: tuple
    triangles: tuple
    b1: np.ndarray
    b2: np.ndarray
    b2_plus: np.ndarray
    triangle_edges: np.ndarray

    @property
    def n_edges(self):
        return len(self.edges)

    @property
    def n_triangles(self):
        return len(self.triangles)

    def edge_id(self, i, j):
        """Index of edge ``(i, j)`` (order-insensitive) in the candidate list."""
        i, j = (i, j) if i < j else (j, i)
        if not (0 <= i < j < self.n0):
            raise ValueError(f"({i}, {j}) is not a valid edge on {self.n0} nodes")
        # combinatorial rank of (i, j) in lexicographic pair order
        return comb(self.n0, 2) - comb(self.n0 - i, 2) + (j - i - 1)

    def triangle_id(self, i, j, k):
        """Index of triangle ``{i, j, k}`` in the candidate list."""
        i, j, k = sorted((i, j, k))
        if not (0 <= i < j < k < self.n0):
            raise ValueError(f"({i}, {j}, {k}) is not a valid triangle on {self.n0} nodes")
        n = self.n0
        return comb(n, 3) - comb(n - i, 3) + comb(n - i - 1, 2) - comb(n - j, 2) + (k - j - 1)


def build_candidate_complex(n0):
    """Build the full candidate complex on ``n0 >= 3`` nodes.

    Incidence matrices are stored dense (desk scale); ``triangle_edges``
    carries the per-triangle face indices used throughout.
    """
    if n0 < 3:
        raise ValueError(f"need n0 >= 3, got {n0}")
    edges = enumerate_simplices(n0, 1)
    triangles = enumerate_simplices(n0, 2)
    n1, n2 = len(edges), len(triangles)

    b1 = np.zeros((n0, n1), dtype=np.int64)
    for e, (i, j) in enumerate(edges):
        b1[i, e] = -1
        b1[j, e] = 1

    edge_ids = {pair: e for e, pair in enumerate(edges)}
    triangle_edges = np.empty((n2, 3), dtype=np.int64)
    b2 = np.zeros((n1, n2), dtype=np.int64)
    for t, (i, j, k) in enumerate(triangles):
        faces = (edge_ids[(i, j)], edge_ids[(i, k)], edge_ids[(j, k)])
        triangle_edges[t] = faces
        b2[faces, t] = TRIANGLE_FACE_SIGNS

    b2_plus = np.abs(b2)
    for a in (b1, b2, b2_plus, triangle_edges):
        a.flags.writeable = False
    return CandidateComplex(
        n0=n0,
        edges=tuple(edges),
        triangles=tuple(triangles),
        b1=b1,
        b2=b2,
        b2_plus=b2_plus,
        triangle_edges=triangle_edges,
    )


@dataclass(frozen=True, eq=False)
class Selection:
    """Binary activation vectors over candidate edges (``s1``) and triangles (``s2``)."""

    s1: np.ndarray
    s2: np.ndarray

    def __post_init__(self):
        s1 = _as_binary(self.s1, "s1")
        s2 = _as_binary(self.s2, "s2")
        object.__setattr__(self, "s1", s1)
        object.__setattr__(self, "s2", s2)

    @classmethod
    def from_indices(cls, n_edges, n_triangles, edge_indices=(), triangle_indices=()):
        s1 = np.zeros(n_edges, dtype=np.int8)
        s2 = np.zeros(n_triangles, dtype=np.int8)
        s1[list(edge_indices)] = 1
        s2[list(triangle_indices)] = 1
        return cls(s1, s2)

    @property
    def edge_indices(self):
        return np.flatnonzero(self.s1)

    @property
    def triangle_indices(self):
        return np.flatnonzero(self.s2)

    @property
    def n_selected_edges(self):
        return int(self.s1.sum())

    @property
    def n_selected_triangles(self):
        return int(self.s2.sum())

    def same_as(self, other):
        return np.array_equal(self.s1, other.s1) and np.array_equal(self.s2, other.s2)


def _as_binary(v, name):
    a = np.asarray(v)
    if a.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional")
    if a.size and not np.isin(a, (0, 1)).all():
        raise ValueError(f"{name} entries must be 0 or 1")
    a = a.astype(np.int8)
    a.flags.writeable = False
    return a


def validate_inclusion(cx, sel):
    """List every face-inclusion violation of ``sel`` on ``cx``.

    Returns the (triangle index, edge index) pairs where the triangle is
    selected but the face edge is not.  An empty list means ``sel`` is a
    valid simplicial complex.
    """
    s1, s2 = np.asarray(sel.s1), np.asarray(sel.s2)
    if s1.shape != (cx.n_edges,) or s2.shape != (cx.n_triangles,):
        raise ValueError(
            f"selection shape ({s1.shape[0]}, {s2.shape[0]}) does not match "
            f"complex ({cx.n_edges}, {cx.n_triangles})"
        )
    violations = []
    for t in np.flatnonzero(s2):
        for e in cx.triangle_edges[t]:
            if s1[e] == 0:
                violations.append((int(t), int(e)))
    return violations


def laplacian_node(cx, s1):
    """Graph Laplacian of the selected edge set: ``b1 @ diag(s1) @ b1.T``."""
    s1 = _check_len(s1, cx.n_edges, "s1")
    return (cx.b1 * s1) @ cx.b1.T.astype(float)


def laplacian_upper_edge(cx, s2):
    """Upper edge Laplacian of the selected triangles: ``b2 @ diag(s2) @ b2.T``."""
    s2 = _check_len(s2, cx.n_triangles, "s2")
    return (cx.b2 * s2) @ cx.b2.T.astype(float)


def hodge_laplacian_edge(cx, s1, s2):
    """Full edge-space Hodge Laplacian of a selection.

    The lower term restricts ``b1`` to the selected edge columns but keeps
    the result indexed over the full candidate edge space; the upper term is
    ``b2 @ diag(s2) @ b2.T``.
    """
    s1 = _check_len(s1, cx.n_edges, "s1")
    b1_sel = cx.b1 * s1
    lower = b1_sel.T @ b1_sel.astype(float)
    return lower + laplacian_upper_edge(cx, s2)


def similarity_laplacian(cx, s2):
    """Similarity Laplacian over candidate edges.

    Sum over selected triangles of the complete-graph Laplacian on the
    triangle's three face edges (diagonal 2, off-diagonal -1), embedded in
    the full candidate edge space.
    """
    s2 = _check_len(s2, cx.n_triangles, "s2")
    n1 = cx.n_edges
    L = np.zeros((n1, n1))
    for t in np.flatnonzero(s2):
        a, b, c = cx.triangle_edges[t]
        for e in (a, b, c):
            L[e, e] += 2.0
        for e, f in ((a, b), (a, c), (b, c)):
            L[e, f] -= 1.0
            L[f, e] -= 1.0
    return L


def _check_len(v, n, name):
    a = np.asarray(v)
    if a.shape != (n,):
        raise ValueError(f"{name} must have length {n}, got shape {a.shape}")
    return a
