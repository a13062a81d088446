"""Vertex sets of polyblocks and the refinement step around a projected vertex.

A polyblock is the union of boxes ``[0, v]`` over its vertices. Only proper
(Pareto-maximal) vertices are kept. Dominance uses exact float comparison:
an epsilon could drop a box that still covers part of the feasible region.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from mapel.network import InvalidInputError, Network


@dataclass(frozen=True)
class VertexSet:
    """Vertices as rows of ``vertices``; ``ids`` records insertion order for tie-breaks."""

    vertices: np.ndarray
    ids: np.ndarray
    next_id: int

    def __post_init__(self):
        # column-major: the per-row reductions below run over short rows
        object.__setattr__(self, "vertices", np.asfortranarray(self.vertices, dtype=float))

    @classmethod
    def from_vertices(cls, vertices) -> "VertexSet":
        v = np.atleast_2d(np.asarray(vertices, dtype=float))
        return cls(v, np.arange(len(v)), len(v))

    def __len__(self):
        return len(self.vertices)

    def as_set(self) -> set:
        return {tuple(row) for row in self.vertices.tolist()}

    def is_proper(self) -> bool:
        v = self.vertices
        for k in range(len(v)):
            dom = np.all(v >= v[k], axis=1)
            dom[k] = False
            if dom.any():
                return False
        return True


def initial_vertex(net: Network) -> np.ndarray:
    """Corner of a box containing every achievable ``1 + sinr`` vector."""
    b = 1.0 + net.direct_gains * net.p_max / net.noise
    # a few ulps of headroom: fraction_fg rounds (G p + n) / n differently
    return b * (1.0 + 4 * np.finfo(float).eps)


def _keep_mask(v: np.ndarray) -> np.ndarray:
    """Rows not weakly dominated by another row; first copy of duplicates survives."""
    keep = np.ones(len(v), dtype=bool)
    for k in range(len(v)):
        dom = np.all(v >= v[k], axis=1)
        dom[k] = False
        same = np.all(v == v[k], axis=1)
        # a duplicate only removes the later copy
        dom &= ~same | (np.arange(len(v)) < k)
        if np.any(dom):
            keep[k] = False
    return keep


def prune_improper(vs: VertexSet) -> VertexSet:
    keep = _keep_mask(vs.vertices)
    return VertexSet(vs.vertices[keep], vs.ids[keep], vs.next_id)


def _near_rows(rest: np.ndarray, cmp: np.ndarray) -> np.ndarray:
    """Rows where ``cmp`` holds in all but at most one coordinate."""
    return np.flatnonzero(cmp.sum(axis=1) >= cmp.shape[1] - 1)


def replace_vertex(vs: VertexSet, v, proj, floor=None) -> VertexSet:
    """Swap ``v`` for its ``M`` children and drop whatever became improper.

    Child ``j`` equals ``v`` with coordinate ``j`` lowered to ``proj[j]``.
    Children below ``floor`` (if given) are discarded, as in
    ``restrict_to_floor``.
    """
    v = np.asarray(v, dtype=float)
    proj = np.asarray(proj, dtype=float)
    hit = np.flatnonzero(np.all(vs.vertices == v, axis=1))
    if hit.size == 0:
        raise InvalidInputError("vertex not present in the vertex set")
    if np.any(proj > v):
        raise InvalidInputError("projection must be dominated by the vertex")
    rest = np.delete(vs.vertices, hit, axis=0)
    rest_ids = np.delete(vs.ids, hit)

    m = v.size
    children = np.tile(v, (m, 1))
    children[np.arange(m), np.arange(m)] = proj
    js = np.flatnonzero(_keep_mask(children))
    if floor is not None:
        js = js[np.all(children[js] >= np.asarray(floor, dtype=float), axis=1)]
    if len(rest) and len(js):
        # rest row r covers child j iff r >= v off coordinate j and r_j >= proj_j,
        # so only rows within one coordinate of dominating v can matter
        ge = rest >= v
        near = _near_rows(rest, ge)
        covered = [np.any(np.delete(ge[near], j, axis=1).all(axis=1)
                          & (rest[near, j] >= proj[j])) for j in js]
        js = js[~np.array(covered, dtype=bool)]
        # a child can only dominate rest rows when the input set was not proper
        le = rest <= v
        near = _near_rows(rest, le)
        stale = np.zeros(len(rest), dtype=bool)
        for j in js:
            stale[near] |= np.delete(le[near], j, axis=1).all(axis=1) & (rest[near, j] <= proj[j])
        rest, rest_ids = rest[~stale], rest_ids[~stale]
    children = children[js]
    new_ids = np.arange(vs.next_id, vs.next_id + len(children))
    return VertexSet(np.vstack([rest, children]) if len(rest) else children,
                     np.concatenate([rest_ids, new_ids]),
                     vs.next_id + len(children))


def restrict_to_floor(vs: VertexSet, floor) -> VertexSet:
    """Drop vertices below ``floor`` in some coordinate; their boxes miss the floor region."""
    keep = np.all(vs.vertices >= np.asarray(floor, dtype=float), axis=1)
    return VertexSet(vs.vertices[keep], vs.ids[keep], vs.next_id)


def log_phi_rows(vertices: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """``log phi`` of every row. Summed term by term in a fixed order, so
    lowering one coordinate can never raise the score, not even by an ulp."""
    with np.errstate(divide="ignore"):
        terms = np.log(vertices) * weights
    out = terms[:, 0].copy()
    for j in range(1, terms.shape[1]):
        out += terms[:, j]
    return out


def best_index(vs: VertexSet, net: Network) -> int | None:
    """Row index of the ``phi``-maximal vertex with ``v >= 2**r_min``; lowest id wins ties."""
    if len(vs) == 0:
        return None
    inside = np.all(vs.vertices >= np.exp2(net.r_min), axis=1)
    if not inside.any():
        return None
    score = log_phi_rows(vs.vertices, net.weights)
    score[~inside] = -np.inf
    top = np.flatnonzero(score == score.max())
    return int(top[np.argmin(vs.ids[top])])


def select_best(vs: VertexSet, net: Network) -> np.ndarray | None:
    k = best_index(vs, net)
    return None if k is None else vs.vertices[k].copy()
