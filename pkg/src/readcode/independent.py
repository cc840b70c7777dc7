"""Maximum independent sets on small graphs.

Graphs are given as adjacency bitmasks: ``adj[v]`` is an int whose bit ``u``
is set when u and v are adjacent. Two exact solvers are provided:

* ``maximum_independent_set_milp`` hands the 0/1 program (edge and optional
  clique constraints) to the HiGHS solver shipped with scipy;
* ``maximum_independent_set`` is a pure-Python branch and bound that splits
  into connected components, applies the degree-0/1 reductions, and branches
  on a maximum-degree vertex, pruning with a greedy clique-partition bound. It
  is much slower and serves as a cross-check on small graphs.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp
from scipy.sparse import csr_matrix


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def adjacency_masks(num_vertices: int, edges) -> list[int]:
    adj = [0] * num_vertices
    for u, v in edges:
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


def components(adj: Sequence[int], mask: int) -> list[int]:
    out = []
    rest = mask
    while rest:
        seed = rest & -rest
        comp = frontier = seed
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= adj[v]
            nxt &= rest & ~comp
            comp |= nxt
            frontier = nxt
        out.append(comp)
        rest &= ~comp
    return out


def is_independent(adj: Sequence[int], mask: int) -> bool:
    return all(not (adj[v] & mask) for v in _bits(mask))


def greedy_independent_set(adj: Sequence[int], mask: int | None = None) -> int:
    """Repeatedly take a minimum-degree vertex and delete its neighbourhood."""
    if mask is None:
        mask = (1 << len(adj)) - 1
    chosen = 0
    while mask:
        v = min(_bits(mask), key=lambda u: (bin(adj[u] & mask).count("1"), u))
        chosen |= 1 << v
        mask &= ~(adj[v] | (1 << v))
    return chosen


def _clique_partition_bound(adj: Sequence[int], mask: int) -> int:
    # each clique holds at most one vertex of an independent set
    cliques: list[int] = []
    for v in _bits(mask):
        for c, members in enumerate(cliques):
            if members & ~adj[v] == 0:
                cliques[c] = members | (1 << v)
                break
        else:
            cliques.append(1 << v)
    return len(cliques)


class _Search:
    def __init__(self, adj: Sequence[int]):
        self.adj = adj
        self.best = 0
        self.best_size = 0

    def run(self, mask: int) -> int:
        self.best = greedy_independent_set(self.adj, mask)
        self.best_size = bin(self.best).count("1")
        self._branch(mask, 0, 0)
        return self.best

    def _branch(self, mask: int, chosen: int, size: int) -> None:
        adj = self.adj
        changed = True
        while changed and mask:
            changed = False
            for v in _bits(mask):
                if not (mask >> v) & 1:
                    continue
                nb = adj[v] & mask
                if nb & (nb - 1) == 0:  # degree 0 or 1
                    chosen |= 1 << v
                    size += 1
                    mask &= ~(nb | (1 << v))
                    changed = True
        if not mask:
            if size > self.best_size:
                self.best, self.best_size = chosen, size
            return
        if size + _clique_partition_bound(adj, mask) <= self.best_size:
            return
        comps = components(adj, mask)
        if len(comps) > 1:
            for comp in comps:
                part = _Search(adj).run(comp)
                chosen |= part
                size += bin(part).count("1")
            if size > self.best_size:
                self.best, self.best_size = chosen, size
            return
        v = max(_bits(mask), key=lambda u: (bin(adj[u] & mask).count("1"), -u))
        self._branch(mask & ~(adj[v] | (1 << v)), chosen | (1 << v), size + 1)
        self._branch(mask & ~(1 << v), chosen, size)


def maximum_independent_set(adj: Sequence[int], mask: int | None = None) -> int:
    """Exact maximum independent set of the induced subgraph on ``mask``, as a bitmask."""
    if mask is None:
        mask = (1 << len(adj)) - 1
    chosen = 0
    for comp in components(adj, mask):
        chosen |= _Search(adj).run(comp)
    return chosen


def is_clique(adj: Sequence[int], members: Iterable[int]) -> bool:
    members = list(members)
    mask = 0
    for v in members:
        mask |= 1 << v
    return all((adj[v] | (1 << v)) & mask == mask for v in members)


def maximum_independent_set_milp(adj: Sequence[int], cliques: Iterable[Sequence[int]] = ()) -> int:
    """Exact maximum independent set via integer programming, as a bitmask.

    Each edge gives ``x_u + x_v <= 1``. Extra cliques tighten the relaxation;
    any that is not a clique of ``adj`` is skipped so it cannot cut off a
    feasible set.
    """
    num = len(adj)
    if num == 0:
        return 0
    rows: list[Sequence[int]] = [(u, v) for u in range(num) for v in _bits(adj[u] >> (u + 1) << (u + 1))]
    rows.extend(q for q in cliques if len(q) > 1 and is_clique(adj, q))
    if not rows:
        return (1 << num) - 1
    indptr = np.cumsum([0] + [len(q) for q in rows])
    indices = np.fromiter((v for q in rows for v in q), dtype=np.int64, count=int(indptr[-1]))
    a = csr_matrix((np.ones(len(indices)), indices, indptr), shape=(len(rows), num))
    res = milp(
        -np.ones(num),
        constraints=LinearConstraint(a, -np.inf, 1),
        integrality=np.ones(num),
        bounds=Bounds(0, 1),
        options={"mip_rel_gap": 0.0},
    )
    if res.status != 0:
        raise RuntimeError(f"integer program did not reach optimality: {res.message}")
    chosen = 0
    for v in np.flatnonzero(res.x > 0.5):
        chosen |= 1 << int(v)
    return chosen


def mask_to_list(mask: int) -> list[int]:
    return list(_bits(mask))
