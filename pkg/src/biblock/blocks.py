"""Biconnected components, block-cut trees, and bi-block membership.

Standard decomposition semantics throughout: a block is a maximal
subgraph without a cut vertex, so a star splits into pendant-edge
blocks and its center has block index equal to its degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import (
    DisconnectedError,
    NotLeafError,
    NotNeighborsError,
    OddCycleError,
    SingleBlockError,
)
from .graphs import Graph, bipartition, induced_subgraph, is_connected


@dataclass(frozen=True)
class Block:
    """One block: its vertex set, and both sides when complete bipartite.

    ``parts`` is None when the induced subgraph is not complete
    bipartite; otherwise the side containing the smallest vertex label
    comes first.
    """

    vertices: frozenset[int]
    parts: tuple[frozenset[int], frozenset[int]] | None

    @property
    def is_complete_bipartite(self) -> bool:
        return self.parts is not None

    def side_of(self, v: int) -> frozenset[int]:
        """The part containing v (block must be complete bipartite)."""
        assert self.parts is not None
        if v in self.parts[0]:
            return self.parts[0]
        if v in self.parts[1]:
            return self.parts[1]
        raise KeyError(f"vertex {v} not in block")

    def other_side(self, v: int) -> frozenset[int]:
        assert self.parts is not None
        return self.parts[1] if v in self.parts[0] else self.parts[0]


@dataclass(frozen=True)
class BlockCutTree:
    """Blocks, cut vertices, and their incidence for one connected graph."""

    graph: Graph
    blocks: tuple[Block, ...]
    cut_vertices: frozenset[int]
    incidence: dict[int, tuple[int, ...]]
    block_adjacency: frozenset[tuple[int, int]]


def _biconnected_edge_components(g: Graph) -> list[list[tuple[int, int]]]:
    """Lowpoint DFS returning the edge set of each biconnected component."""
    disc = [-1] * g.k
    low = [0] * g.k
    stack: list[tuple[int, int]] = []
    comps: list[list[tuple[int, int]]] = []
    timer = 0

    def dfs(u: int, parent: int) -> None:
        nonlocal timer
        disc[u] = low[u] = timer
        timer += 1
        for v in g.neighbors(u):
            if disc[v] == -1:
                stack.append((u, v))
                dfs(v, u)
                low[u] = min(low[u], low[v])
                if low[v] >= disc[u]:
                    comp = []
                    while True:
                        e = stack.pop()
                        comp.append(e)
                        if e == (u, v):
                            break
                    comps.append(comp)
            elif v != parent and disc[v] < disc[u]:
                stack.append((u, v))
                low[u] = min(low[u], disc[v])

    if g.k > 0:
        dfs(0, -1)
    return comps


def decompose(g: Graph) -> BlockCutTree:
    """Block-cut tree of a connected graph.

    Blocks are sorted by their vertex sets so ids are reproducible; cut
    vertices are exactly the vertices lying in two or more blocks.
    """
    if not is_connected(g):
        raise DisconnectedError("decompose requires a connected graph")
    comps = _biconnected_edge_components(g)
    vertex_sets = []
    for comp in comps:
        vs = set()
        for u, v in comp:
            vs.add(u)
            vs.add(v)
        vertex_sets.append(frozenset(vs))
    vertex_sets.sort(key=lambda s: tuple(sorted(s)))

    blocks = []
    for vs in vertex_sets:
        sub, old_to_new = induced_subgraph(g, vs)
        parts = None
        try:
            bp = bipartition(sub)
        except OddCycleError:
            bp = None
        if bp is not None and sub.edge_count == len(bp.M) * len(bp.N):
            new_to_old = {i: u for u, i in old_to_new.items()}
            side_a = frozenset(new_to_old[i] for i in bp.M)
            side_b = frozenset(new_to_old[i] for i in bp.N)
            if min(side_b) < min(side_a):
                side_a, side_b = side_b, side_a
            parts = (side_a, side_b)
        blocks.append(Block(vs, parts))

    incidence: dict[int, list[int]] = {v: [] for v in range(g.k)}
    for bid, blk in enumerate(blocks):
        for v in blk.vertices:
            incidence[v].append(bid)
    cut = frozenset(v for v, ids in incidence.items() if len(ids) >= 2)
    adjacency = set()
    for v in cut:
        ids = incidence[v]
        for i in range(len(ids)):
            for j in range(i + 1, len(ids)):
                adjacency.add((ids[i], ids[j]))
    return BlockCutTree(
        graph=g,
        blocks=tuple(blocks),
        cut_vertices=cut,
        incidence={v: tuple(ids) for v, ids in incidence.items()},
        block_adjacency=frozenset(adjacency),
    )


def is_bi_block(g: Graph) -> bool:
    """True iff g is connected and every block is complete bipartite."""
    if not is_connected(g):
        return False
    t = decompose(g)
    return all(blk.is_complete_bipartite for blk in t.blocks)


def block_index(t: BlockCutTree, v: int) -> int:
    """Number of blocks containing v (1 unless v is a cut vertex)."""
    t.graph._check_vertex(v)
    return len(t.incidence[v])


def leaf_blocks(t: BlockCutTree) -> list[int]:
    """Ids of blocks containing at most one cut vertex.

    A single-block graph returns its one block.
    """
    if len(t.blocks) == 1:
        return [0]
    out = []
    for bid, blk in enumerate(t.blocks):
        if len(blk.vertices & t.cut_vertices) <= 1:
            out.append(bid)
    return out


def shared_cut_vertex(t: BlockCutTree, f_id: int, h_id: int) -> int:
    """The cut vertex joining two neighboring blocks."""
    shared = t.blocks[f_id].vertices & t.blocks[h_id].vertices
    if len(shared) != 1:
        raise NotNeighborsError(
            f"blocks {f_id} and {h_id} do not share exactly one cut vertex"
        )
    return next(iter(shared))


def neighbor_union(t: BlockCutTree, f_id: int, h_id: int) -> Graph:
    """Induced subgraph on the union of two neighboring blocks."""
    shared_cut_vertex(t, f_id, h_id)
    union = t.blocks[f_id].vertices | t.blocks[h_id].vertices
    sub, _ = induced_subgraph(t.graph, union)
    return sub


class PeelResult(NamedTuple):
    graph: Graph
    old_to_new: dict[int, int]


def peel_leaf_block(g: Graph, t: BlockCutTree, h_id: int) -> PeelResult:
    """Remove a leaf block except its cut vertex, relabeling densely.

    The label map is returned alongside so callers can trace surviving
    vertices.
    """
    if len(t.blocks) == 1:
        raise SingleBlockError("cannot peel the only block")
    blk = t.blocks[h_id]
    cut_in_block = blk.vertices & t.cut_vertices
    if len(cut_in_block) != 1:
        raise NotLeafError(f"block {h_id} has {len(cut_in_block)} cut vertices")
    v = next(iter(cut_in_block))
    keep = (set(range(g.k)) - blk.vertices) | {v}
    sub, old_to_new = induced_subgraph(g, keep)
    return PeelResult(sub, old_to_new)


def to_report(t: BlockCutTree) -> dict:
    """Serializable record of a decomposition (CLI `decompose` payload)."""
    return {
        "k": t.graph.k,
        "blocks": [
            {
                "id": bid,
                "vertices": sorted(blk.vertices),
                "parts": (
                    [sorted(blk.parts[0]), sorted(blk.parts[1])]
                    if blk.parts is not None
                    else None
                ),
                "is_leaf": bid in set(leaf_blocks(t)),
            }
            for bid, blk in enumerate(t.blocks)
        ],
        "cut_vertices": sorted(t.cut_vertices),
        "block_index": {str(v): len(t.incidence[v]) for v in range(t.graph.k)},
    }
