"""In-out-trees: bounding in- and out-degree of the used subgraph by two."""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Digraph, GraphError, Walk, undirected_id


def real_node(v) -> tuple:
    return (v, "", 0)


def virtual_node(v, side: str, pos: int) -> tuple:
    return (v, side, pos)


def is_virtual(node) -> bool:
    return node[1] != ""


def node_label(node) -> str:
    v, side, pos = node
    return str(v) if not side else f"~{v}/{side}/{pos}"


def _leaf_order(k: int) -> list:
    """Heap indices of the ``k`` leaves of a complete binary tree, left to right."""
    order = []
    todo = [0]
    while todo:
        i = todo.pop()
        if i >= k - 1:
            order.append(i)
        else:
            todo.append(2 * i + 2)
            todo.append(2 * i + 1)
    return order


@dataclass
class CompactTree:
    """Complete binary tree with ``k`` leaf exits and ``k - 2`` virtual nodes.

    ``children[node]`` lists ``("node", key)`` or ``("leaf", j)`` entries left
    to right; ``attach[j]`` is the node item ``j`` hangs off.
    """

    root: tuple
    nodes: list
    children: dict
    attach: list

    @property
    def virtual(self) -> list:
        return self.nodes[1:]


def compact_tree(v, side: str, k: int) -> CompactTree:
    root = real_node(v)
    if k <= 2:
        return CompactTree(root, [root], {root: [("leaf", j) for j in range(k)]}, [root] * k)

    def key(i):
        return root if i == 0 else virtual_node(v, side, i)

    nodes = [key(i) for i in range(k - 1)]
    leaf_pos = {h: j for j, h in enumerate(_leaf_order(k))}
    children = {}
    attach = [None] * k
    for i in range(k - 1):
        kids = []
        for c in (2 * i + 1, 2 * i + 2):
            if c >= k - 1:
                j = leaf_pos[c]
                kids.append(("leaf", j))
                attach[j] = key(i)
            else:
                kids.append(("node", key(c)))
        children[key(i)] = kids
    return CompactTree(root, nodes, children, attach)


@dataclass
class InOutTree:
    root: object
    in_tree: CompactTree
    out_tree: CompactTree

    @property
    def virtual_count(self) -> int:
        return len(self.in_tree.virtual) + len(self.out_tree.virtual)

    def virtual_edges(self) -> list:
        """``(tail, head)`` of every tree edge; in-tree edges point to the root."""
        out = []
        for node, kids in self.out_tree.children.items():
            out += [(node, c) for kind, c in kids if kind == "node"]
        for node, kids in self.in_tree.children.items():
            out += [(c, node) for kind, c in kids if kind == "node"]
        return out


def build_inout_tree(v, in_items, out_items) -> InOutTree:
    """Trees for ``v`` given its used in- and out-edges in canonical order."""
    return InOutTree(v, compact_tree(v, "in", len(in_items)), compact_tree(v, "out", len(out_items)))


def subtree_leaves(tree: CompactTree, node) -> list:
    out = []
    for kind, c in tree.children.get(node, []):
        if kind == "leaf":
            out.append(c)
        else:
            out += subtree_leaves(tree, c)
    return out


@dataclass
class HEdge:
    key: tuple
    tail: tuple
    head: tuple
    cost: int
    count: int
    real: object = None


@dataclass
class BoundedGraph:
    """The transformed used subgraph together with the map back to ``graph``."""

    graph: Digraph
    nodes: list
    edges: dict
    trees: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def virtual_count(self) -> int:
        return sum(1 for x in self.nodes if is_virtual(x))

    def degrees(self):
        din, dout = {}, {}
        for e in self.edges.values():
            dout[e.tail] = dout.get(e.tail, 0) + 1
            din[e.head] = din.get(e.head, 0) + 1
        return din, dout

    def to_dict(self) -> dict:
        return {
            "directed": True,
            "start": node_label(real_node(self.graph.start)),
            "vertices": sorted(node_label(x) for x in self.nodes),
            "edges": [
                {"src": node_label(e.tail), "dst": node_label(e.head), "cost": e.cost}
                for e in self.edges.values()
            ],
        }


def canonical_items(graph: Digraph, v, used_edges):
    """Used out- and in-edges of ``v`` sorted by opposite endpoint, then id.

    ``used_edges`` holds ``(id, src, dst)`` triples; id 0 is reserved for the
    closing edge of path variants.
    """
    idx = graph.index
    outs = sorted((t for t in used_edges if t[1] == v), key=lambda t: (idx[t[2]], t[0]))
    ins = sorted((t for t in used_edges if t[2] == v), key=lambda t: (idx[t[1]], t[0]))
    return ins, outs


def transform_used(oriented: Digraph, counts: dict, extra_edges=(), costs=None) -> BoundedGraph:
    """In-out-tree transform of the used edges of ``counts``.

    ``oriented`` is the directed graph the counts refer to; ``extra_edges``
    adds ``(id, src, dst)`` triples that are not part of it (the closing edge).
    """
    costs = dict(costs or {})
    for e in oriented.edges:
        costs.setdefault(e.id, e.cost)
    used = [(e.id, e.src, e.dst) for e in oriented.edges if counts.get(e.id, 0) > 0]
    used += [t for t in extra_edges if counts.get(t[0], 0) > 0]
    tail_of, head_of = {}, {}
    nodes, trees = [], {}
    edges = {}
    for v in oriented.vertices:
        ins, outs = canonical_items(oriented, v, used)
        if not ins or not outs:
            raise GraphError(f"vertex {v!r} is isolated in the used subgraph")
        tree = build_inout_tree(v, ins, outs)
        trees[v] = tree
        nodes += [real_node(v)] + tree.in_tree.virtual + tree.out_tree.virtual
        for j, t in enumerate(outs):
            tail_of[t[0]] = tree.out_tree.attach[j]
        for j, t in enumerate(ins):
            head_of[t[0]] = tree.in_tree.attach[j]
        for side, tr, items in (("out", tree.out_tree, outs), ("in", tree.in_tree, ins)):
            for node, kids in tr.children.items():
                for kind, c in kids:
                    if kind != "node":
                        continue
                    count = sum(counts[items[j][0]] for j in subtree_leaves(tr, c))
                    tail, head = (node, c) if side == "out" else (c, node)
                    edges[("t", c)] = HEdge(("t", c), tail, head, 0, count)
    for eid, _, _ in used:
        edges[("e", eid)] = HEdge(("e", eid), tail_of[eid], head_of[eid],
                                  costs.get(eid, 0), counts[eid], eid)
    return BoundedGraph(oriented, nodes, edges, trees)


def map_walk_back(bg: BoundedGraph, h_walk: Walk, original: Digraph | None = None) -> Walk:
    """Contract every virtual stretch of an H-walk into its real edge."""
    verts = [h_walk.vertices[0]]
    if is_virtual(verts[0]):
        raise GraphError("H-walk must start at a real vertex")
    real_vertices = [verts[0][0]]
    real_edges = []
    at = verts[0]
    closed = False
    for key in h_walk.edges:
        e = bg.edges.get(key)
        if e is None or e.tail != at:
            raise GraphError(f"H-walk step {key!r} does not continue from {at!r}")
        at = e.head
        if e.real == 0:
            closed = True
        elif e.real is not None:
            if closed:
                raise GraphError("H-walk continues after the closing edge")
            real_edges.append(e.real)
            real_vertices.append(bg.graph.edge(e.real).dst)
    original = original or bg.graph
    if original.directed:
        return Walk(tuple(real_vertices), tuple(real_edges))
    return Walk(tuple(real_vertices), tuple(undirected_id(e) for e in real_edges))


def _root_path(tree: CompactTree, node) -> list:
    """Tree nodes from the root down to ``node``."""
    parent = {c: p for p, kids in tree.children.items() for kind, c in kids if kind == "node"}
    path = [node]
    while path[-1] in parent:
        path.append(parent[path[-1]])
    return path[::-1]


def lift_walk(bg: BoundedGraph, start, oriented_edges) -> Walk:
    """The H-walk that realises a walk given by oriented edge ids (0 = closing edge)."""
    at = real_node(start)
    verts, keys = [at], []
    for eid in oriented_edges:
        e = bg.edges[("e", eid)]
        if e.tail[0] != at[0]:
            raise GraphError(f"edge {eid} does not leave {at[0]!r}")
        for c in _root_path(bg.trees[at[0]].out_tree, e.tail)[1:]:
            keys.append(("t", c))
            verts.append(c)
        keys.append(e.key)
        verts.append(e.head)
        up = _root_path(bg.trees[e.head[0]].in_tree, e.head)[::-1]
        for c, p in zip(up, up[1:]):
            keys.append(("t", c))
            verts.append(p)
        at = real_node(e.head[0])
    return Walk(tuple(verts), tuple(keys))
