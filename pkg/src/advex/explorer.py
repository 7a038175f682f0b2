"""Online explorers for every variant; all knowledge beyond the current
observation comes from an advice source."""

from __future__ import annotations

from dataclasses import dataclass

from .codec import fixed_width
from .counts import CountsError, balance_resolve, solve_counts
from .env import Environment
from .euler import EulerError, euler_walk
from .graph import Walk, double_orient, mate, undirected_id
from .search import optimal_walk
from .transform import build_inout_tree, real_node, subtree_leaves

# (listed orientation, reverse) classes for the six undirected cases
SIX_CASES = ((0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2))
SIX_INDEX = {c: i for i, c in enumerate(SIX_CASES)}

# 2-bit symbols for incoming edges of a freshly visited vertex
IN_DELIMITER = 3


class AdviceError(RuntimeError):
    """The advice contradicts what the explorer has observed."""


@dataclass(frozen=True)
class VariantConfig:
    knowledge: str
    orientation: str
    closure: str
    costs: str = "weighted"

    def __post_init__(self):
        if self.knowledge not in ("known", "unknown"):
            raise ValueError(f"bad knowledge {self.knowledge!r}")
        if self.orientation not in ("directed", "undirected"):
            raise ValueError(f"bad orientation {self.orientation!r}")
        if self.closure not in ("cyclic", "path"):
            raise ValueError(f"bad closure {self.closure!r}")
        if self.costs not in ("weighted", "unit"):
            raise ValueError(f"bad costs {self.costs!r}")
        if self.costs == "unit" and self.knowledge != "known":
            raise ValueError("the unit-cost configuration exists for known graphs only")

    @property
    def directed(self) -> bool:
        return self.orientation == "directed"

    @property
    def path(self) -> bool:
        return self.closure == "path"

    @property
    def name(self) -> str:
        base = f"{self.knowledge}-{self.orientation}-{self.closure}"
        return base + "-unit" if self.costs == "unit" else base

    def __str__(self):
        return self.name


TABLE_VARIANTS = tuple(
    f"{k}-{o}-{c}"
    for k in ("unknown", "known")
    for o in ("directed", "undirected")
    for c in ("cyclic", "path")
)
UNIT_VARIANTS = tuple(f"known-{o}-{c}-unit" for o in ("directed", "undirected")
                      for c in ("cyclic", "path"))


def parse_variant(name) -> VariantConfig:
    if isinstance(name, VariantConfig):
        return name
    parts = str(name).split("-")
    if len(parts) == 3:
        return VariantConfig(*parts)
    if len(parts) == 4 and parts[3] == "unit":
        return VariantConfig(*parts[:3], costs="unit")
    raise ValueError(f"unknown variant {name!r}")


def _move(env: Environment, oriented_id: int):
    return env.move(oriented_id if env.directed else undirected_id(oriented_id))


# ---------------------------------------------------------------- known graphs

def explore_known(env: Environment, src, cfg: VariantConfig) -> None:
    g = env.full_graph()
    if cfg.costs == "unit":
        if not g.is_unit_cost():
            raise ValueError("unit-cost configuration on a weighted instance")
        for eid in optimal_walk(g, cfg.closure).edges:
            env.move(eid)
        return
    end = None
    if cfg.path and g.n > 1:
        idx = src.end_index(fixed_width(g.n))
        if idx >= g.n:
            raise AdviceError(f"end index {idx} out of range")
        end = g.vertices[idx]
    if g.directed:
        oriented = g
        digits = src.known_block(g.m, 3)
        cls = {e.id: d for e, d in zip(g.edges, digits)}
    else:
        oriented = double_orient(g)
        digits = src.known_block(g.m, 6)
        cls = {}
        for e, d in zip(g.edges, digits):
            cls[2 * e.id - 1], cls[2 * e.id] = SIX_CASES[d]
    groups = ([], [], [])
    for e in oriented.edges:
        groups[cls[e.id]].append((e.id, e.src, e.dst))
    if end is not None:
        groups[1].append((0, end, g.start))
    try:
        counts = solve_counts(oriented.vertices, *groups)
        trail = euler_walk(g.start, [(e.id, e.src, e.dst, counts[e.id]) for e in oriented.edges])
    except (CountsError, EulerError) as exc:
        raise AdviceError(str(exc)) from exc
    touched = {g.start} | {x for e in oriented.edges if counts[e.id] for x in (e.src, e.dst)}
    if len(touched) != g.n:
        raise AdviceError("classification leaves vertices unexplored")
    for eid in trail:
        _move(env, eid)


# -------------------------------------------------------------- unknown graphs

class _HEdge:
    """An edge of the explorer's partial transformed graph."""

    __slots__ = ("eid", "slot", "multi", "count", "used", "tail", "head", "leaves")

    def __init__(self, eid=None, slot=None, cls=2, leaves=None):
        self.eid = eid          # oriented edge id; 0 is the closing edge
        self.slot = slot        # (vertex, j) for an incoming edge from an unvisited source
        self.multi = cls == 2
        self.count = 1 if cls == 1 else None
        self.used = 0
        self.tail = None
        self.head = None
        self.leaves = leaves    # real edges below a virtual edge

    @property
    def closing(self) -> bool:
        return self.eid == 0

    def items(self) -> list:
        if self.leaves is not None:
            return [x for e in self.leaves for x in e.items()]
        return [self.eid if self.eid is not None else ("slot",) + self.slot]


class _HNode:
    __slots__ = ("key", "ins", "outs", "last")

    def __init__(self, key):
        self.key = key
        self.ins = []
        self.outs = []
        self.last = None


class UnknownExplorer:
    """Explores a hidden graph on its transformed used subgraph.

    At the first visit of a vertex the advice classifies the new edges, the
    in-out-tree of the vertex is built, and every tree node learns its light
    count and last exit where those are ambiguous. Unknown counts are filled
    in by flow balance whenever a node has a single unknown edge left.
    """

    def __init__(self, env: Environment, src, path: bool):
        self.env = env
        self.src = src
        self.path = path
        self.directed = env.directed
        self.order = []
        self.visited = set()
        self.nodes = {}
        self.pend_in = {}
        self.pend_out = {}
        self.slots = {}
        self.edges = []
        self.closing = None
        self.rank = None
        self._far = {}

    # -- setup at first visits

    def _first_visit(self, v):
        k = len(self.order)
        self.src.begin(v, k)
        self.order.append(v)
        self.visited.add(v)
        obs = self.env.observe()
        if self.directed:
            self._classify_directed(v, obs)
        else:
            self._classify_undirected(v, obs)
        outs = sorted(self.pend_out.pop(v, []), key=lambda t: t[0])
        ins = sorted(self.pend_in.pop(v, []), key=lambda t: t[0])
        outs = [e for _, e in outs]
        ins = [e for _, e in ins] + [e for _, e in self.slots.get(v, ([], []))[1] if e]
        if self.path:
            if k == 0:
                self.closing = self._new(eid=0, cls=1)
                ins.insert(0, self.closing)
            elif k - 1 == self.rank:
                outs.append(self.closing)
                outs.sort(key=lambda e: self._far_key(e, v))
        if not ins or not outs:
            raise AdviceError(f"vertex {v!r} has no used {'in' if not ins else 'out'}-edge")
        self._build(v, ins, outs)

    def _far_key(self, e, v):
        if e.closing:
            return (self.env.start, 0)
        return self._far[e]

    def _new(self, **kw) -> _HEdge:
        e = _HEdge(**kw)
        self.edges.append(e)
        return e

    def _take_slot(self, w):
        ptr, table = self.slots[w]
        if ptr[0] >= len(table):
            raise AdviceError(f"more incoming edges at {w!r} than announced")
        entry = table[ptr[0]]
        ptr[0] += 1
        return entry

    def _classify_directed(self, v, obs):
        fresh = []
        for eid, w, _ in sorted(obs.edges, key=lambda t: (t[1], t[0])):
            if w in self.visited:
                cls, e = self._take_slot(w)
                if e is not None:
                    e.eid = eid
                    self._far[e] = (w, eid)
                    self.pend_out.setdefault(v, []).append(((w, eid), e))
            else:
                fresh.append((eid, w))
        digits = self.src.choices(v, [eid for eid, _ in fresh], 3) if fresh else []
        for (eid, w), d in zip(fresh, digits):
            if d:
                e = self._new(eid=eid, cls=d)
                self._far[e] = (w, eid)
                self.pend_out.setdefault(v, []).append(((w, eid), e))
                self.pend_in.setdefault(w, []).append(((v, eid), e))
        symbols = self.src.in_classes(v, frozenset(self.visited))
        table = []
        for j, d in enumerate(symbols):
            table.append((d, self._new(slot=(v, j), cls=d) if d else None))
        self.slots[v] = ([0], table)

    def _classify_undirected(self, v, obs):
        fresh = sorted((w, eid, fwd) for eid, w, _, fwd in obs.edges if w not in self.visited)
        digits = self.src.choices(v, [eid for _, eid, _ in fresh], 6) if fresh else []
        for (w, eid, fwd), d in zip(fresh, digits):
            listed, reverse = SIX_CASES[d]
            out_id = 2 * eid - 1 if fwd else 2 * eid
            c_out, c_in = (listed, reverse) if fwd else (reverse, listed)
            if c_out:
                e = self._new(eid=out_id, cls=c_out)
                self._far[e] = (w, out_id)
                self.pend_out.setdefault(v, []).append(((w, out_id), e))
                self.pend_in.setdefault(w, []).append(((v, out_id), e))
            if c_in:
                e = self._new(eid=mate(out_id), cls=c_in)
                self._far[e] = (w, mate(out_id))
                self.pend_in.setdefault(v, []).append(((w, mate(out_id)), e))
                self.pend_out.setdefault(w, []).append(((v, mate(out_id)), e))

    def _node(self, key) -> _HNode:
        nd = self.nodes.get(key)
        if nd is None:
            nd = self.nodes[key] = _HNode(key)
        return nd

    def _build(self, v, ins, outs):
        tree = build_inout_tree(v, ins, outs)
        order = []
        for tr, items, side in ((tree.out_tree, outs, "out"), (tree.in_tree, ins, "in")):
            for key in tr.nodes:
                nd = self._node(key)
                if nd not in order:
                    order.append(nd)
                for kind, c in tr.children[key]:
                    if kind == "leaf":
                        e = items[c]
                    else:
                        leaves = [items[j] for j in subtree_leaves(tr, c)]
                        e = self._new(leaves=leaves)
                    if side == "out":
                        e.tail = key
                        nd.outs.append(e)
                        if kind == "node":
                            e.head = c
                            self._node(c).ins.append(e)
                    else:
                        e.head = key
                        nd.ins.append(e)
                        if kind == "node":
                            e.tail = c
                            self._node(c).outs.append(e)
        self._settle([nd.key for nd in order])
        for nd in order:
            self._ask(nd)

    def _ask(self, nd: _HNode):
        for pair in (nd.outs, nd.ins):
            if len(pair) == 2 and all(e.multi and e.count is None for e in pair):
                a, b = pair
                light = pair[self.src.light(nd.key, a.items(), b.items())]
                light.count = self.src.count(nd.key, light.items())
                self._settle([light.tail, light.head])
        if len(nd.outs) == 1:
            nd.last = 0
        elif len(nd.outs) == 2:
            closing = [i for i, e in enumerate(nd.outs) if 0 in e.items()]
            if closing:
                nd.last = closing[0]
            else:
                nd.last = self.src.last(nd.key, nd.outs[0].items(), nd.outs[1].items())

    def _settle(self, keys):
        work = [k for k in keys if k is not None]
        while work:
            nd = self.nodes.get(work.pop())
            if nd is None:
                continue
            unknown = [e for e in nd.ins + nd.outs if e.count is None]
            if len(unknown) != 1:
                continue
            e = unknown[0]
            known_in = sum(x.count for x in nd.ins if x is not e)
            known_out = sum(x.count for x in nd.outs if x is not e)
            outgoing = any(x is e for x in nd.outs)
            try:
                c = balance_resolve(nd.key, known_in, known_out, outgoing)
            except CountsError as exc:
                raise AdviceError(str(exc)) from exc
            if e.multi and c < 2:
                raise AdviceError(f"multi-edge resolved to {c} traversals")
            e.count = c
            work += [x for x in (e.tail, e.head) if x is not None]

    # -- movement

    def _choose(self, nd: _HNode):
        cand = []
        for i, e in enumerate(nd.outs):
            if e.count is None:
                if e.used:
                    raise AdviceError(f"count of a used edge at {nd.key!r} is still unknown")
                rem = None
            else:
                rem = e.count - e.used
                if rem < 0:
                    raise AdviceError("edge used more often than its count")
                if rem == 0:
                    continue
            cand.append((i, e, rem))
        if not cand:
            return None
        many = [c for c in cand if c[2] is None or c[2] > 1]
        if many:
            return min(many, key=lambda c: (c[2] is not None, c[0]))[1]
        spare = [c for c in cand if c[0] != nd.last]
        return (spare or cand)[0][1]

    def run(self) -> None:
        env = self.env
        if env.n == 1:
            return
        if self.path:
            self.rank = self.src.end_rank(fixed_width(env.n - 1))
            if self.rank > env.n - 2:
                raise AdviceError(f"end rank {self.rank} out of range")
        self._first_visit(env.start)
        cur = real_node(env.start)
        while True:
            nd = self.nodes[cur]
            e = self._choose(nd)
            if e is None:
                if not self.path and cur == real_node(env.start):
                    break
                raise AdviceError(f"stuck at {cur!r}")
            if e.closing:
                break
            e.used += 1
            if e.leaves is None:
                w = _move(env, e.eid)
                if w not in self.visited:
                    self._first_visit(w)
            cur = e.head
        for e in self.edges:
            # the closing edge and the tree edges above it are never walked
            owed = 1 if 0 in e.items() else 0
            if e.count is not None and e.used != e.count - owed:
                raise AdviceError("finished with residual traversals")
        if len(self.visited) != env.n:
            raise AdviceError("finished without visiting every vertex")


def explore(env: Environment, src, variant) -> tuple:
    """Run the explorer for ``variant``; returns ``(walk, bits_read)``."""
    cfg = parse_variant(variant)
    if env.directed != cfg.directed:
        raise ValueError(f"{cfg.name} needs a {'directed' if cfg.directed else 'undirected'} instance")
    if cfg.knowledge == "known":
        explore_known(env, src, cfg)
    else:
        UnknownExplorer(env, src, cfg.path).run()
    return env.walk(), src.bits_read
