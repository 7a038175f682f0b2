"""Instance generation, corpus runs, advice budgets and the g(y) budget table."""

from __future__ import annotations

import csv
import io
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from pathlib import Path

from .advice import record, replay
from .explorer import TABLE_VARIANTS, parse_variant
from .graph import Digraph, GraphError, double_orient, load_graph, make_graph
from .oracle import OracleError, solve, validate_structure
from .search import SearchError


@dataclass(frozen=True)
class GenSpec:
    n: int
    m: int
    max_cost: int = 10
    directed: bool = True
    seed: int = 0


def generate(spec: GenSpec) -> Digraph:
    """Seeded random instance: a backbone that guarantees connectivity plus extra edges.

    Directed instances get a random ear decomposition (a cycle, then paths
    through fresh vertices between already placed ones), which is strongly
    connected and, unlike a Hamiltonian backbone, often forces the optimum to
    reuse edges. Undirected ones get a random spanning tree.
    """
    n, m = spec.n, spec.m
    if n < 2:
        raise ValueError("need at least two vertices")
    need = n if spec.directed else n - 1
    if m < need:
        raise ValueError(f"m={m} is too small for a connected instance on {n} vertices (need {need})")
    if spec.max_cost < 1:
        raise ValueError("max_cost must be positive")
    rng = random.Random(spec.seed)
    names = [f"v{i:02d}" for i in range(n)]
    perm = names[:]
    rng.shuffle(perm)
    pairs = []
    if spec.directed:
        pairs = ear_backbone(perm, rng.randint(0, min(m - n, n - 2)), rng)
    else:
        pairs = [(perm[rng.randrange(i)], perm[i]) for i in range(1, n)]
    while len(pairs) < m:
        pairs.append(tuple(rng.sample(names, 2)))
    rng.shuffle(pairs)
    edges = [(a, b, rng.randint(1, spec.max_cost)) for a, b in pairs]
    return make_graph(names, edges, perm[0], spec.directed)


def ear_backbone(order, ears: int, rng) -> list:
    """Arcs of a cycle plus ``ears`` open ears, using every vertex of ``order``.

    Each ear holds at least one fresh vertex, so the arc count is
    ``len(order) + ears``.
    """
    n = len(order)
    sizes = [1] * ears
    for _ in range(rng.randint(0, n - 2 - ears) if ears else 0):
        sizes[rng.randrange(ears)] += 1
    first = n - sum(sizes)
    pairs = [(order[i], order[(i + 1) % first]) for i in range(first)]
    placed = first
    for k in sizes:
        a, b = rng.choice(order[:placed]), rng.choice(order[:placed])
        path = [a, *order[placed:placed + k], b]
        pairs += list(zip(path, path[1:]))
        placed += k
    return pairs


def corpus_specs(directed: int = 200, undirected: int = 200, seed: int = 0,
                 n_range=(3, 9), max_m: int = 18, max_cost: int = 10) -> list:
    rng = random.Random(seed)
    specs = []
    for k in range(directed + undirected):
        is_dir = k < directed
        n = rng.randint(*n_range)
        lo = n if is_dir else n - 1
        m = rng.randint(lo, max(lo, max_m))
        specs.append(GenSpec(n, m, max_cost, is_dir, rng.randrange(2**31)))
    return specs


def write_corpus(out_dir, **kw) -> list:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for k, spec in enumerate(corpus_specs(**kw)):
        tag = "d" if spec.directed else "u"
        p = out / f"inst_{k:03d}_{tag}.json"
        p.write_text(generate(spec).to_json() + "\n")
        paths.append(p)
    return paths


# ---------------------------------------------------------------- budgets

def _loglog(x: int) -> float:
    return math.log2(math.log2(x)) if x > 2 else 0.0


@lru_cache(maxsize=None)
def g_value(y: int) -> float:
    """Worst-case light-count bits for ``y`` traversals entering a multi-tree."""
    best = 0.0
    for x in range(2, y // 2 + 1):
        best = max(best, math.log2(x) + 2 * _loglog(x) + g_value(y - x) + g_value(x))
    return best


def g_bound(y: int) -> float:
    return 2.5 * y - 3 * math.log2(y) - 3


def g_table(max_y: int) -> list:
    """``(y, g(y), bound)`` rows for ``1 <= y <= max_y``."""
    if max_y < 4:
        raise ValueError("max_y must be at least 4")
    g_value.cache_clear()
    rows = []
    for y in range(1, max_y + 1):
        rows.append((y, g_value(y), g_bound(y)))
    return rows


def table_bound(variant, n: int, m: int) -> float:
    """Advice bound of ``variant`` on an instance with ``n`` vertices and ``m`` edges."""
    cfg = parse_variant(variant)
    if cfg.costs == "unit":
        return 0
    if cfg.knowledge == "known":
        k = 3 if cfg.directed else 6
        return math.ceil(m * math.log2(k)) + (math.ceil(math.log2(n)) if cfg.path else 0)
    if cfg.directed:
        b = 2 * n + 23 * m
    else:
        b = math.log2(6) * (n + m) + 42 * m
    if cfg.path:
        b += math.ceil(math.log2(n - 1)) if n > 2 else 0
    return b


def bound_expressions(g: Digraph) -> list:
    """``(variant, expression, value)`` for every budget row on ``g``."""
    rows = []
    for v in TABLE_VARIANTS + ("known-directed-cyclic-unit",):
        cfg = parse_variant(v)
        h = adapt(g, cfg)
        n, m = h.n, h.m
        if cfg.costs == "unit":
            expr = "0"
        elif cfg.knowledge == "known":
            expr = f"ceil({m}*log2({3 if cfg.directed else 6}))"
            if cfg.path:
                expr += f" + ceil(log2({n}))"
        else:
            expr = f"2*{n} + 23*{m}" if cfg.directed else f"log2(6)*({n}+{m}) + 42*{m}"
            if cfg.path:
                expr += f" + ceil(log2({n}-1))"
        rows.append((v, expr, table_bound(cfg, n, m)))
    return rows


# ---------------------------------------------------------------- runs

def adapt(g: Digraph, variant) -> Digraph:
    """The instance as seen by ``variant``.

    Undirected instances are doubly oriented for directed variants; directed
    instances drop their orientation for undirected ones.
    """
    cfg = parse_variant(variant)
    if cfg.directed == g.directed:
        out = g
    elif g.directed:
        out = make_graph(g.vertices, [(e.src, e.dst, e.cost) for e in g.edges], g.start, False)
    else:
        out = double_orient(g)
    if cfg.costs == "unit" and not out.is_unit_cost():
        out = make_graph(out.vertices, [(e.src, e.dst, 1) for e in out.edges], out.start, out.directed)
    return out


@dataclass
class RunReport:
    instance: str
    variant: str
    n: int
    m: int
    opt_cost: int
    cost: int
    bits_read: int
    bound: float
    structure_ok: bool
    replay_ok: bool
    ok: bool
    detail: str = ""
    tape: object = field(default=None, repr=False, compare=False)

    def to_dict(self) -> dict:
        return {"variant": self.variant, "n": self.n, "m": self.m, "cost": self.cost,
                "opt_cost": self.opt_cost, "bits_read": self.bits_read,
                "bound": self.bound, "ok": self.ok}

    def row(self) -> dict:
        d = asdict(self)
        d.pop("tape")
        d["bound"] = round(self.bound, 6)
        return d


CSV_FIELDS = ["instance", "variant", "n", "m", "opt_cost", "cost", "bits_read", "bound",
              "structure_ok", "replay_ok", "ok", "detail"]


def run_instance(g: Digraph, variant, instance: str = "") -> RunReport:
    """Record, replay and check one instance under one variant.

    Raises :class:`OracleError` when the instance does not meet the variant's
    connectivity requirement.
    """
    cfg = parse_variant(variant)
    h = adapt(g, cfg)
    sol = solve(h, cfg.closure)
    bound = table_bound(cfg, h.n, h.m)
    detail = []
    try:
        walk, tape, bits, _ = record(h, cfg, sol)
    except Exception as exc:  # any explorer failure is a protocol failure
        return RunReport(instance, cfg.name, h.n, h.m, sol.cost, -1, -1, bound, False, False,
                         False, f"record failed: {type(exc).__name__}: {exc}")
    cost = walk.base_cost(h)
    try:
        walk.check(h)
    except GraphError as exc:
        detail.append(f"invalid walk: {exc}")
    if not walk.covers(h):
        detail.append("walk misses vertices")
    if cfg.path is False and not walk.is_cyclic:
        detail.append("walk is not closed")
    rwalk, rbits = replay(h, cfg, tape)
    replay_ok = rwalk == walk and rbits == bits == tape.written
    if not replay_ok:
        detail.append("replay diverged")
    structure = validate_structure(sol)
    if not structure.ok:
        detail.append("structure: " + ",".join(structure.failures()))
    if cost != sol.cost:
        detail.append(f"cost {cost} != optimum {sol.cost}")
    exact = cfg.knowledge == "known"
    if bits > bound or (exact and bits != bound):
        detail.append(f"bits {bits} vs bound {bound:.3f}")
    ok = not detail
    return RunReport(instance, cfg.name, h.n, h.m, sol.cost, cost, bits, bound,
                     structure.ok, replay_ok, ok, "; ".join(detail), tape)


def _run_file(args):
    path, variants = args
    name = Path(path).stem
    try:
        g = load_graph(path)
    except (GraphError, ValueError, OSError) as exc:
        return name, [], f"parse error: {exc}"
    reports = []
    for v in variants:
        try:
            rep = run_instance(g, v, name)
        except (OracleError, SearchError) as exc:
            return name, [], f"rejected: {exc}"
        rep.tape = None
        reports.append(rep)
    return name, reports, ""


def run_corpus(directory, variants=TABLE_VARIANTS, jobs: int = 1):
    """Run every ``*.json`` instance in ``directory``.

    Returns ``(reports, rejected)`` with reports sorted by instance and
    variant order; rejected maps instance name to a diagnostic.
    """
    variants = [parse_variant(v).name for v in variants]
    paths = sorted(Path(directory).glob("*.json"))
    tasks = [(str(p), variants) for p in paths]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_run_file, tasks, chunksize=8))
    else:
        results = [_run_file(t) for t in tasks]
    reports, rejected = [], {}
    for name, reps, diag in results:
        if diag:
            rejected[name] = diag
        reports += reps
    return reports, rejected


def reports_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in reports:
        w.writerow(r.row())
    return buf.getvalue()


def summarize(reports) -> list:
    """Per-variant ``(variant, runs, min, max, mean bits/bound)``."""
    by = {}
    for r in reports:
        if r.bound:
            by.setdefault(r.variant, []).append(r.bits_read / r.bound)
    return [(v, len(x), min(x), max(x), sum(x) / len(x)) for v, x in by.items()]
