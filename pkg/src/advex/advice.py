"""Advice sources: replay from a tape, or record by answering from S*.

Recording runs the real explorer and writes, for each query, the bits the
tape reader will consume; the answer handed back is what the reader decodes
from those bits. The tape therefore follows the explorer's read order by
construction.
"""

from __future__ import annotations

from .codec import AdviceTape, pack_choices, read_count, read_fixed, unpack_choices, \
    write_count, write_fixed
from .env import Environment
from .explorer import IN_DELIMITER, SIX_INDEX, explore, parse_variant
from .graph import Digraph
from .oracle import OptimalSolution, OracleError, solve


class TapeAdvice:
    """Reads every answer from the tape; knows nothing about the instance."""

    def __init__(self, tape: AdviceTape):
        self.tape = tape

    @property
    def bits_read(self) -> int:
        return self.tape.read_count

    def begin(self, v, k):
        pass

    def choices(self, v, eids, k):
        return unpack_choices(self.tape, len(eids), k)

    def known_block(self, count, k):
        return unpack_choices(self.tape, count, k)

    def in_classes(self, v, visited):
        out = []
        while True:
            sym = read_fixed(self.tape, 2)
            if sym == IN_DELIMITER:
                return out
            out.append(sym)

    def light(self, node, items_a, items_b) -> int:
        return read_fixed(self.tape, 1)

    def count(self, node, items) -> int:
        return read_count(self.tape)

    def last(self, node, items_a, items_b) -> int:
        return read_fixed(self.tape, 1)

    def end_rank(self, width) -> int:
        return read_fixed(self.tape, width)

    def end_index(self, width) -> int:
        return read_fixed(self.tape, width)


class Mispredicted(Exception):
    """The explorer's first-visit order left the predicted one."""

    def __init__(self, prefix):
        super().__init__(f"first-visit order diverged after {prefix[:-1]!r}")
        self.prefix = prefix


class OracleAdvice(TapeAdvice):
    """Answers queries from S* and records them.

    Incoming edges announced at a first visit are listed in the predicted
    first-visit order of their sources (then by edge id); ``order`` is that
    prediction. A wrong prediction raises :class:`Mispredicted`.
    """

    def __init__(self, sol: OptimalSolution, order):
        super().__init__(AdviceTape())
        self.sol = sol
        self.order = list(order)
        self.pos = {v: i for i, v in enumerate(self.order)}
        self.counts = sol.closed_counts()
        self.times = sol.last_times()
        self.slots = {}
        self.seen = []

    def _emit(self, bits: str):
        self.tape.write(bits)

    def _resolve(self, item) -> int:
        if isinstance(item, tuple):
            _, v, j = item
            return self.slots[v][j]
        return item

    def _cls(self, eid) -> int:
        return min(self.counts.get(eid, 0), 2)

    def begin(self, v, k):
        self.seen.append(v)
        if k >= len(self.order) or self.order[k] != v:
            raise Mispredicted(list(self.seen))

    def choices(self, v, eids, k):
        if k == 3:
            digits = [self._cls(eid) for eid in eids]
        else:
            digits = [self._six(eid) for eid in eids]
        self._emit(pack_choices(digits, k))
        return super().choices(v, eids, k)

    def _six(self, eid) -> int:
        case = (self._cls(2 * eid - 1), self._cls(2 * eid))
        if case not in SIX_INDEX:
            raise OracleError(f"edge {eid} is used both ways with a multi-traversal: {case}")
        return SIX_INDEX[case]

    def known_block(self, count, k):
        g = self.sol.graph
        if k == 3:
            digits = [self._cls(e.id) for e in g.edges]
        else:
            digits = [self._six(e.id) for e in g.edges]
        self._emit(pack_choices(digits, k))
        return super().known_block(count, k)

    def in_classes(self, v, visited):
        ins = [e for e in self.sol.oriented.in_edges(v) if e.src not in visited]
        ins.sort(key=lambda e: (self.pos[e.src], e.id))
        self.slots[v] = [e.id for e in ins]
        self._emit("".join(write_fixed(self._cls(e.id), 2) for e in ins)
                   + write_fixed(IN_DELIMITER, 2))
        return super().in_classes(v, visited)

    def _total(self, items) -> int:
        return sum(self.counts[self._resolve(x)] for x in items)

    def light(self, node, items_a, items_b) -> int:
        # on a tie the first side is heavy
        self._emit("0" if self._total(items_a) < self._total(items_b) else "1")
        return super().light(node, items_a, items_b)

    def count(self, node, items) -> int:
        self._emit(write_count(self._total(items)))
        return super().count(node, items)

    def last(self, node, items_a, items_b) -> int:
        ta = max(self.times[self._resolve(x)] for x in items_a)
        tb = max(self.times[self._resolve(x)] for x in items_b)
        self._emit("0" if ta > tb else "1")
        return super().last(node, items_a, items_b)

    def end_rank(self, width) -> int:
        self._emit(write_fixed(self.pos[self.sol.end] - 1, width))
        return super().end_rank(width)

    def end_index(self, width) -> int:
        self._emit(write_fixed(self.sol.graph.index[self.sol.end], width))
        return super().end_index(width)


def _environment(g: Digraph, variant) -> Environment:
    return Environment(g, known=parse_variant(variant).knowledge == "known")


def record(g: Digraph, variant, sol: OptimalSolution | None = None):
    """Co-simulate explorer and oracle; returns ``(walk, tape, bits_read, restarts)``."""
    cfg = parse_variant(variant)
    sol = sol or solve(g, cfg.closure)
    order = sol.first_visits()
    for restarts in range(g.n + 1):
        src = OracleAdvice(sol, order)
        try:
            walk, bits = explore(_environment(g, cfg), src, cfg)
        except Mispredicted as exc:
            seen = exc.prefix
            order = seen + [v for v in order if v not in seen]
            continue
        return walk, src.tape, bits, restarts
    raise OracleError("first-visit order did not stabilise")


def replay(g: Digraph, variant, tape: AdviceTape):
    """Run the explorer from a tape alone; returns ``(walk, bits_read)``."""
    return explore(_environment(g, variant), TapeAdvice(tape.rewound()), variant)
