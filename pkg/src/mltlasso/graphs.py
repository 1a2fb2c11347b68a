"""Simple graphs on vertex set {1, ..., p} and combinatorial MLT bounds.

Edges are stored as a bitmask over the C(p, 2) vertex pairs in lexicographic
order, (1,2), (1,3), ..., (1,p), (2,3), ... so a Graph is a cheap, hashable
key. Vertices are 1-indexed everywhere in the public interface.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator


class GraphFormatError(ValueError):
    """Raised when a graph6 or edge-list string cannot be decoded."""


def _pair_index(p: int, i: int, j: int) -> int:
    # 0-based i < j
    return i * (2 * p - i - 1) // 2 + (j - i - 1)


@dataclass(frozen=True)
class Graph:
    p: int
    mask: int = 0

    def __post_init__(self):
        if self.p < 1:
            raise ValueError(f"a graph needs at least one vertex, got p={self.p}")
        if self.mask < 0 or self.mask >> (self.p * (self.p - 1) // 2):
            raise ValueError("edge bitmask has bits beyond C(p, 2)")

    @property
    def n_edges(self) -> int:
        return bin(self.mask).count("1")

    def has_edge(self, i: int, j: int) -> bool:
        i, j = sorted((i, j))
        return bool(self.mask >> _pair_index(self.p, i - 1, j - 1) & 1)

    def edges(self) -> list[tuple[int, int]]:
        """Edges as sorted 1-indexed pairs, in bitmask order."""
        return [
            (i + 1, j + 1)
            for k, (i, j) in enumerate(combinations(range(self.p), 2))
            if self.mask >> k & 1
        ]

    def adjacency(self) -> list[int]:
        """Neighbour bitmask per vertex (0-indexed bits, for internal use)."""
        adj = [0] * self.p
        for i, j in self.edges():
            adj[i - 1] |= 1 << (j - 1)
            adj[j - 1] |= 1 << (i - 1)
        return adj

    def degrees(self) -> list[int]:
        return [bin(a).count("1") for a in self.adjacency()]

    def add_edge(self, i: int, j: int) -> "Graph":
        return graph_from_edges(self.p, self.edges() + [(i, j)])

    def __str__(self):
        body = "".join(f"; {i} {j}" for i, j in self.edges())
        return f"{self.p}{body}"


def graph_from_edges(p: int, edge_list: Iterable[tuple[int, int]]) -> Graph:
    if p < 1:
        raise ValueError(f"a graph needs at least one vertex, got p={p}")
    mask = 0
    for i, j in edge_list:
        if not (1 <= i <= p and 1 <= j <= p):
            raise ValueError(f"vertex out of range in edge ({i}, {j}) for p={p}")
        if i == j:
            raise ValueError(f"self-loop at vertex {i}")
        a, b = sorted((i, j))
        mask |= 1 << _pair_index(p, a - 1, b - 1)
    return Graph(p, mask)


def complete_graph(p: int) -> Graph:
    return Graph(p, (1 << (p * (p - 1) // 2)) - 1)


def empty_graph(p: int) -> Graph:
    return Graph(p, 0)


def cycle_graph(p: int) -> Graph:
    if p < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return graph_from_edges(p, [(i, i % p + 1) for i in range(1, p + 1)])


def path_graph(p: int) -> Graph:
    return graph_from_edges(p, [(i, i + 1) for i in range(1, p)])


def all_graphs(p: int) -> Iterator[Graph]:
    """Every labeled graph on p vertices."""
    for mask in range(1 << (p * (p - 1) // 2)):
        yield Graph(p, mask)


# --- graph6 (short form, p <= 62) -------------------------------------------

def _graph6_bit_order(p: int) -> list[tuple[int, int]]:
    # graph6 walks the upper triangle column by column: (0,1), (0,2), (1,2), (0,3), ...
    return [(i, j) for j in range(1, p) for i in range(j)]


def write_graph6(g: Graph) -> str:
    if g.p > 62:
        raise ValueError("only the short graph6 form (p <= 62) is supported")
    bits = [int(g.has_edge(i + 1, j + 1)) for i, j in _graph6_bit_order(g.p)]
    bits += [0] * (-len(bits) % 6)
    chars = [chr(g.p + 63)]
    for k in range(0, len(bits), 6):
        value = 0
        for b in bits[k:k + 6]:
            value = value << 1 | b
        chars.append(chr(value + 63))
    return "".join(chars)


def parse_graph6(text: str) -> Graph:
    text = text.strip()
    if text.startswith(">>graph6<<"):
        text = text[len(">>graph6<<"):]
    if not text:
        raise GraphFormatError("empty graph6 string")
    for ch in text:
        if not 63 <= ord(ch) <= 126:
            raise GraphFormatError(f"character {ch!r} is outside the graph6 range")
    p = ord(text[0]) - 63
    if p == 63:
        raise GraphFormatError("long-form graph6 (p > 62) is not supported")
    if p == 0:
        raise GraphFormatError("graph6 header encodes a graph with no vertices")
    order = _graph6_bit_order(p)
    n_chars = -(-len(order) // 6)
    body = text[1:]
    if len(body) < n_chars:
        raise GraphFormatError(f"truncated graph6: expected {n_chars} data bytes, got {len(body)}")
    if len(body) > n_chars:
        raise GraphFormatError(f"trailing data after graph6 body: {body[n_chars:]!r}")
    bits = []
    for ch in body:
        v = ord(ch) - 63
        bits.extend(v >> s & 1 for s in range(5, -1, -1))
    edges = [(i + 1, j + 1) for (i, j), b in zip(order, bits) if b]
    return graph_from_edges(p, edges)


# --- edge-list text: "p; i j; i j; ..." --------------------------------------

def parse_edge_list(text: str) -> Graph:
    parts = [s.strip() for s in text.strip().split(";")]
    parts = [s for s in parts if s]
    if not parts:
        raise GraphFormatError("empty edge-list string")
    try:
        p = int(parts[0])
        edges = []
        for item in parts[1:]:
            fields = item.replace(",", " ").split()
            if len(fields) != 2:
                raise GraphFormatError(f"expected 'i j', got {item!r}")
            edges.append((int(fields[0]), int(fields[1])))
    except ValueError as exc:
        if isinstance(exc, GraphFormatError):
            raise
        raise GraphFormatError(f"bad edge-list text {text!r}: {exc}") from None
    try:
        return graph_from_edges(p, edges)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def parse_graph(text: str) -> Graph:
    """Decode either format. Edge lists start with a digit, graph6 never does."""
    s = text.strip()
    if s[:1].isdigit():
        return parse_edge_list(s)
    return parse_graph6(s)


# --- bounds ------------------------------------------------------------------

def k_core_bound(g: Graph) -> int:
    """Smallest k >= 1 whose k-core is empty; an upper bound on the MLT."""
    adj = g.adjacency()
    k = 1
    while True:
        alive = (1 << g.p) - 1
        changed = True
        while changed:
            changed = False
            for v in range(g.p):
                if alive >> v & 1 and bin(adj[v] & alive).count("1") < k:
                    alive &= ~(1 << v)
                    changed = True
        if not alive:
            return k
        k += 1


def clique_number(g: Graph) -> int:
    """Size of the largest clique, by checking every vertex subset."""
    adj = g.adjacency()
    best = 1
    for subset in range(1, 1 << g.p):
        size = bin(subset).count("1")
        if size <= best:
            continue
        if all(subset & ~adj[v] == 1 << v for v in range(g.p) if subset >> v & 1):
            best = size
    return best
