"""Exhaustive certification of templates and strategies on small instances.

A template or strategy is checked by enumerating every vertex subset that is
closed under the kept edges and strongly connected, i.e. every set of
vertices some compliant play can visit forever. The template side must see an
odd maximum priority on all of them, the strategy side an even one. This is
exponential in the vertex count and guarded by an edge bound; it serves as a
ground-truth oracle for the solvers, not as a scalable checker.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

import numpy as np

from .game import EVEN, ODD, OddFairGame, Region
from .templates import (
    EvenStrategy,
    OddTemplate,
    validate_even_strategy,
    validate_odd_template,
)

DEFAULT_MAX_EDGES = 20


@dataclass
class CertifyResult:
    status: str  # "certified" | "rejected" | "too_large"
    detail: str
    counterexample: Optional[FrozenSet[Tuple[int, int]]] = None

    @property
    def certified(self) -> bool:
        return self.status == "certified"


def _strongly_connected(nodes: Set[int], edges: Iterable[Tuple[int, int]]) -> bool:
    adj: Dict[int, List[int]] = {}
    radj: Dict[int, List[int]] = {}
    for (u, w) in edges:
        adj.setdefault(u, []).append(w)
        radj.setdefault(w, []).append(u)
    start = next(iter(nodes))
    for graph in (adj, radj):
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in graph.get(v, ()):
                if w in nodes and w not in seen:
                    seen.add(w)
                    stack.append(w)
        if seen != nodes:
            return False
    return True


def _closure_strongly_connected(nodes: List[int], edges: Iterable[Tuple[int, int]]) -> bool:
    """Independent connectivity check via boolean closure of the edge matrix."""
    k = len(nodes)
    pos = {v: i for i, v in enumerate(nodes)}
    m = np.eye(k, dtype=bool)
    for (u, w) in edges:
        m[pos[u], pos[w]] = True
    while True:
        nxt = m | (m @ m)
        if np.array_equal(nxt, m):
            break
        m = nxt
    return bool(m.all())


def _subset_edges_odd(
    game: OddFairGame, out_t: Dict[int, List[int]], members: Set[int]
) -> Optional[List[Tuple[int, int]]]:
    """Edges a compliant Odd play can use inside members, or None if not closed."""
    edges = []
    for v in members:
        if game.owner[v] == ODD:
            if not all(w in members for w in out_t[v]):
                return None
            edges.extend((v, w) for w in out_t[v])
        else:
            inside = [w for w in out_t[v] if w in members]
            if not inside:
                return None
            edges.extend((v, w) for w in inside)
    return edges


def _subset_edges_even(
    game: OddFairGame, s: EvenStrategy, members: Set[int]
) -> Optional[List[Tuple[int, int]]]:
    """Edges a fair play against the strategy can use inside members."""
    edges = []
    for v in members:
        if game.owner[v] == EVEN:
            w = s.choice[v]
            if w not in members:
                return None
            edges.append((v, w))
        else:
            if not all(w in members for w in game.live_succ[v]):
                return None
            inside = [w for w in game.succ[v] if w in s.vertices and w in members]
            if not inside:
                return None
            edges.extend((v, w) for w in set(inside))
    return edges


def _verify_odd_counterexample(
    game: OddFairGame, t: OddTemplate, members: Set[int]
) -> bool:
    out_t: Dict[int, List[int]] = {v: [] for v in t.vertices}
    for (u, w) in t.edges:
        out_t[u].append(w)
    edges = _subset_edges_odd(game, out_t, members)
    if edges is None:
        return False
    if not all(any(u == v for (u, _w) in edges) for v in members):
        return False
    if not _closure_strongly_connected(sorted(members), edges):
        return False
    return max(game.priority[v] for v in members) % 2 == 0


def _verify_even_counterexample(
    game: OddFairGame, s: EvenStrategy, members: Set[int]
) -> bool:
    edges = _subset_edges_even(game, s, members)
    if edges is None:
        return False
    if not all(any(u == v for (u, _w) in edges) for v in members):
        return False
    if not _closure_strongly_connected(sorted(members), edges):
        return False
    return max(game.priority[v] for v in members) % 2 == 1


def certify_odd_template(
    game: OddFairGame, t: OddTemplate, *, max_edges: int = DEFAULT_MAX_EDGES
) -> CertifyResult:
    """Check that every play compliant with the template sees an odd top priority."""
    problem = validate_odd_template(game, t)
    if problem is not None:
        return CertifyResult("rejected", f"invalid template: {problem}")
    if len(t.edges) > max_edges:
        return CertifyResult(
            "too_large",
            f"{len(t.edges)} template edges exceed the certification bound of {max_edges}",
        )
    verts = sorted(t.vertices)
    out_t: Dict[int, List[int]] = {v: [] for v in verts}
    for (u, w) in t.edges:
        out_t[u].append(w)
    m = len(verts)
    for mask in range(1, 1 << m):
        members = {verts[i] for i in range(m) if (mask >> i) & 1}
        edges = _subset_edges_odd(game, out_t, members)
        if edges is None:
            continue
        if not _strongly_connected(members, edges):
            continue
        if max(game.priority[v] for v in members) % 2 == 0:
            assert _verify_odd_counterexample(game, t, members)
            return CertifyResult(
                "rejected",
                "a compliant play can stay on an even-dominated cycle through "
                + ", ".join(game.label(v) for v in sorted(members)),
                frozenset(edges),
            )
    return CertifyResult("certified", "all compliant cycles are odd-dominated")


def certify_even_strategy(
    game: OddFairGame, s: EvenStrategy, *, max_edges: int = DEFAULT_MAX_EDGES
) -> CertifyResult:
    """Check the strategy against all fair Odd behaviors inside its region."""
    problem = validate_even_strategy(game, s)
    if problem is not None:
        return CertifyResult("rejected", f"invalid strategy: {problem}")
    edge_count = len(s.choice) + sum(
        len(set(game.succ[v])) for v in s.vertices if game.owner[v] == ODD
    )
    if edge_count > max_edges:
        return CertifyResult(
            "too_large",
            f"{edge_count} strategy edges exceed the certification bound of {max_edges}",
        )
    verts = sorted(s.vertices)
    m = len(verts)
    for mask in range(1, 1 << m):
        members = {verts[i] for i in range(m) if (mask >> i) & 1}
        edges = _subset_edges_even(game, s, members)
        if edges is None:
            continue
        if not _strongly_connected(members, edges):
            continue
        if max(game.priority[v] for v in members) % 2 == 1:
            assert _verify_even_counterexample(game, s, members)
            return CertifyResult(
                "rejected",
                "a fair play against the strategy can stay on an odd-dominated "
                "cycle through " + ", ".join(game.label(v) for v in sorted(members)),
                frozenset(edges),
            )
    return CertifyResult("certified", "all fair plays against the strategy are even-dominated")


def certify_partition(
    game: OddFairGame,
    w_even: Region,
    w_odd: Region,
    strategy: EvenStrategy,
    template: OddTemplate,
    *,
    max_edges: int = DEFAULT_MAX_EDGES,
) -> CertifyResult:
    """Certify a claimed winning partition with its strategy and template."""
    full = Region.full(game.n)
    if (w_even | w_odd) != full or not w_even.isdisjoint(w_odd):
        return CertifyResult("rejected", "not a partition")
    for v in w_even:
        succs = set(game.succ[v])
        if game.owner[v] == ODD and not succs <= set(w_even):
            return CertifyResult("rejected", f"not a trap: odd vertex {v} can leave w_even")
        if game.owner[v] == EVEN and not succs & set(w_even):
            return CertifyResult("rejected", f"not a trap: even vertex {v} is forced out of w_even")
    for v in w_odd:
        succs = set(game.succ[v])
        if game.owner[v] == EVEN and not succs <= set(w_odd):
            return CertifyResult("rejected", f"not a trap: even vertex {v} can leave w_odd")
        if game.owner[v] == ODD and not succs & set(w_odd):
            return CertifyResult("rejected", f"not a trap: odd vertex {v} is forced out of w_odd")
    if strategy.vertices != w_even:
        return CertifyResult("rejected", "strategy region does not match w_even")
    if template.vertices != w_odd:
        return CertifyResult("rejected", "template region does not match w_odd")
    if w_even:
        res = certify_even_strategy(game, strategy, max_edges=max_edges)
        if not res.certified:
            return res
    if w_odd:
        res = certify_odd_template(game, template, max_edges=max_edges)
        if not res.certified:
            return res
    return CertifyResult("certified", "both regions certified")
