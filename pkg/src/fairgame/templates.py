"""Winning strategy templates for Odd and positional strategies for Even.

An Odd template is an edge set over a region: Even keeps every edge that
stays inside, Odd keeps one chosen edge per vertex plus, on cycles, all of
its live edges. An Even strategy picks one edge per Even vertex of the
region. Both come with validators that check the defining shape conditions
against the game.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Optional, Tuple

from .game import EVEN, ODD, Deadline, OddFairGame, Region, SubgameView
from .fixpoint import FpTrace, Rank, solve_even_fp


@dataclass(frozen=True)
class OddTemplate:
    n: int
    vertices: Region
    edges: FrozenSet[Tuple[int, int]]

    def targets(self, v: int) -> Tuple[int, ...]:
        return tuple(sorted(w for (u, w) in self.edges if u == v))


@dataclass
class EvenStrategy:
    n: int
    vertices: Region
    choice: Dict[int, int]


def _scc_components(vertices: Iterable[int], adj: Dict[int, list]) -> list:
    """Tarjan over an adjacency dict, iterative to keep recursion shallow."""
    index: Dict[int, int] = {}
    low: Dict[int, int] = {}
    on_stack: Dict[int, bool] = {}
    stack: list = []
    comps: list = []
    counter = [0]
    for root in vertices:
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work.pop()
            if pi == 0:
                index[v] = low[v] = counter[0]
                counter[0] += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            neighbors = adj.get(v, ())
            for i in range(pi, len(neighbors)):
                w = neighbors[i]
                if w not in index:
                    work.append((v, i + 1))
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack.get(w):
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return comps


def _cycle_vertices(vertices: Iterable[int], edges: Iterable[Tuple[int, int]]) -> set:
    vset = set(vertices)
    adj: Dict[int, list] = {}
    eset = set()
    for (u, w) in edges:
        if u in vset and w in vset:
            adj.setdefault(u, []).append(w)
            eset.add((u, w))
    out = set()
    for comp in _scc_components(sorted(vset), adj):
        if len(comp) > 1:
            out.update(comp)
        elif (comp[0], comp[0]) in eset:
            out.add(comp[0])
    return out


def close_live_cycles(
    game: OddFairGame, vertices: Region, edges: Iterable[Tuple[int, int]]
) -> FrozenSet[Tuple[int, int]]:
    """Close an edge set under: Odd vertices on a cycle keep all live edges.

    Live edges whose target falls outside the region are not added; the
    validator reports such templates.
    """
    eset = set(edges)
    while True:
        added = False
        for v in _cycle_vertices(vertices, eset):
            if game.owner[v] != ODD:
                continue
            for w in game.live_succ[v]:
                if w in vertices and (v, w) not in eset:
                    eset.add((v, w))
                    added = True
        if not added:
            break
    return frozenset(eset)


def build_rank_template(
    view: SubgameView, region: Region, ranks: Dict[int, Rank]
) -> OddTemplate:
    """Template over an Odd winning region from its solve ranks.

    Even vertices keep every edge inside the region; each Odd vertex keeps
    one edge to a rank-minimal successor; live edges of vertices that end up
    on a cycle are then added to a fixpoint.
    """
    game = view.game
    edges = set()
    for v in region:
        inside = [w for w in game.succ[v] if w in region]
        if game.owner[v] == EVEN:
            edges.update((v, w) for w in inside)
        else:
            if not inside:
                raise ValueError(f"odd vertex {v} has no successor in the region")
            best = min(inside, key=lambda w: (ranks[w].interleaved(), w))
            edges.add((v, best))
    return OddTemplate(game.n, region, close_live_cycles(game, region, edges))


def validate_odd_template(game: OddFairGame, t: OddTemplate) -> Optional[str]:
    """First shape violation of an Odd template, or None."""
    succ_sets = [set(ws) for ws in game.succ]
    for (u, w) in t.edges:
        if u not in t.vertices or w not in t.vertices:
            return f"template edge ({u}, {w}) leaves the region"
        if w not in succ_sets[u]:
            return f"template edge ({u}, {w}) is not a game edge"
    out: Dict[int, set] = {v: set() for v in t.vertices}
    for (u, w) in t.edges:
        out[u].add(w)
    on_cycle = _cycle_vertices(t.vertices, t.edges)
    for v in t.vertices:
        if game.owner[v] == EVEN:
            if not succ_sets[v] <= set(t.vertices):
                return f"even vertex {v} has an edge leaving the region"
            if out[v] != succ_sets[v]:
                return f"even vertex {v} does not keep all its edges"
        else:
            live = set(game.live_succ[v])
            if v in on_cycle:
                if not live <= out[v]:
                    return f"odd vertex {v} on a cycle is missing a live edge"
                if not (1 <= len(out[v]) <= len(live) + 1):
                    return f"odd vertex {v} on a cycle keeps too many edges"
            else:
                if len(out[v]) != 1:
                    return f"odd vertex {v} off cycles must keep exactly one edge"
    return None


def validate_even_strategy(game: OddFairGame, s: EvenStrategy) -> Optional[str]:
    """First shape violation of an Even strategy, or None."""
    succ_sets = [set(ws) for ws in game.succ]
    for v in s.vertices:
        if game.owner[v] == EVEN:
            if v not in s.choice:
                return f"even vertex {v} has no chosen edge"
            w = s.choice[v]
            if w not in succ_sets[v]:
                return f"chosen edge ({v}, {w}) is not a game edge"
            if w not in s.vertices:
                return f"chosen edge ({v}, {w}) leaves the region"
        else:
            if not succ_sets[v] <= set(s.vertices):
                return f"odd vertex {v} can leave the region"
    for v in s.choice:
        if game.owner[v] != EVEN or v not in s.vertices:
            return f"choice given for vertex {v} outside the even region"
    return None


def extract_even_strategy(
    view: SubgameView,
    *,
    region: Optional[Region] = None,
    trace: Optional[FpTrace] = None,
    use_live: bool = True,
    deadline: Optional[Deadline] = None,
) -> EvenStrategy:
    """Positional Even strategy on the Even winning region of the view.

    The region (taken from a given trace, or solved for) is an Odd-trap on
    which Even wins from everywhere, so the recursive solver restricted to it
    returns the whole region as Even's and its choice map is the strategy.
    A successor of minimal solver rank is not always a winning move here:
    two successors can carry the same minimal rank while only one of them
    makes progress, so the choice has to come from the recursion structure.
    """
    from .zielonka import solve_zielonka_fair, solve_zielonka_normal

    game = view.game
    if trace is not None and trace.side == EVEN:
        reg = trace.region
    else:
        reg = solve_even_fp(view, use_live=use_live, deadline=deadline)
    if region is not None and region != reg:
        raise ValueError("given region does not match the Even winning region")
    if not reg:
        return EvenStrategy(game.n, reg, {})
    sub = SubgameView(game, reg)
    solve = solve_zielonka_fair if use_live else solve_zielonka_normal
    art = solve(sub, extract=True, deadline=deadline)
    assert art.win_even == reg, "region is not the Even paradise it claims to be"
    return art.even_strategy


def format_template(game: OddFairGame, t: OddTemplate) -> str:
    lines = [f"template {len(t.vertices)};"]
    pairs = sorted(
        (game.original_ids[u], game.original_ids[w]) for (u, w) in t.edges
    )
    lines.extend(f"edge {a} {b};" for (a, b) in pairs)
    return "\n".join(lines) + "\n"


def format_strategy(game: OddFairGame, s: EvenStrategy) -> str:
    lines = [f"strategy {len(s.vertices)};"]
    pairs = sorted(
        (game.original_ids[v], game.original_ids[w]) for (v, w) in s.choice.items()
    )
    lines.extend(f"edge {a} {b};" for (a, b) in pairs)
    return "\n".join(lines) + "\n"
