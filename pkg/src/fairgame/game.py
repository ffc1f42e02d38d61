"""Core game graph types: players, bit-set regions, games with live edges, subgame views.

Vertices are dense 0-based ints internally; original input ids and optional
names are kept for output. Priorities are normalized to be >= 1 (a uniform +2
shift is applied iff any input priority is 0, which preserves parity).
"""

from __future__ import annotations

import time
from typing import Iterable, Iterator, Optional, Sequence

EVEN = 0
ODD = 1


def opponent(player: int) -> int:
    return 1 - player


class SolverTimeout(Exception):
    """Raised by a solver when its cooperative deadline expires."""


class Deadline:
    """Cooperative wall-clock deadline polled inside solver loops."""

    __slots__ = ("at",)

    def __init__(self, seconds: Optional[float]):
        self.at = None if seconds is None else time.perf_counter() + seconds

    def poll(self) -> None:
        if self.at is not None and time.perf_counter() > self.at:
            raise SolverTimeout


class Region:
    """Immutable vertex set over a fixed universe [0, n), stored as a bitmask."""

    __slots__ = ("n", "mask")

    def __init__(self, n: int, mask: int = 0):
        self.n = n
        self.mask = mask

    @classmethod
    def empty(cls, n: int) -> "Region":
        return cls(n, 0)

    @classmethod
    def full(cls, n: int) -> "Region":
        return cls(n, (1 << n) - 1)

    @classmethod
    def of(cls, n: int, members: Iterable[int]) -> "Region":
        m = 0
        for v in members:
            if not 0 <= v < n:
                raise ValueError(f"vertex {v} outside universe [0, {n})")
            m |= 1 << v
        return cls(n, m)

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.n and (self.mask >> v) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        m = self.mask
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __eq__(self, other) -> bool:
        return isinstance(other, Region) and self.n == other.n and self.mask == other.mask

    def __hash__(self) -> int:
        return hash((self.n, self.mask))

    def _check(self, other: "Region") -> None:
        if self.n != other.n:
            raise ValueError("regions over different universes")

    def __or__(self, other: "Region") -> "Region":
        self._check(other)
        return Region(self.n, self.mask | other.mask)

    def __and__(self, other: "Region") -> "Region":
        self._check(other)
        return Region(self.n, self.mask & other.mask)

    def __sub__(self, other: "Region") -> "Region":
        self._check(other)
        return Region(self.n, self.mask & ~other.mask)

    def complement(self) -> "Region":
        return Region(self.n, ~self.mask & ((1 << self.n) - 1))

    def issubset(self, other: "Region") -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def isdisjoint(self, other: "Region") -> bool:
        self._check(other)
        return self.mask & other.mask == 0

    def to_set(self) -> set:
        return set(self)

    def __repr__(self) -> str:
        return f"Region({self.n}, {{{', '.join(map(str, self))}}})"


class OddFairGame:
    """A parity game with designated live edges out of Odd vertices.

    `priorities` passed to the constructor are the original input priorities;
    `self.priority` holds the normalized ones (>= 1). Successor order is input
    order. The structure is immutable after construction.
    """

    def __init__(
        self,
        owners: Sequence[int],
        priorities: Sequence[int],
        successors: Sequence[Sequence[int]],
        live_edges: Iterable[tuple] = (),
        names: Optional[Sequence[Optional[str]]] = None,
        original_ids: Optional[Sequence[int]] = None,
    ):
        n = len(owners)
        if not (len(priorities) == len(successors) == n):
            raise ValueError("owners, priorities, successors must have equal length")
        if any(p < 0 for p in priorities):
            raise ValueError("priorities must be non-negative")
        if any(o not in (EVEN, ODD) for o in owners):
            raise ValueError("owner must be 0 (Even) or 1 (Odd)")
        self.n = n
        self.owner = tuple(owners)
        self.original_priority = tuple(priorities)
        self.shift = 2 if any(p == 0 for p in priorities) else 0
        self.priority = tuple(p + self.shift for p in priorities)
        self.succ = tuple(tuple(ws) for ws in successors)
        self.live_succ = tuple(sorted({w for (u, w) in live_edges if u == v}) for v in range(n))
        self.live = frozenset((u, w) for (u, w) in live_edges)
        self.names = tuple(names) if names is not None else (None,) * n
        self.original_ids = tuple(original_ids) if original_ids is not None else tuple(range(n))
        pred = [[] for _ in range(n)]
        for v in range(n):
            for w in self.succ[v]:
                if not 0 <= w < n:
                    raise ValueError(f"successor {w} of vertex {v} out of range")
                pred[w].append(v)
        self.pred = tuple(tuple(ps) for ps in pred)
        live_pred = [[] for _ in range(n)]
        for v in range(n):
            for w in self.live_succ[v]:
                if 0 <= w < n:
                    live_pred[w].append(v)
        self.live_pred = tuple(tuple(ps) for ps in live_pred)
        self._arrays = None

    # -- structural queries ------------------------------------------------

    def vertices(self, player: Optional[int] = None) -> Region:
        if player is None:
            return Region.full(self.n)
        return Region.of(self.n, (v for v in range(self.n) if self.owner[v] == player))

    def label(self, v: int) -> str:
        name = self.names[v]
        return name if name is not None else str(self.original_ids[v])

    def arrays(self):
        """Flat numpy edge/owner/priority arrays, built lazily and cached."""
        if self._arrays is None:
            import numpy as np

            esrc, edst = [], []
            for v in range(self.n):
                for w in self.succ[v]:
                    esrc.append(v)
                    edst.append(w)
            lsrc, ldst = [], []
            for v in range(self.n):
                for w in self.live_succ[v]:
                    lsrc.append(v)
                    ldst.append(w)
            self._arrays = (
                np.asarray(esrc, dtype=np.int64),
                np.asarray(edst, dtype=np.int64),
                np.asarray(lsrc, dtype=np.int64),
                np.asarray(ldst, dtype=np.int64),
                np.asarray(self.owner, dtype=np.int8),
                np.asarray(self.priority, dtype=np.int64),
            )
        return self._arrays


def validate(game: OddFairGame) -> Optional[str]:
    """Return the first violated structural invariant, or None if the game is well formed."""
    for v in range((game.n)):
        if len(game.succ[v]) == 0:
            return f"dead end at {v}"
    succ_sets = [set(ws) for ws in game.succ]
    for (u, w) in sorted(game.live):
        if not (0 <= u < game.n and 0 <= w < game.n):
            return f"live edge ({u}, {w}) references a nonexistent vertex"
        if game.owner[u] != ODD:
            return f"live edge source owned by Even at {u}"
        if w not in succ_sets[u]:
            return f"live edge ({u}, {w}) not in the edge set"
    return None


def least_even_upperbound(game: OddFairGame, active: Optional[Region] = None) -> int:
    """Smallest even l >= 2 with no (normalized) priority above l among the given vertices."""
    verts = active if active is not None else Region.full(game.n)
    top = max((game.priority[v] for v in verts), default=0)
    l = top if top % 2 == 0 else top + 1
    return max(l, 2)


def priority_class(game: OddFairGame, i: int, active: Optional[Region] = None) -> Region:
    verts = active if active is not None else Region.full(game.n)
    return Region.of(game.n, (v for v in verts if game.priority[v] == i))


class SubgameView:
    """A non-copying restriction of a game to an active vertex set.

    Construction checks dead-end-freeness of the restriction: callers are
    expected to restrict only to traps.
    """

    __slots__ = ("game", "active", "_kernels")

    def __init__(self, game: OddFairGame, active: Region):
        if active.n != game.n:
            raise ValueError("active region universe does not match game")
        for v in active:
            if not any(w in active for w in game.succ[v]):
                raise ValueError(f"restriction creates a dead end at {v}")
        self.game = game
        self.active = active
        self._kernels = None

    @classmethod
    def full(cls, game: OddFairGame) -> "SubgameView":
        return cls(game, Region.full(game.n))

    @property
    def n(self) -> int:
        return self.game.n

    def vertices(self, player: Optional[int] = None) -> Region:
        if player is None:
            return self.active
        return self.game.vertices(player) & self.active


def subgame(game: OddFairGame, active: Region) -> SubgameView:
    return SubgameView(game, active)
