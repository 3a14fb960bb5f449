"""Finite discrete-time dynamical systems and their semiconjugacies.

A system is a finite set of states together with a total self-map ``step``.
Time is the additive semigroup of nonnegative integers, so ``step`` generates
every iterate.  Morphisms are semiconjugacies ``h`` with
``h(step_a(s)) == step_b(h(s))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, NamedTuple, Optional

from .errors import InvalidDiagram, InvalidStride, MapNotTotal, StateNotFound
from .ordering import sort_key, sorted_ids

StateId = Hashable


@dataclass(frozen=True)
class FiniteDynSys:
    states: frozenset
    step: Mapping[StateId, StateId]

    def __post_init__(self):
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "step", dict(self.step))
        missing = [s for s in self.states if s not in self.step]
        if missing:
            raise MapNotTotal(f"step undefined on {sorted_ids(missing)!r}")
        extra = [s for s in self.step if s not in self.states]
        if extra:
            raise StateNotFound(f"step defined on unknown states {sorted_ids(extra)!r}")
        outside = [s for s, t in self.step.items() if t not in self.states]
        if outside:
            raise StateNotFound(f"step leaves the state set at {sorted_ids(outside)!r}")

    @classmethod
    def from_map(cls, step: Mapping[StateId, StateId]) -> "FiniteDynSys":
        return cls(frozenset(step), step)

    @classmethod
    def empty(cls) -> "FiniteDynSys":
        return cls(frozenset(), {})

    def sorted_states(self) -> list:
        return sorted_ids(self.states)

    def __len__(self) -> int:
        return len(self.states)


@dataclass(frozen=True)
class DynMorphism:
    source: FiniteDynSys
    target: FiniteDynSys
    map: Mapping[StateId, StateId] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "map", dict(self.map))

    def __call__(self, s: StateId) -> StateId:
        return self.map[s]


@dataclass(frozen=True)
class DynDiagram:
    nodes: tuple
    arrows: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "arrows", tuple(tuple(a) for a in self.arrows))


class Colimit(NamedTuple):
    system: FiniteDynSys
    legs: tuple


def identity_morphism(sys: FiniteDynSys) -> DynMorphism:
    return DynMorphism(sys, sys, {s: s for s in sys.states})


def compose(outer: DynMorphism, inner: DynMorphism) -> DynMorphism:
    """``outer ∘ inner``; the middle systems must agree."""
    if inner.target != outer.source:
        raise InvalidDiagram("morphisms are not composable")
    return DynMorphism(inner.source, outer.target, {s: outer.map[t] for s, t in inner.map.items()})


def iterate(sys: FiniteDynSys, s: StateId, n: int) -> StateId:
    if s not in sys.states:
        raise StateNotFound(s)
    if n < 0:
        raise ValueError("n must be nonnegative")
    # Walk until a repeat, then jump by the cycle length.
    seen: dict = {}
    path: list = []
    cur = s
    i = 0
    while i < n:
        if cur in seen:
            start = seen[cur]
            period = i - start
            return path[start + (n - start) % period]
        seen[cur] = i
        path.append(cur)
        cur = sys.step[cur]
        i += 1
    return cur


def _require_total(m: DynMorphism) -> None:
    missing = [s for s in m.source.states if s not in m.map]
    if missing:
        raise MapNotTotal(f"map undefined on {sorted_ids(missing)!r}")
    bad = [s for s in m.source.states if m.map[s] not in m.target.states]
    if bad:
        raise MapNotTotal(f"map leaves the target state set at {sorted_ids(bad)!r}")


def check_semiconjugacy(m: DynMorphism) -> bool:
    _require_total(m)
    src, tgt, h = m.source.step, m.target.step, m.map
    return all(h[src[s]] == tgt[h[s]] for s in m.source.states)


def subsample(sys: FiniteDynSys, dt: int) -> FiniteDynSys:
    """The system stepping ``dt`` units at a time."""
    if dt < 1:
        raise InvalidStride(f"stride must be positive, got {dt}")
    if dt == 1:
        return sys
    return FiniteDynSys(sys.states, {s: iterate(sys, s, dt) for s in sys.states})


def orbit_closure(sys: FiniteDynSys, seeds: Iterable[StateId]) -> frozenset:
    closed = set()
    for s in seeds:
        if s not in sys.states:
            raise StateNotFound(s)
        while s not in closed:
            closed.add(s)
            s = sys.step[s]
    return frozenset(closed)


def restrict(sys: FiniteDynSys, states: Iterable[StateId]) -> FiniteDynSys:
    states = frozenset(states)
    return FiniteDynSys(states, {s: sys.step[s] for s in states})


def reachable_restriction(
    sys: FiniteDynSys, seeds: Iterable[StateId]
) -> tuple[FiniteDynSys, DynMorphism]:
    """Smallest step-closed subsystem containing ``seeds``, with its inclusion."""
    sub = restrict(sys, orbit_closure(sys, seeds))
    return sub, DynMorphism(sub, sys, {s: s for s in sub.states})


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx


def colimit(d: DynDiagram) -> Colimit:
    """Colimit of a finite diagram, computed pointwise as a quotient.

    States of the result are tuples of ``(node_index, state)`` pairs, sorted,
    naming the equivalence class they stand for.
    """
    for n, (i, j, m) in enumerate(d.arrows):
        if not (0 <= i < len(d.nodes) and 0 <= j < len(d.nodes)):
            raise InvalidDiagram(f"arrow {n} names a missing node")
        if m.source != d.nodes[i] or m.target != d.nodes[j]:
            raise InvalidDiagram(f"arrow {n} does not connect nodes {i} and {j}")
        try:
            ok = check_semiconjugacy(m)
        except MapNotTotal as exc:
            raise InvalidDiagram(f"arrow {n}: {exc}") from exc
        if not ok:
            raise InvalidDiagram(f"arrow {n} is not a semiconjugacy")

    points = [(i, s) for i, node in enumerate(d.nodes) for s in node.states]
    uf = _UnionFind(points)
    for i, j, m in d.arrows:
        for s, t in m.map.items():
            uf.union((i, s), (j, t))

    members: dict = {}
    for p in points:
        members.setdefault(uf.find(p), []).append(p)
    name = {root: tuple(sorted(ps, key=sort_key)) for root, ps in members.items()}

    step: dict = {}
    for p in points:
        i, s = p
        here = name[uf.find(p)]
        there = name[uf.find((i, d.nodes[i].step[s]))]
        if step.setdefault(here, there) != there:
            raise InvalidDiagram(f"induced step is not well defined on class {here!r}")

    system = FiniteDynSys(frozenset(step), step)
    legs = tuple(
        DynMorphism(node, system, {s: name[uf.find((i, s))] for s in node.states})
        for i, node in enumerate(d.nodes)
    )
    return Colimit(system, legs)


def _invariants(sys: FiniteDynSys) -> dict:
    """Per-state labels preserved by any conjugacy.

    (in-degree, steps until entering a cycle, length of that cycle, sorted
    in-degree profile of the preimages).
    """
    indeg = {s: 0 for s in sys.states}
    preimages: dict = {s: [] for s in sys.states}
    for s, t in sys.step.items():
        indeg[t] += 1
        preimages[t].append(s)

    on_cycle: dict = {}
    for s in sys.states:
        if s in on_cycle:
            continue
        path, pos = [], {}
        cur = s
        while cur not in pos and cur not in on_cycle:
            pos[cur] = len(path)
            path.append(cur)
            cur = sys.step[cur]
        if cur in pos:
            cyc = path[pos[cur]:]
            for c in cyc:
                on_cycle[c] = len(cyc)
            path = path[: pos[cur]]
        for c in path:
            on_cycle.setdefault(c, 0)

    height: dict = {}

    def depth(s):
        chain = []
        while s not in height:
            if on_cycle[s]:
                height[s] = 0
                break
            chain.append(s)
            s = sys.step[s]
        h = height[s]
        for c in reversed(chain):
            h += 1
            height[c] = h
        return height

    cycle_len: dict = {}
    for s in sys.states:
        depth(s)
        cur = s
        while not on_cycle[cur]:
            cur = sys.step[cur]
        cycle_len[s] = on_cycle[cur]

    return {
        s: (indeg[s], height[s], cycle_len[s], tuple(sorted(indeg[p] for p in preimages[s])))
        for s in sys.states
    }


def find_conjugacy(a: FiniteDynSys, b: FiniteDynSys) -> Optional[dict]:
    """Search for a bijection ``h`` with ``h ∘ step_a == step_b ∘ h``.

    Exact backtracking.  Candidates are pruned by local invariants and each
    choice is propagated along the forward orbit, which the conjugacy
    equation forces.
    """
    if len(a.states) != len(b.states):
        return None
    inv_a, inv_b = _invariants(a), _invariants(b)
    if sorted(inv_a.values()) != sorted(inv_b.values()):
        return None

    by_inv: dict = {}
    for t in sorted_ids(b.states):
        by_inv.setdefault(inv_b[t], []).append(t)

    # Preimage-free states first: their choice forces a whole forward chain.
    order = sorted(a.states, key=lambda s: (inv_a[s][0] != 0, -inv_a[s][1], sort_key(s)))
    h: dict = {}
    used: set = set()

    def assign(s, t, trail) -> bool:
        while True:
            if s in h:
                return h[s] == t
            if t in used or inv_a[s] != inv_b[t]:
                return False
            h[s] = t
            used.add(t)
            trail.append(s)
            s, t = a.step[s], b.step[t]

    def undo(trail):
        for s in trail:
            used.discard(h.pop(s))

    def search(k: int) -> bool:
        while k < len(order) and order[k] in h:
            k += 1
        if k == len(order):
            return True
        s = order[k]
        for t in by_inv[inv_a[s]]:
            if t in used:
                continue
            trail: list = []
            if assign(s, t, trail) and search(k + 1):
                return True
            undo(trail)
        return False

    if search(0):
        return dict(h)
    return None
