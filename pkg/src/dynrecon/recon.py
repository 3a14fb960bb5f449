"""Reconstruction of dynamics from timeseries data.

The reconstruction at order ``d`` is the de Bruijn graph of level ``d``:
one vertex per observed word, an edge ``w -> w'`` whenever ``w`` without its
first symbol equals ``w'`` without its last, labeled by the first symbol of
``w``.  Vertices that start no infinite path are pruned.  When every
surviving vertex has exactly one successor the graph is a deterministic
system and is returned as one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, NamedTuple, Optional, Sequence

from .dynsys import DynMorphism, FiniteDynSys, check_semiconjugacy, find_conjugacy
from .errors import (
    InvalidTimeSeriesData,
    InvalidTsdMorphism,
    NondeterministicReconstruction,
    NothingToReduce,
    OrderTooLarge,
    UnknownWord,
)
from .observe import (
    Measurement,
    ObservedSystem,
    delay_embed,
    identity_observation,
    orbit_system,
)
from .ordering import sorted_ids
from .shift import SubshiftPresentation, prune
from .tsd import (
    TimeSeriesData,
    TsdMorphism,
    data_functor,
    extend_tsd_morphism,
    tsd_morphism_violations,
    validate_tsd,
)

EMPTY_DATA = "empty-data"
EMPTY_AFTER_PRUNING = "empty-after-pruning"


@dataclass(frozen=True)
class ReconResult:
    presentation: SubshiftPresentation
    system: Optional[ObservedSystem]
    order: int
    state_words: Mapping = field(default_factory=dict)
    flags: tuple = ()

    @property
    def is_empty(self) -> bool:
        return not self.presentation.vertices

    @property
    def is_deterministic(self) -> bool:
        return self.system is not None


def reconstruct(x: TimeSeriesData, order: Optional[int] = None) -> ReconResult:
    problems = validate_tsd(x)
    if problems:
        raise InvalidTimeSeriesData(f"{len(problems)} violations, first: {problems[0]}")
    if order is None:
        nonempty = [i for i, lvl in enumerate(x.levels) if lvl]
        order = nonempty[-1] if nonempty else 0
    if order < 0:
        raise ValueError("order must be nonnegative")
    if order > x.horizon:
        raise OrderTooLarge(f"order {order} exceeds horizon {x.horizon}")

    vertices = x.levels[order]
    by_prefix: dict = {}
    for w in vertices:
        by_prefix.setdefault(w[:-1], []).append(w)
    edges = {(w, nxt, w[0]) for w in vertices for nxt in by_prefix.get(w[1:], ())}
    graph = prune(SubshiftPresentation(vertices, edges, x.alphabet))

    flags = []
    if not vertices:
        flags.append(EMPTY_DATA)
    elif not graph.vertices:
        flags.append(EMPTY_AFTER_PRUNING)

    system = None
    if graph.is_deterministic():
        step = {u: v for u, v, _ in graph.edges}
        sys = FiniteDynSys(graph.vertices, step)
        meas = Measurement(graph.vertices, x.alphabet, {w: w[0] for w in graph.vertices})
        system = ObservedSystem(sys, meas, tuple(sys.sorted_states()))

    return ReconResult(graph, system, order, {w: w for w in graph.vertices}, tuple(flags))


@dataclass(frozen=True)
class ConsistencyReport:
    passed: bool
    size: int
    bijection: Optional[dict] = None
    reason: str = ""

    def describe(self) -> str:
        if not self.passed:
            return f"FAIL |Ω|={self.size} {self.reason}"
        pairs = ", ".join(f"{w!r}->{s!r}" for w, s in sorted_pairs(self.bijection or {}))
        return f"PASS |Ω|={self.size} {{{pairs}}}"


def sorted_pairs(m: Mapping) -> list:
    return [(k, m[k]) for k in sorted_ids(m)]


def consistency_check(sys: FiniteDynSys) -> tuple[bool, ConsistencyReport]:
    """Reconstruct a fully observed system and look for a conjugacy back."""
    data = data_functor(identity_observation(sys), 1, 1)
    r = reconstruct(data, 1)
    if r.system is None:
        report = ConsistencyReport(False, len(sys), reason="reconstruction is not deterministic")
        return False, report
    h = find_conjugacy(r.system.sys, sys)
    if h is None:
        report = ConsistencyReport(False, len(sys), reason="no conjugacy to the source system")
        return False, report
    return True, ConsistencyReport(True, len(sys), h)


class InducedMorphism(NamedTuple):
    morphism: Optional[DynMorphism]
    problems: list


def induced_recon_morphism(
    m: TsdMorphism, x: TimeSeriesData, y: TimeSeriesData, order: int
) -> InducedMorphism:
    """Map between the order-``order`` reconstructions induced by a jump-0 morphism."""
    if m.jump != 0:
        raise ValueError("only jump-0 morphisms act on reconstructions directly")
    rx, ry = reconstruct(x, order), reconstruct(y, order)
    if rx.system is None or ry.system is None:
        side = "source" if rx.system is None else "target"
        raise NondeterministicReconstruction(f"{side} reconstruction is not deterministic")
    src, tgt = rx.system.sys, ry.system.sys

    problems = []
    h = {}
    for w in src.sorted_states():
        try:
            img = extend_tsd_morphism(m, order, w)
        except UnknownWord as exc:
            problems.append(str(exc))
            continue
        if img not in tgt.states:
            problems.append(f"image {img!r} of {w!r} is not a reconstructed state")
            continue
        h[w] = img
    if problems:
        return InducedMorphism(None, problems)
    morphism = DynMorphism(src, tgt, h)
    if not check_semiconjugacy(morphism):
        return InducedMorphism(None, ["induced map is not a semiconjugacy"])
    return InducedMorphism(morphism, [])


def semiconjugacy_from_tsd_morphism(
    m: TsdMorphism, src: ObservedSystem, tgt_sys: FiniteDynSys, dt: int = 1
) -> DynMorphism:
    """Semiconjugacy from the visited dynamics of ``src`` onto ``tgt_sys``.

    ``m`` must be a jump-0 morphism from the data of ``src`` into the data
    of the fully observed ``tgt_sys``; the state map is the generator
    composed with the measurement.
    """
    if m.jump != 0:
        raise InvalidTsdMorphism(f"expected jump 0, got {m.jump}")
    x = data_functor(src, dt, 1)
    y = data_functor(identity_observation(tgt_sys), 1, 1)
    try:
        problems = tsd_morphism_violations(m, x, y)
    except UnknownWord as exc:
        raise InvalidTsdMorphism(str(exc)) from exc
    if problems:
        raise InvalidTsdMorphism(problems[0])
    orb = orbit_system(src, dt)
    h = {s: m.gen[(src.phi[s],)] for s in orb.sys.states}
    return DynMorphism(orb.sys, tgt_sys, h)


def delay_word(u: Sequence, k: int) -> tuple:
    """Rewrite a word as the sequence of its ``(k+1)``-windows."""
    u = tuple(u)
    return tuple(u[j : j + k + 1] for j in range(len(u) - k))


def jump_reduction(m: TsdMorphism, src: ObservedSystem, dt: int, horizon: int) -> TsdMorphism:
    """Trade the jump of ``m`` for a delay-coordinate measurement.

    The result is a jump-0 morphism out of the data of ``src`` measured with
    ``m.jump + 1`` delay coordinates, observed up to ``horizon - m.jump``.
    """
    k = m.jump
    if k == 0:
        raise NothingToReduce("morphism already has jump 0")
    if horizon < k:
        raise ValueError(f"horizon {horizon} is smaller than the jump {k}")
    embedded = data_functor(delay_embed(src, k + 1, dt), dt, horizon - k)
    gen = {}
    for (t,) in embedded.level(0):
        if t not in m.gen:
            raise UnknownWord(f"generator undefined on {t!r}")
        gen[(t,)] = m.gen[t]
    return TsdMorphism(0, gen)
