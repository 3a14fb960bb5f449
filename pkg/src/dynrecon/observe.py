"""Measured systems with initial points, and the sequences they generate.

An :class:`ObservedSystem` bundles a system, a measurement into a finite
alphabet, and an ordered list of initial states.  From it we read orbits,
restrict to the dynamics actually visited, build delay-coordinate
measurements, and present the subshift of all observation sequences as a
labeled graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Sequence

from .dynsys import (
    DynMorphism,
    FiniteDynSys,
    StateId,
    check_semiconjugacy,
    iterate,
    orbit_closure,
    restrict,
    subsample,
)
from .errors import DomainMismatch, InvalidStride, InvalidWindow, MapNotTotal, StateNotFound
from .ordering import sorted_ids
from .shift import SubshiftPresentation

Symbol = Hashable


@dataclass(frozen=True)
class Measurement:
    domain_states: frozenset
    alphabet: frozenset
    phi: Mapping[StateId, Symbol]

    def __post_init__(self):
        object.__setattr__(self, "domain_states", frozenset(self.domain_states))
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(self, "phi", dict(self.phi))
        if set(self.phi) != self.domain_states:
            raise DomainMismatch("phi must be defined exactly on the domain states")
        stray = [s for s, a in self.phi.items() if a not in self.alphabet]
        if stray:
            raise DomainMismatch(f"phi leaves the alphabet at {sorted_ids(stray)!r}")

    @classmethod
    def from_map(cls, phi: Mapping[StateId, Symbol], alphabet: Iterable[Symbol] = ()) -> "Measurement":
        return cls(frozenset(phi), frozenset(alphabet) | frozenset(phi.values()), phi)


@dataclass(frozen=True)
class ObservedSystem:
    sys: FiniteDynSys
    meas: Measurement
    initial: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "initial", tuple(dict.fromkeys(self.initial)))
        if self.meas.domain_states != self.sys.states:
            raise DomainMismatch("measurement domain differs from the system's states")
        for s in self.initial:
            if s not in self.sys.states:
                raise StateNotFound(s)

    @property
    def phi(self) -> Mapping[StateId, Symbol]:
        return self.meas.phi

    @property
    def alphabet(self) -> frozenset:
        return self.meas.alphabet


@dataclass(frozen=True)
class ObsMorphism:
    h: Mapping[StateId, StateId]
    A: Mapping[Symbol, Symbol]


def make_observed_system(
    sys: FiniteDynSys, meas: Measurement | Mapping, initial: Sequence[StateId] = ()
) -> ObservedSystem:
    """Validated constructor.  ``meas`` may be a plain state→symbol mapping."""
    if not isinstance(meas, Measurement):
        meas = dict(meas)
        if set(meas) != set(sys.states):
            raise DomainMismatch("measurement domain differs from the system's states")
        meas = Measurement.from_map(meas)
    return ObservedSystem(sys, meas, tuple(initial))


def check_obs_morphism(m: ObsMorphism, x: ObservedSystem, y: ObservedSystem) -> bool:
    return not obs_morphism_violations(m, x, y)


def obs_morphism_violations(m: ObsMorphism, x: ObservedSystem, y: ObservedSystem) -> list[str]:
    for s in x.sys.states:
        if s not in m.h:
            raise MapNotTotal(f"h undefined on state {s!r}")
        if m.h[s] not in y.sys.states:
            raise MapNotTotal(f"h sends {s!r} outside the target states")
    for a in set(x.phi.values()):
        if a not in m.A:
            raise MapNotTotal(f"A undefined on symbol {a!r}")

    out = []
    h = {s: m.h[s] for s in x.sys.states}
    if not check_semiconjugacy(DynMorphism(x.sys, y.sys, h)):
        out.append("semiconjugacy square fails")
    for s in sorted_ids(x.sys.states):
        if m.A[x.phi[s]] != y.phi[h[s]]:
            out.append(f"measurement square fails at state {s!r}")
    targets = set(y.initial)
    for s in x.initial:
        if h[s] not in targets:
            out.append(f"initial point {s!r} maps to non-initial {h[s]!r}")
    return out


def observe_orbit(x: ObservedSystem, s: StateId, length: int, dt: int = 1) -> list:
    if s not in x.sys.states:
        raise StateNotFound(s)
    if dt < 1:
        raise InvalidStride(f"stride must be positive, got {dt}")
    out = []
    for _ in range(length):
        out.append(x.phi[s])
        s = iterate(x.sys, s, dt)
    return out


def orbit_system(x: ObservedSystem, dt: int = 1) -> ObservedSystem:
    """Subsample by ``dt`` and keep only what the initial points reach."""
    coarse = subsample(x.sys, dt)
    sub = restrict(coarse, orbit_closure(coarse, x.initial))
    meas = Measurement(sub.states, x.alphabet, {s: x.phi[s] for s in sub.states})
    return ObservedSystem(sub, meas, x.initial)


def generate_subshift(x: ObservedSystem, dt: int = 1) -> SubshiftPresentation:
    """Labeled graph whose forward paths spell all observation sequences.

    Every orbit of every initial point, started at every time shift, is the
    label sequence of a forward path from the corresponding vertex.
    """
    orb = orbit_system(x, dt)
    edges = {(v, orb.sys.step[v], orb.phi[v]) for v in orb.sys.states}
    return SubshiftPresentation(orb.sys.states, edges, x.alphabet)


def delay_embed(x: ObservedSystem, k: int, dt: int = 1) -> ObservedSystem:
    if k < 1:
        raise InvalidWindow(f"delay window must be at least 1, got {k}")
    if dt < 1:
        raise InvalidStride(f"stride must be positive, got {dt}")
    phi = {s: tuple(observe_orbit(x, s, k, dt)) for s in x.sys.states}
    return ObservedSystem(x.sys, Measurement.from_map(phi), x.initial)


def identity_observation(sys: FiniteDynSys) -> ObservedSystem:
    """Full observation: measure the state itself, start from every state."""
    meas = Measurement(sys.states, sys.states, {s: s for s in sys.states})
    return ObservedSystem(sys, meas, tuple(sys.sorted_states()))
