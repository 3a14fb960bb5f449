"""Small named systems and seeded random instances.

Used by the CLI's random campaigns, the experiment scripts and the tests.
All random builders take a ``random.Random`` so results depend only on the
seed.
"""

from __future__ import annotations

import itertools
import random
from typing import Hashable, Iterable, Sequence

from .dynsys import DynDiagram, DynMorphism, FiniteDynSys, check_semiconjugacy
from .observe import Measurement, ObservedSystem
from .shift import SlidingBlockCode, SubshiftPresentation, prune


def cycle(n: int, labels: Sequence[Hashable] | None = None) -> FiniteDynSys:
    """``n``-cycle ``labels[0] -> labels[1] -> ... -> labels[0]`` (integers by default)."""
    labels = list(range(n)) if labels is None else list(labels)
    return FiniteDynSys.from_map({labels[i]: labels[(i + 1) % n] for i in range(n)})


def parity_observation(n: int, initial: Sequence[int] = (0,)) -> ObservedSystem:
    sys = cycle(n)
    phi = {s: "even" if s % 2 == 0 else "odd" for s in sys.states}
    return ObservedSystem(sys, Measurement.from_map(phi), tuple(initial))


def golden_mean() -> SubshiftPresentation:
    """Binary sequences with no two consecutive 1s."""
    edges = {("u", "u", 0), ("u", "v", 1), ("v", "u", 0)}
    return SubshiftPresentation({"u", "v"}, edges, {0, 1})


def full_shift(alphabet: Iterable[Hashable]) -> SubshiftPresentation:
    alphabet = frozenset(alphabet)
    return SubshiftPresentation({"*"}, {("*", "*", a) for a in alphabet}, alphabet)


def random_system(rng: random.Random, k: int) -> FiniteDynSys:
    """Uniform random total map on ``{0, ..., k-1}``."""
    return FiniteDynSys.from_map({s: rng.randrange(k) for s in range(k)}) if k else FiniteDynSys.empty()


def random_systems(n: int, max_states: int, seed: int) -> list[FiniteDynSys]:
    rng = random.Random(seed)
    return [random_system(rng, rng.randint(1, max_states)) for _ in range(n)]


def random_observed_system(
    rng: random.Random, max_states: int = 6, max_symbols: int = 3
) -> ObservedSystem:
    sys = random_system(rng, rng.randint(1, max_states))
    symbols = [chr(ord("a") + i) for i in range(rng.randint(1, max_symbols))]
    phi = {s: rng.choice(symbols) for s in sys.states}
    states = sys.sorted_states()
    initial = rng.sample(states, rng.randint(0, len(states)))
    return ObservedSystem(sys, Measurement(sys.states, symbols, phi), tuple(initial))


def random_presentation(
    rng: random.Random, max_vertices: int = 5, max_symbols: int = 3, max_out: int = 2
) -> SubshiftPresentation:
    """Random pruned presentation with every vertex having 1..max_out successors."""
    alphabet = list(range(rng.randint(1, max_symbols)))
    vertices = list(range(rng.randint(1, max_vertices)))
    edges = set()
    for v in vertices:
        for _ in range(rng.randint(1, max_out)):
            edges.add((v, rng.choice(vertices), rng.choice(alphabet)))
    return prune(SubshiftPresentation(vertices, edges, alphabet))


def random_code(
    rng: random.Random, window: int, source_alphabet: Iterable[Hashable], max_symbols: int = 3
) -> SlidingBlockCode:
    target = list(range(rng.randint(1, max_symbols)))
    return SlidingBlockCode.from_function(window, source_alphabet, lambda w: rng.choice(target), target)


def all_maps(src: Sequence, tgt: Sequence):
    for values in itertools.product(tgt, repeat=len(src)):
        yield dict(zip(src, values))


def semiconjugacies(a: FiniteDynSys, b: FiniteDynSys) -> list[dict]:
    """Every semiconjugacy ``a -> b`` by exhaustive enumeration."""
    src, tgt = a.sorted_states(), b.sorted_states()
    return [h for h in all_maps(src, tgt) if check_semiconjugacy(DynMorphism(a, b, h))]


def random_diagram(
    rng: random.Random, max_nodes: int = 3, max_states: int = 4, max_arrows: int = 4
) -> DynDiagram:
    nodes = [random_system(rng, rng.randint(0, max_states)) for _ in range(rng.randint(1, max_nodes))]
    arrows = []
    for _ in range(rng.randint(0, max_arrows)):
        i, j = rng.randrange(len(nodes)), rng.randrange(len(nodes))
        maps = semiconjugacies(nodes[i], nodes[j])
        if maps:
            arrows.append((i, j, DynMorphism(nodes[i], nodes[j], rng.choice(maps))))
    return DynDiagram(tuple(nodes), tuple(arrows))
