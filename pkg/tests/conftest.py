import random
from pathlib import Path

import hypothesis
import hypothesis.strategies as st
import pytest

from dynrecon import io
from dynrecon.dynsys import FiniteDynSys
from dynrecon.observe import Measurement, ObservedSystem
from dynrecon.samples import random_presentation

hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile("default")

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def fixtures_dir():
    return FIXTURES


def fixture(name):
    return io.load(FIXTURES / name)


@st.composite
def systems(draw, max_states=8, min_states=0):
    k = draw(st.integers(min_states, max_states))
    step = draw(st.lists(st.integers(0, max(k - 1, 0)), min_size=k, max_size=k))
    return FiniteDynSys.from_map(dict(enumerate(step))) if k else FiniteDynSys.empty()


@st.composite
def observed_systems(draw, max_states=6, max_symbols=3):
    sys = draw(systems(max_states=max_states, min_states=1))
    symbols = "abcdef"[: draw(st.integers(1, max_symbols))]
    phi = {s: draw(st.sampled_from(symbols)) for s in sys.sorted_states()}
    initial = draw(st.lists(st.sampled_from(sys.sorted_states()), max_size=len(sys), unique=True))
    return ObservedSystem(sys, Measurement(sys.states, set(symbols), phi), tuple(initial))


def presentations(max_vertices=5, max_symbols=3, max_out=2):
    return st.integers(0, 2**32 - 1).map(
        lambda seed: random_presentation(random.Random(seed), max_vertices, max_symbols, max_out)
    )


def brute_paths(p, length):
    """Label sequences of all edge paths with ``length`` edges, by plain DFS."""
    out = set()

    def walk(v, labels):
        if len(labels) == length:
            out.add(tuple(labels))
            return
        for u, t, a in p.edges:
            if v is None or u == v:
                walk(t, labels + [a])

    walk(None, [])
    return out


def live_vertices(p):
    """Vertices with an infinite forward path (fixpoint, independent of prune())."""
    live = set(p.vertices)
    changed = True
    while changed:
        changed = False
        for v in list(live):
            if not any(u == v and t in live for u, t, _ in p.edges):
                live.discard(v)
                changed = True
    return live
