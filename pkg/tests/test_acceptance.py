"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run standalone with ``python tests/test_acceptance.py``.
"""

import contextlib
import io as stdio
import itertools
import random
import sys
import time
from collections import Counter

import pytest

from dynrecon import io
from dynrecon.cli import main as cli_main
from dynrecon.dynsys import FiniteDynSys, check_semiconjugacy, colimit, subsample
from dynrecon.observe import (
    Measurement,
    ObservedSystem,
    delay_embed,
    orbit_system,
)
from dynrecon.recon import delay_word, jump_reduction, reconstruct, semiconjugacy_from_tsd_morphism
from dynrecon.samples import (
    all_maps,
    full_shift,
    golden_mean,
    random_code,
    random_diagram,
    random_observed_system,
    random_presentation,
    random_system,
    semiconjugacies,
)
from dynrecon.shift import (
    apply_sbc,
    compose_sbc,
    induced_word_map,
    sbc_image_presentation,
    words,
)
from dynrecon.tsd import (
    TimeSeriesData,
    TsdMorphism,
    check_tsd_morphism,
    data_functor,
    extend_tsd_morphism,
    tsd_from_sequence,
    validate_tsd,
    word_functor,
)

from conftest import FIXTURES


@pytest.fixture
def criterion(capsys):
    @contextlib.contextmanager
    def run(number, title):
        start = time.perf_counter()
        try:
            yield
        except BaseException:
            with capsys.disabled():
                print(f"\n[FAIL] criterion {number}: {title}")
            raise
        with capsys.disabled():
            print(f"\n[PASS] criterion {number}: {title} ({time.perf_counter() - start:.2f}s)")

    return run


def sliding_oracle(gen, k, word):
    return tuple(gen[tuple(word[j : j + k + 1])] for j in range(len(word) - k))


def fixture_objects(kind):
    out = []
    for path in sorted(FIXTURES.glob("*.json")):
        if io.detect_kind(io.read_json(path)) == kind:
            out.append((path.name, io.load(path)))
    return out


def fixture_streams():
    return [(p.name, io.parse_sequence(p.read_text())) for p in sorted(FIXTURES.glob("*.txt"))]


def test_consistency_campaign(criterion):
    with criterion(1, "consistency: 200 random systems (1-8 states) recovered up to conjugacy"):
        buf = stdio.StringIO()
        start = time.perf_counter()
        with contextlib.redirect_stdout(buf):
            code = cli_main(["consistency", "--random", "200", "--max-states", "8", "--seed", "7"])
        elapsed = time.perf_counter() - start
        lines = buf.getvalue().splitlines()
        assert code == 0
        assert lines[-1] == "200/200 PASS"
        assert sum(" PASS " in line for line in lines[:-1]) == 200
        assert elapsed < 10, elapsed


def test_word_functoriality(criterion):
    with criterion(2, "induced word maps compose (100 code pairs, levels 0-6)"):
        rng = random.Random(2)
        horizon = 6
        for _ in range(100):
            p = random_presentation(rng, max_vertices=5, max_symbols=3)
            a = random_code(rng, rng.randint(0, 2), p.alphabet, max_symbols=3)
            t = sbc_image_presentation(a, p)
            b = random_code(rng, rng.randint(0, 2), a.target_alphabet, max_symbols=3)
            u = sbc_image_presentation(b, t)
            ba = compose_sbc(b, a)
            ws = [words(p, n) for n in range(horizon + 5)]
            wt = [words(t, n) for n in range(horizon + 3)]
            wu = [words(u, n) for n in range(horizon + 1)]
            for m in range(horizon + 1):
                for w in ws[m + a.window]:
                    assert induced_word_map(a, m, w) in wt[m]
                for w in wt[m + b.window]:
                    assert induced_word_map(b, m, w) in wu[m]
                for w in ws[m + ba.window]:
                    direct = induced_word_map(ba, m, w)
                    assert direct == induced_word_map(b, m, induced_word_map(a, m + b.window, w))
                    assert direct in wu[m]


def test_sbc_composition(criterion):
    with criterion(3, "apply(compose(b, a)) == apply(b) . apply(a) on 500 random triples"):
        rng = random.Random(3)
        for _ in range(500):
            alphabet = list(range(rng.randint(1, 3)))
            a = random_code(rng, rng.randint(0, 2), alphabet)
            b = random_code(rng, rng.randint(0, 2), a.target_alphabet)
            n = rng.randint(a.window + b.window + 1, 20)
            s = [rng.choice(alphabet) for _ in range(n)]
            assert apply_sbc(compose_sbc(b, a), s) == apply_sbc(b, apply_sbc(a, s))


def test_tsd_axioms_on_corpus(criterion):
    with criterion(4, "every fixture-derived timeseries data satisfies the axioms"):
        produced = []
        for name, p in fixture_objects("presentation"):
            produced.append((name, word_functor(p, 6)))
        for name, s in fixture_streams():
            for h in range(len(s) + 2):
                produced.append((f"{name} h={h}", tsd_from_sequence(s, h)))
        for name, x in fixture_objects("observed"):
            for dt in (1, 2, 3):
                produced.append((f"{name} dt={dt}", data_functor(x, dt, 5)))
        produced += fixture_objects("tsd")
        assert len(produced) > 20
        for name, x in produced:
            assert validate_tsd(x) == [], name


def test_factorization(criterion):
    with criterion(5, "jump-k extension matches the recursion and direct sliding (100 morphisms)"):
        rng = random.Random(5)
        for _ in range(100):
            k = rng.randint(0, 2)
            alphabet = list("abc"[: rng.randint(1, 3)])
            m = TsdMorphism(k, random_code(rng, k, alphabet).gen)
            for n in range(7):
                length = n + k + 1
                if len(alphabet) ** length <= 300:
                    sample = itertools.product(alphabet, repeat=length)
                else:
                    sample = (tuple(rng.choice(alphabet) for _ in range(length)) for _ in range(60))
                for w in sample:
                    got = extend_tsd_morphism(m, n, w)
                    assert got == sliding_oracle(m.gen, k, w)
                    if n:
                        head = extend_tsd_morphism(m, n - 1, w[:-1])
                        tail = extend_tsd_morphism(m, n - 1, w[1:])
                        assert got == head + tail[-1:]
                        assert got[1:] == tail


def product_source(rng):
    """Observed T x R projecting onto T, measured by (T-state, R-state)."""
    t = random_system(rng, rng.randint(1, 4))
    r = random_system(rng, rng.randint(1, 3))
    states = [(a, b) for a in t.sorted_states() for b in r.sorted_states()]
    sys_ = FiniteDynSys.from_map({(a, b): (t.step[a], r.step[b]) for a, b in states})
    phi = {s: s for s in states}
    initial = tuple(rng.sample(states, rng.randint(0, len(states))))
    return t, ObservedSystem(sys_, Measurement(sys_.states, set(states), phi), initial)


def test_semiconjugacy_extraction(criterion):
    with criterion(6, "jump-0 morphisms into fully observed data give semiconjugacies (50 cases)"):
        rng = random.Random(6)
        for _ in range(50):
            t, src = product_source(rng)
            dt = rng.randint(1, 3)
            target = subsample(t, dt)
            gen = {((a, b),): a for a, b in src.sys.states}
            h = semiconjugacy_from_tsd_morphism(TsdMorphism(0, gen), src, target, dt)
            assert check_semiconjugacy(h)
            assert h.source == orbit_system(src, dt).sys
            assert all(h.map[s] == s[0] for s in h.source.states)


def image_tsd(m, x):
    levels = [
        {extend_tsd_morphism(m, n, u) for u in x.level(n + m.jump)} for n in range(x.horizon - m.jump + 1)
    ]
    return TimeSeriesData(set(m.gen.values()), levels)


def test_jump_reduction(criterion):
    with criterion(7, "jump reduction is a valid jump-0 morphism reproducing the original (50 cases)"):
        rng = random.Random(7)
        horizon = 5
        for case in range(50):
            src = random_observed_system(rng, max_states=6, max_symbols=3)
            k, dt = rng.choice((1, 2)), rng.randint(1, 3)
            m = TsdMorphism(k, random_code(rng, k, sorted(src.alphabet)).gen)
            x = data_functor(src, dt, horizon)
            image = image_tsd(m, x)
            assert validate_tsd(image) == []
            everything = word_functor(full_shift(image.alphabet), horizon - k)
            for target in (image, everything):
                assert check_tsd_morphism(m, x, target)
                red = jump_reduction(m, src, dt, horizon)
                embedded = data_functor(delay_embed(src, k + 1, dt), dt, horizon - k)
                assert red.jump == 0
                assert check_tsd_morphism(red, embedded, target), case
                for n in range(horizon - k + 1):
                    for u in x.level(n + k):
                        assert delay_word(u, k) in embedded.level(n)
                        assert extend_tsd_morphism(red, n, delay_word(u, k)) == extend_tsd_morphism(m, n, u)


def small_systems(max_states):
    yield FiniteDynSys.empty()
    for k in range(1, max_states + 1):
        for h in all_maps(list(range(k)), list(range(k))):
            yield FiniteDynSys.from_map(h)


def cocones(d, z):
    """Every family of semiconjugacies nodes -> z commuting with the arrows."""
    options = [semiconjugacies(node, z) for node in d.nodes]
    for family in itertools.product(*options):
        if all(family[j][m.map[s]] == family[i][s] for i, j, m in d.arrows for s in d.nodes[i].states):
            yield family


def freeze(family):
    return tuple(tuple(sorted(f.items(), key=repr)) for f in family)


def test_colimit_universality(criterion):
    with criterion(8, "colimit cocone commutes and factors every competing cocone uniquely (30 diagrams)"):
        rng = random.Random(8)
        start = time.perf_counter()
        for _ in range(30):
            d = random_diagram(rng, max_nodes=3, max_states=4)
            col = colimit(d)
            for leg in col.legs:
                assert check_semiconjugacy(leg)
            for i, j, m in d.arrows:
                assert all(col.legs[j].map[m.map[s]] == col.legs[i].map[s] for s in d.nodes[i].states)
            size = 3 if len(col.system) <= 6 else 2
            for z in small_systems(size):
                induced = Counter()
                for u in semiconjugacies(col.system, z):
                    induced[freeze([{s: u[leg.map[s]] for s in leg.source.states} for leg in col.legs])] += 1
                for family in cocones(d, z):
                    assert induced.pop(freeze(family), 0) == 1
                assert not induced  # every u gives a cocone
        assert time.perf_counter() - start < 30


def test_outer_approximation(criterion):
    with criterion(9, "reconstructed language contains the observed words (fixture data, all orders)"):
        corpus = list(fixture_objects("tsd"))
        corpus += [(n, data_functor(x, dt, 4)) for n, x in fixture_objects("observed") for dt in (1, 2)]
        corpus += [(n, word_functor(p, 4)) for n, p in fixture_objects("presentation")]
        for name, x in corpus:
            for d in range(x.horizon + 1):
                lang = reconstruct(x, d).presentation
                for i in range(d + 1):
                    assert x.level(i) <= words(lang, i), (name, d, i)


def test_golden_mean_counts(criterion):
    with criterion(10, "golden-mean level sizes are 2, 3, 5, 8"):
        x = word_functor(golden_mean(), 3)
        assert x.sizes() == [2, 3, 5, 8]
        for n in range(4):
            brute = {w for w in itertools.product((0, 1), repeat=n + 1) if (1, 1) not in zip(w, w[1:])}
            assert x.level(n) == brute


def test_discretization_coherence(criterion):
    with criterion(11, "data at dt=2 equals data of the dt=2 orbit system (50 observed systems)"):
        rng = random.Random(11)
        for _ in range(50):
            x = random_observed_system(rng, max_states=8, max_symbols=3)
            for h in range(6):
                assert data_functor(x, 2, h) == data_functor(orbit_system(x, 2), 1, h)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-p", "no:cacheprovider"]))
