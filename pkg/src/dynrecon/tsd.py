"""Timeseries data: towers of word sets and the morphisms between them.

Level ``i`` of a :class:`TimeSeriesData` holds words of length ``i + 1``.
Dropping the first or the last symbol of a level-``i`` word must land in
level ``i - 1``.  A :class:`TsdMorphism` with jump ``k`` is stored by its
generator on level-``k`` words; the maps on higher levels are derived from
it one level at a time.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, NamedTuple, Optional, Sequence

from .errors import AlphabetMismatch, LengthMismatch, UnknownWord
from .observe import ObservedSystem, generate_subshift
from .ordering import sort_key, sorted_ids
from .shift import SubshiftPresentation, compose_generators, words

Symbol = Hashable
Word = tuple


@dataclass(frozen=True)
class TimeSeriesData:
    alphabet: frozenset
    levels: tuple

    def __post_init__(self):
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(
            self, "levels", tuple(frozenset(tuple(w) for w in lvl) for lvl in self.levels)
        )
        if not self.levels:
            raise ValueError("time series data needs at least level 0")

    @property
    def horizon(self) -> int:
        return len(self.levels) - 1

    def level(self, i: int) -> frozenset:
        return self.levels[i] if 0 <= i <= self.horizon else frozenset()

    def sizes(self) -> list[int]:
        return [len(lvl) for lvl in self.levels]

    def truncate(self, horizon: int) -> "TimeSeriesData":
        if horizon > self.horizon:
            raise ValueError("cannot truncate to a larger horizon")
        return TimeSeriesData(self.alphabet, self.levels[: horizon + 1])


@dataclass(frozen=True)
class TsdMorphism:
    jump: int
    gen: Mapping[Word, Symbol]

    def __post_init__(self):
        if self.jump < 0:
            raise ValueError("jump must be nonnegative")
        gen = {tuple(k): v for k, v in self.gen.items()}
        object.__setattr__(self, "gen", gen)
        for w in gen:
            if len(w) != self.jump + 1:
                raise LengthMismatch(f"generator key {w!r} does not have length {self.jump + 1}")

    @classmethod
    def relabel(cls, mapping: Mapping[Symbol, Symbol]) -> "TsdMorphism":
        """Jump-0 morphism generated by a symbol map."""
        return cls(0, {(a,): b for a, b in mapping.items()})


def identity_tsd_morphism(alphabet: Iterable[Symbol]) -> TsdMorphism:
    return TsdMorphism.relabel({a: a for a in alphabet})


class Violation(NamedTuple):
    level: int
    word: Word
    axiom: str

    def __str__(self) -> str:
        return f"level {self.level}: {self.axiom} fails for {self.word!r}"


def validate_tsd(x: TimeSeriesData) -> list[Violation]:
    out = []
    for i, lvl in enumerate(x.levels):
        below = x.levels[i - 1] if i else None
        for w in sorted(lvl, key=sort_key):
            if len(w) != i + 1:
                out.append(Violation(i, w, f"length {i + 1}"))
                continue
            if not set(w) <= x.alphabet:
                out.append(Violation(i, w, "alphabet"))
            if below is None:
                continue
            if w[1:] not in below:
                out.append(Violation(i, w, "start"))
            if w[:-1] not in below:
                out.append(Violation(i, w, "finish"))
    return out


def word_functor(p: SubshiftPresentation, horizon: int) -> TimeSeriesData:
    return TimeSeriesData(p.alphabet, [words(p, i) for i in range(horizon + 1)])


def tsd_from_sequence(s: Sequence[Symbol], horizon: int) -> TimeSeriesData:
    """All contiguous windows of one observed stream, level by level."""
    s = tuple(s)
    levels = [
        frozenset(s[j : j + i + 1] for j in range(len(s) - i)) for i in range(horizon + 1)
    ]
    return TimeSeriesData(frozenset(s), levels)


def data_functor(x: ObservedSystem, dt: int, horizon: int) -> TimeSeriesData:
    """Words of the subshift generated by observing ``x`` every ``dt`` steps."""
    return word_functor(generate_subshift(x, dt), horizon)


def extend_tsd_morphism(m: TsdMorphism, n: int, w: Sequence[Symbol]) -> Word:
    """Level-``n`` component of ``m`` applied to ``w``.

    Built upward from the generator: the level ``t + 1`` image of a word is
    the level ``t`` image of its prefix followed by the last symbol of the
    level ``t`` image of its suffix (the two overlap in ``t`` symbols).
    """
    w = tuple(w)
    k = m.jump
    if len(w) != n + k + 1:
        raise LengthMismatch(f"expected a word of length {n + k + 1}, got {len(w)}")
    images = []
    for j in range(n + 1):
        key = w[j : j + k + 1]
        if key not in m.gen:
            raise UnknownWord(f"generator undefined on {key!r}")
        images.append((m.gen[key],))
    for _ in range(n):
        images = [images[j] + images[j + 1][-1:] for j in range(len(images) - 1)]
    return images[0]


def tsd_morphism_violations(m: TsdMorphism, x: TimeSeriesData, y: TimeSeriesData) -> list[str]:
    """Failed conditions of ``m : x -> y`` on the levels both objects store."""
    k = m.jump
    out = []
    for n in range(min(x.horizon - k, y.horizon) + 1):
        target = y.level(n)
        for w in sorted(x.level(n + k), key=sort_key):
            img = extend_tsd_morphism(m, n, w)
            if img not in target:
                out.append(f"level {n}: image {img!r} of {w!r} is not in the target level")
            if n == 0:
                continue
            if extend_tsd_morphism(m, n - 1, w[1:]) != img[1:]:
                out.append(f"level {n}: start square fails on {w!r}")
            if extend_tsd_morphism(m, n - 1, w[:-1]) != img[:-1]:
                out.append(f"level {n}: finish square fails on {w!r}")
    return out


def check_tsd_morphism(m: TsdMorphism, x: TimeSeriesData, y: TimeSeriesData) -> bool:
    return not tsd_morphism_violations(m, x, y)


def compose_tsd_morphisms(outer: TsdMorphism, inner: TsdMorphism) -> TsdMorphism:
    readable = {a for w in outer.gen for a in w}
    stray = set(inner.gen.values()) - readable
    if stray:
        raise AlphabetMismatch(f"inner outputs {sorted_ids(stray)!r} are not read by the outer morphism")
    gen = compose_generators(outer.gen, outer.jump, inner.gen, inner.jump)
    return TsdMorphism(outer.jump + inner.jump, gen)


def tsd_inclusion(x: TimeSeriesData, y: TimeSeriesData) -> Optional[TsdMorphism]:
    """The identity-generated morphism ``x -> y`` if ``x`` is levelwise inside ``y``."""
    if not x.alphabet <= y.alphabet:
        raise AlphabetMismatch("source alphabet is not contained in the target alphabet")
    for i in range(min(x.horizon, y.horizon) + 1):
        if not x.levels[i] <= y.levels[i]:
            return None
    return identity_tsd_morphism(x.alphabet)
