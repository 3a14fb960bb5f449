"""Finitely presented subshifts and sliding block codes.

A :class:`SubshiftPresentation` is a graph with symbols on its edges; the
subshift it presents is the set of label sequences of infinite forward paths.
Words follow the level convention used throughout the package: level ``n``
holds words of length ``n + 1``, i.e. labels of paths with ``n + 1`` edges.

A :class:`SlidingBlockCode` with window ``n`` is given by its generator on
``(n + 1)``-words; it reads a sequence through a sliding window and writes
one symbol per position.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .errors import (
    AlphabetMismatch,
    LengthMismatch,
    SequenceTooShort,
    UnknownWord,
)
from .ordering import sort_key, sorted_ids

Symbol = Hashable
Word = tuple
Edge = tuple  # (from, to, label)


@dataclass(frozen=True)
class SubshiftPresentation:
    vertices: frozenset
    edges: frozenset
    alphabet: frozenset

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "edges", frozenset(tuple(e) for e in self.edges))
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        for u, v, a in self.edges:
            if u not in self.vertices or v not in self.vertices:
                raise ValueError(f"edge {(u, v, a)!r} has an endpoint outside the vertex set")
            if a not in self.alphabet:
                raise ValueError(f"edge label {a!r} is not in the alphabet")

    @classmethod
    def empty(cls, alphabet: Iterable[Symbol] = ()) -> "SubshiftPresentation":
        return cls(frozenset(), frozenset(), frozenset(alphabet))

    def out_edges(self) -> dict:
        out: dict = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e[0]].append(e)
        for v in out:
            out[v].sort(key=sort_key)
        return out

    def pruned(self) -> "SubshiftPresentation":
        return prune(self)

    def is_pruned(self) -> bool:
        sources = {u for u, _, _ in self.edges}
        return sources == set(self.vertices)

    def is_deterministic(self) -> bool:
        """Exactly one outgoing edge at every vertex."""
        counts = dict.fromkeys(self.vertices, 0)
        for u, _, _ in self.edges:
            counts[u] += 1
        return all(c == 1 for c in counts.values())


def prune(p: SubshiftPresentation) -> SubshiftPresentation:
    """Iteratively drop vertices with no outgoing edge.

    Such vertices start no infinite forward path, so they carry no sequence
    of the subshift.  Vertices without incoming edges are kept: sequences are
    indexed from time zero and may start anywhere.
    """
    vertices = set(p.vertices)
    edges = set(p.edges)
    while True:
        live = {u for u, _, _ in edges}
        dead = vertices - live
        if not dead:
            break
        vertices = live
        edges = {e for e in edges if e[1] in vertices}
    return SubshiftPresentation(frozenset(vertices), frozenset(edges), p.alphabet)


def _frontier(p: SubshiftPresentation, n: int) -> dict:
    """Map each length-(n+1) path label to the set of vertices it can end at."""
    out = p.out_edges()
    frontier: dict = {}
    for u, v, a in p.edges:
        frontier.setdefault((a,), set()).add(v)
    for _ in range(n):
        nxt: dict = {}
        for w, ends in frontier.items():
            for v in ends:
                for _, t, a in out[v]:
                    nxt.setdefault(w + (a,), set()).add(t)
        frontier = nxt
    return frontier


def words(p: SubshiftPresentation, n: int) -> frozenset:
    """All words of length ``n + 1`` in the presented subshift."""
    if n < 0:
        raise ValueError("level must be nonnegative")
    return frozenset(_frontier(prune(p), n))


def contains_word(p: SubshiftPresentation, w: Sequence[Symbol]) -> bool:
    """Whether some path of ``p`` carries the label sequence ``w``."""
    w = tuple(w)
    if not w:
        raise LengthMismatch("words have length at least 1")
    out = p.out_edges()
    current = {v for u, v, a in p.edges if a == w[0]}
    for a in w[1:]:
        current = {t for v in current for _, t, b in out[v] if b == a}
        if not current:
            return False
    return bool(current)


@dataclass(frozen=True)
class SlidingBlockCode:
    window: int
    source_alphabet: frozenset
    target_alphabet: frozenset
    gen: Mapping[Word, Symbol]

    def __post_init__(self):
        if self.window < 0:
            raise ValueError("window must be nonnegative")
        object.__setattr__(self, "source_alphabet", frozenset(self.source_alphabet))
        object.__setattr__(self, "target_alphabet", frozenset(self.target_alphabet))
        gen = {tuple(k): v for k, v in self.gen.items()}
        object.__setattr__(self, "gen", gen)
        for w, b in gen.items():
            if len(w) != self.window + 1:
                raise LengthMismatch(f"generator key {w!r} does not have length {self.window + 1}")
            if not set(w) <= self.source_alphabet:
                raise AlphabetMismatch(f"generator key {w!r} uses symbols outside the source alphabet")
            if b not in self.target_alphabet:
                raise AlphabetMismatch(f"generator output {b!r} is not in the target alphabet")

    @classmethod
    def from_function(
        cls,
        window: int,
        source_alphabet: Iterable[Symbol],
        fn: Callable[[Word], Symbol],
        target_alphabet: Iterable[Symbol] | None = None,
    ) -> "SlidingBlockCode":
        """Tabulate ``fn`` on every ``(window+1)``-word over the source alphabet."""
        src = sorted_ids(set(source_alphabet))
        gen = {w: fn(w) for w in itertools.product(src, repeat=window + 1)}
        tgt = set(gen.values()) if target_alphabet is None else set(target_alphabet)
        return cls(window, frozenset(src), frozenset(tgt), gen)


def identity_code(alphabet: Iterable[Symbol]) -> SlidingBlockCode:
    return SlidingBlockCode.from_function(0, alphabet, lambda w: w[0], alphabet)


def shift_code(alphabet: Iterable[Symbol]) -> SlidingBlockCode:
    return SlidingBlockCode.from_function(1, alphabet, lambda w: w[1], alphabet)


def slide(gen: Mapping[Word, Symbol], window: int, s: Sequence[Symbol]) -> Word:
    """Apply a generator at every window position of ``s``."""
    s = tuple(s)
    out = []
    for j in range(len(s) - window):
        key = s[j : j + window + 1]
        try:
            out.append(gen[key])
        except KeyError:
            raise UnknownWord(f"generator undefined on {key!r}") from None
    return tuple(out)


def apply_sbc(c: SlidingBlockCode, s: Sequence[Symbol]) -> Word:
    if len(s) < c.window + 1:
        raise SequenceTooShort(f"need at least {c.window + 1} symbols, got {len(s)}")
    return slide(c.gen, c.window, s)


def induced_word_map(c: SlidingBlockCode, m: int, w: Sequence[Symbol]) -> Word:
    """The map from level ``m + window`` words to level ``m`` words."""
    if len(w) != m + c.window + 1:
        raise LengthMismatch(f"expected a word of length {m + c.window + 1}, got {len(w)}")
    return slide(c.gen, c.window, w)


def compose_generators(
    outer_gen: Mapping[Word, Symbol],
    outer_window: int,
    inner_gen: Mapping[Word, Symbol],
    inner_window: int,
) -> dict:
    """Generator of ``outer ∘ inner`` on words of length ``m + n + 1``.

    The composite is defined on every word all of whose inner windows are in
    the inner domain and whose inner image lies in the outer domain.
    """
    by_prefix: dict = {}
    for w in inner_gen:
        by_prefix.setdefault(w[:-1], []).append(w[-1])

    length = outer_window + inner_window + 1
    chains = [tuple(w) for w in inner_gen]
    while chains and len(chains[0]) < length:
        chains = [
            c + (a,)
            for c in chains
            for a in by_prefix.get(c[len(c) - inner_window :] if inner_window else (), ())
        ]

    gen = {}
    for c in chains:
        image = tuple(inner_gen[c[j : j + inner_window + 1]] for j in range(outer_window + 1))
        if image in outer_gen:
            gen[c] = outer_gen[image]
    return gen


def compose_sbc(outer: SlidingBlockCode, inner: SlidingBlockCode) -> SlidingBlockCode:
    """Composite code of window ``outer.window + inner.window``."""
    used = set(inner.gen.values())
    if not used <= outer.source_alphabet:
        raise AlphabetMismatch(
            f"inner outputs {sorted_ids(used - outer.source_alphabet)!r} are not readable by the outer code"
        )
    gen = compose_generators(outer.gen, outer.window, inner.gen, inner.window)
    return SlidingBlockCode(
        outer.window + inner.window, inner.source_alphabet, outer.target_alphabet, gen
    )


def is_valid_sbc(
    c: SlidingBlockCode, src: SubshiftPresentation, tgt: SubshiftPresentation, depth: int = 8
) -> bool:
    """Bounded check that ``c`` maps the language of ``src`` into that of ``tgt``."""
    return not sbc_violations(c, src, tgt, depth)


def sbc_violations(
    c: SlidingBlockCode, src: SubshiftPresentation, tgt: SubshiftPresentation, depth: int = 8
) -> list[str]:
    out = []
    for m in range(depth + 1):
        for w in sorted(words(src, m + c.window), key=sort_key):
            image = induced_word_map(c, m, w)
            if not contains_word(tgt, image):
                out.append(f"level {m}: image {image!r} of {w!r} is not a target word")
        if out:
            break
    return out


def sbc_image_presentation(c: SlidingBlockCode, src: SubshiftPresentation) -> SubshiftPresentation:
    """Higher-block presentation of the image subshift.

    Vertices are the paths of ``window`` edges in ``src``; each path of
    ``window + 1`` edges becomes an edge from its prefix to its suffix,
    labeled by the generator applied to its labels.
    """
    src = prune(src)
    out = src.out_edges()
    n = c.window
    paths = [(v, ()) for v in sorted_ids(src.vertices)]
    for _ in range(n):
        paths = [
            (start, es + (e,))
            for start, es in paths
            for e in out[es[-1][1] if es else start]
        ]
    index = {p: i for i, p in enumerate(sorted(paths, key=sort_key))}

    edges = set()
    for start, es in paths:
        end = es[-1][1] if es else start
        for e in out[end]:
            full = es + (e,)
            labels = tuple(x[2] for x in full)
            if labels not in c.gen:
                raise UnknownWord(f"generator undefined on {labels!r}")
            nxt_start = full[0][1]
            edges.add((index[(start, es)], index[(nxt_start, full[1:])], c.gen[labels]))
    return prune(SubshiftPresentation(frozenset(index.values()), frozenset(edges), c.target_alphabet))
