"""JSON file formats for every object the CLI reads or writes.

Identifiers and symbols are JSON strings, integers, or arrays (for tuple
ids such as delay-coordinate symbols or reconstructed word-states).  Where a
format needs an id as an object key or inside a comma-joined word, it is
written as a *token*: strings as themselves, integers in decimal, tuples as
``"(a b)"``.  Tokens are decoded against the typed id list that every
document carries, so ``"1"`` and ``1`` never get confused silently.

Emitted documents are canonical: sorted keys, sorted id lists, two-space
indentation, trailing newline.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Callable, Iterable

from .dynsys import DynDiagram, DynMorphism, FiniteDynSys
from .errors import FormatError, ReconError
from .observe import Measurement, ObservedSystem, ObsMorphism
from .ordering import sort_key, sorted_ids
from .recon import ReconResult
from .shift import SlidingBlockCode, SubshiftPresentation
from .tsd import TimeSeriesData, TsdMorphism


def encode(x: Any) -> Any:
    if isinstance(x, tuple):
        return [encode(e) for e in x]
    if isinstance(x, (str, int)) and not isinstance(x, bool):
        return x
    raise FormatError(f"cannot serialize identifier {x!r}")


def decode(v: Any) -> Any:
    if isinstance(v, list):
        return tuple(decode(e) for e in v)
    if isinstance(v, (str, int)) and not isinstance(v, bool):
        return v
    raise FormatError(f"invalid identifier {v!r}")


def token(x: Any) -> str:
    if isinstance(x, tuple):
        return "(" + " ".join(token(e) for e in x) + ")"
    if isinstance(x, str):
        if "," in x:
            raise FormatError(f"identifier {x!r} contains a comma")
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return str(x)
    raise FormatError(f"cannot serialize identifier {x!r}")


def word_token(w: Iterable) -> str:
    return ",".join(token(a) for a in w)


class _Tokens:
    def __init__(self, values: Iterable, what: str):
        self.what = what
        self.table: dict = {}
        for v in values:
            t = token(v)
            if t in self.table and self.table[t] != v:
                raise FormatError(f"{what} ids {self.table[t]!r} and {v!r} share token {t!r}")
            self.table[t] = v

    def __getitem__(self, t: str):
        try:
            return self.table[t]
        except KeyError:
            raise FormatError(f"unknown {self.what} {t!r}") from None

    def word(self, s: str) -> tuple:
        return tuple(self[t] for t in s.split(","))


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _need(doc: Any, *keys: str) -> None:
    if not isinstance(doc, dict):
        raise FormatError("expected a JSON object")
    missing = [k for k in keys if k not in doc]
    if missing:
        raise FormatError(f"missing keys {missing}")


def _ids(values: Any, what: str) -> list:
    if not isinstance(values, list):
        raise FormatError(f"{what} must be a list")
    return [decode(v) for v in values]


def _pairs(values: Any, what: str) -> dict:
    if not isinstance(values, list) or any(
        not isinstance(p, list) or len(p) != 2 for p in values
    ):
        raise FormatError(f"{what} must be a list of [from, to] pairs")
    return {decode(a): decode(b) for a, b in values}


def _enc_sorted(xs: Iterable) -> list:
    return [encode(x) for x in sorted_ids(xs)]


def _enc_pairs(m: dict) -> list:
    return [[encode(k), encode(m[k])] for k in sorted_ids(m)]


# system


def system_to_doc(sys: FiniteDynSys) -> dict:
    return {
        "states": _enc_sorted(sys.states),
        "step": {token(s): encode(sys.step[s]) for s in sys.states},
    }


def system_from_doc(doc: Any) -> FiniteDynSys:
    _need(doc, "states", "step")
    states = _ids(doc["states"], "states")
    tokens = _Tokens(states, "state")
    if not isinstance(doc["step"], dict):
        raise FormatError("step must be an object")
    step = {tokens[k]: decode(v) for k, v in doc["step"].items()}
    return FiniteDynSys(frozenset(states), step)


# observed system


def observed_to_doc(x: ObservedSystem) -> dict:
    return {
        "system": system_to_doc(x.sys),
        "alphabet": _enc_sorted(x.alphabet),
        "phi": {token(s): encode(a) for s, a in x.phi.items()},
        "initial": [encode(s) for s in x.initial],
    }


def observed_from_doc(doc: Any) -> ObservedSystem:
    _need(doc, "system", "alphabet", "phi", "initial")
    sys = system_from_doc(doc["system"])
    tokens = _Tokens(sys.states, "state")
    if not isinstance(doc["phi"], dict):
        raise FormatError("phi must be an object")
    phi = {tokens[k]: decode(v) for k, v in doc["phi"].items()}
    meas = Measurement(frozenset(phi), frozenset(_ids(doc["alphabet"], "alphabet")), phi)
    return ObservedSystem(sys, meas, tuple(_ids(doc["initial"], "initial")))


# presentation


def presentation_to_doc(p: SubshiftPresentation) -> dict:
    edges = sorted(p.edges, key=sort_key)
    return {
        "vertices": _enc_sorted(p.vertices),
        "alphabet": _enc_sorted(p.alphabet),
        "edges": [{"from": encode(u), "to": encode(v), "label": encode(a)} for u, v, a in edges],
    }


def presentation_from_doc(doc: Any) -> SubshiftPresentation:
    _need(doc, "vertices", "alphabet", "edges")
    if not isinstance(doc["edges"], list):
        raise FormatError("edges must be a list")
    edges = []
    for e in doc["edges"]:
        _need(e, "from", "to", "label")
        edges.append((decode(e["from"]), decode(e["to"]), decode(e["label"])))
    return SubshiftPresentation(
        frozenset(_ids(doc["vertices"], "vertices")),
        frozenset(edges),
        frozenset(_ids(doc["alphabet"], "alphabet")),
    )


# sliding block code


def code_to_doc(c: SlidingBlockCode) -> dict:
    return {
        "window": c.window,
        "source_alphabet": _enc_sorted(c.source_alphabet),
        "target_alphabet": _enc_sorted(c.target_alphabet),
        "gen": {word_token(w): encode(b) for w, b in c.gen.items()},
    }


def code_from_doc(doc: Any) -> SlidingBlockCode:
    _need(doc, "window", "source_alphabet", "target_alphabet", "gen")
    src = _ids(doc["source_alphabet"], "source_alphabet")
    tokens = _Tokens(src, "symbol")
    if not isinstance(doc["gen"], dict) or not isinstance(doc["window"], int):
        raise FormatError("window must be an integer and gen an object")
    gen = {tokens.word(k): decode(v) for k, v in doc["gen"].items()}
    return SlidingBlockCode(
        doc["window"], frozenset(src), frozenset(_ids(doc["target_alphabet"], "target_alphabet")), gen
    )


# timeseries data


def tsd_to_doc(x: TimeSeriesData) -> dict:
    _Tokens(x.alphabet, "symbol")  # words are written as joined tokens; refuse ambiguous ones
    return {
        "alphabet": _enc_sorted(x.alphabet),
        "horizon": x.horizon,
        "levels": [[word_token(w) for w in sorted(lvl, key=sort_key)] for lvl in x.levels],
    }


def tsd_from_doc(doc: Any) -> TimeSeriesData:
    _need(doc, "alphabet", "horizon", "levels")
    alphabet = _ids(doc["alphabet"], "alphabet")
    tokens = _Tokens(alphabet, "symbol")
    levels = doc["levels"]
    if not isinstance(levels, list) or not all(isinstance(l, list) for l in levels):
        raise FormatError("levels must be a list of lists")
    if doc["horizon"] != len(levels) - 1:
        raise FormatError(f"horizon {doc['horizon']} does not match {len(levels)} levels")
    return TimeSeriesData(frozenset(alphabet), [[tokens.word(s) for s in lvl] for lvl in levels])


def tsd_morphism_to_doc(m: TsdMorphism) -> dict:
    return {
        "jump": m.jump,
        "gen": [[encode(w), encode(m.gen[w])] for w in sorted(m.gen, key=sort_key)],
    }


def tsd_morphism_from_doc(doc: Any) -> TsdMorphism:
    _need(doc, "jump", "gen")
    if not isinstance(doc["jump"], int):
        raise FormatError("jump must be an integer")
    return TsdMorphism(doc["jump"], _pairs(doc["gen"], "gen"))


def obs_morphism_to_doc(m: ObsMorphism) -> dict:
    return {"h": _enc_pairs(dict(m.h)), "A": _enc_pairs(dict(m.A))}


def obs_morphism_from_doc(doc: Any) -> ObsMorphism:
    _need(doc, "h", "A")
    return ObsMorphism(_pairs(doc["h"], "h"), _pairs(doc["A"], "A"))


# diagrams


def diagram_to_doc(d: DynDiagram) -> dict:
    return {
        "nodes": [system_to_doc(n) for n in d.nodes],
        "arrows": [{"from": i, "to": j, "map": _enc_pairs(dict(m.map))} for i, j, m in d.arrows],
    }


def diagram_from_doc(doc: Any) -> DynDiagram:
    _need(doc, "nodes", "arrows")
    nodes = [system_from_doc(n) for n in doc["nodes"]]
    arrows = []
    for a in doc["arrows"]:
        _need(a, "from", "to", "map")
        i, j = a["from"], a["to"]
        if not (isinstance(i, int) and isinstance(j, int) and 0 <= i < len(nodes) and 0 <= j < len(nodes)):
            raise FormatError(f"arrow endpoints {i!r}, {j!r} do not name nodes")
        arrows.append((i, j, DynMorphism(nodes[i], nodes[j], _pairs(a["map"], "map"))))
    return DynDiagram(tuple(nodes), tuple(arrows))


# reconstruction results


def recon_to_doc(r: ReconResult) -> dict:
    return {
        "order": r.order,
        "presentation": presentation_to_doc(r.presentation),
        "system": observed_to_doc(r.system) if r.system is not None else None,
        "state_words": {token(s): word_token(w) for s, w in r.state_words.items()},
        "flags": list(r.flags),
    }


def recon_from_doc(doc: Any) -> ReconResult:
    _need(doc, "order", "presentation", "system", "state_words")
    p = presentation_from_doc(doc["presentation"])
    system = observed_from_doc(doc["system"]) if doc["system"] is not None else None
    states = _Tokens(p.vertices, "state")
    symbols = _Tokens(p.alphabet, "symbol")
    words = {states[k]: symbols.word(v) for k, v in doc["state_words"].items()}
    return ReconResult(p, system, doc["order"], words, tuple(doc.get("flags", ())))


# raw symbol streams


def parse_sequence(text: str) -> list[str]:
    """One symbol per line, or a single comma-separated line."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(lines) == 1 and "," in lines[0]:
        return [s.strip() for s in lines[0].split(",")]
    return lines


def format_sequence(s: Iterable) -> str:
    return "".join(f"{token(a)}\n" for a in s)


KINDS: dict[str, tuple[Callable, Callable]] = {
    "system": (system_from_doc, system_to_doc),
    "observed": (observed_from_doc, observed_to_doc),
    "presentation": (presentation_from_doc, presentation_to_doc),
    "code": (code_from_doc, code_to_doc),
    "tsd": (tsd_from_doc, tsd_to_doc),
    "tsd-morphism": (tsd_morphism_from_doc, tsd_morphism_to_doc),
    "obs-morphism": (obs_morphism_from_doc, obs_morphism_to_doc),
    "diagram": (diagram_from_doc, diagram_to_doc),
    "recon": (recon_from_doc, recon_to_doc),
}


def detect_kind(doc: Any) -> str:
    if not isinstance(doc, dict):
        raise FormatError("expected a JSON object")
    keys = set(doc)
    checks = [
        ("recon", {"order", "presentation"}),
        ("observed", {"system", "phi"}),
        ("system", {"states", "step"}),
        ("presentation", {"vertices", "edges"}),
        ("code", {"window", "gen"}),
        ("tsd-morphism", {"jump", "gen"}),
        ("tsd", {"levels"}),
        ("obs-morphism", {"h", "A"}),
        ("diagram", {"nodes", "arrows"}),
    ]
    for kind, required in checks:
        if required <= keys:
            return kind
    raise FormatError(f"unrecognized document with keys {sorted(keys)}")


def read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror}") from exc


def load(path: str | Path, kind: str | None = None):
    doc = read_json(path)
    kind = kind or detect_kind(doc)
    parse = KINDS[kind][0]
    try:
        return parse(doc)
    except FormatError:
        raise
    except (ReconError, ValueError, TypeError, KeyError) as exc:
        raise FormatError(f"{path}: {exc}") from exc


def to_doc(obj: Any) -> dict:
    for cls, fn in (
        (FiniteDynSys, system_to_doc),
        (ObservedSystem, observed_to_doc),
        (SubshiftPresentation, presentation_to_doc),
        (SlidingBlockCode, code_to_doc),
        (TimeSeriesData, tsd_to_doc),
        (TsdMorphism, tsd_morphism_to_doc),
        (ObsMorphism, obs_morphism_to_doc),
        (DynDiagram, diagram_to_doc),
        (ReconResult, recon_to_doc),
    ):
        if isinstance(obj, cls):
            return fn(obj)
    raise TypeError(f"no file format for {type(obj).__name__}")


def save(obj: Any, path: str | Path) -> None:
    Path(path).write_text(dumps(to_doc(obj)))
