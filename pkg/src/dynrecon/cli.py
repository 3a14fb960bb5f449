"""Command-line front end.

Exit status: 0 on success, 1 when a check fails (invalid morphism, failed
consistency), 2 on unreadable or malformed input.  Errors are reported on
stderr as one JSON object per line.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Sequence

from . import io
from .dynsys import colimit, subsample
from .errors import FormatError, ReconError, UnknownWord
from .observe import delay_embed, obs_morphism_violations
from .recon import consistency_check, reconstruct
from .samples import random_systems
from .shift import compose_sbc, sbc_violations
from .tsd import compose_tsd_morphisms, data_functor, tsd_morphism_violations, word_functor

EXIT_OK, EXIT_CHECK, EXIT_INPUT = 0, 1, 2


class CheckFailed(Exception):
    pass


def _emit(obj, out: str | None) -> None:
    text = io.dumps(io.to_doc(obj))
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load(path: str, kind: str):
    obj = io.load(path)
    expected = {
        "system": "FiniteDynSys",
        "observed": "ObservedSystem",
        "presentation": "SubshiftPresentation",
        "code": "SlidingBlockCode",
        "tsd": "TimeSeriesData",
        "tsd-morphism": "TsdMorphism",
        "obs-morphism": "ObsMorphism",
        "diagram": "DynDiagram",
    }[kind]
    if type(obj).__name__ != expected:
        raise FormatError(f"{path}: expected a {kind} document")
    return obj


def cmd_generate(args) -> int:
    x = _load(args.observed, "observed")
    _emit(data_functor(x, args.dt, args.horizon), args.out)
    return EXIT_OK


def cmd_words(args) -> int:
    p = _load(args.presentation, "presentation")
    data = word_functor(p, args.depth)
    print("sizes: " + ",".join(str(n) for n in data.sizes()))
    for i, lvl in enumerate(io.tsd_to_doc(data)["levels"]):
        print(f"level {i}: " + " ".join(lvl))
    if args.out:
        io.save(data, args.out)
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    x = _load(args.tsd, "tsd")
    r = reconstruct(x, args.order)
    for flag in r.flags:
        print(json.dumps({"warning": flag}), file=sys.stderr)
    _emit(r, args.out)
    return EXIT_OK


def cmd_check_morphism(args) -> int:
    kind = args.kind
    if kind == "obs":
        m, x, y = _load(args.morphism, "obs-morphism"), _load(args.x, "observed"), _load(args.y, "observed")
        problems = obs_morphism_violations(m, x, y)
        scope = "semiconjugacy, measurement and initial-point conditions"
    elif kind == "sbc":
        c, x, y = _load(args.morphism, "code"), _load(args.x, "presentation"), _load(args.y, "presentation")
        try:
            problems = sbc_violations(c, x, y, args.depth)
        except UnknownWord as exc:
            problems = [f"generator undefined on a source word: {exc}"]
        scope = f"image containment on levels 0..{args.depth}"
    else:
        m, x, y = _load(args.morphism, "tsd-morphism"), _load(args.x, "tsd"), _load(args.y, "tsd")
        try:
            problems = tsd_morphism_violations(m, x, y)
        except UnknownWord as exc:
            problems = [f"generator undefined on a required word: {exc}"]
        top = min(x.horizon - m.jump, y.horizon)
        scope = f"overlapping levels 0..{top} only" if top >= 0 else "no overlapping levels"
    print(f"checked: {scope}")
    if problems:
        for p in problems:
            print(f"VIOLATION {p}")
        raise CheckFailed(f"{len(problems)} violated conditions")
    print("VALID")
    return EXIT_OK


def cmd_compose(args) -> int:
    if args.kind == "sbc":
        outer, inner = _load(args.outer, "code"), _load(args.inner, "code")
        _emit(compose_sbc(outer, inner), args.out)
    else:
        outer, inner = _load(args.outer, "tsd-morphism"), _load(args.inner, "tsd-morphism")
        _emit(compose_tsd_morphisms(outer, inner), args.out)
    return EXIT_OK


def cmd_colimit(args) -> int:
    d = _load(args.diagram, "diagram")
    _emit(colimit(d).system, args.out)
    return EXIT_OK


def _check_one(sys_):
    return consistency_check(sys_)[1]


def cmd_consistency(args) -> int:
    if args.random is not None:
        systems = random_systems(args.random, args.max_states, args.seed)
    elif args.system:
        systems = [_load(args.system, "system")]
    else:
        raise FormatError("give a system file or --random N")

    if args.workers > 1:
        with ProcessPoolExecutor(args.workers) as pool:
            reports = list(pool.map(_check_one, systems, chunksize=16))
    else:
        reports = [_check_one(s) for s in systems]

    lines = [f"instance {i}: {r.describe()}" for i, r in enumerate(reports)]
    passed = sum(r.passed for r in reports)
    lines.append(f"{passed}/{len(reports)} PASS")
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if args.out:
        Path(args.out).write_text(text)
    if passed != len(reports):
        raise CheckFailed(f"{len(reports) - passed} systems not recovered")
    return EXIT_OK


def cmd_delay_embed(args) -> int:
    x = _load(args.observed, "observed")
    _emit(delay_embed(x, args.k, args.dt), args.out)
    return EXIT_OK


def cmd_subsample(args) -> int:
    s = _load(args.system, "system")
    _emit(subsample(s, args.dt), args.out)
    return EXIT_OK


def roundtrip(path: str, kind: str | None = None) -> bool:
    """parse -> serialize -> parse is the identity, and the text is stable."""
    if kind == "sequence" or (kind is None and not str(path).endswith(".json")):
        try:
            first = io.parse_sequence(Path(path).read_text())
        except OSError as exc:
            raise FormatError(f"{path}: {exc.strerror}") from exc
        text = io.format_sequence(first)
        return io.parse_sequence(text) == first and io.format_sequence(io.parse_sequence(text)) == text
    obj = io.load(path, kind)
    text = io.dumps(io.to_doc(obj))
    again = io.KINDS[io.detect_kind(json.loads(text))][0](json.loads(text))
    return again == obj and io.dumps(io.to_doc(again)) == text


def cmd_roundtrip(args) -> int:
    ok = roundtrip(args.path, args.kind)
    if args.out and ok and args.kind != "sequence":
        io.save(io.load(args.path, args.kind), args.out)
    print("OK" if ok else "MISMATCH")
    if not ok:
        raise CheckFailed("round trip changed the document")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--depth", type=int, default=8, help="language-check bound")
    common.add_argument("--horizon", type=int, default=3)
    common.add_argument("--order", type=int, default=None)
    common.add_argument("--dt", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None)

    parser = argparse.ArgumentParser(prog="dynrecon", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", parents=[common], help="observed system -> timeseries data")
    p.add_argument("observed")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("words", parents=[common], help="word sets of a presentation")
    p.add_argument("presentation")
    p.set_defaults(func=cmd_words)

    p = sub.add_parser("reconstruct", parents=[common], help="timeseries data -> reconstruction")
    p.add_argument("tsd")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("check-morphism", parents=[common], help="validate a morphism")
    p.add_argument("--kind", choices=["obs", "sbc", "tsd"], required=True)
    p.add_argument("morphism")
    p.add_argument("x")
    p.add_argument("y")
    p.set_defaults(func=cmd_check_morphism)

    p = sub.add_parser("compose", parents=[common], help="compose two codes or tsd morphisms")
    p.add_argument("--kind", choices=["sbc", "tsd"], required=True)
    p.add_argument("outer")
    p.add_argument("inner")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("colimit", parents=[common], help="colimit of a diagram of systems")
    p.add_argument("diagram")
    p.set_defaults(func=cmd_colimit)

    p = sub.add_parser("consistency", parents=[common], help="reconstruct fully observed systems")
    p.add_argument("system", nargs="?")
    p.add_argument("--random", type=int, default=None, metavar="N")
    p.add_argument("--max-states", type=int, default=8)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_consistency)

    p = sub.add_parser("delay-embed", parents=[common], help="delay-coordinate measurement")
    p.add_argument("observed")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_delay_embed)

    p = sub.add_parser("subsample", parents=[common], help="subsample a system by --dt")
    p.add_argument("system")
    p.set_defaults(func=cmd_subsample)

    p = sub.add_parser("roundtrip", parents=[common], help="check parse/serialize round trip")
    p.add_argument("path")
    p.add_argument("--kind", choices=sorted(io.KINDS) + ["sequence"], default=None)
    p.set_defaults(func=cmd_roundtrip)
    return parser


def _error(kind: str, message: str) -> None:
    print(json.dumps({"error": kind, "message": message}), file=sys.stderr)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CheckFailed as exc:
        _error("CheckFailed", str(exc))
        return EXIT_CHECK
    except FormatError as exc:
        _error("FormatError", str(exc))
        return EXIT_INPUT
    except ReconError as exc:
        _error(type(exc).__name__, str(exc))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
