import json

import pytest

from dynrecon import io
from dynrecon.dynsys import FiniteDynSys
from dynrecon.cli import main, roundtrip
from dynrecon.errors import FormatError
from dynrecon.recon import reconstruct
from dynrecon.samples import cycle, golden_mean
from dynrecon.tsd import TimeSeriesData, tsd_from_sequence, word_functor

from conftest import FIXTURES

ALL_FIXTURES = sorted(p.name for p in FIXTURES.iterdir())


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_fixture_round_trip(name):
    assert roundtrip(FIXTURES / name)


@pytest.mark.parametrize("name", [n for n in ALL_FIXTURES if n.endswith(".json")])
def test_fixture_files_are_canonical(name):
    text = (FIXTURES / name).read_text()
    assert io.dumps(io.to_doc(io.load(FIXTURES / name))) == text


def test_unsorted_keys_are_canonicalized(tmp_path):
    messy = tmp_path / "c3.json"
    messy.write_text('{"step": {"c": "a", "a": "b", "b": "c"}, "states": ["c", "b", "a"]}')
    canonical = io.dumps(io.to_doc(io.load(messy)))
    assert canonical == (FIXTURES / "c3.system.json").read_text()
    again = tmp_path / "again.json"
    again.write_text(canonical)
    assert io.dumps(io.to_doc(io.load(again))) == canonical


def test_recon_result_round_trip(tmp_path):
    for r in (
        reconstruct(word_functor(golden_mean(), 2), 1),
        reconstruct(tsd_from_sequence("0110", 2), 2),
        reconstruct(tsd_from_sequence("abcabcabc", 3), 2),
    ):
        path = tmp_path / "r.json"
        io.save(r, path)
        assert io.load(path) == r


def test_corrupt_json_is_a_format_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"states": ["a"], "step": ')
    with pytest.raises(FormatError):
        io.load(bad)
    code, _, err = run(capsys, "subsample", bad)
    assert code == 2 and json.loads(err)["error"] == "FormatError"


def test_semantically_bad_document(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"states": ["a"], "step": {"a": "z"}}')
    with pytest.raises(FormatError):
        io.load(bad)
    code, _, _ = run(capsys, "subsample", bad)
    assert code == 2


def test_wrong_document_kind(capsys):
    code, _, err = run(capsys, "words", FIXTURES / "c3.system.json")
    assert code == 2 and "presentation" in json.loads(err)["message"]


def test_missing_file(capsys):
    code, _, _ = run(capsys, "subsample", FIXTURES / "nope.json")
    assert code == 2


def test_tuple_states_survive(tmp_path):
    r = reconstruct(tsd_from_sequence("abab" * 3, 2), 1)
    path = tmp_path / "sys.json"
    io.save(r.system.sys, path)
    assert io.load(path) == r.system.sys


def test_cli_words(capsys):
    code, out, _ = run(capsys, "words", FIXTURES / "golden-mean.json", "--depth", 3)
    assert code == 0
    assert out.splitlines()[0] == "sizes: 2,3,5,8"


def test_cli_consistency_campaign(capsys):
    code, out, _ = run(capsys, "consistency", "--random", 200, "--max-states", 8, "--seed", 7)
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "200/200 PASS" and len(lines) == 201


def test_cli_consistency_single(capsys):
    code, out, _ = run(capsys, "consistency", FIXTURES / "c3.system.json")
    assert code == 0 and out.splitlines()[-1] == "1/1 PASS"


def test_cli_consistency_parallel_matches_serial(capsys):
    _, serial, _ = run(capsys, "consistency", "--random", 30, "--seed", 3)
    _, parallel, _ = run(capsys, "consistency", "--random", 30, "--seed", 3, "--workers", 2)
    assert serial == parallel


def test_cli_check_morphism_violation(capsys):
    code, out, _ = run(
        capsys,
        "check-morphism", "--kind", "tsd",
        FIXTURES / "const1.tsd-morphism.json",
        FIXTURES / "full-shift-2.tsd.json",
        FIXTURES / "golden-mean.tsd.json",
    )
    assert code == 1
    assert out.startswith("checked: ")
    assert any(line.startswith("VIOLATION") and "(1, 1)" in line for line in out.splitlines())


@pytest.mark.parametrize(
    "kind,files",
    [
        ("tsd", ["relabel-abc.tsd-morphism.json", "c3-identity.tsd.json", "full-shift-2.tsd.json"]),
        ("sbc", ["shift.code.json", "golden-mean.json", "golden-mean.json"]),
        ("obs", ["c6-to-c3.obs-morphism.json", "c6-mod3.observed.json", "c3-int-identity.observed.json"]),
    ],
)
def test_cli_check_morphism_valid(capsys, kind, files):
    code, out, _ = run(capsys, "check-morphism", "--kind", kind, *(FIXTURES / f for f in files))
    assert code == 0 and out.splitlines()[-1] == "VALID"


def test_cli_sbc_violation(capsys):
    code, out, _ = run(
        capsys, "check-morphism", "--kind", "sbc",
        FIXTURES / "const1.code.json", FIXTURES / "full-shift-2.json", FIXTURES / "golden-mean.json",
        "--depth", 3,
    )
    assert code == 1 and "VIOLATION" in out


def test_cli_compose(capsys, tmp_path):
    out_path = tmp_path / "c.json"
    code, _, _ = run(
        capsys, "compose", "--kind", "sbc",
        FIXTURES / "xor.code.json", FIXTURES / "shift.code.json", "--out", out_path,
    )
    assert code == 0
    c = io.load(out_path)
    assert c.window == 2 and c.gen[(0, 1, 1)] == 1 ^ 1 and c.gen[(0, 0, 1)] == 0 ^ 1
    code, out, _ = run(
        capsys, "compose", "--kind", "tsd",
        FIXTURES / "shift.tsd-morphism.json", FIXTURES / "shift.tsd-morphism.json",
    )
    assert code == 0 and json.loads(out)["jump"] == 2


def test_cli_colimit(capsys):
    code, out, _ = run(capsys, "colimit", FIXTURES / "coequalizer.diagram.json")
    assert code == 0
    sys_ = io.system_from_doc(json.loads(out))
    assert len(sys_) == 1


def test_cli_generate_and_reconstruct(capsys, tmp_path):
    tsd = tmp_path / "x.json"
    code, _, _ = run(capsys, "generate", FIXTURES / "c3-identity.observed.json", "--horizon", 2, "--out", tsd)
    assert code == 0
    code, out, err = run(capsys, "reconstruct", tsd, "--order", 1)
    assert code == 0 and err == ""
    r = io.recon_from_doc(json.loads(out))
    assert r.system is not None and len(r.system.sys) == 3


def test_cli_reconstruct_flags_empty(capsys, tmp_path):
    path = tmp_path / "x.json"
    io.save(tsd_from_sequence("0110", 2), path)
    code, out, err = run(capsys, "reconstruct", path)
    assert code == 0
    assert json.loads(err) == {"warning": "empty-after-pruning"}
    assert json.loads(out)["presentation"]["vertices"] == []


def test_cli_reconstruct_order_too_large(capsys):
    code, _, err = run(capsys, "reconstruct", FIXTURES / "golden-mean.tsd.json", "--order", 9)
    assert code == 2 and json.loads(err)["error"] == "OrderTooLarge"


def test_cli_delay_embed_and_subsample(capsys):
    code, out, _ = run(capsys, "delay-embed", FIXTURES / "c3-identity.observed.json", "--k", 2)
    assert code == 0 and json.loads(out)["phi"]
    code, out, _ = run(capsys, "subsample", FIXTURES / "c4.system.json", "--dt", 2)
    assert code == 0
    assert io.system_from_doc(json.loads(out)) == FiniteDynSys.from_map({0: 2, 1: 3, 2: 0, 3: 1})


def test_cli_roundtrip_command(capsys):
    code, out, _ = run(capsys, "roundtrip", FIXTURES / "stream-0110.txt")
    assert code == 0 and out.strip() == "OK"


def test_outputs_are_deterministic(capsys):
    commands = [
        ["words", FIXTURES / "golden-mean.json", "--depth", 4],
        ["generate", FIXTURES / "c6-mod3.observed.json", "--horizon", 3],
        ["colimit", FIXTURES / "c6-c3.diagram.json"],
        ["consistency", "--random", 20, "--seed", 11],
        ["reconstruct", FIXTURES / "stream-abc.tsd.json"],
    ]
    for argv in commands:
        first = run(capsys, *argv)
        second = run(capsys, *argv)
        assert first == second


def test_emitted_documents_load(capsys, tmp_path):
    outputs = {
        "generate": ["generate", FIXTURES / "c4-parity.observed.json"],
        "reconstruct": ["reconstruct", FIXTURES / "golden-mean.tsd.json", "--order", 1],
        "colimit": ["colimit", FIXTURES / "c6-c3.diagram.json"],
        "delay": ["delay-embed", FIXTURES / "c4-parity.observed.json", "--k", 3],
        "subsample": ["subsample", FIXTURES / "c6.system.json", "--dt", 4],
        "compose": ["compose", "--kind", "tsd", FIXTURES / "const1.tsd-morphism.json",
                    FIXTURES / "relabel-abc.tsd-morphism.json"],
    }
    for name, argv in outputs.items():
        path = tmp_path / f"{name}.json"
        code, _, _ = run(capsys, *argv, "--out", path)
        assert code == 0, name
        assert roundtrip(path), name


def test_symbol_token_collision_rejected(tmp_path):
    x = TimeSeriesData({1, "1"}, [{(1,), ("1",)}])
    with pytest.raises(FormatError):
        io.save(x, tmp_path / "x.json")


def test_cycle_fixture_matches_sample():
    assert io.load(FIXTURES / "c3.system.json") == cycle(3, "abc")
