"""Regenerate the JSON fixtures under fixtures/.

    python scripts/make_fixtures.py [outdir]
"""

import sys
from pathlib import Path

from dynrecon import io
from dynrecon.dynsys import DynDiagram, DynMorphism, FiniteDynSys
from dynrecon.observe import Measurement, ObservedSystem, ObsMorphism, identity_observation
from dynrecon.samples import cycle, full_shift, golden_mean, parity_observation
from dynrecon.shift import SlidingBlockCode, identity_code, shift_code
from dynrecon.tsd import TsdMorphism, data_functor, tsd_from_sequence, word_functor


def main(outdir: str = "fixtures") -> None:
    out = Path(outdir)
    out.mkdir(exist_ok=True)

    def save(name, obj):
        io.save(obj, out / name)

    c3 = cycle(3, "abc")
    c6 = cycle(6)
    transient = FiniteDynSys.from_map({"a": "b", "b": "c", "c": "c", "d": "c"})
    save("c3.system.json", c3)
    save("c4.system.json", cycle(4))
    save("c6.system.json", c6)
    save("transient.system.json", transient)

    c3_obs = identity_observation(c3)
    c6_mod3 = ObservedSystem(c6, Measurement.from_map({s: s % 3 for s in c6.states}), tuple(range(6)))
    c3_int = identity_observation(cycle(3))
    save("c3-identity.observed.json", c3_obs)
    save("c4-parity.observed.json", parity_observation(4))
    save("c6-mod3.observed.json", c6_mod3)
    save("transient-a.observed.json", ObservedSystem(transient, Measurement.from_map({s: s for s in "abcd"}), ("a",)))
    save("c3-int-identity.observed.json", c3_int)

    gm, fs = golden_mean(), full_shift([0, 1])
    save("golden-mean.json", gm)
    save("full-shift-2.json", fs)

    save("golden-mean.tsd.json", word_functor(gm, 3))
    save("full-shift-2.tsd.json", word_functor(fs, 2))
    save("c3-identity.tsd.json", data_functor(c3_obs, 1, 2))
    save("c4-parity.tsd.json", data_functor(parity_observation(4), 1, 3))
    save("c6-mod3.tsd.json", data_functor(c6_mod3, 1, 2))
    save("stream-abc.tsd.json", tsd_from_sequence("abcabcabca", 3))

    (out / "stream-0110.txt").write_text(io.format_sequence("0110"))
    (out / "stream-abc.txt").write_text("a,b,c,a,b,c,a,b,c,a\n")

    save("identity.code.json", identity_code([0, 1]))
    save("shift.code.json", shift_code([0, 1]))
    save("xor.code.json", SlidingBlockCode.from_function(1, [0, 1], lambda w: w[0] ^ w[1]))
    save("const1.code.json", SlidingBlockCode.from_function(0, [0, 1], lambda w: 1, [0, 1]))

    save("relabel-abc.tsd-morphism.json", TsdMorphism.relabel({"a": 0, "b": 1, "c": 0}))
    save("const1.tsd-morphism.json", TsdMorphism.relabel({0: 1, 1: 1}))
    save("shift.tsd-morphism.json", TsdMorphism(1, {(a, b): b for a in "abc" for b in "abc"}))

    save("c6-to-c3.obs-morphism.json", ObsMorphism({s: s % 3 for s in range(6)}, {s: s % 3 for s in range(3)}))

    c2 = cycle(2)
    save(
        "coequalizer.diagram.json",
        DynDiagram((c2,), ((0, 0, DynMorphism(c2, c2, {0: 0, 1: 1})), (0, 0, DynMorphism(c2, c2, {0: 1, 1: 0})))),
    )
    save(
        "c6-c3.diagram.json",
        DynDiagram((c6, cycle(3)), ((0, 1, DynMorphism(c6, cycle(3), {s: s % 3 for s in range(6)})),)),
    )


if __name__ == "__main__":
    main(*sys.argv[1:])
