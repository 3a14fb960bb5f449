"""How the reconstruction of a subshift tightens as the order grows.

For each sample presentation, reconstruct its word data at orders 0..d and
count the reconstructed words at a fixed depth against the true counts.

    python scripts/reconstruction_orders.py --depth 8 --max-order 4
"""

import argparse

from dynrecon.recon import reconstruct
from dynrecon.samples import full_shift, golden_mean
from dynrecon.shift import SubshiftPresentation, words
from dynrecon.tsd import word_functor


def even_shift() -> SubshiftPresentation:
    # 1s separated by an even number of 0s; sofic, not of finite type
    edges = {("p", "p", 1), ("p", "q", 0), ("q", "p", 0)}
    return SubshiftPresentation({"p", "q"}, edges, {0, 1})


SAMPLES = {
    "golden-mean": golden_mean(),
    "even": even_shift(),
    "full-2": full_shift([0, 1]),
}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--depth", type=int, default=8)
    ap.add_argument("--max-order", type=int, default=4)
    args = ap.parse_args()

    for name, p in SAMPLES.items():
        truth = len(words(p, args.depth))
        data = word_functor(p, args.max_order)
        row = []
        for d in range(args.max_order + 1):
            r = reconstruct(data, d)
            det = "det" if r.is_deterministic else "nondet"
            row.append(f"d={d}:{len(words(r.presentation, args.depth))}({det})")
        print(f"{name:<12} true={truth:<5} " + " ".join(row))


if __name__ == "__main__":
    main()
