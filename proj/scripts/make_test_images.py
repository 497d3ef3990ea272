#!/usr/bin/env python3
"""Generate a small synthetic PGM corpus for trying out the codec and the
bench subcommand. Images are smooth ramps with cosine bumps, which behave
like natural content under block matching.

Usage: python3 scripts/make_test_images.py [outdir] [--sizes 64,256,512]
"""

import argparse
import math
import pathlib
import random


def make_image(side, seed):
    rng = random.Random(seed)
    bumps = [
        (
            1.0 + rng.random() * 3.0,
            1.0 + rng.random() * 3.0,
            rng.random() * 2.0 * math.pi,
            20.0 + rng.random() * 25.0,
        )
        for _ in range(4)
    ]
    gx = rng.random() * 60.0 - 30.0
    gy = rng.random() * 60.0 - 30.0
    data = bytearray(side * side)
    for y in range(side):
        v = y / side
        for x in range(side):
            u = x / side
            z = 128.0 + gx * (u - 0.5) + gy * (v - 0.5)
            for fx, fy, phase, amp in bumps:
                z += amp * math.cos(2.0 * math.pi * (fx * u + fy * v) + phase)
            data[y * side + x] = min(255, max(0, round(z)))
    return bytes(data)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("outdir", nargs="?", default="corpus")
    parser.add_argument("--sizes", default="64,256")
    parser.add_argument("--per-size", type=int, default=2)
    args = parser.parse_args()

    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for side in (int(s) for s in args.sizes.split(",")):
        for k in range(args.per_size):
            path = outdir / f"synthetic_{side}_{k}.pgm"
            header = f"P5\n{side} {side}\n255\n".encode()
            path.write_bytes(header + make_image(side, seed=side * 31 + k))
            print(path)


if __name__ == "__main__":
    main()
