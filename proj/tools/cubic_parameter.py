#!/usr/bin/env python3
"""Parameters b for the real cubics z^3 - 3z + b used in corpus/.

Walks down nested parameter intervals on which the orbit of the critical
point 1 survives longer and longer. At each level the next interval is
either random (--seed) or the one whose critical itinerary follows a target
kneading itinerary (--kneading SEED --lag R).

Symbols: W for x < -1, otherwise '-' / '+' by the side of 1.
"""
import argparse
import json
import random

import gmpy2
from gmpy2 import mpfr

R = 3


def kneading(seed, lag, length):
    x = "?" + seed
    returns = [len(seed)]
    while len(x) <= length:
        q = returns[max(0, len(returns) - lag)]
        x += x[1:q]
        x += "-" if x[q] == "+" else "+"
        returns.append(returns[-1] + q)
    return x[1:length + 1]


def orbit(b, cap):
    """Itinerary of f(1), f^2(1), ... until escape or cap."""
    z = mpfr(1)
    out = []
    for _ in range(cap):
        z = z * z * z - 3 * z + b
        if abs(z) > R:
            break
        out.append("W" if z < -1 else ("-" if z < 1 else "+"))
    return "".join(out)


def survives(b, n):
    return len(orbit(b, n)) >= n


def components(lo, hi, n, samples):
    """Runs of surviving sample points, widened by one sample on each side."""
    pts = [lo + (hi - lo) * i / samples for i in range(samples + 1)]
    ok = [survives(p, n) for p in pts]
    runs = []
    i = 0
    while i <= samples:
        if ok[i]:
            j = i
            while j + 1 <= samples and ok[j + 1]:
                j += 1
            runs.append((pts[max(i - 1, 0)], pts[min(j + 1, samples)], pts[i:j + 1]))
            i = j + 1
        else:
            i += 1
    return runs


RANK = {"W": 0, "-": 1, "+": 2}


def itinerary(b, length):
    """Symbols of f(1), f^2(1), ... for the partition x < -1 <= x < 1 <= x of
    the whole line; f is monotone on each part, so this is defined for
    escaping orbits too."""
    z = mpfr(1)
    out = []
    for _ in range(length):
        z = z * z * z - 3 * z + b
        out.append("W" if z < -1 else ("-" if z < 1 else "+"))
    return "".join(out)


def twisted_less(a, b):
    """Order of points by itinerary; f reverses orientation on (-1, 1)."""
    flip = False
    for x, y in zip(a, b):
        if x != y:
            return (RANK[x] > RANK[y]) if flip else (RANK[x] < RANK[y])
        flip ^= x == "-"
    return False


def bisect(lo, hi, target):
    """The critical value itinerary increases with b in the twisted order."""
    while True:
        mid = (lo + hi) / 2
        if mid == lo or mid == hi:
            return mid
        it = itinerary(mid, len(target))
        if it == target:
            return mid
        if twisted_less(it, target):
            lo = mid
        else:
            hi = mid


def common(a, b):
    k = 0
    while k < min(len(a), len(b)) and a[k] == b[k]:
        k += 1
    return k


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--kneading", help="target itinerary seed, e.g. W")
    ap.add_argument("--lag", type=int, default=2)
    ap.add_argument("--flip", action="store_true", help="swap the names of the two sides of 1 in the target")
    ap.add_argument("--levels", type=int, default=760)
    ap.add_argument("--samples", type=int, default=60)
    ap.add_argument("--bits", type=int, default=4000)
    ap.add_argument("--digits", type=int, default=420)
    ap.add_argument("--lo", default="0.3")
    ap.add_argument("--hi", default="0.45")
    ap.add_argument("--label", default="cubic")
    ap.add_argument("--out")
    args = ap.parse_args()

    gmpy2.get_context().precision = args.bits
    random.seed(args.seed)
    target = kneading(args.kneading, args.lag, args.levels + 8) if args.kneading else None
    if target and args.flip:
        target = target.translate(str.maketrans("+-", "-+"))
    lo, hi = mpfr(args.lo), mpfr(args.hi)
    n = 1
    if target:
        b = bisect(lo, hi, target[:args.levels])
        lo = hi = b
        n = args.levels
    while n < args.levels:
        comps = components(lo, hi, n + 1, args.samples)
        if not comps:
            print("lost at", n)
            break
        if target:
            scored = [(max(common(orbit(p, n + 1), target) for p in inside), a, b) for a, b, inside in comps]
            best = max(s for s, _, _ in scored)
            lo, hi = next((a, b) for s, a, b in scored if s == best)
        else:
            lo, hi, _ = random.choice(comps)
        while survives(lo, n + 2) and survives(hi, n + 2) and n < args.levels:
            n += 1
        n += 1
    b = (lo + hi) / 2
    it = orbit(b, args.levels)
    print("levels", n, "width %.3e" % float(hi - lo), "itinerary", it[:80])
    if target:
        print("agrees with target for", common(it, target), "symbols")
    spec = {
        "label": args.label,
        "numerator": [[format(b, ".%df" % args.digits), "0"], ["-3", "0"], ["0", "0"], ["1", "0"]],
        "denominator": [["1", "0"]],
        "notes": "z^3 - 3z + b, real b from tools/cubic_parameter.py " +
                 (f"--kneading {args.kneading} --lag {args.lag}" + (" --flip" if args.flip else "") if target else f"--seed {args.seed}") +
                 f" --levels {args.levels}",
    }
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(spec, fh, indent=1)
            fh.write("\n")


if __name__ == "__main__":
    main()
