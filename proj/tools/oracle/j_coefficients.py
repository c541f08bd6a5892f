#!/usr/bin/env python3
"""Coefficients of J = E4^3 / Delta - 744 from integer q-expansions.

Writes the shipped series and character-data files:

    python3 tools/oracle/j_coefficients.py --index 30 --series data/series/j.qs \
        --characters data/characters/j.chr --grading 100
"""

import argparse


def sigma(n, k):
    return sum(d**k for d in range(1, n + 1) if n % d == 0)


def mul(a, b, n):
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[: n - i]):
                out[i + j] += x * y
    return out


def j_coefficients(K):
    """c[n + 1] = coefficient of q^n in J for -1 <= n <= K."""
    n = K + 2
    e4 = [1] + [240 * sigma(m, 3) for m in range(1, n)]
    # Delta / q = prod (1 - q^m)^24.
    delta = [1] + [0] * (n - 1)
    for m in range(1, n):
        for _ in range(24):
            delta = [delta[i] - (delta[i - m] if i >= m else 0) for i in range(n)]
    inv = [0] * n
    inv[0] = 1
    for i in range(1, n):
        inv[i] = -sum(delta[j] * inv[i - j] for j in range(1, i + 1))
    c = mul(mul(mul(e4, e4, n), e4, n), inv, n)
    c[1] -= 744
    return c


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--index", type=int, default=30, help="last exponent of q in the series file")
    ap.add_argument("--series", help="series file to write")
    ap.add_argument("--characters", help="character-data file to write (g = h = 1)")
    ap.add_argument("--grading", type=int, default=100, help="largest grading in the character file")
    args = ap.parse_args()

    if args.series:
        c = j_coefficients(args.index)
        with open(args.series, "w") as f:
            f.write(f"M 1\nL 1\nK {args.index + 1}\n")
            for n, a in enumerate(c, start=-1):
                if a:
                    f.write(f"{n} {a}\n")
    if args.characters:
        c = j_coefficients(args.grading - 1)
        with open(args.characters, "w") as f:
            f.write(f"N 1\norders h=1\nK {args.grading}\n")
            for n, a in enumerate(c, start=-1):
                if a:
                    f.write(f"0 0 {n + 1} 1 {a}\n")
    if not args.series and not args.characters:
        for n, a in enumerate(j_coefficients(args.index), start=-1):
            print(n, a)


if __name__ == "__main__":
    main()
