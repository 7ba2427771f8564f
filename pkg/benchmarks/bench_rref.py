"""Time the compiled row-reduction kernel against the pure-Python one.

    python benchmarks/bench_rref.py [--sizes 8,16,32] [--repeat 5]
"""
import argparse
import random
import timeit

from siltgeo import _kernels


def random_rows(n, seed, bound=9):
    rng = random.Random(seed)
    # rank-deficient on purpose: the last quarter are combinations
    rows = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n - n // 4)]
    for _ in range(n // 4):
        a, b = rng.sample(range(len(rows)), 2)
        rows.append([x + 2 * y for x, y in zip(rows[a], rows[b])])
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="4,6,8,10,12,16")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print("backend at import: %s" % _kernels.BACKEND)
    print("%6s %12s %12s %8s" % ("n", "python ms", "compiled ms", "speedup"))
    for n in (int(s) for s in args.sizes.split(",")):
        rows = random_rows(n, seed=n)
        py = min(timeit.repeat(lambda: _kernels.echelon_python(rows, n), number=1, repeat=args.repeat))
        try:
            ref = _kernels.echelon_python(rows, n)
            got = _kernels.echelon_compiled(rows, n)
        except ImportError:
            print("%6d %12.3f %12s %8s" % (n, py * 1e3, "n/a", "-"))
            continue
        except OverflowError:
            print("%6d %12.3f %12s %8s" % (n, py * 1e3, "overflow", "-"))
            continue
        assert [list(r) for r in got[0]] == [list(r) for r in ref[0]] and list(got[1]) == list(ref[1])
        cy = min(timeit.repeat(lambda: _kernels.echelon_compiled(rows, n), number=1, repeat=args.repeat))
        print("%6d %12.3f %12.3f %8.1fx" % (n, py * 1e3, cy * 1e3, py / cy))


if __name__ == "__main__":
    main()
