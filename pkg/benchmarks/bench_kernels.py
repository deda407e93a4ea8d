"""Compare the compiled and pure-Python polynomial kernels.

    python benchmarks/bench_kernels.py [--repeat 5]

Times the raw kernels on polynomials taken from real stable-basis entries, then
an end-to-end workload (B2 stable bases from scratch plus a pairing sweep).
"""
import argparse
import random
import time

from stabbasis.exactalg import char, k_ring, kernels
from stabbasis.exactalg.ratfunc import RatFunc
from stabbasis.weyl import build_root_system


def sample_polys(rs, n, terms, seed):
    ring = k_ring(rs)
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        f = RatFunc.zero(ring)
        for _ in range(terms):
            lam = tuple(rng.randint(-3, 3) for _ in range(rs.rank))
            f = f + char(ring, lam, q_half=rng.randint(-4, 4), c=rng.randint(-5, 5))
        if f:
            out.append(f.num)
    return ring, out


def bench_mul(ring, polys, repeat):
    impl = kernels.impl
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        for a in polys:
            for b in polys[:10]:
                impl.poly_mul(a.terms, b.terms, ring.one)
        best = min(best, time.perf_counter() - t)
    return best


def bench_div(ring, polys, repeat):
    pairs = [(a * b, b) for a, b in zip(polys, polys[1:])]
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        for p, b in pairs:
            assert p.divexact(b) is not None
        best = min(best, time.perf_counter() - t)
    return best


def workload():
    # fresh rings and families so no factorization or atom caches are reused
    from stabbasis import stablecalc
    from stabbasis.exactalg import ring as ringmod
    stablecalc._CANON.clear()
    ringmod._ring_factory.cache_clear()
    rs = build_root_system("B", 2)
    t = time.perf_counter()
    minus = stablecalc.stab_canonical(rs, "-")
    plus = stablecalc.stab_canonical(rs, "+")
    W = rs.weyl
    for w in W:
        for v in W:
            stablecalc.pairing_k(plus[w], minus[v])
    return time.perf_counter() - t


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rs = build_root_system("A", 2)
    ring, polys = sample_polys(rs, 60, 12, 7)
    rows = []
    for name in kernels.available():
        kernels.use_backend(name)
        rows.append((name, bench_mul(ring, polys, args.repeat), bench_div(ring, polys, args.repeat),
                     min(workload() for _ in range(3))))
    print(f"{'backend':8s} {'mul (s)':>10s} {'divexact (s)':>13s} {'B2 workload (s)':>16s}")
    for name, m, d, w in rows:
        print(f"{name:8s} {m:10.4f} {d:13.4f} {w:16.3f}")
    if len(rows) == 2:
        (_, m0, d0, w0), (_, m1, d1, w1) = rows
        print(f"speedup  {m0 / m1:10.2f} {d0 / d1:13.2f} {w0 / w1:16.2f}")
    else:
        print("compiled kernels not built; only the Python backend was timed")


if __name__ == "__main__":
    main()
