#!/usr/bin/env python3
"""Generate the bundled zero-list files with mpmath.

Each file lists the positive ordinates of one L-function up to its t_max,
in the format read by `mertens zeros ingest`.

    python3 scripts/gen_zeros.py data/zeros
"""

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import mpmath as mp

mp.mp.dps = 25

STEP = 0.05
L_HEIGHT = 200
ZETA_HEIGHT = 1000

# conductor-level real characters needed for moduli 3, 4, 5, 8, 12, 24
DISCRIMINANTS = [-3, -4, 5, 8, -8, 12, -24, 24]
# complex characters modulo 5, indexed by chi_j(2) = e(j/4)
MOD5_COMPLEX = [1, 3]


def _kron(d, n):
    if n == 0:
        return 1 if abs(d) == 1 else 0
    result = 1
    while n % 2 == 0:
        n //= 2
        if d % 2 == 0:
            return 0
        if d % 8 in (3, 5):
            result = -result
    # Jacobi symbol (d/n) for odd n > 0
    a = d % n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def mod5_character(j):
    # discrete log base 2 modulo 5: 2^0=1, 2^1=2, 2^2=4, 2^3=3
    log = {1: 0, 2: 1, 4: 2, 3: 3}
    values = [mp.mpc(0)] * 5
    for n, k in log.items():
        values[n] = mp.expjpi(mp.mpf(2 * j * k) / 4)
    return values


def rotated(values, q, kappa):
    """Real-valued rotation of L(1/2 + it, chi) on the critical line."""
    tau = mp.fsum(values[n] * mp.expjpi(mp.mpf(2 * n) / q) for n in range(q))
    eps = tau / ((1j) ** kappa * mp.sqrt(q))
    half = mp.sqrt(eps)

    def z(t):
        s = mp.mpc(0.5, t)
        theta = mp.im(mp.loggamma((mp.mpf(0.5) + kappa + 1j * t) / 2)) + t / 2 * mp.log(mp.mpf(q) / mp.pi)
        v = mp.expj(theta) * mp.dirichlet(s, values) / half
        return v

    # pick the branch of sqrt(eps) that makes the function real
    probe = z(mp.mpf(3.3))
    if abs(mp.re(probe)) < abs(mp.im(probe)):
        half = -1j * half
    probe = z(mp.mpf(3.3))
    assert abs(mp.im(probe)) < 1e-15 * max(1, abs(probe)), "rotation is not real"
    return lambda t: mp.re(z(t))


def scan(f, t_max):
    zeros = []
    n = int(t_max / STEP)
    a = mp.mpf(STEP) / 2
    fa = f(a)
    for k in range(1, n + 1):
        b = min(mp.mpf(k * STEP), mp.mpf(t_max))
        fb = f(b)
        if fa * fb < 0:
            zeros.append(mp.findroot(f, (a, b), solver="anderson"))
        a, fa = b, fb
    return zeros


def write(path, header, t_max, zeros):
    tmp = path + ".partial"
    with open(tmp, "w") as out:
        out.write(f"# {header}\n# t_max: {t_max}\n")
        for g in zeros:
            out.write(mp.nstr(g, 16, min_fixed=-1, max_fixed=8) + "\n")
    os.replace(tmp, path)


def job(kind, key, outdir):
    if kind == "zeta":
        zeros = []
        k = 1
        while True:
            g = mp.im(mp.zetazero(k))
            if g > ZETA_HEIGHT:
                break
            zeros.append(g)
            k += 1
        write(os.path.join(outdir, "zeta.zeros"), "lfunction: zeta", ZETA_HEIGHT, zeros)
        return f"zeta: {len(zeros)}"
    if kind == "disc":
        d = key
        q = abs(d)
        values = [mp.mpf(_kron(d, n)) for n in range(q)]
        kappa = 0 if d > 0 else 1
        zeros = scan(rotated(values, q, kappa), L_HEIGHT)
        write(os.path.join(outdir, f"d{d}.zeros"), f"discriminant: {d}", L_HEIGHT, zeros)
        return f"d={d}: {len(zeros)}"
    j = key
    values = mod5_character(j)
    kappa = 1  # chi_1(-1) = chi_1(4) = e(2/4) = -1
    zeros = scan(rotated(values, 5, kappa), L_HEIGHT)
    for g in zeros:
        assert abs(mp.dirichlet(mp.mpc(0.5, g), values)) < 1e-12
    write(os.path.join(outdir, f"q5_j{j}.zeros"), f"modulus: 5, character-index: {j}", L_HEIGHT, zeros)
    return f"mod 5 j={j}: {len(zeros)}"


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("outdir")
    args = p.parse_args()
    os.makedirs(args.outdir, exist_ok=True)
    jobs = [("zeta", None)] + [("disc", d) for d in DISCRIMINANTS] + [("mod5", j) for j in MOD5_COMPLEX]
    with ProcessPoolExecutor() as pool:
        futures = [pool.submit(job, k, v, args.outdir) for k, v in jobs]
        for fut in futures:
            print(fut.result(), file=sys.stderr)


if __name__ == "__main__":
    main()
