"""Brute-force oracle for the global sign relating the Jacobiator to the twist.

On graph(h) twisted by H = dh, with i_{X_f} h = df and {f, g} = X_f(g), the
cyclic sum {f,{g,k}} + {g,{k,f}} + {k,{f,g}} should be a fixed multiple of
H(X_f, X_g, X_k).  This script searches many (h, f, g, k) with plain sympy and
reports the set of ratios; a single value +-1 fixes the sign.

    python tests/oracles/jacobiator_sign.py
"""
import random
import sys
from pathlib import Path

import sympy as sp

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from oracles import calculus as oc  # noqa: E402

# Frozen from a run of this script (see test_oracles.py, which re-derives it).
EPSILON = 1


def _poly(rng, xs, max_terms=3, max_degree=2):
    out = sp.Integer(0)
    for _ in range(rng.randint(1, max_terms)):
        term = sp.Integer(rng.choice([-2, -1, 1, 2, 3]))
        for _ in range(rng.randint(0, max_degree)):
            term *= rng.choice(xs)
        out += term
    return out


def conformal_symplectic(xs, phi):
    """h = phi * (dx1^dy1 + dx2^dy2) on coordinates (x1, y1, x2, y2)."""
    return {(0, 1): phi, (2, 3): phi}


def jacobi_ratio(h, f, g, k, xs):
    """None when the twist term vanishes, else cyclic sum / H(X_f, X_g, X_k)."""
    H = oc.d(h, xs, 2)
    br = lambda a, b: oc.graph_bracket(h, a, b, xs)  # noqa: E731
    cyc = sp.cancel(br(f, br(g, k)) + br(g, br(k, f)) + br(k, br(f, g)))
    Xs = [oc.hamiltonian_field(h, u, xs) for u in (f, g, k)]
    hv = oc.evaluate3(H, *Xs)
    if hv == 0:
        return None if cyc == 0 else "nonzero-vs-zero"
    return sp.cancel(cyc / hv)


def search(trials=40, seed=7):
    rng = random.Random(seed)
    xs = list(sp.symbols("x1 y1 x2 y2"))
    phis = [1 + xs[0] ** 2, 2 + xs[0] * xs[2], 1 + xs[1] ** 2 + xs[3] ** 2, 3 + xs[0]]
    ratios = set()
    for t in range(trials):
        phi = phis[t % len(phis)]
        h = conformal_symplectic(xs, phi)
        f, g, k = (_poly(rng, xs) for _ in range(3))
        r = jacobi_ratio(h, f, g, k, xs)
        if r is not None:
            ratios.add(r)
    return ratios


if __name__ == "__main__":
    found = search()
    print("ratios found:", found)
    if len(found) == 1 and next(iter(found)) in (1, -1):
        print("epsilon =", next(iter(found)))
    else:
        sys.exit("no single global sign")
