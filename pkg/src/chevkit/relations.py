"""Seeded relation sweeps used by the verify command and the test suite.

Each sweep returns a dict {name: {"checked": int, "failures": int}} and
raises nothing: callers decide how to report.  Sampling is driven by a
seeded Random instance, so reports are reproducible.
"""

from __future__ import annotations

import random

from .linalg import RingMatrix
from .rings import IntegerRing, Ring
from .rootsys import RootSystem, orthogonal_sequence, pairing, root_sum
from .chevalley import (
    q_elem,
    q_elem_int,
    structure_constants,
    w_elem,
    wij_elem,
    x_elem,
)

_ZZ = IntegerRing()


def _summable_pairs(system: RootSystem):
    out = []
    for a in system.roots:
        for b in system.roots:
            if root_sum(system, a, b) is not None:
                out.append((a, b))
    return out


def steinberg_sweep(
    system: RootSystem, ring: Ring, samples: int, seed: int
) -> dict:
    """Additivity, the commutator formula, torus conjugation, and the
    product form of x_{a+b}(t) on seeded samples."""
    rng = random.Random(seed)
    n_const = structure_constants(system)
    pairs = _summable_pairs(system)
    report = {}

    fails = 0
    for _ in range(samples):
        a = rng.choice(system.roots)
        t, u = ring.sample(rng), ring.sample(rng)
        lhs = x_elem(ring, system, a, t) * x_elem(ring, system, a, u)
        if lhs != x_elem(ring, system, a, ring.add(t, u)):
            fails += 1
    report["additivity"] = {"checked": samples, "failures": fails}

    fails = 0
    for _ in range(samples):
        a, b = rng.choice(pairs)
        t, u = ring.sample(rng), ring.sample(rng)
        comm = (
            x_elem(ring, system, a, t)
            * x_elem(ring, system, b, u)
            * x_elem(ring, system, a, ring.neg(t))
            * x_elem(ring, system, b, ring.neg(u))
        )
        coef = ring.mul(ring.from_int(n_const.sign(a, b)), ring.mul(t, u))
        if comm != x_elem(ring, system, root_sum(system, a, b), coef):
            fails += 1
    report["commutator"] = {"checked": samples, "failures": fails}

    fails = 0
    for _ in range(samples):
        a = rng.choice(system.roots)
        b = rng.choice(system.roots)
        t = ring.sample_unit(rng)
        u = ring.sample(rng)
        h = w_elem(ring, system, a, t) * w_elem(
            ring, system, a, ring.neg(ring.one)
        )
        hinv = w_elem(ring, system, a, ring.invert(t)) * w_elem(
            ring, system, a, ring.neg(ring.one)
        )
        k = pairing(b, a)
        coef = u
        tk = t if k >= 0 else ring.invert(t)
        for _ in range(abs(k)):
            coef = ring.mul(coef, tk)
        if h * x_elem(ring, system, b, u) * hinv != x_elem(ring, system, b, coef):
            fails += 1
    report["torus_conjugation"] = {"checked": samples, "failures": fails}

    fails = 0
    for _ in range(samples):
        a, b = rng.choice(pairs)
        t = ring.sample(rng)
        comm = (
            x_elem(ring, system, a, t)
            * x_elem(ring, system, b, ring.one)
            * x_elem(ring, system, a, ring.neg(t))
            * x_elem(ring, system, b, ring.neg(ring.one))
        )
        coef = ring.mul(ring.from_int(n_const.sign(a, b)), t)
        if comm != x_elem(ring, system, root_sum(system, a, b), coef):
            fails += 1
    report["unit_commutator"] = {"checked": samples, "failures": fails}
    return report


def q_order_sweep(system: RootSystem, ring: Ring, roots=None) -> dict:
    """Q^3 = E for the given roots (all roots when omitted)."""
    roots = list(roots) if roots is not None else list(system.roots)
    fails = 0
    for a in roots:
        q = q_elem(ring, system, a)
        if not (q * q * q).is_identity():
            fails += 1
    return {"q_cubed": {"checked": len(roots), "failures": fails}}


def swap_sweep(system: RootSystem, ring: Ring) -> dict:
    """w_{ij}^2 = E and w_{ij} Q_i w_{ij} = Q_j over every sequence pair."""
    seq = orthogonal_sequence(system)
    k = len(seq.gammas)
    checked = fails = 0
    for i in range(k):
        for j in range(i + 1, k):
            w = wij_elem(ring, system, seq, i, j)
            qi = q_elem(ring, system, seq.gammas[i])
            qj = q_elem(ring, system, seq.gammas[j])
            checked += 2
            if not (w * w).is_identity():
                fails += 1
            if w * qi * w != qj:
                fails += 1
    out = {"swap_identities": {"checked": checked, "failures": fails}}
    if k >= 3:
        w01 = wij_elem(ring, system, seq, 0, 1)
        w12 = wij_elem(ring, system, seq, 1, 2)
        p = w01 * w12
        ok = (p * p * p).is_identity()
        out["swap_triple_order"] = {"checked": 1, "failures": 0 if ok else 1}
    return out


def sweep_ok(report: dict) -> bool:
    return all(v["failures"] == 0 for v in report.values())
