"""Shipped reference matrices and the signed-diagonal gauge comparison.

Each fixture file declares the system, the ring, the basis lines its rows
and columns run over, the generator the toolkit should produce, and the
transcribed entries.  Comparison succeeds when some diagonal matrix D with
entries +-1 satisfies D * reference * D^{-1} = generated, i.e. when
generated[i][j] = d_i d_j reference[i][j] for a consistent sign vector.

Structure-constant conventions differ between sources by exactly such a
gauge, so a successful comparison pins the generated matrices to the
reference up to the unavoidable freedom, and the reported gauge documents
the difference.  The fixture directory can be overridden with the
CHEVKIT_FIXTURE_DIR environment variable.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

from .linalg import RingMatrix
from .rings import IntegerRing, OmegaRing, Ring, make_ring
from .rootsys import RootSystem, RootVector, orthogonal_sequence, parse_system
from .chevalley import q_elem, w_elem, wij_elem, x_elem
from .spectral import joint_transition_block

_ZZ = IntegerRing()

FIXTURE_IDS = [
    "a3-w1",
    "a3-w2",
    "a3-x1",
    "a3-w13",
    "second16-qi",
    "second16-q1",
    "second16-w13",
    "second16-w1",
    "second16-w2",
    "first4-q1",
    "diag8-transition",
]


def fixture_dir() -> Path:
    env = os.environ.get("CHEVKIT_FIXTURE_DIR")
    if env:
        return Path(env)
    return Path(__file__).parent / "data" / "fixtures"


def load_fixture(fixture_id: str) -> dict:
    path = fixture_dir() / f"{fixture_id}.json"
    if not path.exists():
        raise ValueError(f"unknown fixture {fixture_id!r}")
    with open(path) as f:
        return json.load(f)


def _named_root(system: RootSystem, name: str) -> RootVector:
    if not name.startswith("alpha"):
        raise ValueError(f"bad root name {name!r}")
    return system.simple(int(name[len("alpha") :]) - 1)


def _lines(system: RootSystem, spec) -> list[int]:
    if spec == "all":
        return list(range(system.n))
    lines = []
    for item in spec:
        if "root2" in item:
            lines.append(system.root_line(RootVector(tuple(item["root2"]))))
        else:
            lines.append(system.h_line(item["h"]))
    return lines


def _generated(fx: dict, system: RootSystem, ring: Ring) -> RingMatrix:
    elem = fx["element"]
    kind = elem["type"]
    if kind == "transition8":
        seq = orthogonal_sequence(system)
        return joint_transition_block(
            ring, system, seq.gammas[0], seq.gammas[1], system.simple(1)
        )
    if kind == "wij":
        seq = orthogonal_sequence(system)
        m = wij_elem(ring, system, seq, elem["i"], elem["j"])
    else:
        root = _named_root(system, elem["root"])
        if kind == "w":
            m = w_elem(ring, system, root, ring.one)
        elif kind == "x":
            m = x_elem(ring, system, root, ring.one)
        elif kind == "q":
            m = q_elem(ring, system, root)
        else:
            raise ValueError(f"bad element type {kind!r}")
    lines = _lines(system, fx["lines"])
    lineset = set(lines)
    zero = ring.zero
    for i in lines:
        for j in range(m.n):
            if m.rows[i][j] != zero and j not in lineset:
                raise ValueError("fixture lines are not invariant")
    return RingMatrix(ring, [[m.rows[i][j] for j in lines] for i in lines])


def _reference(fx: dict, ring: Ring) -> RingMatrix:
    rows = []
    for row in fx["entries"]:
        out = []
        for v in row:
            if isinstance(v, list):
                a, b = v
                out.append(
                    ring.add(
                        ring.from_int(a), ring.mul(ring.xi(), ring.from_int(b))
                    )
                )
            else:
                out.append(ring.from_int(v))
        rows.append(out)
    return RingMatrix(ring, rows)


def find_sign_gauge(
    reference: RingMatrix, generated: RingMatrix
) -> tuple[list[int] | None, dict | None]:
    """Sign vector d with generated = D reference D^{-1}, or a mismatch.

    Union-find with parity over the constraint graph d_i d_j = ratio(i,j);
    the mismatch report carries the first offending cell.
    """
    ring = reference.ring
    n = reference.n
    zero = ring.zero
    parent = list(range(n))
    parity = [0] * n

    def find(x: int) -> tuple[int, int]:
        p = 0
        while parent[x] != x:
            p ^= parity[x]
            x = parent[x]
        return x, p

    def union(x: int, y: int, rel: int) -> bool:
        rx, px = find(x)
        ry, py = find(y)
        if rx == ry:
            return (px ^ py) == rel
        parent[rx] = ry
        parity[rx] = px ^ py ^ rel
        return True

    for i in range(n):
        for j in range(n):
            a = reference.rows[i][j]
            b = generated.rows[i][j]
            if (a == zero) != (b == zero):
                return None, {"cell": [i, j], "kind": "support"}
            if a == zero:
                continue
            if a == b:
                rel = 0
            elif ring.neg(a) == b:
                rel = 1
            else:
                return None, {"cell": [i, j], "kind": "value"}
            if not union(i, j, rel):
                return None, {"cell": [i, j], "kind": "parity"}
    return [(-1 if find(i)[1] else 1) for i in range(n)], None


def mismatch_cells(reference: RingMatrix, generated: RingMatrix) -> list:
    """Cells where no signed match is possible (diagnostic listing)."""
    ring = reference.ring
    zero = ring.zero
    out = []
    for i in range(reference.n):
        for j in range(reference.n):
            a, b = reference.rows[i][j], generated.rows[i][j]
            if a == b or ring.neg(a) == b:
                continue
            if a == zero or b == zero:
                out.append([i, j, "support"])
            else:
                out.append([i, j, "value"])
    return out


@dataclass
class FixtureResult:
    fixture_id: str
    status: str  # "match" | "mismatch"
    gauge: list[int] | None
    detail: dict | None
    note: str

    def to_json(self) -> dict:
        return {
            "fixture": self.fixture_id,
            "status": self.status,
            "gauge": self.gauge,
            "detail": self.detail,
            "note": self.note,
        }


def compare_fixture(fixture_id: str) -> FixtureResult:
    fx = load_fixture(fixture_id)
    system = parse_system(fx["system"])
    ring = make_ring(fx["ring"])
    generated = _generated(fx, system, ring)
    reference = _reference(fx, ring)
    gauge, err = find_sign_gauge(reference, generated)
    if gauge is not None:
        return FixtureResult(fixture_id, "match", gauge, None, fx.get("note", ""))
    detail = {
        "first_conflict": err,
        "cells_beyond_sign": mismatch_cells(reference, generated),
    }
    return FixtureResult(fixture_id, "mismatch", None, detail, fx.get("note", ""))


def compare_all() -> list[FixtureResult]:
    return [compare_fixture(fid) for fid in FIXTURE_IDS]
