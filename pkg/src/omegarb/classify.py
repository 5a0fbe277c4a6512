"""Brute-force classification of small parameter structures.

Enumerates all operation-table tuples at a given axiom level over a
carrier of size n (16 tables per binary operation at n = 2, so 16^2, 16^4
and 16^6 candidate tuples for the three levels), filtering layer by layer:
a (left, right) pair that is not diassociative prunes every extension, an
EDS failure prunes every (star, dot) extension.  Survivors are reported
both raw and as canonical representatives of carrier-permutation orbits
(lexicographically least member).  The search can be partitioned by the
(left, right) prefix across worker processes; the merge is a canonical
sort either way.
"""

from __future__ import annotations

import itertools
import json
import multiprocessing
import os
from dataclasses import dataclass, field
from fractions import Fraction

from . import tables as fixtures
from .omega import OmegaStructure, OpTable, StructureError, check_lambda_ets, check_maps_level
from .omega import is_commutative, opposite, swap_conjugate
from .scalars import FormalSum

__all__ = [
    "EnumerationResult",
    "enumerate_level",
    "all_op_rows",
    "associative_tables",
    "canonical_tuple",
    "diff_against_fixtures",
    "fixture_canonical_set",
    "VerificationReport",
    "verify_lambda_ets_table",
    "verify_table_remarks",
    "lambda_constraint_probe",
    "DEFAULT_SAMPLES",
]

DEFAULT_SAMPLES = (Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2))

LEVEL_FIELDS = {
    "diassoc": ("left", "right"),
    "eds": ("left", "right", "lhd", "rhd"),
    "ets": ("left", "right", "lhd", "rhd", "star", "dot"),
}


def all_op_rows(n: int):
    """All n^(n*n) operation tables as row-major tuples of tuples."""
    cells = list(itertools.product(range(n), repeat=n * n))
    return [tuple(tuple(flat[i * n + j] for j in range(n)) for i in range(n)) for flat in cells]


def associative_tables(n: int = 2):
    out = []
    rng = range(n)
    for t in all_op_rows(n):
        if all(t[t[i][j]][k] == t[i][t[j][k]] for i in rng for j in rng for k in rng):
            out.append(t)
    return out


def _dia_ok(L, R, n) -> bool:
    rng = range(n)
    for i in rng:
        for j in rng:
            for k in rng:
                a = L[L[i][j]][k]
                if a != L[i][L[j][k]] or a != L[i][R[j][k]]:
                    return False
                if L[R[i][j]][k] != R[i][L[j][k]]:
                    return False
                b = R[i][R[j][k]]
                if R[L[i][j]][k] != b or R[R[i][j]][k] != b:
                    return False
    return True


def _eds_extra_ok(L, R, Lh, Rh, n) -> bool:
    rng = range(n)
    for i in rng:
        for j in rng:
            for k in rng:
                if Rh[i][L[j][k]] != Rh[i][j]:
                    return False
                if Lh[R[i][j]][k] != Lh[j][k]:
                    return False
                u = Lh[L[i][j]][k]
                if L[Lh[i][j]][u] != Lh[i][L[j][k]]:
                    return False
                if Lh[Lh[i][j]][u] != Lh[j][k]:
                    return False
                if R[Lh[i][j]][u] != Lh[i][R[j][k]]:
                    return False
                if Rh[Lh[i][j]][u] != Rh[j][k]:
                    return False
                v = Rh[i][R[j][k]]
                w = Rh[j][k]
                if L[v][w] != Rh[L[i][j]][k]:
                    return False
                if Lh[v][w] != Lh[i][j]:
                    return False
                if R[v][w] != Rh[R[i][j]][k]:
                    return False
                if Rh[v][w] != Rh[i][j]:
                    return False
    return True


def _ets_extra_ok(L, R, Lh, Rh, S, D, n) -> bool:
    rng = range(n)
    for i in rng:
        for j in rng:
            for k in rng:
                if S[R[i][j]][k] != S[j][k]:
                    return False
                if D[R[i][j]][k] != R[i][D[j][k]]:
                    return False
                if Rh[i][j] != Rh[i][D[j][k]]:
                    return False
                u = Lh[L[i][j]][k]
                if S[Lh[i][j]][u] != S[j][k]:
                    return False
                if D[Lh[i][j]][u] != Lh[i][D[j][k]]:
                    return False
                if L[L[i][j]][k] != L[i][D[j][k]]:
                    return False
                v = Rh[i][R[j][k]]
                w = Rh[j][k]
                if S[v][w] != S[i][j]:
                    return False
                if R[i][R[j][k]] != R[D[i][j]][k]:
                    return False
                if D[v][w] != Rh[D[i][j]][k]:
                    return False
                if S[L[i][j]][k] != S[i][R[j][k]]:
                    return False
                if D[L[i][j]][k] != D[i][R[j][k]]:
                    return False
                if Lh[i][j] != Rh[j][k]:
                    return False
                if S[i][j] != S[i][L[j][k]]:
                    return False
                if Lh[D[i][j]][k] != Lh[j][k]:
                    return False
                if L[D[i][j]][k] != D[i][L[j][k]]:
                    return False
                if S[i][j] != S[i][D[j][k]]:
                    return False
                if S[D[i][j]][k] != S[j][k]:
                    return False
                if D[D[i][j]][k] != D[i][D[j][k]]:
                    return False
    return True


def _conj_rows(rows, perm):
    n = len(rows)
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(tuple(inv[rows[perm[i]][perm[j]]] for j in range(n)) for i in range(n))


def canonical_tuple(tabs, n: int):
    """Lexicographically least member of the carrier-permutation orbit."""
    best = None
    for perm in itertools.permutations(range(n)):
        cand = tuple(_conj_rows(t, perm) for t in tabs)
        if best is None or cand < best:
            best = cand
    return best


def _scan_prefixes(args):
    level, n, prefixes = args
    tabs = all_op_rows(n)
    out = []
    if level == "diassoc":
        out.extend(p for p in prefixes if _dia_ok(p[0], p[1], n))
        return out
    for L, R in prefixes:
        if not _dia_ok(L, R, n):
            continue
        if level == "diassoc":
            out.append((L, R))
            continue
        for Lh in tabs:
            for Rh in tabs:
                if not _eds_extra_ok(L, R, Lh, Rh, n):
                    continue
                if level == "eds":
                    out.append((L, R, Lh, Rh))
                else:
                    for S in tabs:
                        for D in tabs:
                            if _ets_extra_ok(L, R, Lh, Rh, S, D, n):
                                out.append((L, R, Lh, Rh, S, D))
    return out


@dataclass
class EnumerationResult:
    level: str
    n: int
    labels: tuple
    raw: list = field(default_factory=list)
    reps: list = field(default_factory=list)

    @property
    def raw_count(self) -> int:
        return len(self.raw)

    @property
    def class_count(self) -> int:
        return len(self.reps)

    def records(self):
        names = LEVEL_FIELDS[self.level]
        return [
            {name: [list(row) for row in rows] for name, rows in zip(names, tabs)}
            for tabs in self.reps
        ]

    def to_json(self) -> str:
        return json.dumps(
            {
                "level": self.level,
                "size": self.n,
                "labels": list(self.labels),
                "raw_count": self.raw_count,
                "class_count": self.class_count,
                "classes": self.records(),
            },
            indent=2,
        )

    def to_text(self) -> str:
        names = LEVEL_FIELDS[self.level]
        head = f"{self.level} structures on {self.n} elements: "
        head += f"{self.raw_count} raw, {self.class_count} up to relabeling"
        lines = [head, ""]
        lines.append("  ".join(f"{name:>{self.n * self.n}}" for name in names))
        for tabs in self.reps:
            codes = []
            for rows in tabs:
                codes.append("".join(self.labels[v] for row in rows for v in row))
            lines.append("  ".join(f"{c:>{max(len(n), self.n * self.n)}}" for c, n in zip(codes, names)))
        return "\n".join(lines) + "\n"

    def as_structures(self):
        out = []
        names = LEVEL_FIELDS[self.level]
        for tabs in self.reps:
            kwargs = {name: OpTable(rows) for name, rows in zip(names, tabs)}
            out.append(OmegaStructure(size=self.n, labels=self.labels, **kwargs))
        return out


def enumerate_level(level: str, n: int = 2, workers: int | None = None) -> EnumerationResult:
    """Filter the full table-tuple space at the given level.

    Layered early-exit filtering over the 16^2 / 16^4 / 16^6 candidate
    space at n = 2; identical survivor set to the naive product scan.
    """
    if level not in LEVEL_FIELDS:
        raise StructureError(f"unknown enumeration level {level!r}")
    if workers is None:
        workers = int(os.environ.get("OMEGARB_WORKERS", "1"))
    tabs = all_op_rows(n)
    prefixes = [(L, R) for L in tabs for R in tabs]
    if workers > 1:
        chunks = [prefixes[i::workers] for i in range(workers)]
        with multiprocessing.Pool(workers) as pool:
            parts = pool.map(_scan_prefixes, [(level, n, ch) for ch in chunks])
        raw = [t for part in parts for t in part]
    else:
        raw = _scan_prefixes((level, n, prefixes))
    raw.sort()
    reps = sorted({canonical_tuple(tabs_, n) for tabs_ in raw})
    labels = tuple("abcdefghij"[:n]) if n <= 10 else tuple(f"e{i}" for i in range(n))
    return EnumerationResult(level=level, n=n, labels=labels, raw=raw, reps=reps)


def fixture_canonical_set():
    """Canonical forms of the star-level fixture table, fully expanded."""
    out = set()
    for _, s in fixtures.ets_fixture_structures():
        tabs = (s.left.rows, s.right.rows, s.lhd.rows, s.rhd.rows, s.star.rows, s.dot.rows)
        out.add(canonical_tuple(tabs, 2))
    return out


def diff_against_fixtures(result: EnumerationResult):
    """(missing, extra) canonical classes relative to the fixture table."""
    if result.level != "ets" or result.n != 2:
        raise StructureError("fixture diff is defined for the ets level at size 2")
    expected = fixture_canonical_set()
    found = set(result.reps)
    return sorted(expected - found), sorted(found - expected)


def load_fixture_file(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    names = LEVEL_FIELDS[data["level"]]
    out = set()
    for rec in data["classes"]:
        tabs = tuple(tuple(tuple(row) for row in rec[name]) for name in names)
        out.add(canonical_tuple(tabs, data["size"]))
    return data["level"], data["size"], out


# ---------------------------------------------------------------------------
# Table verification


@dataclass
class VerificationReport:
    title: str
    results: list = field(default_factory=list)  # (name, ok, detail)

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.results)

    def failures(self):
        return [(name, detail) for name, ok, detail in self.results if not ok]

    def summary(self) -> str:
        lines = [f"{self.title}: {'PASS' if self.ok else 'FAIL'} "
                 f"({len(self.results)} checks)"]
        for name, ok, detail in self.results:
            if not ok:
                lines.append(f"  FAIL {name}: {detail}")
        return "\n".join(lines)


def _param_grid(nparams, samples):
    zero = Fraction(0)
    if nparams == 0:
        return [(zero, zero)]
    if nparams == 1:
        return [(l, zero) for l in samples]
    return [(l, m) for l in samples for m in samples]


def verify_lambda_ets_table(samples=DEFAULT_SAMPLES) -> VerificationReport:
    """Run the generalized map-level checker on every named weight-level row
    at every sample point, including the associative-dot family."""
    report = VerificationReport("weight-level table")
    samples = tuple(Fraction(s) for s in samples)
    for row in fixtures.LETS_ROWS:
        for l, m in _param_grid(row.nparams, samples):
            s = row.instantiate(l, m)
            rep = check_maps_level(s)
            name = f"{row.display}@(l={l},m={m})"
            report.results.append((name, rep.ok, rep.summary()))
    for dot in associative_tables(2):
        code = "".join("ab"[v] for row_ in dot for v in row_)
        for l in samples:
            s = fixtures.f3_instance(code, l)
            rep = check_maps_level(s)
            report.results.append((f"F3(.={code})@(l={l})", rep.ok, rep.summary()))
    return report


def _nonzero(samples):
    return [s for s in samples if s] or [Fraction(1)]


def verify_table_remarks(samples=DEFAULT_SAMPLES) -> VerificationReport:
    """Check the commutativity and opposite statements attached to the
    weight-level table, parameter slots matched."""
    report = VerificationReport("weight-level table remarks")
    samples = tuple(Fraction(s) for s in samples)
    swap = (1, 0)
    for name in fixtures.COMMUTATIVE_ROW_NAMES:
        row = fixtures.lets_row(name)
        ok = all(
            is_commutative(row.instantiate(l, m))
            for l, m in _param_grid(row.nparams, samples)
        )
        report.results.append((f"commutative {row.display}", ok, "is_commutative failed"))
    for name in fixtures.NONCOMMUTATIVE_ROW_NAMES:
        row = fixtures.lets_row(name)
        grid = _param_grid(row.nparams, _nonzero(samples))
        ok = all(not is_commutative(row.instantiate(l, m)) for l, m in grid)
        report.results.append(
            (f"noncommutative {row.display}", ok, "unexpectedly commutative")
        )
    for left_name, right_name in fixtures.OPPOSITE_PAIRS:
        lrow = fixtures.lets_row(left_name)
        rrow = fixtures.lets_row(right_name)
        # rows are orbit representatives, so the opposite may land on the
        # swapped copy of the named row (it does for E2 -> G2)
        ok = True
        how = "on the nose"
        for l, m in _param_grid(lrow.nparams, samples):
            opp = opposite(lrow.instantiate(l, m))
            target = rrow.instantiate(l, m)
            if opp == target:
                continue
            if swap_conjugate(opp, swap) == target:
                how = "up to the carrier swap"
                continue
            ok = False
            break
        report.results.append(
            (f"opposite {lrow.display} = {rrow.display} ({how})", ok, "tables differ")
        )
    for name in fixtures.SWAP_OPPOSITE_NAMES:
        row = fixtures.lets_row(name)
        s = row.instantiate(Fraction(0), Fraction(0))
        opp = opposite(s)
        ok = opp != s and swap_conjugate(opp, swap) == s
        report.results.append(
            (f"{row.display} isomorphic to its opposite via the swap", ok, "claim failed")
        )
    for dot in associative_tables(2):
        code = "".join("ab"[v] for row_ in dot for v in row_)
        flipped = tuple(tuple(dot[j][i] for j in range(2)) for i in range(2))
        fcode = "".join("ab"[v] for row_ in flipped for v in row_)
        for l in _nonzero(samples):
            ok = opposite(fixtures.f3_instance(code, l)) == fixtures.f3_instance(fcode, l)
            report.results.append(
                (f"opposite F3(.={code}) = F3(.={fcode})@(l={l})", ok, "tables differ")
            )
    collision = ", ".join(f"{a}/{b}" for a, b in fixtures.NAME_COLLISIONS)
    report.results.append(
        (f"name collisions kept for review: {collision}", True, "")
    )
    return report


def lambda_constraint_probe(eds: OmegaStructure, dot: OpTable, samples=DEFAULT_SAMPLES):
    """Pass/fail of the strict checker over every weight 4-tuple from the
    sample set, for one EDS and one dot table."""
    samples = tuple(Fraction(s) for s in samples)
    results = []
    for combo in itertools.product(samples, repeat=eds.size * eds.size):
        lam = tuple(
            tuple(combo[i * eds.size + j] for j in range(eds.size))
            for i in range(eds.size)
        )
        s = OmegaStructure(
            size=eds.size, labels=eds.labels, left=eds.left, right=eds.right,
            lhd=eds.lhd, rhd=eds.rhd, dot=dot, lam=lam,
        )
        results.append((combo, check_lambda_ets(s).ok))
    return results
