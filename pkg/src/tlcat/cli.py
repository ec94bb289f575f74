"""Batch verification driver.

Subcommands::

    tlcat verify --n 1-4 --max-degree 12 --suite all --format json
    tlcat hilbert --n 3 --word 1,2 --pivot 2 --max-degree 16
    tlcat pairing-table --spec psi0 --n 2
    tlcat weyl --n 3 --word 2 --max-degree 12
    tlcat cells --n 3 --i 2

Exit status: 0 when every check passes, 1 when any check fails, 2 when nothing
failed but some check was inconclusive (for example a clamped degree bound).
The environment variable ``TLCAT_MAX_DEGREE`` caps every degree bound.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

from . import cellmod, diagrams, tl_algebra, tl_ideal, weyl
from .laurent import QTWO, LaurentPoly, RationalFn, T, series_prefix

SUITES = ("relations", "traces", "hilbert", "weyl", "cells", "confluence")
FORMATS = ("json", "csv", "md")
PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


@dataclass(frozen=True)
class SuiteConfig:
    n_range: tuple[int, int] = (1, 4)
    max_degree: int = 12
    suites: tuple[str, ...] = SUITES
    fmt: str = "json"
    jobs: int = 1

    def __post_init__(self):
        lo, hi = self.n_range
        if lo < 1 or hi < lo:
            raise ValueError(f"bad n range {self.n_range}")
        if self.max_degree < 0:
            raise ValueError("max degree must be non-negative")
        unknown = set(self.suites) - set(SUITES)
        if unknown:
            raise ValueError(f"unknown suites: {', '.join(sorted(unknown))}")
        if self.fmt not in FORMATS:
            raise ValueError(f"unknown format {self.fmt}")
        if self.jobs < 1:
            raise ValueError("jobs must be positive")


@dataclass
class Record:
    id: str
    statement: str
    anchor: str
    status: str
    witness: object = None


@dataclass
class Report:
    records: list[Record] = field(default_factory=list)

    @property
    def status(self) -> str:
        statuses = {r.status for r in self.records}
        if FAIL in statuses:
            return FAIL
        if INCONCLUSIVE in statuses:
            return INCONCLUSIVE
        return PASS

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def exit_code(self) -> int:
        return {PASS: 0, FAIL: 1, INCONCLUSIVE: 2}[self.status]


def _rec(id: str, statement: str, anchor: str, ok: bool, witness=None, keep: bool = False) -> Record:
    """A record; the witness is dropped on success unless ``keep`` is set."""
    return Record(id, statement, anchor, PASS if ok else FAIL, witness if keep or not ok else None)


def degree_ceiling() -> int | None:
    raw = os.environ.get("TLCAT_MAX_DEGREE")
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"TLCAT_MAX_DEGREE must be an integer, got {raw!r}")


def clamp_degree(requested: int) -> tuple[int, bool]:
    ceiling = degree_ceiling()
    if ceiling is not None and requested > ceiling:
        return ceiling, True
    return requested, False


def _subsets(n: int) -> list[tuple[int, ...]]:
    return [w for r in range(n + 1) for w in itertools.combinations(range(1, n + 1), r)]


# Suites. Each takes (n, D) and returns records in a fixed order.


def suite_relations(n: int, D: int) -> list[Record]:
    N = n + 1
    out = []
    one = LaurentPoly.const(1)
    bad = []
    for i in range(1, N):
        s, m = tl_algebra.eval_word((i, i), N)
        if (s, m) != (QTWO, diagrams.generator(N, i)):
            bad.append(f"u{i}^2")
        for j in range(1, N):
            if abs(i - j) >= 2 and tl_algebra.eval_word((i, j), N) != tl_algebra.eval_word((j, i), N):
                bad.append(f"u{i}u{j}")
            if abs(i - j) == 1 and tl_algebra.eval_word((i, j, i), N) != (one, diagrams.generator(N, i)):
                bad.append(f"u{i}u{j}u{i}")
    out.append(_rec(f"relations/n={n}/generators", "quadratic, commutation and braid-type relations",
                    "TL relations", not bad, bad))
    dim = len(diagrams.enumerate_matchings(N))
    out.append(_rec(f"relations/n={n}/dimension", "basis size is the Catalan number",
                    "TL basis", dim == diagrams.catalan(N), {"found": dim}))
    return out


def suite_traces(n: int, D: int) -> list[Record]:
    N = n + 1
    out = []
    basis = diagrams.enumerate_matchings(N)
    for name, build in tl_algebra.SPECS.items():
        spec = build(N)
        bad = None
        for m in basis:
            x = tl_algebra.TLElement.basis(m)
            for j in range(1, N):
                u = tl_algebra.TLElement.u(N, j)
                if tl_algebra.trace(spec, x * u) != tl_algebra.trace(spec, u * x):
                    bad = {"matching": repr(m), "generator": j}
                    break
                if tl_algebra.pairing(spec, x * u, x) != tl_algebra.pairing(spec, x, x * u):
                    bad = {"matching": repr(m), "generator": j, "adjoint": True}
                    break
            if bad:
                break
        out.append(_rec(f"traces/n={n}/{name}/cyclic", f"{name} trace is cyclic and generators are self-adjoint",
                        "traces", bad is None, bad))
    psi0 = tl_algebra.spec_psi0(N)
    one = tl_algebra.TLElement.one(N)
    bad = [
        list(w) for w in tl_algebra.increasing_words(n)
        if tl_algebra.pairing(psi0, one, tl_algebra.TLElement.word(N, w))
        != tl_algebra.psi0_closed_form(n, len(w))
    ]
    out.append(_rec(f"traces/n={n}/psi0-values", "psi0 on increasing words matches its closed form",
                    "psi0", not bad, bad))
    bad = []
    for x in basis:
        for y in basis:
            m, loops = diagrams.compose(x, diagrams.flip(y))
            c = loops + diagrams.closure(m).circles
            if (x == y and c != N) or (x != y and c >= N):
                bad.append([repr(x), repr(y), c])
    out.append(_rec(f"traces/n={n}/circle-count", "x over flip(y) closes to N circles iff x = y",
                    "closure circles", not bad, bad[:3]))
    ok = tl_algebra.traces_determined_by_increasing(N)
    decomposition = all(
        psi0.value(m) == (tl_algebra.spec_std(N).value(m) * RationalFn(T**n, (1 - T**2) * QTWO)
                          - tl_algebra.spec_triv(N).value(m) * RationalFn(T**2, 1 - T**2))
        for m in basis
    )
    out.append(_rec(f"traces/n={n}/determined", "increasing words determine every nesting weight",
                    "traces", ok))
    out.append(_rec(f"traces/n={n}/psi0-decomposition", "psi0 is the stated combination of std and triv",
                    "psi0", decomposition))
    return out


def suite_hilbert(n: int, D: int) -> list[Record]:
    out = []
    for w in _subsets(n):
        pivots = list(w) or [None]
        for k in pivots:
            sys_ = tl_ideal.build_system(n, w, k)
            tag = f"hilbert/n={n}/word={','.join(map(str, w)) or '-'}" + (f"/pivot={k}" if k else "")
            try:
                data = tl_ideal.hilbert(sys_, D)
                ok_count = True
            except tl_ideal.VerificationError as exc:
                data, ok_count = None, False
                out.append(_rec(tag + "/count", "irreducible count matches closed form",
                                "Hilbert series", False, str(exc)))
                continue
            oracle = tl_ideal.oracle_prefix(n, w, D)
            data.oracle_prefix = oracle
            out.append(_rec(tag + "/triple", "closed form, irreducible count and linear algebra agree",
                            "Hilbert series", ok_count and data.prefix == oracle, data.to_json(), keep=True))
        if w and len(w) >= 2:
            out.append(_rec(f"hilbert/n={n}/word={','.join(map(str, w))}/pivots",
                            "every pivot generates the same ideal", "Hilbert series",
                            tl_ideal.pivot_independent(n, w, D)))
    one = tl_algebra.TLElement.one(n + 1)
    psi0 = tl_algebra.spec_psi0(n + 1)
    bad = [list(w) for w in tl_algebra.increasing_words(n)
           if tl_ideal.shifted_hilbert(n, w)
           != tl_algebra.pairing(psi0, one, tl_algebra.TLElement.word(n + 1, w))]
    out.append(_rec(f"hilbert/n={n}/psi0-shadow", "shifted graded dimension equals the psi0 value",
                    "graded dimension", not bad, bad))
    for w in _subsets(n):
        rep = tl_ideal.irredundancy_check(n, w, None, D)
        rec = _rec(f"hilbert/n={n}/word={','.join(map(str, w)) or '-'}/irredundant",
                   "no generator is redundant", "generators", rep.ok, rep.witnesses)
        if rep.inconclusive:
            rec.status = INCONCLUSIVE
        out.append(rec)
    return out


def suite_confluence(n: int, D: int) -> list[Record]:
    out = []
    for w in _subsets(n):
        for k in list(w) or [None]:
            rep = tl_ideal.confluence_check(tl_ideal.build_system(n, w, k), D)
            tag = f"confluence/n={n}/word={','.join(map(str, w)) or '-'}" + (f"/pivot={k}" if k else "")
            out.append(_rec(tag, "all ambiguities resolve", "rewriting", rep.ok, rep.failures[:3]))
    return out


def suite_weyl(n: int, D: int) -> list[Record]:
    out = []
    lines = weyl.enumerate_lines(n)
    by_kernel = weyl.lines_by_kernels(n) if n <= 5 else None
    ok = len(lines) == 2**n - 1 and (
        by_kernel is None or {weyl._projective_key(l.direction) for l in lines} == by_kernel
    )
    out.append(_rec(f"weyl/n={n}/lines", "one line per two-block split, matching kernel enumeration",
                    "Weyl lines", ok, {"count": len(lines)}))
    for w in _subsets(n):
        rep = weyl.verify_correspondence(n, w, D)
        numerator_at_one = tl_ideal.hilbert_closed_form(n, len(w)).num.evaluate(1)
        ok = rep.ok and rep.transverse_count == numerator_at_one == weyl.expected_transverse_count(n, len(w))
        out.append(_rec(f"weyl/n={n}/word={','.join(map(str, w)) or '-'}",
                        "ideal and vanishing ideal agree degree by degree", "Weyl lines", ok,
                        rep.to_json()))
    return out


def suite_cells(n: int, D: int) -> list[Record]:
    out = []
    N = n + 1
    caps_ok = all(
        len(cellmod.enumerate_caps(N, N - 2 * l)) == cellmod.ballot(N, l) for l in range(N // 2 + 1)
    ) and sum(len(cellmod.enumerate_caps(N, N - 2 * l)) ** 2 for l in range(N // 2 + 1)) == diagrams.catalan(N)
    out.append(_rec(f"cells/n={n}/caps", "cap counts are ballot numbers summing squares to Catalan",
                    "cell modules", caps_ok))
    for i in range(1, n + 1):
        dim = cellmod.v_dimension_check(n, i)
        out.append(_rec(f"cells/n={n}/i={i}/dimension", "V^i has the expected basis and subquotients",
                        "induced modules", dim.ok, dim.to_json()))
        rank = cellmod.pairing_space_rank(n, i)
        out.append(_rec(f"cells/n={n}/i={i}/pairing-rank", "adjoint pairings form a free module of rank l_i+1",
                        "pairing space", rank.ok, rank.to_json()))
        out.append(_rec(f"cells/n={n}/i={i}/adjoint", "the induced pairing is adjoint",
                        "pairing space", cellmod.is_adjoint(i, n)))
        bad = []
        for l in range(cellmod.l_max(i, n) + 1):
            tr = cellmod.tier_check(i, l, n)
            if not tr.ok:
                bad.append({"l": l, "word": list(tr.word)})
        out.append(_rec(f"cells/n={n}/i={i}/tiers", "tier words behave and have the END dimension",
                        "tier words", not bad, bad))
        bad = []
        basis = cellmod.x_basis(i, n)
        for x in basis:
            for y in basis:
                v = cellmod.v_pairing(i, x, y)
                if not v.is_zero() and any(c < 0 for c in series_prefix(v, D)):
                    bad.append([repr(x), repr(y)])
        out.append(_rec(f"cells/n={n}/i={i}/positivity", "pairing values have non-negative coefficients",
                        "positivity", not bad, bad[:3]))
    return out


SUITE_FUNCS: dict[str, Callable[[int, int], list[Record]]] = {
    "relations": suite_relations,
    "traces": suite_traces,
    "hilbert": suite_hilbert,
    "weyl": suite_weyl,
    "cells": suite_cells,
    "confluence": suite_confluence,
}


def _job(args: tuple[str, int, int]) -> list[Record]:
    suite, n, D = args
    return SUITE_FUNCS[suite](n, D)


def run(config: SuiteConfig) -> Report:
    D, clamped = clamp_degree(config.max_degree)
    report = Report()
    if clamped:
        report.records.append(Record(
            "config/max-degree", f"degree bound clamped from {config.max_degree} to {D}",
            "configuration", INCONCLUSIVE, {"requested": config.max_degree, "ceiling": D},
        ))
    lo, hi = config.n_range
    jobs = [(s, n, D) for s in SUITES if s in config.suites for n in range(lo, hi + 1)]
    if config.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(_job, jobs))
    else:
        results = [_job(j) for j in jobs]
    for recs in results:
        report.records.extend(recs)
    return report


# Output


def _json_default(o):
    if isinstance(o, (RationalFn, LaurentPoly)):
        return str(o)
    return str(o)


def emit(report: Report, fmt: str = "json") -> str:
    rows = [asdict(r) for r in report.records]
    if fmt == "json":
        doc = {"status": report.status, "pass": report.ok, "records": rows}
        return json.dumps(doc, indent=2, sort_keys=True, default=_json_default) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["id", "statement", "anchor", "status", "witness"])
        for r in rows:
            witness = "" if r["witness"] is None else json.dumps(r["witness"], sort_keys=True,
                                                                  default=_json_default)
            w.writerow([r["id"], r["statement"], r["anchor"], r["status"], witness])
        return buf.getvalue()
    if fmt == "md":
        lines = ["| id | statement | anchor | status |", "|---|---|---|---|"]
        for r in rows:
            lines.append(f"| {r['id']} | {r['statement']} | {r['anchor']} | {r['status']} |")
        lines.append("")
        lines.append(f"overall: {report.status}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt}")


# Single-purpose commands


def hilbert_report(n: int, word: Sequence[int], pivot: int | None, D: int) -> dict:
    sys_ = tl_ideal.build_system(n, word, pivot)
    closed = tl_ideal.hilbert_closed_form(n, len(sys_.word))
    prefix = [len(tl_ideal.irreducible_monomials(sys_, d)) for d in range(0, D + 1, 2)]
    oracle = tl_ideal.oracle_prefix(n, sys_.word, D)
    expected = tl_ideal.series_even_prefix(closed, D)
    return {
        "n": n,
        "word": list(sys_.word),
        "pivot": sys_.pivot,
        "max_degree": D,
        "closed_form": str(closed.simplified()),
        "closed_form_prefix": expected,
        "prefix": prefix,
        "oracle_prefix": oracle,
        "match": prefix == oracle == expected,
    }


def pairing_table(spec_name: str, n: int) -> tuple[list[diagrams.Matching], list[list[RationalFn]]]:
    N = n + 1
    spec = tl_algebra.SPECS[spec_name](N)
    basis = diagrams.enumerate_matchings(N)
    return basis, tl_algebra.gram_matrix(spec, basis)


def _cell(r: RationalFn) -> str:
    return str(r.simplified())


def weyl_report(n: int, word: Sequence[int], D: int) -> dict:
    rep = weyl.verify_correspondence(n, word, D)
    doc = rep.to_json()
    doc["lines"] = [ln.to_json() | {"transverse": weyl.is_transverse(ln, word)}
                    for ln in weyl.enumerate_lines(n)]
    doc["max_degree"] = D
    return doc


def cells_report(n: int, i: int, D: int) -> dict:
    dim = cellmod.v_dimension_check(n, i)
    rank = cellmod.pairing_space_rank(n, i)
    ends = []
    for l in range(cellmod.l_max(i, n) + 1):
        tr = cellmod.tier_check(i, l, n)
        coeffs = series_prefix(tr.end_value, D)
        ends.append({
            "l": l, "word": list(tr.word), "end": str(tr.end_value.simplified()),
            "prefix": [int(c) for c in coeffs[D::2]], "pass": tr.ok,
        })
    basis = cellmod.x_basis(i, n)
    return {
        "n": n,
        "i": i,
        "dimensions": {"V": dim.dimension, "expected": dim.expected},
        "filtration": dim.filtration,
        "pairing_rank": rank.rank,
        "pairing": rank.to_json(),
        "end_dims": ends,
        "gram_table_md": cells_gram_markdown(i, n, basis),
        "pass": dim.ok and rank.ok and all(e["pass"] for e in ends),
    }


def cells_gram_markdown(i: int, n: int, basis: Sequence[diagrams.Matching]) -> str:
    labels = [f"x{r}" for r in range(len(basis))]
    lines = ["| | " + " | ".join(labels) + " |", "|---" * (len(basis) + 1) + "|"]
    for r, x in enumerate(basis):
        cells = [str(cellmod.v_pairing(i, x, y).simplified()) for y in basis]
        lines.append(f"| {labels[r]} | " + " | ".join(cells) + " |")
    lines.append("")
    lines.extend(f"- {lab}: {m!r}" for lab, m in zip(labels, basis))
    return "\n".join(lines) + "\n"


# Argument parsing


def _parse_range(s: str) -> tuple[int, int]:
    if "-" in s:
        a, b = s.split("-", 1)
        return int(a), int(b)
    return int(s), int(s)


def _parse_word(s: str | None) -> tuple[int, ...]:
    if not s:
        return ()
    return tuple(int(p) for p in s.split(",") if p.strip())


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tlcat", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--n", default="1-4", help="strand parameter n or range lo-hi")
    v.add_argument("--max-degree", type=int, default=12)
    v.add_argument("--suite", action="append",
                   help="suite name or comma list (relations, traces, hilbert, weyl, cells, confluence, all)")
    v.add_argument("--format", default="json", choices=FORMATS)
    v.add_argument("--jobs", type=int, default=1)

    h = sub.add_parser("hilbert", help="Hilbert series of R/I for one word")
    h.add_argument("--n", type=int, required=True)
    h.add_argument("--word", default="")
    h.add_argument("--pivot", type=int)
    h.add_argument("--max-degree", type=int, default=tl_ideal.DEFAULT_MAX_DEGREE)
    h.add_argument("--format", default="json", choices=("json", "csv"))

    t = sub.add_parser("pairing-table", help="Gram matrix of a trace over the matching basis")
    t.add_argument("--spec", required=True, choices=sorted(tl_algebra.SPECS))
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--format", default="csv", choices=("csv", "json"))

    w = sub.add_parser("weyl", help="Weyl lines and the vanishing-ideal comparison")
    w.add_argument("--n", type=int, required=True)
    w.add_argument("--word", default="")
    w.add_argument("--max-degree", type=int, default=12)

    c = sub.add_parser("cells", help="induced module V^i, its pairings and tier words")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--i", type=int, required=True)
    c.add_argument("--max-degree", type=int, default=12)
    c.add_argument("--format", default="json", choices=("json", "md"))
    return p


def _suites(values: list[str] | None) -> tuple[str, ...]:
    if not values:
        return SUITES
    names = [s.strip() for v in values for s in v.split(",") if s.strip()]
    if "all" in names:
        return SUITES
    return tuple(names)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout
    try:
        if args.command == "verify":
            config = SuiteConfig(_parse_range(args.n), args.max_degree, _suites(args.suite),
                                 args.format, args.jobs)
            report = run(config)
            out.write(emit(report, config.fmt))
            return report.exit_code()

        D, clamped = clamp_degree(getattr(args, "max_degree", 0))
        if args.command == "hilbert":
            doc = hilbert_report(args.n, _parse_word(args.word), args.pivot, D)
            doc["inconclusive"] = clamped
            if args.format == "json":
                out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
            else:
                w = csv.writer(out, lineterminator="\n")
                w.writerow(["degree", "closed_form", "prefix", "oracle_prefix"])
                for r, deg in enumerate(range(0, D + 1, 2)):
                    w.writerow([deg, doc["closed_form_prefix"][r], doc["prefix"][r], doc["oracle_prefix"][r]])
            ok = doc["match"]
        elif args.command == "pairing-table":
            basis, gram = pairing_table(args.spec, args.n)
            if args.format == "csv":
                w = csv.writer(out, lineterminator="\n")
                w.writerow([""] + [repr(m) for m in basis])
                for m, row in zip(basis, gram):
                    w.writerow([repr(m)] + [_cell(r) for r in row])
            else:
                doc = {"spec": args.spec, "n": args.n,
                       "basis": [m.to_json() for m in basis],
                       "gram": [[_cell(r) for r in row] for row in gram]}
                out.write(json.dumps(doc, indent=2) + "\n")
            return 0
        elif args.command == "weyl":
            doc = weyl_report(args.n, _parse_word(args.word), D)
            doc["inconclusive"] = clamped
            out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
            ok = doc["pass"]
        else:
            doc = cells_report(args.n, args.i, D)
            doc["inconclusive"] = clamped
            if args.format == "md":
                out.write(doc["gram_table_md"])
            else:
                out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
            ok = doc["pass"]
    except ValueError as exc:
        print(f"tlcat: error: {exc}", file=sys.stderr)
        return 1
    if not ok:
        return 1
    return 2 if clamped else 0


if __name__ == "__main__":
    raise SystemExit(main())
