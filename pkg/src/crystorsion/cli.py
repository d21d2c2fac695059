"""Command-line front end: ``crystorsion <command> [options]``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .catalog import (CatalogError, DescriptorError, build, enumerate_theorem3, u0_module,
                      uj_module, xi_module, yi_module)
from .cohomology import Cocycle, CocycleError, validate_cocycle
from .crysgroup import BudgetExceeded, CrysGroup, classify, h1_cached, is_torsion_free
from .groupcore import is_prime
from .zglattice import LatticeConstructionError

EXIT_OK, EXIT_TORSION, EXIT_PARSE, EXIT_BUILD, EXIT_COCYCLE, EXIT_BUDGET = range(6)


@dataclass
class RunConfig:
    command: str
    descriptor: Optional[str] = None
    cocycle: Optional[str] = None
    p: int = 2
    n_max: int = 3
    budget: int = 2 ** 12
    seed: int = 0
    fmt: str = "json"
    out: Optional[str] = None


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def q(c) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def _entry(descriptor: Optional[str]):
    if not descriptor:
        raise CliError(EXIT_PARSE, "--descriptor is required")
    try:
        return build(descriptor)
    except DescriptorError as exc:
        raise CliError(EXIT_PARSE, str(exc))
    except (CatalogError, LatticeConstructionError) as exc:
        raise CliError(EXIT_BUILD, str(exc))


def _cocycle_values(L, values) -> Cocycle:
    try:
        vals = tuple(tuple(Fraction(str(x)) for x in v) for v in values)
        return Cocycle(L, vals)
    except (ValueError, ZeroDivisionError, CocycleError) as exc:
        raise CliError(EXIT_COCYCLE, f"bad cocycle: {exc}")


def parse_cocycle(entry, source: Optional[str]) -> Cocycle:
    """``source`` is a canonical cocycle name, ``zero``, inline JSON, or a JSON file path."""
    L = entry.lattice
    if source is None:
        if not entry.cocycles:
            raise CliError(EXIT_COCYCLE, f"{entry.descriptor} has no canonical cocycle")
        return next(iter(entry.cocycles.values()))
    if source in entry.cocycles:
        return entry.cocycles[source]
    if source == "zero":
        return Cocycle.zero(L)
    text = source
    if os.path.isfile(source):
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_PARSE, f"cocycle is neither a name nor JSON: {exc}")
    if isinstance(data, dict):
        data = data.get("values")
    if not isinstance(data, list):
        raise CliError(EXIT_PARSE, "cocycle JSON must be a list of value vectors")
    return _cocycle_values(L, data)


# ---------------------------------------------------------------------------
# commands; each returns (report dict, tsv rows, exit code)


def cmd_build(cfg: RunConfig):
    e = _entry(cfg.descriptor)
    rep = e.to_dict()
    rep["rank"] = e.lattice.rank
    rows = [["descriptor", "rank", "group"], [e.descriptor, e.lattice.rank, e.lattice.group.descriptor()]]
    return rep, rows, EXIT_OK


def cmd_h1(cfg: RunConfig):
    e = _entry(cfg.descriptor)
    H = h1_cached(e.lattice)
    reps = [[[q(c) for c in v] for v in R.values] for R in H.representatives]
    rep = {"descriptor": e.descriptor, "invariant_factors": list(H.group_structure.invariant_factors),
           "order": H.order, "representatives": reps}
    rows = [["descriptor", "invariant_factors", "order"],
            [e.descriptor, ",".join(map(str, H.group_structure.invariant_factors)) or "-", H.order]]
    return rep, rows, EXIT_OK


def cmd_certify(cfg: RunConfig):
    e = _entry(cfg.descriptor)
    T = parse_cocycle(e, cfg.cocycle)
    if not validate_cocycle(T):
        raise CliError(EXIT_COCYCLE, "cocycle fails the cocycle conditions")
    cert = is_torsion_free(CrysGroup.of(T))
    rep = {"descriptor": e.descriptor, "cocycle": [[q(c) for c in v] for v in T.values]}
    rep.update(cert.to_dict())
    rows = [["generator", "vanishes", "witness_order"]]
    for s in cert.subgroups:
        rows.append([str(s.generator), s.vanishes, s.witness_order if s.witness_order else "-"])
    return rep, rows, EXIT_OK if cert.torsion_free else EXIT_TORSION


def theorem2_rows(p: int, budget: int, seed: int):
    entries = [xi_module(p, i) for i in range(p - 1)]
    if p > 2:
        entries += [uj_module(p, j) for j in range(1, p - 1)]
    entries += [yi_module(p, i) for i in range(p)] + [u0_module(p)]
    return [(e.descriptor, classify(e.lattice, budget, seed=seed)) for e in entries]


def cmd_theorem2(cfg: RunConfig):
    p = cfg.p
    if not is_prime(p):
        raise CliError(EXIT_PARSE, f"{p} is not prime")
    if p > 5:
        raise CliError(EXIT_BUDGET, "theorem2 is configured for p <= 5")
    table = theorem2_rows(p, cfg.budget, cfg.seed)
    total = sum(r.orbit_count for _, r in table)
    rep = {"p": p, "rows": [dict(r.to_dict(), descriptor=d) for d, r in table],
           "total": total, "expected": 2 * p - 3, "matches": total == 2 * p - 3}
    rows = [["module", "h1_order", "torsion_free_classes", "iso_orbits", "level"]]
    rows += [[d, r.h1_order, r.torsion_free_count, r.orbit_count, r.certificate_level]
             for d, r in table]
    rows.append(["total", "", "", total, f"2p-3={2 * p - 3}"])
    return rep, rows, EXIT_OK


THEOREM3_ORDER = ("DeltaN", "WNStar", "DeltaNStar", "WN")


def theorem3_rows(n_max: int, budget: int, seed: int):
    out = []
    for kind in THEOREM3_ORDER:
        start = 0 if kind in ("WN", "WNStar") else 1
        for n in range(start, n_max + 1):
            out.append(enumerate_theorem3(kind, n, budget=budget, seed=seed))
    return out


def cmd_theorem3(cfg: RunConfig):
    if cfg.n_max > 3:
        raise CliError(EXIT_BUDGET, "theorem3 is configured for n_max <= 3")
    table = theorem3_rows(cfg.n_max, cfg.budget, cfg.seed)
    rep = {"n_max": cfg.n_max, "rows": [r.to_dict() for r in table]}
    rows = [["kind", "n", "m", "h1", "params", "raw_classes", "t_m", "iso_orbits", "table_cocycle"]]
    for r in table:
        rows.append([r.kind, r.n, r.degree, ",".join(map(str, r.h1_structure)) or "-",
                     r.param_count, r.raw_torsion_free, r.torsion_free_count, r.orbit_count,
                     r.table_cocycle_verdict or "-"])
    return rep, rows, EXIT_OK


def cmd_selftest(cfg: RunConfig):
    checks = []
    checks.append(("theorem2 p=2 total 1",
                   sum(r.orbit_count for _, r in theorem2_rows(2, cfg.budget, cfg.seed)) == 1))
    checks.append(("theorem2 p=3 total 3",
                   sum(r.orbit_count for _, r in theorem2_rows(3, cfg.budget, cfg.seed)) == 3))
    r = enumerate_theorem3("DeltaN", 2, orbits=False)
    checks.append(("DeltaN(n=2) t_m = 2", r.torsion_free_count == 2))
    r = enumerate_theorem3("WN", 0, orbits=False)
    checks.append(("WN(n=0) t_m = 0", r.torsion_free_count == 0))
    cert = is_torsion_free(CrysGroup.of(build("Lemma12(p=2)").cocycles["T"]))
    checks.append(("Lemma12(p=2) torsion free", cert.torsion_free))
    ok = all(v for _, v in checks)
    rep = {"checks": [{"name": n, "ok": v} for n, v in checks], "ok": ok}
    rows = [["check", "ok"]] + [[n, v] for n, v in checks]
    return rep, rows, EXIT_OK if ok else EXIT_TORSION


COMMANDS = {"build": cmd_build, "h1": cmd_h1, "certify": cmd_certify,
            "theorem2": cmd_theorem2, "theorem3": cmd_theorem3, "selftest": cmd_selftest}


# ---------------------------------------------------------------------------


def render(rep: dict, rows: list, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rep, indent=2) + "\n"
    if fmt == "tsv":
        return "".join("\t".join(str(c) for c in r) + "\n" for r in rows)
    widths = [max(len(str(r[i])) for r in rows if i < len(r)) for i in range(len(rows[0]))]
    return "".join("  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip() + "\n"
                   for r in rows)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="crystorsion",
                                 description="Torsion-free crystallographic groups over small p-groups.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--descriptor", help='lattice descriptor, e.g. "Xi(p=3,i=1)"')
    ap.add_argument("--cocycle", help="canonical cocycle name, 'zero', inline JSON or JSON file")
    ap.add_argument("--p", type=int, default=2, help="prime for theorem2 (default 2)")
    ap.add_argument("--n-max", type=int, default=3, help="largest n for theorem3 (default 3)")
    ap.add_argument("--budget", type=int, default=2 ** 12,
                    help="largest number of cohomology classes to enumerate")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--format", dest="fmt", choices=("json", "tsv", "text"), default="json")
    ap.add_argument("--out", help="write the report here instead of stdout")
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_PARSE
    cfg = RunConfig(ns.command, ns.descriptor, ns.cocycle, ns.p, ns.n_max, ns.budget,
                    ns.seed, ns.fmt, ns.out)
    if cfg.budget < 1:
        print("error: --budget must be at least 1", file=sys.stderr)
        return EXIT_PARSE
    try:
        rep, rows, code = COMMANDS[cfg.command](cfg)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except CocycleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COCYCLE
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    text = render(rep, rows, cfg.fmt)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
