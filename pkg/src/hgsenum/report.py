"""Reports for catalogues, enumerations, cross-checks and oracle runs.

Reports contain no timestamps or timings unless asked for, so the same
configuration always produces byte-identical output.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field

from . import __version__
from .catalog import (CatalogRow, both_types, cross_check, cyclic_catalog, invariants_of,
                      metacyclic_catalog)
from .config import reset_caps, set_caps
from .holomorph import cyclic_spec, metacyclic_spec
from .sqfree import enumerate_specs, sophie_germain_params

COMMANDS = ("catalog", "enumerate", "verify", "oracle", "realizable")
TYPES = ("cyclic", "metacyclic", "both")
FORMATS = ("json", "csv", "md")
ROW_FIELDS = ("table", "key", "params", "order", "structure", "num_groups", "aut_pair_order",
              "hgs_cyclic", "hgs_nonabelian", "acg")


@dataclass
class RunConfig:
    command: str
    q: int | None = None
    n: int | None = None
    type: str = "both"
    format: str = "json"
    element_cap: int | None = None
    subgroup_cap: int | None = None
    workers: int = 1
    output: str | None = None
    errata: bool = False
    timing: bool = False

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.type not in TYPES:
            raise ValueError(f"unknown type {self.type!r}")
        if self.format not in FORMATS:
            raise ValueError(f"unknown format {self.format!r}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        for cap in (self.element_cap, self.subgroup_cap):
            if cap is not None and cap < 1:
                raise ValueError("caps must be positive")
        if self.command in ("catalog", "verify") and self.q is None:
            raise ValueError(f"{self.command} needs --q")
        if self.command == "enumerate" and (self.q is None) == (self.n is None):
            raise ValueError("enumerate needs exactly one of --q and --n")
        if self.command in ("oracle", "realizable") and self.n is None:
            raise ValueError(f"{self.command} needs --n")
        if self.q is not None:
            sophie_germain_params(self.q)


@dataclass
class Report:
    meta: dict
    rows: list[dict] = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    diffs: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    layout: str = "rows"

    def to_dict(self) -> dict:
        out = {"meta": self.meta, "rows": self.rows, "summary": self.summary}
        if self.diffs or self.layout == "diffs":
            out["diffs"] = self.diffs
        if self.notes:
            out["notes"] = self.notes
        return out

    @property
    def exit_status(self) -> int:
        return 0 if self.summary.get("diffs", 0) == 0 else 1


def _meta(cfg: RunConfig) -> dict:
    meta = {"tool": "hgsenum", "version": __version__, "command": cfg.command, "type": cfg.type}
    if cfg.q is not None:
        P = sophie_germain_params(cfg.q)
        meta.update(q=cfg.q, p=P["p"], r=P["r"], s=P["s"])
    else:
        meta.update(q=None, p=None, r=None, s=None)
    if cfg.n is not None:
        meta["n"] = cfg.n
    if cfg.errata:
        meta["errata"] = True
    return meta


def _summary(rows: list[dict], diffs: int = 0) -> dict:
    return {"groups": sum(r["num_groups"] or 0 for r in rows), "classes": len(rows), "diffs": diffs}


def _catalogs(cfg: RunConfig) -> list[tuple[str, list[CatalogRow]]]:
    q = cfg.q
    out = []
    if cfg.type in ("cyclic", "both"):
        out.append(("cyclic", cyclic_catalog(q)))
    if cfg.type in ("metacyclic", "both"):
        out.append(("metacyclic", metacyclic_catalog(q, errata=cfg.errata)))
    return out


def run_catalog(cfg: RunConfig) -> Report:
    if cfg.type == "both":
        rows = [r.as_dict() for r in both_types(cfg.q)]
        return Report(_meta(cfg), rows, _summary(rows), layout="both-types")
    rows = [r.as_dict() for _, cat in _catalogs(cfg) for r in cat]
    return Report(_meta(cfg), rows, _summary(rows), layout=rows[0]["table"] if rows else "rows")


def _enumerate_q(cfg: RunConfig):
    from .transitive import enumerate_spec

    out = {}
    if cfg.type in ("cyclic", "both"):
        out["cyclic"] = enumerate_spec(cyclic_spec(cfg.q))
    if cfg.type in ("metacyclic", "both"):
        out["metacyclic"] = enumerate_spec(metacyclic_spec(cfg.q))
    return out


def _class_rows(enum, table: str, names: dict[int, CatalogRow] | None = None) -> list[dict]:
    nonabelian = enum.holomorph.spec.d > 1
    abstract = {ci: ai for ai, members in enumerate(enum.abstract_classes) for ci in members}
    rows = []
    for ci, (cls, cnt) in enumerate(zip(enum.classes, enum.counts)):
        inv = invariants_of(cls.representative.subgroup)
        named = (names or {}).get(ci)
        rows.append({
            "table": table,
            "key": named.key if named else f"class {ci}",
            "params": {"members": cls.e_prime, "derived_length": cls.representative.derived_length,
                       "center_order": inv.center_order, "abelian": inv.abelian,
                       "abstract_class": abstract[ci]},
            "order": cls.order,
            "structure": named.structure if named else "",
            "num_groups": cls.e_prime,
            "aut_pair_order": cls.aut_pair_order,
            "hgs": {"cyclic": None if nonabelian else cnt.e, "nonabelian": cnt.e if nonabelian else None},
            "acg": cls.acg,
        })
    return rows


def run_enumerate(cfg: RunConfig) -> Report:
    from .transitive import enumerate_spec, match_classes

    if cfg.n is not None:
        specs = enumerate_specs(cfg.n)
        if cfg.type == "cyclic":
            specs = [s for s in specs if s.d == 1]
        elif cfg.type == "metacyclic":
            specs = [s for s in specs if s.d > 1]
        rows = []
        abstract = 0
        for spec in specs:
            enum = enumerate_spec(spec)
            rows += _class_rows(enum, spec.label())
            abstract += len(enum.abstract_classes)
        summary = _summary(rows)
        summary["abstract_classes"] = abstract
        return Report(_meta(cfg), rows, summary)
    enums = _enumerate_q(cfg)
    rows = []
    names = {}
    for kind, cat in _catalogs(cfg):
        check = cross_check(cat, enums[kind])
        by_key = {r.key: r for r in cat}
        names[kind] = {ci: by_key[k] for k, ci in check.row_class.items() if ci is not None}
    if cfg.type != "both":
        kind = cfg.type
        rows = _class_rows(enums[kind], f"enumerate-{kind}", names[kind])
        summary = _summary(rows)
        summary["abstract_classes"] = len(enums[kind].abstract_classes)
        return Report(_meta(cfg), rows, summary)
    cyc, met = enums["cyclic"], enums["metacyclic"]
    matched = dict(match_classes(cyc, met))
    cyc_rows = _class_rows(cyc, "enumerate-both", names["cyclic"])
    met_rows = _class_rows(met, "enumerate-both", names["metacyclic"])
    rows = []
    used = set()
    for ci, row in enumerate(cyc_rows):
        mi = matched.get(ci)
        row["hgs"]["nonabelian"] = met.counts[mi].e if mi is not None else 0
        if mi is not None:
            used.add(mi)
            row["num_groups"] += met.classes[mi].e_prime
            row["key"] = f"{row['key']} | {met_rows[mi]['key']}"
        rows.append(row)
    for mi, row in enumerate(met_rows):
        if mi not in used:
            row["hgs"]["cyclic"] = 0
            rows.append(row)
    summary = _summary(rows)
    summary["both_types"] = len(matched)
    return Report(_meta(cfg), rows, summary)


def run_verify(cfg: RunConfig) -> Report:
    enums = _enumerate_q(cfg)
    diffs, notes, rows = [], [], []
    checks = []
    for kind, cat in _catalogs(cfg):
        checks.append((kind, cat, cross_check(cat, enums[kind])))
    if cfg.type == "both":
        cat = both_types(cfg.q)
        checks.append(("both", cat, cross_check(cat, (enums["cyclic"], enums["metacyclic"]))))
    for kind, cat, check in checks:
        rows += [r.as_dict() for r in cat]
        diffs += [dict(d.as_dict(), catalog=kind) for d in check.diffs]
        notes += [f"[{kind}] {n}" for n in check.notes]
    summary = _summary(rows, len(diffs))
    summary["enumerated_groups"] = sum(e.num_groups for e in enums.values())
    summary["enumerated_classes"] = sum(len(e.classes) for e in enums.values())
    return Report(_meta(cfg), rows, summary, diffs, notes, layout="diffs")


def run_oracle(cfg: RunConfig) -> Report:
    from .oracle import transitive_groups, verify_count_formula

    rows, diffs = [], []
    for i, G in enumerate(transitive_groups(cfg.n)):
        res = verify_count_formula(G)
        inv = invariants_of(G)
        rows.append({
            "table": "oracle", "key": f"T{cfg.n}.{i}",
            "params": {"oracle": res.oracle, "formula": res.formula},
            "order": G.order, "structure": f"{'abelian' if inv.abelian else 'non-abelian'}, centre {inv.center_order}",
            "num_groups": 1, "aut_pair_order": None,
            "hgs": dict(res.formula), "acg": None,
        })
        if not res.equal:
            diffs.append({"row": f"T{cfg.n}.{i}", "field": "count", "expected": res.formula, "found": res.oracle})
    return Report(_meta(cfg), rows, _summary(rows, len(diffs)), diffs)


def run_realizable(cfg: RunConfig) -> Report:
    from .transitive import realizability_filter, wreath_counterexample

    w = wreath_counterexample(cfg.n)
    verdict = realizability_filter(w.group, cfg.n)
    rows = [{
        "table": "realizable", "key": f"wreath n={cfg.n}",
        "params": {"p": w.p, "m": w.m, "hol_orders": w.hol_orders, "p_cubed_divides": w.p_cubed_divides,
                   "divides_no_holomorph": w.divides_no_holomorph, "transitive": w.transitive},
        "order": w.group.order, "structure": f"derived length {w.derived_length}",
        "num_groups": 1, "aut_pair_order": None, "hgs": {"cyclic": 0, "nonabelian": 0},
        "acg": None, "verdict": str(verdict),
    }]
    bad = 0 if (w.certified and verdict.status == "no") else 1
    return Report(_meta(cfg), rows, _summary(rows, bad))


RUNNERS = {"catalog": run_catalog, "enumerate": run_enumerate, "verify": run_verify,
           "oracle": run_oracle, "realizable": run_realizable}


def run(cfg: RunConfig) -> Report:
    cfg.validate()
    set_caps(cfg.element_cap, cfg.subgroup_cap)
    start = time.perf_counter()
    try:
        report = RUNNERS[cfg.command](cfg)
    finally:
        reset_caps()
    if cfg.timing:
        report.meta["seconds"] = round(time.perf_counter() - start, 3)
    return report


# -- emitters -------------------------------------------------------------------

def emit(report: Report, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (json.dumps(report.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n").encode()
    if fmt == "csv":
        return _emit_csv(report).encode()
    if fmt == "md":
        return _emit_md(report).encode()
    raise ValueError(f"unknown format {fmt!r}")


def _flat(row: dict) -> list:
    hgs = row.get("hgs") or {}
    return [row["table"], row["key"], json.dumps(row["params"], sort_keys=True), row["order"],
            row["structure"], row["num_groups"], row["aut_pair_order"],
            hgs.get("cyclic", ""), hgs.get("nonabelian", ""), row["acg"]]


def _emit_csv(report: Report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if report.layout == "diffs":
        w.writerow(["catalog", "row", "field", "expected", "found"])
        for d in report.diffs:
            w.writerow([d.get("catalog", ""), d["row"], d["field"], d["expected"], d["found"]])
        return buf.getvalue()
    w.writerow(ROW_FIELDS)
    for row in report.rows:
        w.writerow(["" if v is None else v for v in _flat(row)])
    return buf.getvalue()


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, dict):
        return ", ".join(f"{k}={v[k]}" for k in v)
    return str(v)


def _md_table(header: list[str], body: list[list]) -> list[str]:
    lines = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
    lines += ["| " + " | ".join(_cell(c) for c in r) + " |" for r in body]
    return lines


def _emit_md(report: Report) -> str:
    m = report.meta
    title = f"# {m['command']} (type {m['type']}"
    title += f", q={m['q']}, p={m['p']})" if m.get("q") else f", n={m.get('n')})"
    lines = [title, ""]
    rows = report.rows
    if report.layout == "both-types":
        lines += _md_table(["Order", "Structure", "# cyclic type HGS", "# non-abelian type HGS"],
                           [[r["order"], r["structure"], r["hgs"]["cyclic"], r["hgs"]["nonabelian"]] for r in rows])
    elif report.layout == "cyclic":
        lines += _md_table(["Key", "Order", "Parameters", "# groups", "Structure", "|Aut(M,M')|", "# HGS"],
                           [[r["key"], r["order"], r["params"], r["num_groups"], r["structure"],
                             r["aut_pair_order"], r["hgs"]["cyclic"]] for r in rows])
    elif report.layout == "diffs":
        lines += _md_table(["Catalog", "Row", "Field", "Expected", "Found"],
                           [[d.get("catalog"), d["row"], d["field"], d["expected"], d["found"]] for d in report.diffs])
        if report.notes:
            lines += ["", "Notes:", ""] + [f"- {n}" for n in report.notes]
    else:
        lines += _md_table(["Key", "Order", "Structure", "# groups", "|Aut(M,M')|", "# HGS", "acG"],
                           [[r["key"], r["order"], r["structure"], r["num_groups"], r["aut_pair_order"],
                             r["hgs"], r["acg"]] for r in rows])
    s = report.summary
    lines += ["", f"groups: {s.get('groups')}, classes: {s.get('classes')}, diffs: {s.get('diffs')}", ""]
    return "\n".join(lines)
