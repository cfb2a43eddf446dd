"""Command line front end and symmetry reports.

    surfsym FILE [--mode auto|general|ruled] [--json] ...

Exit status is 0 on success, 2 when the chosen method does not apply to the
surface, and 1 on parse or usage errors.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass, field
from typing import List, Optional

from .cremona import CremonaCandidate, InvariantDegeneracy, ZeroResultants
from .diffgeo import fiber_degree
from .isometry import ClosureReport, Isometry, SymmetryRecord, Underdetermined, _fmt, group_closure_check
from .parser import ParseError, SurfaceFile, load_surface
from .pipeline import general_symmetries
from .polyalg import MultiPoly, RationalFunction
from .ruled import NotProper, RuledFallback, detect_standard_form, ruled_symmetries

log = logging.getLogger("surfsym")

MODES = ("auto", "general", "ruled")


class MethodFailure(Exception):
    """The requested pipeline cannot handle the surface (exit status 2)."""


@dataclass
class ReportEntry:
    isometry: Isometry
    reparams: List[CremonaCandidate]
    provenance: str

    def to_dict(self) -> dict:
        f = self.isometry
        return {
            "A": [_fmt(x) for row in f.A for x in row],
            "b": [_fmt(x) for x in f.b],
            "det_sign": f.det_sign,
            "reparam": [str(self.reparams[0].psi1), str(self.reparams[0].psi2)],
            "all_reparams": [[str(c.psi1), str(c.psi2)] for c in self.reparams],
            "provenance": self.provenance,
        }


@dataclass
class SymmetryReport:
    name: str
    pipeline: str
    entries: List[ReportEntry]
    fibre_degree: int
    closure: ClosureReport
    warnings: List[str] = field(default_factory=list)
    duration: float = 0.0

    @property
    def group_order(self) -> int:
        return len(self.entries)

    @property
    def symmetry_count(self) -> int:
        """Group order times the number of parameter values over a generic point."""
        return self.group_order * max(1, self.fibre_degree)

    @property
    def isometries(self) -> List[Isometry]:
        return [e.isometry for e in self.entries]

    def to_dict(self) -> dict:
        return {
            "surface": self.name,
            "pipeline": self.pipeline,
            "group_order": self.group_order,
            "fibre_degree": self.fibre_degree,
            "symmetry_count": self.symmetry_count,
            "closure": {
                "closed": self.closure.closed,
                "missing": [str(m) for m in self.closure.missing],
            },
            "warnings": list(self.warnings),
            "duration_ms": int(round(self.duration * 1000)),
            "records": [e.to_dict() for e in self.entries],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        lines = [
            f"surface:      {self.name}",
            f"pipeline:     {self.pipeline}",
            f"group order:  {self.group_order}",
        ]
        if self.fibre_degree != 1:
            lines.append(f"fibre degree: {self.fibre_degree}")
        lines += [
            f"symmetries:   {self.symmetry_count}",
            f"closure:      {self.closure}",
            f"duration:     {self.duration:.3f} s",
        ]
        for w in self.warnings:
            lines.append(f"warning:      {w}")
        for i, e in enumerate(self.entries, 1):
            d = e.to_dict()
            A = d["A"]
            lines.append("")
            lines.append(f"[{i}] det {e.isometry.det_sign:+d}  ({e.provenance})")
            for r in range(3):
                lines.append("    | " + "  ".join(f"{a:>10}" for a in A[3 * r:3 * r + 3]) + f" |   {d['b'][r]:>10}")
            lines.append(f"    psi = ({d['reparam'][0]}, {d['reparam'][1]})")
        return "\n".join(lines)


def _identity_candidate() -> CremonaCandidate:
    vs = ("t", "s")
    return CremonaCandidate(RationalFunction(MultiPoly.var("t", vs)), RationalFunction(MultiPoly.var("s", vs)), True, "identity")


def _entries(records: List[SymmetryRecord], provenance: str, warnings: List[str]) -> List[ReportEntry]:
    groups = {}
    for r in records:
        k = r.isometry.key()
        if k not in groups:
            groups[k] = ReportEntry(r.isometry, [], r.provenance)
        groups[k].reparams.append(r.reparam)
    ident = Isometry.identity()
    if ident.key() not in groups:
        warnings.append("identity not found by the pipeline; added")
        groups[ident.key()] = ReportEntry(ident, [_identity_candidate()], provenance)
    for e in groups.values():
        e.reparams.sort(key=lambda c: (str(c.psi1), str(c.psi2)))
    return sorted(groups.values(), key=lambda e: e.isometry.sort_key())


def _option(value, hints, key, default):
    if value is not None:
        return value
    return hints.get(key, default)


def run(file: SurfaceFile, mode: Optional[str] = None, degree_bound: Optional[int] = None,
        sample_budget: Optional[int] = None, seed: Optional[int] = None, pn: Optional[str] = None) -> SymmetryReport:
    """Run the requested pipeline; explicit arguments override the file's hints."""
    hints = file.hints
    mode = _option(mode, hints, "mode", "auto")
    degree_bound = _option(degree_bound, hints, "degree_bound", None)
    sample_budget = _option(sample_budget, hints, "sample_budget", None)
    seed = _option(seed, hints, "seed", 0)
    pn = _option(pn, hints, "pn", "auto")
    if mode not in MODES:
        raise ValueError(f"unknown mode '{mode}'")
    if pn not in ("auto", "on", "off"):
        raise ValueError(f"pn must be auto, on or off (got '{pn}')")
    start = time.perf_counter()
    x = file.surface()
    warnings: List[str] = []
    records = None
    pipeline = None
    if mode in ("auto", "ruled"):
        r = detect_standard_form(x)
        if r is None:
            if mode == "ruled":
                raise MethodFailure("not in standard form")
            log.info("not in ruled standard form; using the general pipeline")
        else:
            try:
                res = ruled_symmetries(r, seed=seed)
                records = res.records
                pipeline = "ruled"
                log.info("ruled pipeline: %s, %d records", res.classification, len(records))
                if res.curve_only:
                    log.info("%d striction symmetries do not lift", len(res.curve_only))
            except (RuledFallback, NotProper) as e:
                if mode == "ruled":
                    raise MethodFailure(f"ruled pipeline not applicable: {e}") from None
                warnings.append(f"ruled pipeline fallback: {e}")
    if records is None:
        try:
            gres = general_symmetries(x, degree_bound=degree_bound, seed=seed, pn=pn, sample_budget=sample_budget)
        except (ZeroResultants, InvariantDegeneracy, Underdetermined) as e:
            raise MethodFailure(str(e)) from None
        records = gres.records
        warnings += gres.warnings
        pipeline = "general (PN)" if gres.pn else "general"
        delta = gres.fibre_degree
    else:
        delta = fiber_degree(x, seed)
        if delta > 1:
            warnings.append(f"parametrization covers the surface {delta} times")
    entries = _entries(records, records[0].provenance if records else "general_pipeline", warnings)
    closure = group_closure_check([e.isometry for e in entries])
    if not closure.closed:
        warnings.append(f"symmetry set is {closure}")
    return SymmetryReport(file.name, pipeline, entries, delta, closure, warnings, time.perf_counter() - start)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="surfsym", description="Symmetries of a rational surface.")
    ap.add_argument("file", help="surface description file")
    ap.add_argument("--mode", choices=MODES, default=None)
    ap.add_argument("--degree-bound", type=int, default=None, help="degree bound for Cremona candidates")
    ap.add_argument("--samples", type=int, default=None, help="base point budget for branch extraction")
    ap.add_argument("--seed", type=int, default=None)
    ap.add_argument("--pn", choices=("auto", "on", "off"), default=None)
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    ap.add_argument("--verbose", "-v", action="store_true")
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    handler = None
    if args.verbose:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
        log.addHandler(handler)
        log.setLevel(logging.INFO)
    try:
        return _main(args)
    finally:
        if handler is not None:
            log.removeHandler(handler)
            log.setLevel(logging.NOTSET)


def _main(args) -> int:
    try:
        f = load_surface(args.file)
    except (OSError, ParseError) as e:
        print(f"surfsym: {e}", file=sys.stderr)
        return 1
    try:
        rep = run(f, args.mode, args.degree_bound, args.samples, args.seed, args.pn)
    except MethodFailure as e:
        print(f"surfsym: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"surfsym: {e}", file=sys.stderr)
        return 1
    print(rep.to_json() if args.json else rep.to_text())
    return 0


if __name__ == "__main__":
    sys.exit(main())
