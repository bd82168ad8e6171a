"""Command line front end.

Input files list one generator exponent vector per line after an ``n <dim>``
header (``#`` starts a comment, an optional ``name <text>`` line may precede
the rows)::

    n 2
    2 1
    1 3

A JSON document ``{"vars": 2, "generators": [[2, 1], [1, 3]], "name": "..."}``
is accepted as well.  Exit codes: 0 success, 1 verification failure,
2 bad input, 3 unstable capped search.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
import warnings
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .engine import (
    Analysis,
    EngineConfig,
    RootSet,
    analyze,
    bound_audit,
    facet_denominators,
    roots_mod_z,
)
from .newton import ContractError, InputError, MonomialIdeal, build_polyhedron, enumerate_faces
from .oracle import family_cases, golden_corpus, load_corpus
from .semigroup import DEFAULT_CAP, CapUnstableError

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_UNSTABLE = 0, 1, 2, 3
DEFAULT_EXPORT_LIMIT = 20000


class ParseError(InputError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class IdealDocument:
    n: int
    generators: tuple[tuple[int, ...], ...]
    name: Optional[str] = None

    @property
    def ideal(self) -> MonomialIdeal:
        return MonomialIdeal(self.n, self.generators)


def _dedupe(rows, name_for_warning="input"):
    seen, out = set(), []
    for r in rows:
        if r in seen:
            warnings.warn(f"{name_for_warning}: duplicate generator {r} dropped", stacklevel=3)
            continue
        seen.add(r)
        out.append(r)
    return tuple(out)


def _parse_structured(text: str) -> IdealDocument:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from None
    if not isinstance(doc, dict) or "vars" not in doc or "generators" not in doc:
        raise ParseError("structured input needs 'vars' and 'generators'")
    n = doc["vars"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError("'vars' must be a positive integer")
    rows = []
    for k, row in enumerate(doc["generators"]):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"generator {k} must be a list of {n} integers")
        if any(not isinstance(x, int) or isinstance(x, bool) or x < 0 for x in row):
            raise ParseError(f"generator {k} must have nonnegative integer entries")
        rows.append(tuple(row))
    if not rows:
        raise ParseError("zero ideal not allowed")
    name = doc.get("name")
    return IdealDocument(n, _dedupe(rows), None if name is None else str(name))


def parse_ideal(text: str) -> IdealDocument:
    """Parse either input format (see module docstring)."""
    if text.lstrip().startswith("{"):
        return _parse_structured(text)
    n = None
    name = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head == "name" and n is None:
            name = rest.strip()
            continue
        if n is None:
            if head != "n":
                raise ParseError("expected header 'n <dim>'", lineno)
            try:
                n = int(rest)
            except ValueError:
                raise ParseError(f"bad dimension {rest.strip()!r}", lineno) from None
            if n < 1:
                raise ParseError("dimension must be positive", lineno)
            continue
        try:
            row = tuple(int(tok) for tok in line.split())
        except ValueError:
            raise ParseError(f"non-integer entry in {line!r}", lineno) from None
        if len(row) != n:
            raise ParseError(f"expected {n} entries, got {len(row)}", lineno)
        if any(x < 0 for x in row):
            raise ParseError(f"negative exponent in {line!r}", lineno)
        rows.append(row)
    if n is None:
        raise ParseError("empty input")
    if not rows:
        raise ParseError("zero ideal not allowed")
    return IdealDocument(n, _dedupe(rows), name)


def format_ideal(doc: IdealDocument) -> str:
    lines = []
    if doc.name is not None:
        lines.append(f"name {doc.name}")
    lines.append(f"n {doc.n}")
    lines.extend(" ".join(map(str, row)) for row in doc.generators)
    return "\n".join(lines) + "\n"


def fmt_fraction(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _vec(v) -> str:
    return "(" + ",".join(fmt_fraction(x) if isinstance(x, Fraction) else str(x) for x in v) + ")"


def _frac_json(q: Fraction) -> dict:
    return {"num": q.numerator, "den": q.denominator}


# -- commands -------------------------------------------------------------------

def _face_record(face) -> dict:
    return {
        "id": face.id,
        "dim": face.dim,
        "bounded": face.bounded,
        "in_coordinate_hyperplane": face.in_coordinate_hyperplane,
        "vertices": [list(v) for v in face.vertices],
        "recession_dirs": [i + 1 for i in sorted(face.recession_dirs)],
        "incident_facets": sorted(face.incident_facets),
    }


def _breakdown(an: Analysis, path: str = "") -> list[dict]:
    out = []
    for c in an.contributions:
        rec = _face_record(c.face)
        rec.update({
            "ideal": path or "input",
            "linear_form": [fmt_fraction(x) for x in c.linear_form],
            "candidates": len(c.candidates),
            "levels": {str(k): [list(u) for u in us] for k, us in sorted(c.levels.items())},
            "roots": [_frac_json(r) for r in c.roots],
        })
        out.append(rec)
    for i, sub in an.projections.items():
        out.extend(_breakdown(sub, f"{path}/drop x{i + 1}" if path else f"drop x{i + 1}"))
    return out


def _base_report(doc: IdealDocument, config: EngineConfig) -> dict:
    return {
        "name": doc.name,
        "n": doc.n,
        "generators": [list(g) for g in doc.generators],
        "roots": None,
        "faces": [],
        "residues": [],
        "audit": {"caps": config.cap, "l_bound": config.bound_for(doc.n), "stable": None},
    }


def cmd_roots(doc: IdealDocument, config: EngineConfig, breakdown: bool = False) -> dict:
    ideal = doc.ideal
    an = analyze(ideal, config)
    report = _base_report(doc, config)
    report["roots"] = [_frac_json(r) for r in an.roots]
    report["residues"] = [_frac_json(q) for q in an.roots.residues()]
    if breakdown:
        report["faces"] = _breakdown(an)
    if config.audit:
        stable, _, _ = bound_audit(ideal, config)
        report["audit"]["stable"] = stable
    return report


def cmd_faces(doc: IdealDocument, config: EngineConfig) -> dict:
    report = _base_report(doc, config)
    P = build_polyhedron(doc.ideal)
    report["facets"] = [
        {"normal": list(f.normal), "offset": f.offset, "is_coordinate": f.is_coordinate}
        for f in P.facets
    ]
    report["faces"] = [_face_record(f) for f in enumerate_faces(P)]
    return report


def cmd_modz(doc: IdealDocument, config: EngineConfig) -> dict:
    report = _base_report(doc, config)
    report["facets"] = [
        {"normal": list(f.normal), "offset": f.offset, "m": m}
        for f, m in facet_denominators(doc.ideal)
    ]
    report["residues"] = [_frac_json(q) for q in roots_mod_z(doc.ideal)]
    return report


def cmd_verify(config: EngineConfig, corpus_text: Optional[str] = None) -> dict:
    cases = load_corpus(corpus_text) if corpus_text is not None else golden_corpus()
    results = []
    for case in cases:
        got = analyze(case.ideal, config).roots
        results.append(_compare("golden", case.name, got, case.expected))
    for label, ideal, expected in family_cases():
        got = analyze(ideal, config).roots
        results.append(_compare("family", label, got, expected))
    golden = [r for r in results if r["suite"] == "golden"]
    family = [r for r in results if r["suite"] == "family"]
    g_ok = sum(r["pass"] for r in golden)
    f_ok = sum(r["pass"] for r in family)
    summary = f"{g_ok}/{len(golden)} golden, " + (
        "all families pass" if f_ok == len(family) else f"{f_ok}/{len(family)} families pass"
    )
    return {"results": results, "summary": summary,
            "pass": g_ok == len(golden) and f_ok == len(family)}


def _compare(suite, name, got: RootSet, expected: RootSet) -> dict:
    g, e = set(got), set(expected)
    return {
        "suite": suite,
        "name": name,
        "pass": g == e,
        "missing": [fmt_fraction(x) for x in sorted(e - g, reverse=True)],
        "extra": [fmt_fraction(x) for x in sorted(g - e, reverse=True)],
    }


# -- generator export -----------------------------------------------------------

@dataclass(frozen=True)
class GeneratorRecord:
    c: tuple[int, ...]
    minus: tuple[int, ...]   # 0-based generator indices j with c_j < 0
    plus: tuple[int, ...]    # 0-based variable indices i with l_i(c) > 0
    factors: tuple[str, ...]

    def expression(self) -> str:
        return "*".join(self.factors) if self.factors else "1"


@dataclass(frozen=True)
class GeneratorExport:
    n: int
    r: int
    c_bound: int
    records: tuple[GeneratorRecord, ...]


def count_sum_one(r: int, bound: int) -> int:
    """Number of c in [-bound, bound]^r with sum(c) == 1."""
    counts = {0: 1}
    for _ in range(r):
        nxt: dict[int, int] = {}
        for s, k in counts.items():
            for c in range(-bound, bound + 1):
                nxt[s + c] = nxt.get(s + c, 0) + k
        counts = nxt
    return counts.get(1, 0)


def _linear(coeffs, names) -> str:
    terms = []
    for a, name in zip(coeffs, names):
        if a == 0:
            continue
        terms.append(name if a == 1 else f"{a}*{name}")
    return " + ".join(terms) if terms else "0"


def cmd_export_generators(doc: IdealDocument, c_bound: int, limit: int = DEFAULT_EXPORT_LIMIT) -> GeneratorExport:
    """Symbolic g_c for every c with sum 1 and entries in [-c_bound, c_bound].

    ``g_c`` is the product of ``binomial(s_j, -c_j)`` over ``c_j < 0`` and
    ``binomial(l_i(s) + l_i(c), l_i(c))`` over ``l_i(c) > 0``, where
    ``l_i(s) = sum_j a_ij s_j`` and ``a_ij`` is the i-th exponent of the j-th
    generator.  Only syntax is produced.
    """
    if c_bound < 1:
        raise InputError("c-bound must be at least 1")
    gens = doc.generators
    r, n = len(gens), doc.n
    total = count_sum_one(r, c_bound)
    if total > limit:
        raise InputError(f"{total} generator vectors exceed the export limit {limit}")
    s_names = [f"s{j + 1}" for j in range(r)]
    records = []
    for c in itertools.product(range(-c_bound, c_bound + 1), repeat=r):
        if sum(c) != 1:
            continue
        ell = [sum(gens[j][i] * c[j] for j in range(r)) for i in range(n)]
        minus = tuple(j for j in range(r) if c[j] < 0)
        plus = tuple(i for i in range(n) if ell[i] > 0)
        factors = [f"binomial({s_names[j]}, {-c[j]})" for j in minus]
        for i in plus:
            form = _linear([gens[j][i] for j in range(r)], s_names)
            factors.append(f"binomial({form} + {ell[i]}, {ell[i]})")
        records.append(GeneratorRecord(c, minus, plus, tuple(factors)))
    return GeneratorExport(n, r, c_bound, tuple(records))


# -- rendering ------------------------------------------------------------------

def _frac_text(d) -> str:
    return fmt_fraction(Fraction(d["num"], d["den"]))


def render_roots(report: dict) -> str:
    lines = [_frac_text(d) for d in report["roots"]]
    for f in report["faces"]:
        verts = " ".join(_vec(v) for v in f["vertices"])
        lines.append(f"# face {f['id']} of {f['ideal']}: dim={f['dim']} vertices={verts} "
                     f"form=({','.join(f['linear_form'])}) candidates={f['candidates']}")
        for k, us in f["levels"].items():
            lines.append(f"#   level {k}: " + " ".join(_vec(u) for u in us))
        lines.append("#   roots: " + " ".join(_frac_text(d) for d in f["roots"]))
    audit = report["audit"]
    if audit["stable"] is not None:
        lines.append(f"# audit: cap={audit['caps']} l_bound={audit['l_bound']} "
                     f"stable={'yes' if audit['stable'] else 'no'}")
    return "\n".join(lines) + "\n"


def render_faces(report: dict) -> str:
    lines = ["# facets"]
    for k, f in enumerate(report["facets"]):
        terms = " + ".join(f"{a}*x{i + 1}" for i, a in enumerate(f["normal"]) if a)
        lines.append(f"# {k}: {terms} >= {f['offset']}" + (" (coordinate)" if f["is_coordinate"] else ""))
    lines.append("id\tdim\tbounded\tcoord\trecession\tincident\tvertices")
    for f in report["faces"]:
        lines.append("\t".join([
            str(f["id"]), str(f["dim"]),
            "yes" if f["bounded"] else "no",
            "yes" if f["in_coordinate_hyperplane"] else "no",
            ",".join(f"x{i}" for i in f["recession_dirs"]) or "-",
            ",".join(map(str, f["incident_facets"])),
            " ".join(_vec(v) for v in f["vertices"]),
        ]))
    return "\n".join(lines) + "\n"


def render_modz(report: dict) -> str:
    lines = []
    for f in report["facets"]:
        terms = " + ".join(f"{a}*x{i + 1}" for i, a in enumerate(f["normal"]) if a)
        lines.append(f"# facet {terms} >= {f['offset']}: m={f['m']}")
    lines.extend(_frac_text(d) for d in report["residues"])
    return "\n".join(lines) + "\n"


def render_verify(report: dict) -> str:
    lines = []
    for r in report["results"]:
        line = f"{'PASS' if r['pass'] else 'FAIL'} {r['suite']} {r['name']}"
        if not r["pass"]:
            line += f" missing=[{' '.join(r['missing'])}] extra=[{' '.join(r['extra'])}]"
        lines.append(line)
    lines.append(report["summary"])
    return "\n".join(lines) + "\n"


def render_export(exp: GeneratorExport) -> str:
    lines = [f"c=({','.join(map(str, rec.c))}): {rec.expression()}" for rec in exp.records]
    return "\n".join(lines) + "\n"


def export_json(exp: GeneratorExport) -> dict:
    return {
        "n": exp.n,
        "r": exp.r,
        "c_bound": exp.c_bound,
        "generators": [
            {"c": list(rec.c), "minus": [j + 1 for j in rec.minus],
             "plus": [i + 1 for i in rec.plus], "expression": rec.expression()}
            for rec in exp.records
        ],
    }


# -- entry point ----------------------------------------------------------------

def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "structured"], default="text")
    common.add_argument("--l-bound", type=int, default=None,
                        help="bound on L(u) for candidate exponents (default 2n)")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP,
                        help="initial on-face coefficient cap for --audit")
    common.add_argument("--audit", action="store_true",
                        help="cross-check membership by capped search and check bound stability")
    common.add_argument("--include-vertices", action="store_true",
                        help="also process 0-dimensional faces")

    p = argparse.ArgumentParser(prog="bsmonomial", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_ in [("roots", "roots of the Bernstein-Sato polynomial"),
                        ("faces", "face lattice of the Newton polyhedron"),
                        ("modz", "root classes modulo Z")]:
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("input", help="ideal file, or - for stdin")
        if name == "roots":
            sp.add_argument("--breakdown", action="store_true", help="per-face detail")
    sp = sub.add_parser("verify", parents=[common], help="run the golden corpus and family checks")
    sp.add_argument("--corpus", default=None, help="alternative golden corpus file")
    sp = sub.add_parser("export", parents=[common], help="export generators g_c as text")
    sp.add_argument("input")
    sp.add_argument("--c-bound", type=int, default=1)
    sp.add_argument("--limit", type=int, default=DEFAULT_EXPORT_LIMIT)
    return p


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    structured = args.format == "structured"
    try:
        config = EngineConfig(l_bound=args.l_bound, cap=args.cap, audit=args.audit,
                              include_vertices=args.include_vertices)
        if args.command == "verify":
            corpus = _read_input(args.corpus) if args.corpus else None
            report = cmd_verify(config, corpus)
            out.write(json.dumps(report, indent=1) + "\n" if structured else render_verify(report))
            return EXIT_OK if report["pass"] else EXIT_VERIFY

        doc = parse_ideal(_read_input(args.input))
        if args.command == "export":
            exp = cmd_export_generators(doc, args.c_bound, args.limit)
            out.write(json.dumps(export_json(exp), indent=1) + "\n" if structured else render_export(exp))
            return EXIT_OK
        if args.command == "roots":
            report = cmd_roots(doc, config, breakdown=args.breakdown)
            render = render_roots
        elif args.command == "faces":
            report = cmd_faces(doc, config)
            render = render_faces
        else:
            report = cmd_modz(doc, config)
            render = render_modz
        out.write(json.dumps(report, indent=1) + "\n" if structured else render(report))
        return EXIT_OK
    except CapUnstableError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_UNSTABLE
    except (InputError, ContractError, ValueError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
