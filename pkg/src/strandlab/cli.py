"""Command-line front end.

Problem files are line-oriented text with sections [field], [grading],
[module], and optionally [options]; see docs in the README.  Exit codes:
0 success, 2 parse error, 3 invalid grading, 4 non-minimal strand degree.
"""

from __future__ import annotations

import argparse
import os
import sys

from .fields import default_field, parse_field
from .grading import GradingSpec, find_theta, format_degree, parse_degree, \
    validate_positive
from .groebner import ModulePresentation
from .complexes import GradedComplex, free_resolution
from .poly import Poly, PolyRing


class ProblemError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------------------
# problem files

def _split_top_commas(text: str) -> list[str]:
    """Split on commas outside parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def _split_degree_list(text: str) -> list[str]:
    """Split a whitespace- or comma-separated list of (..) tuples."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        if depth:
            cur.append(ch)
        if ch == ")":
            depth -= 1
            if depth == 0:
                out.append("".join(cur))
                cur = []
    if depth or cur:
        raise ProblemError(2, f"unbalanced parentheses in degree list {text!r}")
    return out


def parse_problem_file(path: str):
    """Read a problem file into (ring, module, options)."""
    try:
        with open(path, encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as e:
        raise ProblemError(2, f"cannot read {path}: {e}")

    sections: dict[str, list[tuple[str, str]]] = {}
    current = None
    for lineno, line in enumerate(raw.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip().lower()
            sections.setdefault(current, [])
            continue
        if current is None:
            raise ProblemError(2, f"line {lineno}: content before any [section]")
        if "=" not in line:
            raise ProblemError(2, f"line {lineno}: expected key = value")
        key, val = line.split("=", 1)
        sections[current].append((key.strip().lower(), val.strip()))

    def single(section: str, key: str, default=None):
        vals = [v for k, v in sections.get(section, []) if k == key]
        if len(vals) > 1:
            raise ProblemError(2, f"duplicate key {key!r} in [{section}]")
        return vals[0] if vals else default

    # field
    ftext = single("field", "field") or single("field", "p")
    if ftext is None and sections.get("field"):
        raise ProblemError(2, "section [field] present but no field/p key")
    if ftext is not None:
        try:
            field = parse_field(ftext)
        except ValueError as e:
            raise ProblemError(2, str(e))
    else:
        env = os.environ.get("STRANDLAB_FIELD")
        if env:
            try:
                field = parse_field(env)
            except ValueError as e:
                raise ProblemError(2, f"STRANDLAB_FIELD: {e}")
        else:
            field = default_field()

    # grading
    if "grading" not in sections:
        raise ProblemError(2, "missing [grading] section")
    dtext = single("grading", "degrees")
    if dtext is None:
        raise ProblemError(2, "missing degrees in [grading]")
    try:
        dparts = _split_degree_list(dtext)
        if not dparts:
            raise ProblemError(2, "empty degree list in [grading]")
        r = len(dparts[0].strip("()").replace(",", " ").split())
        var_degrees = tuple(parse_degree(p, r) for p in dparts)
    except ValueError as e:
        raise ProblemError(3, f"degrees: {e}")
    ttext = single("grading", "theta")
    if ttext is not None:
        try:
            theta = parse_degree(ttext, r)
        except ValueError as e:
            raise ProblemError(3, f"theta: {e}")
    else:
        theta = find_theta(var_degrees)
        if theta is None:
            raise ProblemError(3, "grading admits no positivity witness theta")
    spec = GradingSpec(r, var_degrees, theta)
    if not validate_positive(spec):
        raise ProblemError(3, f"theta {format_degree(theta)} is not positive "
                           "on every variable degree")
    vtext = single("grading", "vars")
    names = vtext.replace(",", " ").split() if vtext else None
    if names is not None and len(names) != len(var_degrees):
        raise ProblemError(2, "vars: name count does not match degree count")
    ring = PolyRing(field, spec, names=names)

    # module
    if "module" not in sections:
        raise ProblemError(2, "missing [module] section")
    qtext = single("module", "quotient")
    gtext = single("module", "generators")
    if (qtext is None) == (gtext is None):
        raise ProblemError(2, "[module] needs exactly one of quotient/generators")
    try:
        if qtext is not None:
            gens = [ring.parse(p) for p in _split_top_commas(qtext)]
            module = ModulePresentation.quotient_by_ideal(ring, gens)
        else:
            gd = [parse_degree(p, r) for p in _split_degree_list(gtext)]
            relations = []
            for k, v in sections["module"]:
                if k != "relation":
                    continue
                entries = _split_top_commas(v)
                if len(entries) != len(gd):
                    raise ProblemError(
                        2, f"relation {v!r} has {len(entries)} entries, "
                        f"expected {len(gd)}")
                rel: dict = {}
                for c, etext in enumerate(entries):
                    p = ring.parse(etext)
                    for u, cf in p.terms.items():
                        rel[(c, u)] = cf
                if rel:
                    relations.append(rel)
            module = ModulePresentation(ring, gd, relations)
    except ProblemError:
        raise
    except ValueError as e:
        raise ProblemError(2, f"[module]: {e}")

    options: dict = {}
    for k, v in sections.get("options", []):
        options[k] = v
    return ring, module, options


# ---------------------------------------------------------------------------
# rendering

def format_matrices(cx: GradedComplex) -> list[str]:
    lines = []
    for i, d in enumerate(cx.diffs):
        lines.append(f"matrix d{i + 1}")
        lines.append("rows: " + " ".join(format_degree(a) for a in cx.degrees[i]))
        lines.append("columns: " + " ".join(format_degree(a) for a in cx.degrees[i + 1]))
        for row in d:
            lines.append("[" + ", ".join(str(p) for p in row) + "]")
    return lines


def parse_matrices(text: str, ring: PolyRing):
    """Inverse of format_matrices: returns a list of
    (row_degrees, column_degrees, entries) triples."""
    out = []
    cur = None
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("matrix "):
            cur = [[], [], []]
            out.append(cur)
        elif line.startswith("rows:"):
            cur[0] = [parse_degree(p, ring.spec.r)
                      for p in _split_degree_list(line[5:])]
        elif line.startswith("columns:"):
            cur[1] = [parse_degree(p, ring.spec.r)
                      for p in _split_degree_list(line[8:])]
        elif line.startswith("[") and line.endswith("]") and cur is not None:
            cur[2].append([ring.parse(p) for p in _split_top_commas(line[1:-1])])
    return [tuple(m) for m in out]


def print_complex(cx: GradedComplex, grid: bool = False, matrices: bool = False):
    if grid:
        for line in cx.betti_grid():
            print(line)
    else:
        for line in cx.betti_lines():
            print(line)
    if matrices:
        for line in format_matrices(cx):
            print(line)


# ---------------------------------------------------------------------------
# commands

def _opt_int(args, options, key):
    v = getattr(args, key, None)
    if v is not None:
        return v
    if key in options:
        try:
            return int(options[key])
        except ValueError:
            raise ProblemError(2, f"option {key} = {options[key]!r} is not an integer")
    return None


def _opt_degree(args, options, ring):
    v = getattr(args, "degree", None)
    if v is None:
        v = options.get("degree")
    if v is None:
        return None
    try:
        return parse_degree(v, ring.spec.r)
    except ValueError as e:
        raise ProblemError(2, f"degree: {e}")


def cmd_resolve(args) -> int:
    ring, M, options = parse_problem_file(args.file)
    length = _opt_int(args, options, "length")
    cx = free_resolution(M, max_length=length)
    print_complex(cx, grid=args.grid, matrices=args.matrices)
    return 0


def cmd_strand(args) -> int:
    from .bgg import resolve_strand_degree, strongly_linear_strand
    ring, M, options = parse_problem_file(args.file)
    a = _opt_degree(args, options, ring)
    try:
        a = resolve_strand_degree(M, a)
    except ValueError as e:
        raise ProblemError(4, str(e))
    cx = strongly_linear_strand(M, a)
    print_complex(cx, matrices=True)
    return 0


def cmd_linear_part(args) -> int:
    from .bgg import default_cap, strongly_linear_part
    ring, M, options = parse_problem_file(args.file)
    cap = _opt_int(args, options, "cap")
    if cap is None:
        cap = default_cap(M)
    length = _opt_int(args, options, "length")
    F = free_resolution(M, max_length=length)
    cx = strongly_linear_part(F, cap)
    print_complex(cx, matrices=args.matrices)
    return 0


def cmd_perturb(args) -> int:
    from .bgg import perturbation_resolution
    ring, M, options = parse_problem_file(args.file)
    cap = _opt_int(args, options, "cap")
    length = _opt_int(args, options, "length")
    cx = perturbation_resolution(M, cap=cap, length=length)
    print_complex(cx, grid=args.grid, matrices=args.matrices)
    return 0


def cmd_lst(args) -> int:
    from .bgg import resolve_strand_degree
    from .lst import lst_check
    ring, M, options = parse_problem_file(args.file)
    a = _opt_degree(args, options, ring)
    try:
        a = resolve_strand_degree(M, a)
    except ValueError as e:
        raise ProblemError(4, str(e))
    rep = lst_check(M, a)
    print(f"degree={format_degree(rep.degree)}")
    print(f"strand_length={rep.strand_length}")
    print(f"dim_M_a={rep.dim_Ma}")
    print(f"dim_R={rep.dim_R}")
    print(f"bound={rep.bound}")
    print(f"holds={'true' if rep.holds else 'false'}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="strandlab",
        description="Minimal free resolutions and strongly linear strands "
                    "over multigraded polynomial rings.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("resolve", help="minimal free resolution Betti table")
    p.add_argument("file")
    p.add_argument("--length", type=int, default=None)
    p.add_argument("--grid", action="store_true",
                   help="print the theta-collapsed Betti grid")
    p.add_argument("--matrices", action="store_true")
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("strand", help="a-strongly linear strand")
    p.add_argument("file")
    p.add_argument("--degree", default=None)
    p.set_defaults(func=cmd_strand)

    p = sub.add_parser("linear-part", help="strongly linear part of the resolution")
    p.add_argument("file")
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--length", type=int, default=None)
    p.add_argument("--matrices", action="store_true")
    p.set_defaults(func=cmd_linear_part)

    p = sub.add_parser("perturb", help="resolution via homological perturbation")
    p.add_argument("file")
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--length", type=int, default=None)
    p.add_argument("--grid", action="store_true")
    p.add_argument("--matrices", action="store_true")
    p.set_defaults(func=cmd_perturb)

    p = sub.add_parser("lst", help="check the linear syzygy bound")
    p.add_argument("file")
    p.add_argument("--degree", default=None)
    p.set_defaults(func=cmd_lst)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ProblemError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code


if __name__ == "__main__":
    sys.exit(main())
