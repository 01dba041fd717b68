"""Command-line front end: ``l2betti <command> [input] [options]``.

Exit status: 0 on success, 1 on a computation error, 2 on a parse error.
"""

import argparse
from dataclasses import dataclass
import sys

from l2betti.atiyah import atiyah_check
from l2betti.dimension import DEFAULT_LADDER, FreeGroupOracle, PresentedModule, dim_fp
from l2betti.errors import L2Error, ParseError
from l2betti.groups import FreeAbelianGroup, FreeGroup, group_spec
from l2betti.homology import FreeChainComplex, l2_betti, tor_dims
from l2betti.localization import (
    OreFraction,
    OreSet,
    cramer_factorize,
    linearization_inverse,
    ore_add,
    ore_eq,
    ore_failure_certificate,
    ore_mul,
    rational_closure_linearize,
    sigma_member,
)
from l2betti.parsing import (
    GroupRingAlgebra,
    RationalAlgebra,
    format_record,
    parse_element,
    parse_ints,
    parse_pair,
    parse_rational,
    parse_records,
)
from l2betti.scalars import RationalFunction, inverse_matrix, matmul

COMMANDS = ("dim", "betti", "euler", "tor", "atiyah", "ore-check", "cramer", "linearize", "certify-ore-failure")


@dataclass
class JobSpec:
    command: str
    text: str
    seed: int = 0
    ladder: tuple = DEFAULT_LADDER
    radius: int = 4
    machine: bool = False
    reduce: str = "none"

    def oracle(self):
        return FreeGroupOracle(self.ladder, seed=self.seed)


# ------------------------------------------------------------------ helpers


def _one_record(text):
    recs = parse_records(text)
    if len(recs) != 1:
        raise ParseError(f"expected exactly one record, found {len(recs)}", 1, 1)
    return recs[0]


def _group(rec):
    if rec.group is None:
        raise ParseError("missing 'group' line", rec.start, 1)
    return rec.group


def _module(rec, block="matrix"):
    ring = _group(rec)
    if block in rec.blocks:
        n = parse_ints(rec.fields["rows"])[0] if "rows" in rec.fields else None
        A = rec.matrix(block, ring, None)
        if A.rows == 0 and n:
            A = PresentedModule.free(ring, n).matrix
        elif n is not None and A.rows != n:
            fld = rec.fields["rows"]
            raise ParseError(f"'rows {n}' disagrees with a {A.rows}-row matrix", fld.line, fld.col)
        return PresentedModule(A)
    if "rows" in rec.fields:
        return PresentedModule.free(ring, parse_ints(rec.fields["rows"])[0])
    raise ParseError("missing 'matrix' block or 'rows' line", rec.start, 1)


def _complex(rec):
    ring = _group(rec)
    ranks = parse_ints(rec.require("ranks"))
    diffs = {}
    for p in range(1, len(ranks)):
        name = f"d{p}"
        if name in rec.blocks:
            diffs[p] = rec.matrix(name, ring, (ranks[p - 1], ranks[p]))
    for name, (head, _) in rec.blocks.items():
        if name.startswith("d") and not 1 <= int(name[1:]) < len(ranks):
            raise ParseError(f"block {name} is outside the complex", head.line, head.col)
    return FreeChainComplex(ring, ranks, diffs)


def _nvars(rec):
    if "vars" in rec.fields:
        return parse_ints(rec.fields["vars"], 1)[0]
    ring = _group(rec)
    if isinstance(ring, FreeAbelianGroup):
        return ring.rank
    raise ParseError("expected 'group abelian n' or 'vars n'", rec.group_line or rec.start, 1)


def _rf_str(f, policy):
    if isinstance(f, RationalFunction):
        if policy == "content":
            f = f.reduced()
        lp = f.as_laurent()
        return str(lp) if lp is not None and policy == "content" else str(f)
    return str(f)


def _mat_str(rows, policy):
    return "[" + ", ".join("[" + ", ".join(_rf_str(v, policy) for v in r) + "]" for r in rows) + "]"


# ------------------------------------------------------------------ commands


def cmd_dim(job):
    rec = _one_record(job.text)
    d = dim_fp(_module(rec), job.oracle())
    return [[("dim", d.value), ("engine", d.engine), ("certainty", d.certainty)]]


def cmd_betti(job):
    report = l2_betti(_complex(_one_record(job.text)), job.oracle())
    pairs = [(f"b{p}", b.value) for p, b in enumerate(report.betti)]
    pairs.append(("euler", report.euler))
    pairs.append(("certainty", "exact" if report.exact else "monte-carlo"))
    return [pairs]


def cmd_euler(job):
    report = l2_betti(_complex(_one_record(job.text)), job.oracle())
    return [[("euler", report.euler), ("certainty", "exact" if report.exact else "monte-carlo")]]


def cmd_tor(job):
    rec = _one_record(job.text)
    R = _complex(rec)
    if "matrix" in rec.blocks or "rows" in rec.fields:
        M = _module(rec)
    else:
        # the module presented by d1 (or the free module when there is no d1)
        M = PresentedModule(R.d[1]) if R.length >= 1 else PresentedModule.free(R.ring, R.ranks[0])
    report = tor_dims(M, R, job.oracle())
    pairs = [(f"tor{p}", t.value) for p, t in enumerate(report.dims)]
    exact = all(t.exact for t in report.dims)
    pairs.append(("certainty", "exact" if exact else "monte-carlo"))
    pairs += [("note", n) for n in report.notes]
    return [pairs]


def cmd_atiyah(job):
    out = []
    oracle = job.oracle()
    for k, rec in enumerate(parse_records(job.text), 1):
        v = atiyah_check(_module(rec), oracle)
        out.append([
            ("record", k),
            ("group", group_spec(rec.group)),
            ("dim", v.dimension.value),
            ("lcm", v.lcm),
            ("verdict", v.verdict),
            ("certified", v.certified),
            ("conditional", v.conditional),
        ])
    if not out:
        raise ParseError("no records", 1, 1)
    return out


def cmd_ore_check(job):
    rec = _one_record(job.text)
    nv = _nvars(rec)
    alg = GroupRingAlgebra(FreeAbelianGroup(nv))
    one = alg.const(1).to_laurent()
    spec = rec.require("set")
    kind, _, arg = spec.text.partition(" ")
    if kind == "nonzero":
        T = OreSet.nonzero(one)
    elif kind == "powers":
        col = spec.col + len(kind) + 1 + (len(arg) - len(arg.lstrip()))
        x = parse_element(arg.strip(), alg.ring, spec.line, col).to_laurent()
        try:
            T = OreSet.powers_of(x)
        except ValueError as exc:
            raise ParseError(str(exc), spec.line, col) from None
    else:
        raise ParseError("expected 'set powers <expr>' or 'set nonzero'", spec.line, spec.col)
    fracs = []
    for key in ("f", "g"):
        fld = rec.require(key)
        a, t = (v.to_laurent() for v in parse_pair(fld.text, alg, fld.line, fld.col))
        try:
            fracs.append(OreFraction(a, t, T))
        except ValueError as exc:
            raise ParseError(str(exc), fld.line, fld.col) from None
    f, g = fracs
    s, p = ore_add(f, g), ore_mul(f, g)
    return [[
        ("equal", ore_eq(f, g)),
        ("sum", f"({s.num}, {s.den})"),
        ("product", f"({p.num}, {p.den})"),
    ]]


def cmd_cramer(job):
    rec = _one_record(job.text)
    nv = _nvars(rec)
    if "matrix" not in rec.blocks:
        raise ParseError("missing 'matrix' block", rec.start, 1)
    rows = rec.block_rows("matrix", RationalAlgebra(nv))
    for r in rows:
        for v in r:
            if not v.den:
                raise ParseError("zero denominator", rec.blocks["matrix"][0].line, 1)
    w = cramer_factorize(rows, nv)
    return [[
        ("s", _mat_str(w.s, job.reduce)),
        ("x", _mat_str(w.x, job.reduce)),
        ("b", _mat_str(w.b, job.reduce)),
        ("verified", w.verify()),
    ]]


def cmd_linearize(job):
    rec = _one_record(job.text)
    nv = _nvars(rec)
    fld = rec.require("f")
    f = parse_rational(fld.text, nv, fld.line, fld.col)
    M = rational_closure_linearize(f)
    inv = linearization_inverse(f)
    zero = RationalFunction.zero(nv)
    Mrf = [[RationalFunction(v) for v in r] for r in M]
    ident = matmul(Mrf, inv, zero)
    ok = all(ident[i][j] == int(i == j) for i in range(2) for j in range(2))
    ok = ok and all(a == b for r, q in zip(inverse_matrix(Mrf), inv) for a, b in zip(r, q))
    return [[
        ("matrix", _mat_str(M, job.reduce)),
        ("inverse", _mat_str(inv, job.reduce)),
        ("entry", _rf_str(inv[0][1], job.reduce)),
        ("in_sigma", sigma_member(M)),
        ("verified", ok),
    ]]


def cmd_certify(job):
    columns = None
    if job.text.strip():
        rec = _one_record(job.text)
        ring = _group(rec)
        if not isinstance(ring, FreeGroup) or ring.rank != 2:
            raise ParseError("the Ore-failure certificate needs 'group free 2'", rec.group_line, 1)
        if "columns" in rec.blocks:
            A = rec.matrix("columns", ring)
            if A.rows != 1 or A.cols != 2:
                head = rec.blocks["columns"][0]
                raise ParseError("expected one row with two entries", head.line, head.col)
            columns = A.entries[0]
    cert = ore_failure_certificate(job.radius, columns)
    pairs = [("radius", cert.radius), ("kernel_dimension", cert.kernel_dimension), ("certified", cert.certified)]
    for k, (u, v) in enumerate(cert.kernel, 1):
        pairs.append((f"kernel{k}", f"({u}, {v})"))
    return [pairs]


HANDLERS = {
    "dim": cmd_dim,
    "betti": cmd_betti,
    "euler": cmd_euler,
    "tor": cmd_tor,
    "atiyah": cmd_atiyah,
    "ore-check": cmd_ore_check,
    "cramer": cmd_cramer,
    "linearize": cmd_linearize,
    "certify-ore-failure": cmd_certify,
}


def run(job):
    """Run a job; returns (exit status, stdout text, stderr text)."""
    try:
        records = HANDLERS[job.command](job)
    except ParseError as exc:
        return 2, "", f"parse error: {exc}\n"
    except (L2Error, ArithmeticError, ValueError) as exc:
        return 1, "", f"error: {exc}\n"
    sep = "\n" if job.machine else "\n\n"
    out = sep.join(format_record(r, job.machine) for r in records)
    return 0, out + "\n", ""


def _ladder(text):
    try:
        vals = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("ladder must be comma-separated positive integers") from None
    if not vals or any(v < 1 for v in vals):
        raise argparse.ArgumentTypeError("ladder must be comma-separated positive integers")
    return vals


def build_parser():
    p = argparse.ArgumentParser(prog="l2betti", description="Exact L2-invariants of group-ring presentations.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", nargs="?", help="input file, or '-' for standard input")
    p.add_argument("--inline", metavar="TEXT", help="input text given directly; ';' separates lines")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--radius", type=int, default=4)
    p.add_argument("--machine", action="store_true", help="one key=value record per line")
    p.add_argument("--ladder", type=_ladder, default=DEFAULT_LADDER, metavar="d1,d2,...")
    p.add_argument("--reduce", choices=("none", "content"), default="none")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.inline is not None and args.input is not None:
        print("error: give either an input file or --inline, not both", file=sys.stderr)
        return 2
    if args.inline is not None:
        text = args.inline.replace(";", "\n")
    elif args.input in (None, "-"):
        text = "" if args.input is None and args.command == "certify-ore-failure" else sys.stdin.read()
    else:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
    if args.radius < 1:
        print("error: --radius must be at least 1", file=sys.stderr)
        return 2
    job = JobSpec(args.command, text, args.seed, args.ladder, args.radius, args.machine, args.reduce)
    status, out, err = run(job)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return status


if __name__ == "__main__":
    sys.exit(main())
