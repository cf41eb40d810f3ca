"""Script language, command dispatch and the ``forge`` entry point.

A script is a sequence of ``;``-terminated statements::

    ring R = field(32003)[x, y, z] order(grevlex) weights([1, 1, 1]);
    ideal I = (x^2 - y, x*y - z);
    matrix M = [[x, y], [0, z]];
    poly f = x^4 + y^4;
    complex C = (M, N);
    groebner I;  colon I J;  resolve I minimize;  hilbert I bound 8;
    codim I;  exactness C;  apolar (f, g) bound 5;  pencil;  verify-paper;
"""

import argparse
from dataclasses import dataclass, field
import json
import sys

from .parser import ExprParser, ParseError, tokenize
from .polyring import GF, QQ, MonomialOrder, Poly, Ring
from .report import Entry, Report, timed

__all__ = ["Script", "parse", "print_script", "run", "main", "UsageError", "ScriptError"]


class ScriptError(ParseError):
    """Unbound identifiers, arity and type mismatches (reported with a location)."""


class UsageError(ValueError):
    pass


# -- AST ---------------------------------------------------------------------------

@dataclass
class RingDecl:
    name: str
    ring: Ring
    line: int = 0

    def text(self):
        R = self.ring
        fld = "QQ" if R.field.p == 0 else str(R.field.p)
        order = R.order.kind
        w = ", ".join("[" + ", ".join(str(a) for a in g) + "]" for g in R.gradings)
        return f"ring {self.name} = field({fld})[{', '.join(R.vars)}] order({order}) weights({w});"


@dataclass
class Binding:
    kind: str            # ideal | matrix | poly | complex
    name: str
    value: object        # list of Poly, list of rows, Poly, list of names
    ring: Ring
    line: int = 0

    def text(self):
        if self.kind == "ideal":
            return f"ideal {self.name} = ({', '.join(str(g) for g in self.value)});"
        if self.kind == "poly":
            return f"poly {self.name} = {self.value};"
        if self.kind == "matrix":
            rows = ", ".join("[" + ", ".join(str(e) for e in r) + "]" for r in self.value)
            return f"matrix {self.name} = [{rows}];"
        return f"complex {self.name} = ({', '.join(self.value)});"


@dataclass
class Command:
    name: str
    args: list
    options: dict = field(default_factory=dict)
    ring: Ring = None
    line: int = 0
    col: int = 0

    def text(self):
        parts = [self.name]
        for a in self.args:
            if isinstance(a, list):
                parts.append("(" + ", ".join(str(x) for x in a) + ")")
            else:
                parts.append(str(a))
        for k, v in self.options.items():
            parts.append(k if v is True else f"{k} {v}")
        return " ".join(parts) + ";"


@dataclass
class Script:
    statements: list

    def __eq__(self, other):
        return isinstance(other, Script) and print_script(self) == print_script(other)


def print_script(script):
    return "\n".join(s.text() for s in script.statements) + ("\n" if script.statements else "")


# -- parser ------------------------------------------------------------------------

ORDERS = {"grevlex", "lex", "weighted_then_grevlex"}
COMMANDS = {
    # name: (argument kinds, allowed options)
    "groebner": (["ideal"], {}),
    "codim": (["ideal"], {}),
    "colon": (["ideal", "ideal"], {}),
    "resolve": (["ideal"], {"minimize": "flag"}),
    "hilbert": (["ideal"], {"bound": "int"}),
    "exactness": (["complex"], {}),
    "apolar": (["polylist"], {"bound": "int"}),
    "pencil": ([], {"count": "int"}),
    "verify-paper": ([], {}),
}


class _ScriptParser:
    def __init__(self, source, field_override=None, order_override=None):
        self.toks = tokenize(source)
        self.i = 0
        self.field_override = field_override
        self.order_override = order_override
        self.ring = None
        self.env = {}           # name -> Binding or RingDecl
        self.stmts = []

    @property
    def tok(self):
        return self.toks[self.i]

    def advance(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def err(self, msg, tok=None, cls=ParseError):
        tok = tok or self.tok
        return cls(msg, tok.line, tok.col)

    def expect(self, text):
        if self.tok.text != text or self.tok.kind == "eof":
            found = "end of input" if self.tok.kind == "eof" else repr(self.tok.text)
            raise self.err(f"expected {text!r}, found {found}")
        return self.advance()

    def ident(self, what="identifier"):
        if self.tok.kind != "ident":
            found = "end of input" if self.tok.kind == "eof" else repr(self.tok.text)
            raise self.err(f"expected {what}, found {found}")
        return self.advance()

    def integer(self):
        if self.tok.kind != "int":
            raise self.err("expected an integer")
        return int(self.advance().text)

    def parse(self):
        while self.tok.kind != "eof":
            self.statement()
        return Script(self.stmts)

    def statement(self):
        t = self.ident("a declaration or command")
        kw = t.text
        if kw == "ring":
            self.ring_decl(t)
        elif kw in ("ideal", "matrix", "poly", "complex"):
            self.binding(kw, t)
        elif kw in COMMANDS:
            self.command(kw, t)
        else:
            raise self.err(f"unknown statement {kw!r}", t)

    def ring_decl(self, start):
        name = self.ident("ring name").text
        self.expect("=")
        self.expect("field")
        self.expect("(")
        if self.tok.kind == "int":
            p = self.integer()
            fld = QQ if p == 0 else None
            if fld is None:
                try:
                    fld = GF(p)
                except ValueError as e:
                    raise self.err(str(e), start) from None
        else:
            q = self.ident("QQ or a prime")
            if q.text != "QQ":
                raise self.err("field must be QQ or a prime", q)
            fld = QQ
        self.expect(")")
        self.expect("[")
        names = [self.ident("variable name").text]
        while self.tok.text == ",":
            self.advance()
            names.append(self.ident("variable name").text)
        self.expect("]")
        order_kind, weights = "grevlex", None
        while self.tok.kind == "ident" and self.tok.text in ("order", "weights"):
            kw = self.advance().text
            self.expect("(")
            if kw == "order":
                o = self.ident("order name")
                if o.text not in ORDERS:
                    raise self.err(f"unknown order {o.text!r}", o)
                order_kind = o.text
            else:
                weights = [self.int_list()]
                while self.tok.text == ",":
                    self.advance()
                    weights.append(self.int_list())
            self.expect(")")
        self.expect(";")
        if self.field_override is not None:
            fld = self.field_override
        if self.order_override is not None:
            order_kind = self.order_override
        if len(set(names)) != len(names):
            raise self.err("duplicate variable names", start)
        if weights is not None and any(len(w) != len(names) for w in weights):
            raise self.err("weight vector length does not match the variables", start)
        total = [sum(col) for col in zip(*weights)] if weights else [1] * len(names)
        order = MonomialOrder(order_kind, total if order_kind == "weighted_then_grevlex" else None)
        try:
            R = Ring(names, fld, gradings=weights, order=order)
        except ValueError as e:
            raise self.err(str(e), start) from None
        self.ring = R
        decl = RingDecl(name, R, start.line)
        self.env[name] = decl
        self.stmts.append(decl)

    def int_list(self):
        self.expect("[")
        out = [self.integer()]
        while self.tok.text == ",":
            self.advance()
            out.append(self.integer())
        self.expect("]")
        return out

    def need_ring(self, tok):
        if self.ring is None:
            raise self.err("no ring declared yet", tok, ScriptError)
        return self.ring

    def resolve_ident(self, name, tok):
        R = self.ring
        if name in R.index:
            return R.var(name)
        b = self.env.get(name)
        if isinstance(b, Binding) and b.kind == "poly":
            if b.ring != R:
                raise ScriptError(f"{name!r} belongs to another ring", tok.line, tok.col)
            return b.value
        if b is not None:
            raise ScriptError(f"{name!r} is not a polynomial", tok.line, tok.col)
        raise ScriptError(f"unbound identifier {name!r}", tok.line, tok.col)

    def expr(self):
        p = ExprParser(self.toks, self.ring, self.resolve_ident)
        p.i = self.i
        try:
            v = p.expr()
        except OverflowError as e:
            raise self.err(str(e)) from None
        self.i = p.i
        return v

    def expr_list(self, open_, close):
        self.expect(open_)
        out = []
        if self.tok.text != close:
            out.append(self.expr())
            while self.tok.text == ",":
                self.advance()
                out.append(self.expr())
        self.expect(close)
        return out

    def binding(self, kind, start):
        name_tok = self.ident(f"{kind} name")
        name = name_tok.text
        self.expect("=")
        R = self.need_ring(start)
        if kind == "ideal":
            value = self.expr_list("(", ")")
        elif kind == "poly":
            value = self.expr()
        elif kind == "matrix":
            self.expect("[")
            value = [self.expr_list("[", "]")]
            while self.tok.text == ",":
                self.advance()
                value.append(self.expr_list("[", "]"))
            self.expect("]")
            if any(len(r) != len(value[0]) for r in value):
                raise self.err("ragged matrix", name_tok, ScriptError)
        else:
            self.expect("(")
            value = [self.ref("matrix")]
            while self.tok.text == ",":
                self.advance()
                value.append(self.ref("matrix"))
            self.expect(")")
        self.expect(";")
        b = Binding(kind, name, value, R, start.line)
        self.env[name] = b
        self.stmts.append(b)

    def ref(self, kind):
        t = self.ident(f"{kind} name")
        b = self.env.get(t.text)
        if b is None:
            raise self.err(f"unbound identifier {t.text!r}", t, ScriptError)
        if not isinstance(b, Binding) or b.kind != kind:
            raise self.err(f"{t.text!r} is not a {kind}", t, ScriptError)
        return t.text

    def command(self, name, start):
        kinds, opts = COMMANDS[name]
        args = []
        for k in kinds:
            if self.tok.text == ";" or self.tok.kind == "eof":
                raise self.err(f"{name} expects {len(kinds)} argument(s), got {len(args)}",
                               cls=ScriptError)
            if k == "polylist":
                self.need_ring(start)
                args.append(self.expr_list("(", ")"))
            else:
                args.append(self.ref(k))
        options = {}
        while self.tok.text != ";":
            if self.tok.kind == "eof":
                raise self.err("expected ';'")
            t = self.advance()
            if t.kind != "ident" or t.text not in opts:
                if t.kind == "ident" and self.env.get(t.text) is not None:
                    raise self.err(f"{name} expects {len(kinds)} argument(s)", t, ScriptError)
                raise self.err(f"unexpected {t.text!r} in {name}", t)
            options[t.text] = True if opts[t.text] == "flag" else self.integer()
        self.expect(";")
        self.stmts.append(Command(name, args, options, self.ring, start.line, start.col))


def parse(source, field=None, order=None):
    """Parse a script; ``field``/``order`` override every ring declaration."""
    return _ScriptParser(source, field, order).parse()


# -- execution ---------------------------------------------------------------------

def _ideal(env, name):
    from .groebner import Ideal
    b = env[name]
    return Ideal(b.ring, b.value)


def _matrix(b):
    from .complexes import PolyMatrix
    return PolyMatrix(b.ring, b.value)


def _complex(env, b):
    """Chain the named matrices, propagating twists from F_0 = R."""
    from .complexes import ChainComplex, PolyMatrix
    maps = []
    rows = None
    for name in b.value:
        m = env[name]
        M = PolyMatrix(m.ring, m.value, rows if rows is not None else [0] * len(m.value))
        maps.append(M)
        rows = M.col_shifts
    return ChainComplex(maps)


def _polys(v):
    return [str(g) for g in v]


def run(script, seed=1, field=None):
    """Execute the commands of a parsed script; returns a ``Report``."""
    from . import apolarity, complexes, groebner, ideal_ops
    from .corpus import verify_paper_family
    report = Report()
    env = {}
    for st in script.statements:
        if isinstance(st, (RingDecl, Binding)):
            env[st.name] = st
            continue
        cmd = st
        label = cmd.text()[:-1]
        try:
            with timed() as tm:
                entries = _execute(cmd, env, seed, field, apolarity, complexes, groebner,
                                   ideal_ops, verify_paper_family)
        except (ValueError, ArithmeticError, RuntimeError) as e:
            raise CommandError(cmd, e) from e
        if len(entries) == 1 and entries[0].command == label:
            entries[0].wall_time_ms = tm["ms"]
        for e in entries:
            report.add(e)
    return report


class CommandError(RuntimeError):
    def __init__(self, cmd, err):
        self.cmd = cmd
        self.err = err
        super().__init__(f"line {cmd.line}: command '{cmd.text()[:-1]}' failed: {err}")


def _execute(cmd, env, seed, field, apolarity, complexes, groebner, ideal_ops, verify_paper_family):
    label = cmd.text()[:-1]
    name = cmd.name
    if name == "groebner":
        G = _ideal(env, cmd.args[0]).gb()
        return [Entry(label, {"ideal": cmd.args[0]}, _polys(G))]
    if name == "codim":
        c = ideal_ops.codim(_ideal(env, cmd.args[0]))
        return [Entry(label, {"ideal": cmd.args[0]}, c)]
    if name == "colon":
        Q = ideal_ops.colon(_ideal(env, cmd.args[0]), _ideal(env, cmd.args[1]))
        return [Entry(label, {"I": cmd.args[0], "J": cmd.args[1]}, _polys(Q.gens))]
    if name == "resolve":
        minimize = bool(cmd.options.get("minimize"))
        C, betti = complexes.free_resolution(_ideal(env, cmd.args[0]), minimize=minimize)
        res = {"ranks": betti.ranks, "shifts": betti.degree_map(), "staircase": str(betti)}
        return [Entry(label, {"ideal": cmd.args[0], "minimize": minimize}, res)]
    if name == "hilbert":
        bound = cmd.options.get("bound", 8)
        hf = ideal_ops.hilbert_function(_ideal(env, cmd.args[0]), bound)
        return [Entry(label, {"ideal": cmd.args[0], "bound": bound}, hf.values)]
    if name == "exactness":
        C = _complex(env, env[cmd.args[0]])
        rep = complexes.be_exactness(C)
        res = [{"map": f"d{s.index}", "rank": s.rank, "expected_rank": s.expected_rank,
                "codim_at_least": s.codim_bound, "method": s.method, "pass": s.passed}
               for s in rep.steps]
        return [Entry(label, {"complex": cmd.args[0]}, res, "n/a", 0.0, rep.passed)]
    if name == "apolar":
        forms = cmd.args[0]
        bound = cmd.options.get("bound")
        r = apolarity.apolar_ideal(forms, bound, S=forms[0].ring)
        res = {"generators": _polys(r.ideal.gens), "hilbert": r.hilbert.values,
               "betti": r.betti.degree_map(), "annihilates": r.annihilates}
        return [Entry(label, {"forms": _polys(forms), "bound": r.degree_bound}, res,
                      "n/a", 0.0, r.annihilates)]
    if name == "pencil":
        count = cmd.options.get("count", 1)
        fld = field or GF()
        out = []
        for s in range(seed, seed + count):
            with timed() as tm:
                r = apolarity.pencil_experiment(s, fld)
            res = {"hilbert_J": r.hilbert_J, "betti_J": r.betti_J, "hilbert_L": r.hilbert_L,
                   "betti_L": r.betti_L, "checks": r.checks}
            out.append(Entry(label, {"seed": s, "field": str(fld)}, res,
                             "pencil of quartics: Hilbert functions and Betti tables",
                             tm["ms"], r.generic))
        return out
    if name == "verify-paper":
        fld = field or (cmd.ring.field if cmd.ring is not None else GF())
        return list(verify_paper_family(fld))
    raise ScriptError(f"unknown command {name!r}", cmd.line, cmd.col)


# -- entry point -------------------------------------------------------------------

def _field_arg(text):
    if text is None:
        return None
    if text.upper() == "QQ":
        return QQ
    try:
        return GF(int(text))
    except ValueError as e:
        raise UsageError(f"bad --field value {text!r}: {e}") from None


def _emit(report, fmt, timing, out):
    if fmt == "json":
        out.write(report.to_json(timing) + "\n")
    else:
        out.write(report.to_text() + "\n")


def main(argv=None, out=None):
    out = out or sys.stdout
    ap = argparse.ArgumentParser(prog="forge", description="Commutative algebra scripts and verification reports.")
    sub = ap.add_subparsers(dest="cmd")

    def common(p):
        p.add_argument("--field", help="p (a prime other than 2) or QQ")
        p.add_argument("--output", choices=["json", "text"], default="text")
        p.add_argument("--seed", type=int, default=1)
        p.add_argument("--no-timing", action="store_true", help="report wall_time_ms as 0")

    pr = sub.add_parser("run", help="run a script file ('-' reads stdin)")
    pr.add_argument("script")
    pr.add_argument("--order", choices=sorted(ORDERS))
    common(pr)
    pv = sub.add_parser("verify-paper", help="run the verification suite of the corpus")
    pv.add_argument("--checks", help="comma-separated subset of checks")
    common(pv)
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    if args.cmd is None:
        ap.print_usage(sys.stderr)
        return 2
    try:
        from .parallel import thread_count
        thread_count()
        fld = _field_arg(args.field)
    except (UsageError, ValueError) as e:
        print(f"forge: {e}", file=sys.stderr)
        return 2
    if args.cmd == "verify-paper":
        from .corpus import CHECKS, verify_paper_family
        checks = None
        if args.checks:
            checks = [c.strip() for c in args.checks.split(",") if c.strip()]
            bad = [c for c in checks if c not in CHECKS]
            if bad:
                print(f"forge: unknown checks {bad}; choose from {CHECKS}", file=sys.stderr)
                return 2
        report = verify_paper_family(fld, checks)
        _emit(report, args.output, not args.no_timing, out)
        return 0 if report.passed else 1
    try:
        source = sys.stdin.read() if args.script == "-" else open(args.script).read()
    except OSError as e:
        print(f"forge: cannot read script: {e}", file=sys.stderr)
        return 2
    try:
        script = parse(source, fld, args.order)
    except ParseError as e:
        print(f"forge: {args.script}:{e}", file=sys.stderr)
        return 2
    try:
        report = run(script, seed=args.seed, field=fld)
    except CommandError as e:
        print(f"forge: {e}", file=sys.stderr)
        return 1
    _emit(report, args.output, not args.no_timing, out)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
