"""Expression DSL, REPL and batch checker over the whole library.

The surface syntax is ASCII keyword calls (`pair(x,y)`, `comp(g,f,A,B,C)`,
`lam(x : A => body, B)`) plus set literals `{...}`, numerals `#n` and the
Boolean literals.  Commands: let, assume, eval, check, iso, decode, simp.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Tuple

from . import bridges, canon, funcs, iso, kernel, obligations, relcalc
from .errors import HFSetError, ParseError, UnboundVar
from .kernel import HFSet

MAX_NESTING = 400

# operator name -> allowed arities
OPS = {
    "pair": (2,), "pi1": (1,), "pi2": (1,),
    "union": (2,), "inter": (2,), "diff": (2,),
    "bigunion": (1,), "biginter": (1,), "pow": (1,), "prod": (2,),
    "id": (1,), "conv": (1, 3), "comp": (2, 5),
    "dom": (3,), "range": (3,), "image": (4,),
    "funs": (2,), "apply": (4,),
    "sum": (2,), "inl": (3,), "inr": (3,),
    "curry": (3,), "uncurry": (3,),
}

KEYWORDS = {"true", "false", "lam"}


# ---------------------------------------------------------------------------
# syntax trees

@dataclass(frozen=True)
class SetLit:
    elems: tuple


@dataclass(frozen=True)
class NumLit:
    n: int


@dataclass(frozen=True)
class BoolLit:
    b: bool


@dataclass(frozen=True)
class Name:
    ident: str


@dataclass(frozen=True)
class Call:
    op: str
    args: tuple


@dataclass(frozen=True)
class Lam:
    var: str
    src: "Expr"
    body: "Expr"
    dst: "Expr"


Expr = object


# ---------------------------------------------------------------------------
# lexer / parser

_PUNCT = {"{", "}", "(", ")", ",", ":"}


class _Parser:
    def __init__(self, text: str, line: int = 1):
        self.text = text
        self.line = line
        self.pos = 0
        self.depth = 0

    def error(self, msg, expected=()):
        raise ParseError(msg, self.line, self.pos + 1, expected)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t\r\n":
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        if self.pos >= len(self.text):
            return ""
        return self.text[self.pos]

    def at_end(self) -> bool:
        return self.peek() == ""

    def expect(self, token: str):
        self.skip_ws()
        if not self.text.startswith(token, self.pos):
            found = self.text[self.pos:self.pos + len(token)] or "end of input"
            self.error(f"expected {token!r}, found {found!r}", (token,))
        self.pos += len(token)

    def ident(self) -> str:
        self.skip_ws()
        start = self.pos
        while (self.pos < len(self.text)
               and (self.text[self.pos].isalnum() or self.text[self.pos] == "_")):
            self.pos += 1
        if self.pos == start or self.text[start].isdigit():
            self.error("expected an identifier")
        return self.text[start:self.pos]

    def integer(self) -> int:
        self.skip_ws()
        if self.peek() == "#":
            self.pos += 1
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def parse_expr(self) -> Expr:
        self.depth += 1
        if self.depth > MAX_NESTING:
            self.error("expression nesting too deep")
        try:
            ch = self.peek()
            if ch == "":
                self.error("unexpected end of input, expected an expression")
            if ch == "{":
                return self._set_literal()
            if ch == "#":
                return self._numeral()
            if ch.isalpha() or ch == "_":
                return self._ident_or_call()
            self.error(f"unexpected character {ch!r}")
        finally:
            self.depth -= 1

    def _set_literal(self) -> Expr:
        self.expect("{")
        elems = []
        if self.peek() == "}":
            self.pos += 1
            return SetLit(())
        while True:
            elems.append(self.parse_expr())
            ch = self.peek()
            if ch == ",":
                self.pos += 1
            elif ch == "}":
                self.pos += 1
                return SetLit(tuple(elems))
            else:
                self.error("expected ',' or '}' in set literal", (",", "}"))

    def _numeral(self) -> Expr:
        self.expect("#")
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected digits after '#'")
        return NumLit(int(self.text[start:self.pos]))

    def _ident_or_call(self) -> Expr:
        name = self.ident()
        if name == "true":
            return BoolLit(True)
        if name == "false":
            return BoolLit(False)
        if name == "lam":
            return self._lam()
        if self.peek() == "(" and name in OPS:
            self.pos += 1
            args = [self.parse_expr()]
            while self.peek() == ",":
                self.pos += 1
                args.append(self.parse_expr())
            self.expect(")")
            if len(args) not in OPS[name]:
                self.error(f"{name} takes {' or '.join(map(str, OPS[name]))} "
                           f"arguments, got {len(args)}")
            return Call(name, tuple(args))
        if self.peek() == "(":
            self.error(f"unknown operator {name!r}")
        return Name(name)

    def _lam(self) -> Expr:
        self.expect("(")
        var = self.ident()
        self.expect(":")
        src = self.parse_expr()
        self.skip_ws()
        self.expect("=>")
        body = self.parse_expr()
        self.expect(",")
        dst = self.parse_expr()
        self.expect(")")
        return Lam(var, src, body, dst)


def parse_expr(text: str, line: int = 1) -> Expr:
    """Parse a single expression; trailing input is an error."""
    p = _Parser(text, line)
    e = p.parse_expr()
    p.skip_ws()
    if not p.at_end():
        p.error("trailing input after expression")
    return e


# ---------------------------------------------------------------------------
# session and evaluation

@dataclass
class Config:
    max_card: int = kernel.DEFAULT_MAX_CARD
    depth: int = 32
    trace: bool = False
    fmt: str = "text"


@dataclass
class Session:
    bindings: Dict[str, HFSet] = field(default_factory=dict)
    hypotheses: Dict[str, obligations.Judgment] = field(default_factory=dict)
    rules: Tuple[obligations.Rule, ...] = field(
        default_factory=obligations.builtin_rules)
    config: Config = field(default_factory=Config)


def eval_expr(e: Expr, s: Session, local: Optional[Dict[str, HFSet]] = None
              ) -> HFSet:
    """Evaluate an expression to a canonical set."""
    cap = s.config.max_card
    if isinstance(e, SetLit):
        return kernel.from_elements(eval_expr(x, s, local) for x in e.elems)
    if isinstance(e, NumLit):
        return bridges.nat_encode(e.n, bound=cap).value
    if isinstance(e, BoolLit):
        return (canon.TRUE if e.b else canon.FALSE).value
    if isinstance(e, Name):
        if local and e.ident in local:
            return local[e.ident]
        got = s.bindings.get(e.ident)
        if got is None:
            raise UnboundVar(e.ident)
        return got
    if isinstance(e, Lam):
        src = eval_expr(e.src, s, local)
        dst = eval_expr(e.dst, s, local)
        outer = dict(local) if local else {}

        def body(x, _outer=outer, _e=e):
            inner = dict(_outer)
            inner[_e.var] = x
            return eval_expr(_e.body, s, inner)

        return funcs.lambda_(src, dst, body)
    if isinstance(e, Call):
        a = [eval_expr(x, s, local) for x in e.args]
        op = e.op
        if op == "pair":
            return kernel.kpair(a[0], a[1])
        if op == "pi1":
            return kernel.pi1(a[0])
        if op == "pi2":
            return kernel.pi2(a[0])
        if op == "union":
            return kernel.bin_union(a[0], a[1])
        if op == "inter":
            return kernel.bin_inter(a[0], a[1])
        if op == "diff":
            return kernel.diff(a[0], a[1])
        if op == "bigunion":
            return kernel.union_all(a[0])
        if op == "biginter":
            return kernel.inter_all(a[0])
        if op == "pow":
            return kernel.pow(a[0], limit=cap)
        if op == "prod":
            return kernel.prod(a[0], a[1], limit=cap)
        if op == "id":
            return relcalc.identity(a[0])
        if op == "conv":
            if len(a) != 3:
                raise HFSetError("conv needs explicit carriers to evaluate: "
                                 "conv(R, A, B)")
            return relcalc.converse(a[0], a[1], a[2])
        if op == "comp":
            if len(a) != 5:
                raise HFSetError("comp needs explicit carriers to evaluate: "
                                 "comp(S, R, A, B, C)")
            return relcalc.compose(a[0], a[1], a[2], a[3], a[4])
        if op == "dom":
            return relcalc.domain(a[0], a[1], a[2])
        if op == "range":
            return relcalc.range_(a[0], a[1], a[2])
        if op == "image":
            return relcalc.image(a[0], a[1], a[2], a[3])
        if op == "funs":
            return funcs.funs(a[0], a[1], limit=cap)
        if op == "apply":
            return funcs.fapply(a[0], a[1], a[2], a[3])
        if op == "sum":
            return canon.sum_set(a[0], a[1])
        if op == "inl":
            return canon.inl(a[0], a[1], a[2]).underlying
        if op == "inr":
            return canon.inr(a[0], a[1], a[2]).underlying
        if op == "curry":
            return iso.curry(a[0], a[1], a[2], limit=cap)
        if op == "uncurry":
            return iso.uncurry(a[0], a[1], a[2], limit=cap)
    raise HFSetError(f"cannot evaluate expression {e!r}")


def _mentions_hypothesis(e: Expr, s: Session) -> bool:
    if isinstance(e, Name):
        return e.ident in s.hypotheses
    if isinstance(e, SetLit):
        return any(_mentions_hypothesis(x, s) for x in e.elems)
    if isinstance(e, Call):
        return any(_mentions_hypothesis(x, s) for x in e.args)
    if isinstance(e, Lam):
        return any(_mentions_hypothesis(x, s) for x in (e.src, e.body, e.dst))
    return False


def to_relterm(e: Expr, s: Session) -> obligations.RelTerm:
    """Convert an expression into a symbolic relational term.

    The relational shapes id/conv/comp/lam stay symbolic so the discharge
    engine sees their structure; assumed names become variables; anything
    else evaluates to a literal.
    """
    if isinstance(e, Name) and e.ident in s.hypotheses:
        return obligations.Var(e.ident)
    if isinstance(e, Call):
        if e.op == "id":
            return obligations.Id(to_relterm(e.args[0], s))
        if e.op == "conv":
            if len(e.args) != 1:
                raise HFSetError("in symbolic terms write conv(R); the "
                                 "carriers come from the judgment")
            return obligations.Conv(to_relterm(e.args[0], s))
        if e.op == "comp":
            if len(e.args) != 2:
                raise HFSetError("in symbolic terms write comp(g, f); the "
                                 "carriers come from the judgment")
            return obligations.Comp(to_relterm(e.args[0], s),
                                    to_relterm(e.args[1], s))
    if isinstance(e, Lam):
        src = eval_expr(e.src, s)
        dst = eval_expr(e.dst, s)

        def body(x, _e=e):
            return eval_expr(_e.body, s, {_e.var: x})

        return obligations.Lambda(obligations.Lit(src), obligations.Lit(dst),
                                  body)
    if _mentions_hypothesis(e, s):
        raise HFSetError(
            "assumed names may only appear under id/conv/comp in symbolic "
            "terms")
    return obligations.Lit(eval_expr(e, s))


# ---------------------------------------------------------------------------
# commands

@dataclass
class Outcome:
    """What one command produced: text lines plus an exit status."""
    lines: List[str]
    status: int = 0  # 0 ok, 1 check/iso failure, 2 error

    def render(self) -> str:
        return "\n".join(self.lines)


def _json_line(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True)


def _split_command(line: str) -> Tuple[str, str]:
    stripped = line.strip()
    if not stripped or stripped.startswith("#"):
        return "", ""
    parts = stripped.split(None, 1)
    return parts[0], parts[1] if len(parts) > 1 else ""


def run_command(line: str, s: Session) -> Optional[Outcome]:
    """Execute one REPL/script command; None for blank and comment lines."""
    cmd, rest = _split_command(line)
    if not cmd:
        return None
    try:
        if cmd == "let":
            return _cmd_let(rest, s)
        if cmd == "assume":
            return _cmd_assume(rest, s)
        if cmd == "eval":
            return _cmd_eval(rest, s)
        if cmd == "check":
            return _cmd_check(rest, s)
        if cmd == "iso":
            return _cmd_iso(rest, s)
        if cmd == "decode":
            return _cmd_decode(rest, s)
        if cmd == "simp":
            return _cmd_simp(rest, s)
        raise HFSetError(f"unknown command {cmd!r}")
    except HFSetError as err:
        if s.config.fmt == "json":
            return Outcome([_json_line({"cmd": cmd, "ok": False,
                                        "error": str(err)})], 2)
        return Outcome([f"error: {err}"], 2)


def _cmd_let(rest: str, s: Session) -> Outcome:
    p = _Parser(rest)
    name = p.ident()
    p.expect("=")
    value = eval_expr(p.parse_expr(), s)
    p.skip_ws()
    if not p.at_end():
        p.error("trailing input after let")
    s.bindings[name] = value
    text = kernel.serialize(value)
    if len(text) > 200:
        text = f"<set card={kernel.card(value)}>"
    if s.config.fmt == "json":
        return Outcome([_json_line({"cmd": "let", "ok": True, "name": name,
                                    "value": text})])
    return Outcome([f"{name} = {text}"])


_KINDS = {"rel": obligations.REL, "pfun": obligations.PFUNC,
          "fun": obligations.FUNC}


def _cmd_assume(rest: str, s: Session) -> Outcome:
    p = _Parser(rest)
    name = p.ident()
    p.expect(":")
    kind_name = p.ident()
    if kind_name not in _KINDS:
        raise HFSetError(f"assume kind must be rel, pfun or fun, "
                         f"got {kind_name!r}")
    A = eval_expr(p.parse_expr(), s)
    B = eval_expr(p.parse_expr(), s)
    p.skip_ws()
    if not p.at_end():
        p.error("trailing input after assume")
    j = obligations.Judgment(_KINDS[kind_name], obligations.Var(name),
                             obligations.Lit(A), obligations.Lit(B))
    s.hypotheses[name] = j
    text = obligations.fmt_judgment(j)
    if s.config.fmt == "json":
        return Outcome([_json_line({"cmd": "assume", "ok": True,
                                    "judgment": text})])
    return Outcome([f"assumed {text}"])


def _cmd_eval(rest: str, s: Session) -> Outcome:
    value = eval_expr(parse_expr(rest), s)
    text = kernel.serialize(value)
    if s.config.fmt == "json":
        return Outcome([_json_line({"cmd": "eval", "ok": True,
                                    "result": text})])
    return Outcome([text])


def _cmd_check(rest: str, s: Session) -> Outcome:
    p = _Parser(rest)
    kind_name = p.ident()
    if kind_name not in _KINDS:
        raise HFSetError(f"check kind must be rel, pfun or fun, "
                         f"got {kind_name!r}")
    term = to_relterm(p.parse_expr(), s)
    p.expect(":")
    A = eval_expr(p.parse_expr(), s)
    p.skip_ws()
    p.expect("->")
    B = eval_expr(p.parse_expr(), s)
    p.skip_ws()
    if not p.at_end():
        p.error("trailing input after check")
    goal = obligations.Judgment(_KINDS[kind_name], term,
                                obligations.Lit(A), obligations.Lit(B))
    result = obligations.discharge(goal, tuple(s.hypotheses.values()),
                                   s.rules, depth_limit=s.config.depth)
    if isinstance(result, obligations.Failure):
        frontier = obligations.render_failure(result)
        if s.config.fmt == "json":
            return Outcome([_json_line({
                "cmd": "check", "ok": False,
                "goal": obligations.fmt_judgment(goal),
                "frontier": [obligations.fmt_judgment(og.goal)
                             for og in result.frontier],
                "reasons": [og.reason for og in result.frontier]})], 1)
        return Outcome([f"failed: {obligations.fmt_judgment(goal)}",
                        frontier], 1)
    lines = [f"ok: {obligations.fmt_judgment(goal)}"]
    if s.config.trace:
        lines.append(obligations.render_trace(result))
    if s.config.fmt == "json":
        return Outcome([_json_line({
            "cmd": "check", "ok": True,
            "goal": obligations.fmt_judgment(goal),
            "trace": obligations.render_trace(result)})])
    return Outcome(lines)


def _cmd_iso(rest: str, s: Session) -> Outcome:
    p = _Parser(rest)
    mode = p.ident()
    if mode == "search":
        A = eval_expr(p.parse_expr(), s)
        B = eval_expr(p.parse_expr(), s)
        w = iso.find_bijection(A, B)
        if w is None:
            payload = {"cmd": "iso", "mode": "search", "ok": False,
                       "src_card": kernel.card(A), "dst_card": kernel.card(B)}
            if s.config.fmt == "json":
                return Outcome([_json_line(payload)], 1)
            return Outcome([f"no bijection: |A| = {kernel.card(A)}, "
                            f"|B| = {kernel.card(B)}"], 1)
        if s.config.fmt == "json":
            return Outcome([_json_line({"cmd": "iso", "mode": "search",
                                        "ok": True,
                                        "points": kernel.card(A)})])
        return Outcome([f"iso: ok ({kernel.card(A)} points)"])
    if mode == "csb":
        f = eval_expr(p.parse_expr(), s)
        g = eval_expr(p.parse_expr(), s)
        A = eval_expr(p.parse_expr(), s)
        B = eval_expr(p.parse_expr(), s)
        stable = iso.stable_set(f, g, A, B)
        w = iso.csb(f, g, A, B)
        okay = w.validate()
        if s.config.fmt == "json":
            return Outcome([_json_line({
                "cmd": "iso", "mode": "csb", "ok": okay,
                "stable": kernel.card(stable),
                "points": kernel.card(A)})], 0 if okay else 1)
        return Outcome([f"bijection: {'ok' if okay else 'invalid'} "
                        f"({kernel.card(A)} points, stable {kernel.card(stable)})"],
                       0 if okay else 1)
    if mode == "curry":
        sizes = [p.integer() for _ in range(3)]
        carriers = [bridges.nat_encode(n, bound=s.config.max_card).value
                    for n in sizes]
        report = iso.verify_curry_iso(*carriers, limit=s.config.max_card)
        okay = report.left_inv and report.right_inv and report.witness is not None
        if s.config.fmt == "json":
            return Outcome([_json_line({
                "cmd": "iso", "mode": "curry", "ok": okay,
                "left_inv": report.left_inv, "right_inv": report.right_inv,
                "points": report.points})], 0 if okay else 1)

        def flag(b):
            return "ok" if b else "FAIL"

        return Outcome([f"left_inv: {flag(report.left_inv)}, "
                        f"right_inv: {flag(report.right_inv)}, "
                        f"bijection: {flag(report.witness is not None)} "
                        f"({report.points} points)"], 0 if okay else 1)
    raise HFSetError(f"iso mode must be search, csb or curry, got {mode!r}")


def _cmd_decode(rest: str, s: Session) -> Outcome:
    p = _Parser(rest)
    what = p.ident()
    value = eval_expr(p.parse_expr(), s)
    if what == "nat":
        shown = str(bridges.nat_decode(value, bound=s.config.max_card))
    elif what == "bool":
        shown = "true" if bridges.bool_decode(value) else "false"
    elif what == "int":
        parts = kernel.unpair(value)
        if parts is None:
            raise HFSetError("decode int expects a pair of numerals")
        a = bridges.nat_decode(parts[0], bound=s.config.max_card)
        b = bridges.nat_decode(parts[1], bound=s.config.max_card)
        shown = str(a - b)
    else:
        raise HFSetError(f"decode expects nat, int or bool, got {what!r}")
    if s.config.fmt == "json":
        return Outcome([_json_line({"cmd": "decode", "ok": True,
                                    "kind": what, "value": shown})])
    return Outcome([shown])


def _cmd_simp(rest: str, s: Session) -> Outcome:
    term = to_relterm(parse_expr(rest), s)
    normal = obligations.simp_normalize(term)
    text = obligations.fmt_term(normal)
    if s.config.fmt == "json":
        return Outcome([_json_line({"cmd": "simp", "ok": True,
                                    "normal": text})])
    return Outcome([text])


# ---------------------------------------------------------------------------
# REPL and batch

def repl(s: Session, stdin=None, stdout=None) -> int:
    """Line-oriented loop; prints a prompt, executes, repeats until
    :quit or end of input."""
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    for line in _prompted_lines(stdin, stdout):
        if line.strip() == ":quit":
            print("", file=stdout)
            break
        out = run_command(line, s)
        if out is not None and out.lines:
            print(out.render(), file=stdout)
    return 0


def _prompted_lines(stdin, stdout):
    while True:
        print("hfset> ", end="", file=stdout, flush=True)
        line = stdin.readline()
        if not line:
            print("", file=stdout)
            return
        yield line.rstrip("\n")


def cmd_batch(path: str, s: Session, stdout=None) -> int:
    """Run a script, one command per line; stop at the first failing
    command.  Exit code is the number of failed commands (capped at 125);
    unreadable scripts exit 3."""
    stdout = stdout or sys.stdout
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as err:
        print(f"error: cannot read {path}: {err}", file=sys.stderr)
        return 3
    failed = 0
    for num, line in enumerate(lines, 1):
        out = run_command(line, s)
        if out is None:
            continue
        if out.lines:
            print(out.render(), file=stdout)
        if out.status != 0:
            print(f"{path}:{num}: command failed", file=stdout)
            failed += 1
            break
    return min(failed, 125)


# ---------------------------------------------------------------------------
# entry point

def _add_common_flags(ap, suppress=False):
    d = argparse.SUPPRESS if suppress else None
    ap.add_argument("--max-card", type=int,
                    default=d if suppress else kernel.DEFAULT_MAX_CARD,
                    help="enumeration limit for pow/prod/funs")
    ap.add_argument("--depth", type=int, default=d if suppress else 32,
                    help="discharge search depth")
    ap.add_argument("--trace", action="store_true",
                    default=d if suppress else False,
                    help="print proof traces for successful checks")
    ap.add_argument("--format", choices=("text", "json"),
                    default=d if suppress else "text",
                    help="output format")


def _build_argparser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hfset",
        description="hereditarily finite set engine: evaluator, obligation "
                    "checker and isomorphism tools")
    _add_common_flags(ap)
    sub = ap.add_subparsers(dest="command", required=True)
    p_eval = sub.add_parser("eval", help="evaluate one expression")
    p_eval.add_argument("-e", "--expr", required=True)
    p_repl = sub.add_parser("repl", help="interactive session")
    p_run = sub.add_parser("run", help="run a script file")
    p_run.add_argument("script")
    p_check = sub.add_parser("check", help="discharge one judgment")
    p_check.add_argument("goal", nargs="+",
                         help="e.g. 'fun id({{}}) : {{}} -> {{}}'")
    p_iso = sub.add_parser("iso", help="isomorphism tools")
    p_iso.add_argument("args", nargs="+",
                       help="search A B | csb f g A B | curry nA nB nC")
    for p in (p_eval, p_repl, p_run, p_check, p_iso):
        _add_common_flags(p, suppress=True)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ns = _build_argparser().parse_args(argv)
    session = Session(config=Config(max_card=ns.max_card, depth=ns.depth,
                                    trace=ns.trace, fmt=ns.format))
    if ns.command == "repl":
        return repl(session)
    if ns.command == "run":
        return cmd_batch(ns.script, session)
    if ns.command == "eval":
        out = run_command(f"eval {ns.expr}", session)
    elif ns.command == "check":
        out = run_command("check " + " ".join(ns.goal), session)
    else:
        out = run_command("iso " + " ".join(ns.args), session)
    if out is None:
        return 0
    if out.lines:
        print(out.render())
    return out.status


if __name__ == "__main__":
    sys.exit(main())
