"""Backward-chaining discharge of relation/function well-formedness goals.

Goals are judgments `rel R : A -> B` (R is a relation between A and B),
`pfun f : A -> B` (partial function) and `fun f : A -> B` (total function)
over symbolic relational terms.  A tagged rule base is searched backwards
from the goal: hypotheses first, then rules in registration order with
backtracking, and finally, for fully concrete goals, a ground decision by
the finite deciders.  Successful searches return a replayable proof trace;
failed ones return the frontier of open subgoals rather than a bare
boolean, so the caller has something actionable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, Optional, Sequence, Tuple, Union

from . import funcs, kernel, relcalc
from .errors import UnboundVar
from .kernel import HFSet, kpair, mem, unpair

# judgment kinds and the rule tags that discharge them
REL, PFUNC, FUNC = "rel", "pfun", "fun"
TAG_FOR_KIND = {REL: "zrel", PFUNC: "zpfun", FUNC: "zfun"}


# ---------------------------------------------------------------------------
# terms

@dataclass(frozen=True)
class Lit:
    """A concrete set."""
    value: HFSet


@dataclass(frozen=True)
class Var:
    """A named unknown bound by the hypothesis environment."""
    name: str


@dataclass(frozen=True)
class Meta:
    """A rule metavariable; only appears in rule patterns and during search."""
    name: str


@dataclass(frozen=True)
class Id:
    """Identity relation on a carrier term."""
    carrier: "RelTerm"


@dataclass(frozen=True)
class Conv:
    """Converse of a relational term."""
    term: "RelTerm"


@dataclass(frozen=True)
class Comp:
    """Composition outer o inner (inner applies first)."""
    outer: "RelTerm"
    inner: "RelTerm"


@dataclass(frozen=True)
class Lambda:
    """Graph of a host map over carrier terms; body None is a pattern
    wildcard matching any body."""
    src: "RelTerm"
    dst: "RelTerm"
    body: Optional[Callable[[HFSet], HFSet]]


RelTerm = Union[Lit, Var, Meta, Id, Conv, Comp, Lambda]


@dataclass(frozen=True)
class Judgment:
    """A claim `kind term : src -> dst`."""
    kind: str
    term: RelTerm
    src: RelTerm
    dst: RelTerm


@dataclass(frozen=True)
class Rule:
    """A backward-chaining rule; the tag must discharge the conclusion kind."""
    name: str
    tag: str
    premises: Tuple[Judgment, ...]
    conclusion: Judgment
    side: Optional[Callable[[Judgment], bool]] = None

    def __post_init__(self):
        if TAG_FOR_KIND[self.conclusion.kind] != self.tag:
            raise ValueError(f"rule {self.name}: tag {self.tag} cannot "
                             f"conclude a {self.conclusion.kind} goal")


# ---------------------------------------------------------------------------
# traces and failures

@dataclass(frozen=True)
class ByHypothesis:
    goal: Judgment


@dataclass(frozen=True)
class GroundDecision:
    goal: Judgment


@dataclass(frozen=True)
class RuleApp:
    rule: str
    goal: Judgment
    children: Tuple["ProofTrace", ...]


ProofTrace = Union[ByHypothesis, GroundDecision, RuleApp]

NO_RULE = "no_rule"
DEPTH_EXCEEDED = "depth_exceeded"
GROUND_FALSE = "ground_false"


@dataclass(frozen=True)
class OpenGoal:
    goal: Judgment
    reason: str


@dataclass(frozen=True)
class Failure:
    """The frontier of subgoals the search could not close."""
    frontier: Tuple[OpenGoal, ...]

    @property
    def depth_exceeded(self) -> bool:
        return any(g.reason == DEPTH_EXCEEDED for g in self.frontier)


# ---------------------------------------------------------------------------
# substitution and unification

def _walk(t: RelTerm, subst: dict) -> RelTerm:
    while isinstance(t, Meta):
        bound = subst.get(t.name)
        if bound is None:
            return t
        t = bound
    return t


def subst_term(t: RelTerm, subst: dict) -> RelTerm:
    t = _walk(t, subst)
    if isinstance(t, Id):
        return Id(subst_term(t.carrier, subst))
    if isinstance(t, Conv):
        return Conv(subst_term(t.term, subst))
    if isinstance(t, Comp):
        return Comp(subst_term(t.outer, subst), subst_term(t.inner, subst))
    if isinstance(t, Lambda):
        return Lambda(subst_term(t.src, subst), subst_term(t.dst, subst),
                      t.body)
    return t


def subst_judgment(j: Judgment, subst: dict) -> Judgment:
    return Judgment(j.kind, subst_term(j.term, subst),
                    subst_term(j.src, subst), subst_term(j.dst, subst))


def _occurs(name: str, t: RelTerm, subst: dict) -> bool:
    t = _walk(t, subst)
    if isinstance(t, Meta):
        return t.name == name
    if isinstance(t, Id):
        return _occurs(name, t.carrier, subst)
    if isinstance(t, Conv):
        return _occurs(name, t.term, subst)
    if isinstance(t, Comp):
        return _occurs(name, t.outer, subst) or _occurs(name, t.inner, subst)
    if isinstance(t, Lambda):
        return _occurs(name, t.src, subst) or _occurs(name, t.dst, subst)
    return False


def unify_term(a: RelTerm, b: RelTerm, subst: dict) -> Optional[dict]:
    a, b = _walk(a, subst), _walk(b, subst)
    if isinstance(a, Meta):
        if isinstance(b, Meta) and b.name == a.name:
            return subst
        if _occurs(a.name, b, subst):
            return None
        subst[a.name] = b
        return subst
    if isinstance(b, Meta):
        if _occurs(b.name, a, subst):
            return None
        subst[b.name] = a
        return subst
    if isinstance(a, Lit) and isinstance(b, Lit):
        return subst if a.value is b.value else None
    if isinstance(a, Var) and isinstance(b, Var):
        return subst if a.name == b.name else None
    if isinstance(a, Id) and isinstance(b, Id):
        return unify_term(a.carrier, b.carrier, subst)
    if isinstance(a, Conv) and isinstance(b, Conv):
        return unify_term(a.term, b.term, subst)
    if isinstance(a, Comp) and isinstance(b, Comp):
        subst = unify_term(a.outer, b.outer, subst)
        if subst is None:
            return None
        return unify_term(a.inner, b.inner, subst)
    if isinstance(a, Lambda) and isinstance(b, Lambda):
        subst = unify_term(a.src, b.src, subst)
        if subst is None:
            return None
        subst = unify_term(a.dst, b.dst, subst)
        if subst is None:
            return None
        if a.body is None or b.body is None or a.body is b.body:
            return subst
        return None
    return None


def unify_judgment(a: Judgment, b: Judgment, subst: dict) -> Optional[dict]:
    if a.kind != b.kind:
        return None
    for pa, pb in ((a.term, b.term), (a.src, b.src), (a.dst, b.dst)):
        subst = unify_term(pa, pb, subst)
        if subst is None:
            return None
    return subst


def is_ground_term(t: RelTerm) -> bool:
    if isinstance(t, (Var, Meta)):
        return False
    if isinstance(t, Lit):
        return True
    if isinstance(t, Id):
        return is_ground_term(t.carrier)
    if isinstance(t, Conv):
        return is_ground_term(t.term)
    if isinstance(t, Comp):
        return is_ground_term(t.outer) and is_ground_term(t.inner)
    if isinstance(t, Lambda):
        return (t.body is not None and is_ground_term(t.src)
                and is_ground_term(t.dst))
    return False


def is_ground_judgment(j: Judgment) -> bool:
    return (is_ground_term(j.term) and is_ground_term(j.src)
            and is_ground_term(j.dst))


# ---------------------------------------------------------------------------
# denotation

def _flip_pairs(R: HFSet) -> HFSet:
    return kernel.from_elements(
        kpair(p[1], p[0]) for z in R if (p := unpair(z)) is not None)


def _join_pairs(S: HFSet, R: HFSet) -> HFSet:
    adj: dict = {}
    for z in R:
        p = unpair(z)
        if p is not None:
            adj.setdefault(p[1].intern_id, []).append(p[0])
    out = {}
    for z in S:
        p = unpair(z)
        if p is None:
            continue
        y, c = p
        for x in adj.get(y.intern_id, ()):
            q = kpair(x, c)
            out[q.intern_id] = q
    return kernel.from_elements(out.values())


def eval_term(t: RelTerm, env: Optional[Dict[str, HFSet]] = None) -> HFSet:
    """Denotation of a symbolic term.

    Converse and composition are evaluated carrier-free (flip the pairs,
    join on the middle component); on actual relations this coincides with
    the carrier-relative operators.
    """
    env = env or {}
    if isinstance(t, Lit):
        return t.value
    if isinstance(t, Var):
        got = env.get(t.name)
        if got is None:
            raise UnboundVar(t.name)
        return got
    if isinstance(t, Meta):
        raise UnboundVar(f"?{t.name}")
    if isinstance(t, Id):
        return relcalc.identity(eval_term(t.carrier, env))
    if isinstance(t, Conv):
        return _flip_pairs(eval_term(t.term, env))
    if isinstance(t, Comp):
        return _join_pairs(eval_term(t.outer, env), eval_term(t.inner, env))
    if isinstance(t, Lambda):
        if t.body is None:
            raise ValueError("pattern lambda has no body to evaluate")
        return funcs.lambda_(eval_term(t.src, env), eval_term(t.dst, env),
                             t.body)
    raise TypeError(f"not a relational term: {t!r}")


def _decide_ground(j: Judgment) -> bool:
    value = eval_term(j.term)
    A, B = eval_term(j.src), eval_term(j.dst)
    if j.kind == REL:
        return relcalc.is_relation(value, A, B)
    if j.kind == PFUNC:
        return relcalc.is_pfunc(value, A, B)
    return relcalc.is_func(value, A, B)


# ---------------------------------------------------------------------------
# built-in rules

def _m(name: str) -> Meta:
    return Meta(name)


def _lambda_totality(goal: Judgment) -> bool:
    t = goal.term
    if not isinstance(t, Lambda) or t.body is None:
        return False
    if not (is_ground_term(t.src) and is_ground_term(t.dst)):
        return False
    A, B = eval_term(t.src), eval_term(t.dst)
    return all(mem(t.body(x), B) for x in A)


def builtin_rules() -> Tuple[Rule, ...]:
    """The default rule base, mirroring the closure lemmas of the calculus:
    structural rules first, then the weakening chain fun -> pfun -> rel."""
    R, S, F, G = _m("R"), _m("S"), _m("F"), _m("G")
    A, B, C = _m("A"), _m("B"), _m("C")
    return (
        Rule("conv_rel", "zrel",
             (Judgment(REL, R, A, B),),
             Judgment(REL, Conv(R), B, A)),
        Rule("comp_rel", "zrel",
             (Judgment(REL, R, A, B), Judgment(REL, S, B, C)),
             Judgment(REL, Comp(S, R), A, C)),
        Rule("id_pfunc", "zpfun", (),
             Judgment(PFUNC, Id(A), A, A)),
        Rule("lambda_pfunc", "zpfun", (),
             Judgment(PFUNC, Lambda(A, B, None), A, B)),
        Rule("id_func", "zfun", (),
             Judgment(FUNC, Id(A), A, A)),
        Rule("comp_func", "zfun",
             (Judgment(FUNC, F, A, B), Judgment(FUNC, G, B, C)),
             Judgment(FUNC, Comp(G, F), A, C)),
        Rule("lambda_func", "zfun", (),
             Judgment(FUNC, Lambda(A, B, None), A, B),
             side=_lambda_totality),
        Rule("func_pfunc", "zpfun",
             (Judgment(FUNC, F, A, B),),
             Judgment(PFUNC, F, A, B)),
        Rule("pfunc_rel", "zrel",
             (Judgment(PFUNC, R, A, B),),
             Judgment(REL, R, A, B)),
    )


def with_rule(rules: Sequence[Rule], rule: Rule,
              index: Optional[int] = None) -> Tuple[Rule, ...]:
    """Copy-on-extend registration; existing rule tuples are never mutated."""
    rules = tuple(rules)
    if index is None:
        return rules + (rule,)
    return rules[:index] + (rule,) + rules[index:]


# ---------------------------------------------------------------------------
# search

_FRESH = itertools.count()


def _freshen(rule: Rule) -> Rule:
    names: set = set()

    def collect(t):
        t_ = t
        if isinstance(t_, Meta):
            names.add(t_.name)
        elif isinstance(t_, Id):
            collect(t_.carrier)
        elif isinstance(t_, Conv):
            collect(t_.term)
        elif isinstance(t_, Comp):
            collect(t_.outer)
            collect(t_.inner)
        elif isinstance(t_, Lambda):
            collect(t_.src)
            collect(t_.dst)

    for j in rule.premises + (rule.conclusion,):
        collect(j.term)
        collect(j.src)
        collect(j.dst)
    stamp = next(_FRESH)
    ren = {n: Meta(f"{n}.{stamp}") for n in names}
    return Rule(rule.name, rule.tag,
                tuple(subst_judgment(j, ren) for j in rule.premises),
                subst_judgment(rule.conclusion, ren), rule.side)


def _solve(goal: Judgment, hyps, rules, depth: int, subst: dict,
           failures: list) -> Iterator[Tuple[ProofTrace, dict]]:
    goal_now = subst_judgment(goal, subst)
    produced = False
    # local hypotheses first
    for h in hyps:
        s2 = unify_judgment(goal_now, h, dict(subst))
        if s2 is not None:
            produced = True
            yield ByHypothesis(subst_judgment(goal_now, s2)), s2
    # a fully concrete literal is decided outright; the deciders are
    # monotone along the weakening chain, so the verdict is final and
    # trying rules would only rediscover it
    if isinstance(goal_now.term, Lit) and is_ground_judgment(goal_now):
        if _decide_ground(goal_now):
            yield GroundDecision(goal_now), subst
        elif not produced:
            failures.append(OpenGoal(goal_now, GROUND_FALSE))
        return
    # rules, in registration order, backtracking across choices
    if depth <= 0:
        failures.append(OpenGoal(goal_now, DEPTH_EXCEEDED))
    else:
        for rule in rules:
            if rule.tag != TAG_FOR_KIND[goal_now.kind]:
                continue
            fresh = _freshen(rule)
            s2 = unify_judgment(fresh.conclusion, goal_now, dict(subst))
            if s2 is None:
                continue
            if rule.side is not None and not rule.side(
                    subst_judgment(goal_now, s2)):
                continue
            for child_traces, s3 in _solve_seq(fresh.premises, hyps, rules,
                                               depth - 1, s2, failures):
                produced = True
                yield (RuleApp(rule.name, subst_judgment(goal_now, s3),
                               tuple(child_traces)), s3)
    # last resort for structured but concrete goals: evaluate and decide
    if not produced:
        if is_ground_judgment(goal_now):
            if _decide_ground(goal_now):
                yield GroundDecision(goal_now), subst
            else:
                failures.append(OpenGoal(goal_now, GROUND_FALSE))
        else:
            failures.append(OpenGoal(goal_now, NO_RULE))


def _solve_seq(premises, hyps, rules, depth: int, subst: dict,
               failures: list):
    if not premises:
        yield [], subst
        return
    head, tail = premises[0], premises[1:]
    for tr, s2 in _solve(head, hyps, rules, depth, subst, failures):
        for trs, s3 in _solve_seq(tail, hyps, rules, depth, s2, failures):
            yield [tr] + trs, s3


def discharge(goal: Judgment, hyps: Sequence[Judgment] = (),
              rules: Optional[Sequence[Rule]] = None,
              depth_limit: int = 32) -> Union[ProofTrace, Failure]:
    """Prove the goal from the hypotheses and rule base.

    Returns the first proof trace found (search order is deterministic:
    hypotheses, then rules in registration order).  On failure returns the
    deduplicated frontier of open subgoals, with depth exhaustion
    distinguished from plain no-rule-applies.
    """
    if depth_limit < 1:
        raise ValueError("depth_limit must be at least 1")
    if rules is None:
        rules = builtin_rules()
    failures: list = []
    for trace, _ in _solve(goal, tuple(hyps), tuple(rules), depth_limit,
                           {}, failures):
        return trace
    seen = set()
    frontier = []
    for og in failures:
        if og not in seen:
            seen.add(og)
            frontier.append(og)
    return Failure(tuple(frontier))


# ---------------------------------------------------------------------------
# replay

def replay(trace: ProofTrace, hyps: Sequence[Judgment] = (),
           rules: Optional[Sequence[Rule]] = None) -> bool:
    """Re-verify a trace: every node must be a valid derivation step."""
    if rules is None:
        rules = builtin_rules()
    by_name = {r.name: r for r in rules}
    if isinstance(trace, ByHypothesis):
        return trace.goal in tuple(hyps)
    if isinstance(trace, GroundDecision):
        return is_ground_judgment(trace.goal) and _decide_ground(trace.goal)
    if isinstance(trace, RuleApp):
        rule = by_name.get(trace.rule)
        if rule is None or len(rule.premises) != len(trace.children):
            return False
        fresh = _freshen(rule)
        subst = unify_judgment(fresh.conclusion, trace.goal, {})
        if subst is None:
            return False
        for pat, child in zip(fresh.premises, trace.children):
            subst = unify_judgment(subst_judgment(pat, subst),
                                   child.goal, subst)
            if subst is None:
                return False
        if rule.side is not None and not rule.side(trace.goal):
            return False
        return all(replay(c, hyps, rules) for c in trace.children)
    return False


# ---------------------------------------------------------------------------
# normalization

def simp_normalize(t: RelTerm) -> RelTerm:
    """Oriented rewriting to a normal form: double converse cancels,
    converse distributes over composition (reversing it), converse of an
    identity is the identity, identities cancel under composition, and
    composition reassociates to the right.  Terminates: each rule decreases
    a weight in which converse doubles its argument."""
    if isinstance(t, Id):
        return Id(simp_normalize(t.carrier))
    if isinstance(t, Lambda):
        return Lambda(simp_normalize(t.src), simp_normalize(t.dst), t.body)
    if isinstance(t, Conv):
        u = simp_normalize(t.term)
        if isinstance(u, Conv):
            return u.term
        if isinstance(u, Comp):
            return simp_normalize(Comp(Conv(u.inner), Conv(u.outer)))
        if isinstance(u, Id):
            return u
        return Conv(u)
    if isinstance(t, Comp):
        g = simp_normalize(t.outer)
        f = simp_normalize(t.inner)
        if isinstance(g, Id):
            return f
        if isinstance(f, Id):
            return g
        if isinstance(g, Comp):
            return simp_normalize(Comp(g.outer, Comp(g.inner, f)))
        return Comp(g, f)
    return t


# ---------------------------------------------------------------------------
# rendering

def fmt_term(t: RelTerm) -> str:
    if isinstance(t, Lit):
        if kernel.card(t.value) <= 16 and kernel.rank_below(t.value, 6):
            return kernel.serialize(t.value)
        return f"<set card={kernel.card(t.value)}>"
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Meta):
        return f"?{t.name}"
    if isinstance(t, Id):
        return f"id({fmt_term(t.carrier)})"
    if isinstance(t, Conv):
        return f"conv({fmt_term(t.term)})"
    if isinstance(t, Comp):
        return f"comp({fmt_term(t.outer)}, {fmt_term(t.inner)})"
    if isinstance(t, Lambda):
        return f"lam({fmt_term(t.src)} -> {fmt_term(t.dst)})"
    return repr(t)


def fmt_judgment(j: Judgment) -> str:
    return f"{j.kind} {fmt_term(j.term)} : {fmt_term(j.src)} -> {fmt_term(j.dst)}"


def render_trace(trace: ProofTrace, indent: int = 0) -> str:
    """Indented text rendering, one rule-name(goal) line per node; stable
    across runs for golden tests."""
    pad = "  " * indent
    if isinstance(trace, ByHypothesis):
        return f"{pad}hypothesis({fmt_judgment(trace.goal)})"
    if isinstance(trace, GroundDecision):
        return f"{pad}ground({fmt_judgment(trace.goal)})"
    lines = [f"{pad}{trace.rule}({fmt_judgment(trace.goal)})"]
    lines.extend(render_trace(c, indent + 1) for c in trace.children)
    return "\n".join(lines)


def render_failure(fail: Failure) -> str:
    """One open subgoal per line with its reason."""
    if not fail.frontier:
        return "no open subgoals recorded"
    return "\n".join(f"open[{og.reason}]({fmt_judgment(og.goal)})"
                     for og in fail.frontier)
