"""Knuth-Bendix completion: inference steps, run states and engines.

Three engines share one inference kernel:

* ``run_kbf`` -- classic completion for finite runs; collapse may use any
  rule of the remaining system.
* ``run_kbg`` -- completion of ground systems; no deduction is needed and
  every run terminates.
* ``run_kbi`` -- completion sound for infinite runs; collapse is only
  allowed when the collapsed left-hand side properly encompasses the
  left-hand side of the rule used.

Every state change is an :class:`Inference`; a run's trace can be printed
and replayed step by step, with all side conditions re-checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .critical_pairs import critical_pairs, prime_critical_pairs
from .orders import OrderSpec
from .rewriting import (StepReport, conversion_oracle, joinable, normalize,
                        rewrite_step)
from .terms import (Equation, Position, Rule, Term, apply_subst,
                    canonical_pair, match,
                    pair_variants, equation_variants, positions,
                    properly_encompasses, replace_at, size, subterm_at,
                    variables)


class SideConditionError(Exception):
    """An inference step whose side condition does not hold."""


@dataclass
class RunState:
    """Current equations and rules of a completion run.

    ``e_union`` accumulates every equation that was ever present in the
    equation list; fairness is judged against it.
    """

    E: list[Equation]
    R: list[Rule]
    e_union: list[Equation] = field(default_factory=list)

    @classmethod
    def start(cls, eqs: Sequence[Equation],
              rules: Sequence[Rule] = ()) -> "RunState":
        return cls(list(eqs), list(rules), list(eqs))

    def copy(self) -> "RunState":
        return RunState(list(self.E), list(self.R), list(self.e_union))


@dataclass(frozen=True)
class Inference:
    """One completion inference.

    ``ref`` names the rewrite rule or equation used by simplify, compose
    and collapse: ``('rule', k)`` or ``('eq', j)`` with indices into the
    current run state; ``ref_rev`` uses an equation right-to-left.
    """

    kind: str                      # orient, delete, deduce, simplify,
                                   # compose, collapse
    equation: Optional[Equation] = None
    reverse: bool = False          # orient the equation right-to-left
    side: Optional[str] = None     # simplify: 'lhs' or 'rhs'
    pos: Optional[Position] = None
    target: Optional[int] = None   # compose/collapse: rule index
    ref: Optional[tuple[str, int]] = None
    ref_rev: bool = False


def is_linear(t: Term) -> bool:
    names = []

    def walk(u):
        if hasattr(u, "name"):
            names.append(u.name)
        else:
            for a in u.args:
                walk(a)

    walk(t)
    return len(names) == len(set(names))


def _find_equation(state: RunState, eq: Equation) -> int:
    for i, e in enumerate(state.E):
        if e == eq:
            return i
    raise SideConditionError("equation %s not present" % eq)


def _record_equation(state: RunState, eq: Equation):
    state.E.append(eq)
    state.e_union.append(eq)


def _check_rule_index(state: RunState, k) -> Rule:
    if k is None or not 0 <= k < len(state.R):
        raise SideConditionError("no rule #%s" % k)
    return state.R[k]


def _rewrite_with_ref(state: RunState, term: Term, pos: Position,
                      ref, ref_rev: bool, order: OrderSpec,
                      *, exclude_rule: Optional[int] = None,
                      allow_equations: bool = False,
                      encompass: bool = False) -> Term:
    """Apply the referenced rule or oriented equation instance at ``pos``.

    ``encompass`` additionally demands that the whole ``term`` properly
    encompasses the (uninstantiated) left-hand side used.
    """
    if ref is None:
        raise SideConditionError("missing rule reference")
    space, j = ref
    if space == "rule":
        if j == exclude_rule:
            raise SideConditionError("rule may not rewrite with itself")
        rule = _check_rule_index(state, j)
        lhs, rhs = rule.lhs, rule.rhs
        if ref_rev:
            raise SideConditionError("rules apply left-to-right only")
    elif space == "eq":
        if not allow_equations:
            raise SideConditionError(
                "equations cannot be used for rewriting in this calculus")
        if not 0 <= j < len(state.E):
            raise SideConditionError("no equation #%s" % j)
        eq = state.E[j]
        lhs, rhs = (eq.rhs, eq.lhs) if ref_rev else (eq.lhs, eq.rhs)
    else:
        raise SideConditionError("bad reference %r" % (ref,))
    sub = subterm_at(term, pos)
    sigma = match(lhs, sub)
    if sigma is None:
        raise SideConditionError(
            "%s does not match %s at position %r" % (lhs, term, pos))
    if space == "eq":
        lt, rt = apply_subst(sigma, lhs), apply_subst(sigma, rhs)
        if not order.gt(lt, rt):
            raise SideConditionError(
                "equation instance %s == %s is not decreasing" % (lt, rt))
    if encompass and not properly_encompasses(term, lhs):
        raise SideConditionError(
            "%s does not properly encompass %s "
            "(encompassment condition)" % (term, lhs))
    return replace_at(term, pos, apply_subst(sigma, rhs))


_CP_POOL_CACHE: dict = {}


def _cp_pool(rules: list[Rule]) -> set:
    """Canonical critical pairs of ``rules`` (both orientations), cached.

    Deduce steps arrive in batches between which the rules do not change,
    so the pool is memoized on the rule tuple.
    """
    key = tuple(rules)
    pool = _CP_POOL_CACHE.get(key)
    if pool is None:
        pool = set()
        for cp in critical_pairs(rules):
            pool.add(canonical_pair(cp))
            pool.add(canonical_pair(cp.reversed()))
        if len(_CP_POOL_CACHE) > 64:
            _CP_POOL_CACHE.clear()
        _CP_POOL_CACHE[key] = pool
    return pool


def _deduce_ok(state: RunState, eq: Equation, variant: str,
               order: OrderSpec) -> bool:
    """Deduced equations must come from an actual peak of the current system.

    Membership in the critical pairs of the current system is checked
    first; otherwise a short conversion between the two sides is accepted
    as evidence of a peak.
    """
    if canonical_pair(eq) in _cp_pool(state.R):
        return True
    pairs = list(state.R) + (list(state.E) if variant in ("kbo", "kbl") else [])
    cap = max(size(eq.lhs), size(eq.rhs)) + \
        max([max(size(p.lhs), size(p.rhs)) for p in pairs] or [0]) + 2
    if conversion_oracle(pairs, eq.lhs, eq.rhs, depth=2, size_cap=cap):
        return True
    if variant in ("kbo", "kbl"):
        from .critical_pairs import extended_overlaps
        return any(equation_variants(eq, o.pair)
                   for o in extended_overlaps(state.E, state.R, order))
    return False


def apply_inference(state: RunState, inf: Inference, variant: str,
                    order: OrderSpec):
    """Apply one inference to ``state`` in place, checking side conditions.

    ``variant`` is one of 'kbf', 'kbg', 'kbi', 'kbo', 'kbl' and selects
    which side conditions govern simplify, compose, collapse and deduce.
    """
    kind = inf.kind
    ordered = variant in ("kbo", "kbl")

    if kind == "orient":
        i = _find_equation(state, inf.equation)
        eq = state.E[i]
        lhs, rhs = (eq.rhs, eq.lhs) if inf.reverse else (eq.lhs, eq.rhs)
        if not order.gt(lhs, rhs):
            raise SideConditionError("cannot orient %s: %s is not greater"
                                     % (eq, lhs))
        rule = Rule(lhs, rhs)
        del state.E[i]
        if not any(pair_variants(rule, r) for r in state.R):
            state.R.append(rule)
        return

    if kind == "delete":
        i = _find_equation(state, inf.equation)
        if not state.E[i].is_trivial():
            raise SideConditionError("delete needs equal sides: %s"
                                     % state.E[i])
        del state.E[i]
        return

    if kind == "deduce":
        if variant == "kbg":
            raise SideConditionError("ground completion has no deduce rule")
        eq = inf.equation
        if variant == "kbl" and not (is_linear(eq.lhs) and is_linear(eq.rhs)):
            raise SideConditionError("linear completion deduces only "
                                     "linear equations: %s" % eq)
        if not _deduce_ok(state, eq, variant, order):
            raise SideConditionError("no peak yields %s" % eq)
        _record_equation(state, eq)
        return

    if kind == "simplify":
        i = _find_equation(state, inf.equation)
        eq = state.E[i]
        if inf.side not in ("lhs", "rhs"):
            raise SideConditionError("simplify side must be lhs or rhs")
        term = eq.lhs if inf.side == "lhs" else eq.rhs
        # in ordered completion an equation instance may simplify, provided
        # the rewritten side properly encompasses the equation's lhs
        new_term = _rewrite_with_ref(
            state, term, inf.pos or (), inf.ref, inf.ref_rev, order,
            allow_equations=(variant == "kbo"),
            encompass=(variant == "kbo" and inf.ref[0] == "eq"))
        new_eq = Equation(new_term, eq.rhs) if inf.side == "lhs" \
            else Equation(eq.lhs, new_term)
        state.E[i] = new_eq
        state.e_union.append(new_eq)
        return

    if kind == "compose":
        rule = _check_rule_index(state, inf.target)
        new_rhs = _rewrite_with_ref(
            state, rule.rhs, inf.pos or (), inf.ref, inf.ref_rev, order,
            exclude_rule=inf.target, allow_equations=(variant == "kbo"))
        state.R[inf.target] = Rule(rule.lhs, new_rhs)
        return

    if kind == "collapse":
        rule = _check_rule_index(state, inf.target)
        encompass = variant in ("kbi", "kbo", "kbl")
        new_lhs = _rewrite_with_ref(
            state, rule.lhs, inf.pos or (), inf.ref, inf.ref_rev, order,
            exclude_rule=inf.target, allow_equations=(variant == "kbo"),
            encompass=encompass)
        del state.R[inf.target]
        _record_equation(state, Equation(new_lhs, rule.rhs))
        return

    raise SideConditionError("unknown inference kind %r" % kind)


@dataclass
class RunResult:
    """Outcome of a completion run.

    ``status`` is 'success', 'fail' or 'out-of-fuel'; ``stuck`` lists the
    unorientable equations of a failed run.
    """

    status: str
    state: RunState
    trace: list[Inference]
    stuck: list[Equation] = field(default_factory=list)

    @property
    def rules(self) -> list[Rule]:
        return list(self.state.R)


def _priority(eq: Equation):
    return (size(eq.lhs) + size(eq.rhs), str(eq))


def _indexed_step(pairs: list[tuple[int, Rule]], t: Term):
    """Leftmost-innermost step using an index-labelled rule list."""
    rep = rewrite_step([r for _, r in pairs], t)
    if rep is None:
        return None
    return StepReport(rep.position, pairs[rep.index][0], rep.result)


class _Driver:
    """Shared engine loop for the kbf/kbg/kbi variants."""

    def __init__(self, eqs, order: OrderSpec, variant: str,
                 fuel: Optional[int], do_compose: bool):
        self.state = RunState.start(eqs)
        self.order = order
        self.variant = variant
        self.fuel = fuel
        self.do_compose = do_compose
        self.trace: list[Inference] = []
        self.parked: set[Equation] = set()

    def spent(self) -> bool:
        return self.fuel is not None and len(self.trace) >= self.fuel

    def emit(self, inf: Inference):
        apply_inference(self.state, inf, self.variant, self.order)
        self.trace.append(inf)

    def collapse_candidates(self, m: int) -> list[tuple[int, Rule]]:
        rule = self.state.R[m]
        out = []
        for j, r in enumerate(self.state.R):
            if j == m:
                continue
            if self.variant in ("kbi", "kbl") and \
                    not properly_encompasses(rule.lhs, r.lhs):
                continue
            out.append((j, r))
        return out

    def interreduce(self):
        """Collapse (and optionally compose) until no rule is reducible."""
        changed = True
        while changed and not self.spent():
            changed = False
            for m in range(len(self.state.R)):
                rule = self.state.R[m]
                rep = _indexed_step(self.collapse_candidates(m), rule.lhs)
                if rep is not None:
                    self.emit(Inference("collapse", target=m,
                                        pos=rep.position,
                                        ref=("rule", rep.index)))
                    self.parked.clear()
                    changed = True
                    break
                if self.do_compose:
                    others = [(j, r) for j, r in enumerate(self.state.R)
                              if j != m]
                    rep = _indexed_step(others, rule.rhs)
                    if rep is not None:
                        self.emit(Inference("compose", target=m,
                                            pos=rep.position,
                                            ref=("rule", rep.index)))
                        changed = True
                        break

    def simplify_to_normal_form(self, eq: Equation) -> Equation:
        for side in ("lhs", "rhs"):
            while not self.spent():
                term = eq.lhs if side == "lhs" else eq.rhs
                rep = rewrite_step(self.state.R, term)
                if rep is None:
                    break
                self.emit(Inference("simplify", equation=eq, side=side,
                                    pos=rep.position,
                                    ref=("rule", rep.index)))
                eq = Equation(rep.result, eq.rhs) if side == "lhs" \
                    else Equation(eq.lhs, rep.result)
        return eq

    def fairness_gap(self) -> list[Equation]:
        """Prime critical pairs of the current rules not yet accounted for.

        A pair is covered when both sides reach the same normal form in
        the current rules (which terminate, being oriented by a reduction
        order) or the two sides are connected by a single step with a
        recorded equation.
        """
        if self.variant == "kbg":
            return []
        gap = []
        for eq in prime_critical_pairs(self.state.R):
            if eq.is_trivial():
                continue
            l = normalize(self.state.R, eq.lhs, 2000)
            r = normalize(self.state.R, eq.rhs, 2000)
            if l is not None and l == r:
                continue
            if single_step_connects(self.state.e_union, eq.lhs, eq.rhs):
                continue
            gap.append(eq)
        return gap

    def can_fail(self) -> bool:
        return True

    def run(self) -> RunResult:
        while True:
            if self.spent():
                return RunResult("out-of-fuel", self.state, self.trace)
            live = [e for e in self.state.E if e not in self.parked]
            if not live:
                gap = self.fairness_gap()
                if gap:
                    for eq in gap:
                        if self.spent():
                            break
                        self.emit(Inference("deduce", equation=eq))
                    continue
                if self.state.E and self.can_fail():
                    return RunResult("fail", self.state, self.trace,
                                     stuck=list(self.state.E))
                return RunResult("success", self.state, self.trace)
            eq = min(live, key=_priority)
            eq = self.simplify_to_normal_form(eq)
            if self.spent():
                continue
            if eq.is_trivial():
                self.emit(Inference("delete", equation=eq))
                continue
            oriented = self.order.orient(eq.lhs, eq.rhs)
            if oriented is None:
                self.parked.add(eq)
                continue
            rule = Rule(*oriented)
            duplicate = any(pair_variants(rule, r) for r in self.state.R)
            self.emit(Inference("orient", equation=eq,
                                reverse=(oriented[0] == eq.rhs
                                         and eq.lhs != eq.rhs)))
            self.parked.clear()
            if duplicate:
                continue
            self.interreduce()


def single_step_connects(eqs: Sequence[Equation], s: Term, t: Term) -> bool:
    """Is there a single equational step between ``s`` and ``t``?"""
    for eq in eqs:
        for l, r in ((eq.lhs, eq.rhs), (eq.rhs, eq.lhs)):
            for pos in positions(s):
                sigma = match(l, subterm_at(s, pos))
                if sigma is not None and \
                        replace_at(s, pos, apply_subst(sigma, r)) == t:
                    return True
    return False


def run_kbf(eqs: Sequence[Equation], order: OrderSpec,
            fuel: Optional[int] = 10000) -> RunResult:
    """Classic Knuth-Bendix completion (finite runs)."""
    return _Driver(eqs, order, "kbf", fuel, do_compose=False).run()


def run_kbg(eqs: Sequence[Equation], order: OrderSpec) -> RunResult:
    """Ground completion: terminates on every ground input with a ground-
    total reduction order, producing the canonical presentation."""
    for eq in eqs:
        if variables(eq.lhs) or variables(eq.rhs):
            raise ValueError("ground completion needs ground equations: %s"
                             % eq)
    return _Driver(eqs, order, "kbg", None, do_compose=True).run()


def run_kbi(eqs: Sequence[Equation], order: OrderSpec,
            fuel: Optional[int] = 10000) -> RunResult:
    """Completion sound for infinite runs: collapse demands proper
    encompassment, so persistent rules are never destroyed."""
    return _Driver(eqs, order, "kbi", fuel, do_compose=False).run()


def replay(eqs: Sequence[Equation], rules: Sequence[Rule],
           script: Sequence[Inference], variant: str,
           order: OrderSpec) -> RunState:
    """Re-run a recorded trace, checking every side condition."""
    state = RunState.start(eqs, rules)
    for inf in script:
        apply_inference(state, inf, variant, order)
    return state
