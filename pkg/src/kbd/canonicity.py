"""Canonical presentations of complete rewrite systems.

A complete system is canonical when every right-hand side is a normal
form and every left-hand side is irreducible by the other rules.  Two
transformations get there: ``rdot`` normalizes the right-hand sides (and
removes duplicate variants), ``rddot`` additionally drops rules whose
left-hand side another rule already reduces.  For a complete input the
result is again complete, defines the same conversion and the same
normal forms, and is unique up to renaming of variables.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .terms import Rule, Term, pair_variants
from .rewriting import Rules, is_normal_form, normalize, rewrite_step


def is_left_reduced(rules: Rules) -> bool:
    """No left-hand side is reducible by the other rules."""
    rule_list = list(rules)
    for i, rule in enumerate(rule_list):
        rest = rule_list[:i] + rule_list[i + 1:]
        if not is_normal_form(rest, rule.lhs):
            return False
    return True


def is_right_reduced(rules: Rules) -> bool:
    """Every right-hand side is a normal form of the whole system."""
    return all(is_normal_form(rules, rule.rhs) for rule in rules)


def is_reduced(rules: Rules) -> bool:
    return is_left_reduced(rules) and is_right_reduced(rules)


def rdot(rules: Rules, fuel: int = 10000) -> list[Rule]:
    """Normalize right-hand sides and drop duplicate rule variants.

    Rules are processed in order, rewriting against the current system,
    so already-normalized right-hand sides are reused; each surviving
    rule is a variant of a rule l -> r-normal-form of the input.
    """
    out = list(rules)
    for i in range(len(out)):
        rhs = normalize(out, out[i].rhs, fuel)
        if rhs is None:
            raise RuntimeError("right-hand side of %s does not normalize "
                               "within %d steps" % (out[i], fuel))
        out[i] = Rule(out[i].lhs, rhs)
    result: list[Rule] = []
    for rule in out:
        if not any(pair_variants(rule, r) for r in result):
            result.append(rule)
    return result


def rddot(rules: Rules, fuel: int = 10000) -> list[Rule]:
    """The canonical companion of a complete system.

    After right-normalization, a rule is kept only when no other
    surviving candidate reduces its left-hand side.
    """
    dotted = rdot(rules, fuel)
    out = []
    for i, rule in enumerate(dotted):
        rest = dotted[:i] + dotted[i + 1:]
        if is_normal_form(rest, rule.lhs):
            out.append(rule)
    return out


def trs_variants(r1: Rules, r2: Rules) -> bool:
    """Equality of rule sets up to renaming of variables in each rule."""
    l1, l2 = list(r1), list(r2)
    if len(l1) != len(l2):
        return False
    remaining = list(l2)
    for rule in l1:
        for other in remaining:
            if pair_variants(rule, other):
                remaining.remove(other)
                break
        else:
            return False
    return True


def same_normal_forms(r1: Rules, r2: Rules, terms: Sequence[Term],
                      fuel: int = 10000) -> bool:
    """Do both systems give every sample term the same normal form?"""
    for t in terms:
        n1 = normalize(r1, t, fuel)
        n2 = normalize(r2, t, fuel)
        if n1 is None or n1 != n2:
            return False
    return True
