"""Overlaps and critical pairs, plain and ordered.

A critical peak arises when one rule's left-hand side unifies with a
function-symbol position inside another's.  A critical pair is prime when
the contracted redex has no reducible proper subterms; for terminating
systems joinability of the prime critical pairs already decides local
confluence.  Extended critical pairs generalize both notions to ordered
rewriting with a mix of rules and (possibly unorientable) equations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .orders import OrderSpec
from .rewriting import Eqns, Rules, is_normal_form, ordered_step
from .terms import (Equation, Position, Rule, Term, apply_subst,
                    canonical_terms, fun_positions, pair_variants,
                    proper_subterms, rename_apart, replace_at, subterm_at,
                    unify)


@dataclass(frozen=True)
class Overlap:
    """Rule ``inner`` applies at position ``pos`` inside ``outer``'s lhs."""

    inner: Rule
    outer: Rule
    pos: Position
    mgu: dict


@dataclass(frozen=True)
class CriticalPeak:
    """The two reducts of a critical overlap, with its source term.

    ``left`` is the result of contracting the inner redex at ``pos`` inside
    ``source``; ``right`` contracts ``source`` at the root.
    """

    left: Term
    pos: Position
    source: Term
    right: Term
    prime: bool

    def pair(self) -> Equation:
        return Equation(self.left, self.right)


def overlaps(rules: Rules) -> list[Overlap]:
    """All overlaps between (renamed-apart) variants of rules in ``rules``.

    A rule overlapping a variant of itself at the root is excluded.
    """
    out = []
    rule_list = list(rules)
    for outer in rule_list:
        for inner0 in rule_list:
            inner = rename_apart(outer, inner0)
            for pos in fun_positions(outer.lhs):
                if pos == () and pair_variants(inner, outer):
                    continue
                mgu = unify(inner.lhs, subterm_at(outer.lhs, pos))
                if mgu is not None:
                    out.append(Overlap(inner, outer, pos, mgu))
    return out


def peak_of_overlap(o: Overlap, rules: Rules) -> CriticalPeak:
    source = apply_subst(o.mgu, o.outer.lhs)
    left = replace_at(source, o.pos, apply_subst(o.mgu, o.inner.rhs))
    right = apply_subst(o.mgu, o.outer.rhs)
    redex = subterm_at(source, o.pos)
    prime = all(is_normal_form(rules, u) for u in proper_subterms(redex))
    return CriticalPeak(left, o.pos, source, right, prime)


def critical_peaks(rules: Rules) -> list[CriticalPeak]:
    return [peak_of_overlap(o, rules) for o in overlaps(rules)]


def dedup_pairs(eqs: Sequence[Equation]) -> list[Equation]:
    """Drop equations that are variants (as ordered pairs) of earlier ones."""
    seen = set()
    out = []
    for eq in eqs:
        key = canonical_terms([eq.lhs, eq.rhs])
        if key not in seen:
            seen.add(key)
            out.append(eq)
    return out


def critical_pairs(rules: Rules) -> list[Equation]:
    """CP(R): all critical pairs, deduplicated up to literal similarity."""
    return dedup_pairs([p.pair() for p in critical_peaks(rules)])


def prime_critical_pairs(rules: Rules) -> list[Equation]:
    """PCP(R): critical pairs whose contracted redex has irreducible
    proper subterms."""
    return dedup_pairs([p.pair() for p in critical_peaks(rules) if p.prime])


@dataclass(frozen=True)
class ExtendedOverlap:
    """An overlap between oriented instances of two equations.

    Each participant is an equation read left to right (rules count as
    equations here); the conditions ri·mgu not > li·mgu keep only peaks
    that ordered rewriting can actually produce.
    """

    inner: Equation
    outer: Equation
    pos: Position
    mgu: dict
    pair: Equation
    prime: bool


def _oriented_views(eqs: Eqns, rules: Rules) -> list[Equation]:
    views = [Equation(r.lhs, r.rhs) for r in rules]
    for eq in eqs:
        views.append(Equation(eq.lhs, eq.rhs))
        views.append(Equation(eq.rhs, eq.lhs))
    return views


def extended_overlaps(eqs: Eqns, rules: Rules,
                      order: OrderSpec) -> list[ExtendedOverlap]:
    """Overlaps of E± ∪ R with itself, subject to the ordering conditions.

    For an overlap of l1 ≈ r1 into l2 ≈ r2 at position p with mgu μ we
    require r1μ not > l1μ and r2μ not > l2μ; root overlaps of an equation
    with its own variant (same orientation) are excluded.  Primality asks
    that all proper subterms of l1μ are normal forms of the ordered
    rewrite relation of (E, R).
    """
    views = _oriented_views(eqs, rules)
    out = []
    for outer in views:
        for inner0 in views:
            inner = rename_apart(outer, inner0)
            for pos in fun_positions(outer.lhs):
                if pos == () and pair_variants(inner, outer):
                    continue
                mgu = unify(inner.lhs, subterm_at(outer.lhs, pos))
                if mgu is None:
                    continue
                l1, r1 = apply_subst(mgu, inner.lhs), apply_subst(mgu, inner.rhs)
                l2, r2 = apply_subst(mgu, outer.lhs), apply_subst(mgu, outer.rhs)
                if order.gt(r1, l1) or order.gt(r2, l2):
                    continue
                pair = Equation(replace_at(l2, pos, r1), r2)
                prime = all(
                    ordered_step(eqs, rules, order, u) is None
                    for u in proper_subterms(l1))
                out.append(ExtendedOverlap(inner, outer, pos, mgu, pair, prime))
    return out


def extended_critical_pairs(eqs: Eqns, rules: Rules,
                            order: OrderSpec) -> list[Equation]:
    """PCP_>(E ∪ R): prime extended critical pairs, deduplicated."""
    return dedup_pairs([o.pair for o in extended_overlaps(eqs, rules, order)
                        if o.prime])


def linear_critical_pairs(eqs: Eqns, rules: Rules,
                          order: OrderSpec) -> list[Equation]:
    """Extended critical pairs from overlaps where one side is oriented.

    Keeps an extended overlap of l1 ≈ r1 into l2 ≈ r2 only when
    l1 > r1 and r2 not > l2, or l2 > r2 and r1 not > l1 (on the equations
    themselves, before instantiation).
    """
    out = []
    for o in extended_overlaps(eqs, rules, order):
        if not o.prime:
            continue
        l1, r1 = o.inner.lhs, o.inner.rhs
        l2, r2 = o.outer.lhs, o.outer.rhs
        if (order.gt(l1, r1) and not order.gt(r2, l2)) or \
                (order.gt(l2, r2) and not order.gt(r1, l1)):
            out.append(o.pair)
    return dedup_pairs(out)
