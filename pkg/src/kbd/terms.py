"""First-order terms, positions, substitutions, matching and unification.

Terms are either variables or function applications, both immutable.
Positions are tuples of 1-based argument indices (the empty tuple is the
root).  Substitutions are plain dicts mapping variable names to terms; by
convention they are never mutated after creation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence, Union


@dataclass(frozen=True)
class Var:
    """A term variable, identified by name."""

    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Fun:
    """A function application ``f(t1, ..., tn)``; constants have no args."""

    symbol: str
    args: tuple["Term", ...] = ()

    def __str__(self):
        if not self.args:
            return self.symbol
        return "%s(%s)" % (self.symbol, ",".join(str(a) for a in self.args))


Term = Union[Var, Fun]
Position = tuple[int, ...]
Subst = dict[str, Term]

ROOT: Position = ()


class InvalidPosition(ValueError):
    """Raised when a position does not exist in a term."""


def size(t: Term) -> int:
    """Number of symbol occurrences (variables included) in a term."""
    if isinstance(t, Var):
        return 1
    return 1 + sum(size(a) for a in t.args)


def is_ground(t: Term) -> bool:
    if isinstance(t, Var):
        return False
    return all(is_ground(a) for a in t.args)


def variables(t: Term) -> list[str]:
    """Variable names of ``t`` in order of first occurrence (no duplicates)."""
    seen: list[str] = []

    def walk(u: Term):
        if isinstance(u, Var):
            if u.name not in seen:
                seen.append(u.name)
        else:
            for a in u.args:
                walk(a)

    walk(t)
    return seen


def var_count(t: Term, name: str) -> int:
    """Number of occurrences of variable ``name`` in ``t``."""
    if isinstance(t, Var):
        return 1 if t.name == name else 0
    return sum(var_count(a, name) for a in t.args)


def positions(t: Term) -> list[Position]:
    """All positions of ``t`` in left-to-right preorder; root first."""
    out: list[Position] = [()]
    if isinstance(t, Fun):
        for i, a in enumerate(t.args, start=1):
            out.extend((i,) + p for p in positions(a))
    return out


def postorder_positions(t: Term) -> list[Position]:
    """Positions in leftmost-innermost search order (children first)."""
    out: list[Position] = []
    if isinstance(t, Fun):
        for i, a in enumerate(t.args, start=1):
            out.extend((i,) + p for p in postorder_positions(a))
    out.append(())
    return out


def fun_positions(t: Term) -> list[Position]:
    """Positions of ``t`` whose subterm is a function application."""
    return [p for p in positions(t) if isinstance(subterm_at(t, p), Fun)]


def subterm_at(t: Term, pos: Position) -> Term:
    for i in pos:
        if isinstance(t, Var) or not 1 <= i <= len(t.args):
            raise InvalidPosition("position %r not in %s" % (pos, t))
        t = t.args[i - 1]
    return t


def subterms(t: Term) -> Iterator[Term]:
    """All subterms of ``t`` (with repetitions), preorder."""
    yield t
    if isinstance(t, Fun):
        for a in t.args:
            yield from subterms(a)


def proper_subterms(t: Term) -> Iterator[Term]:
    it = subterms(t)
    next(it)
    yield from it


def replace_at(t: Term, pos: Position, s: Term) -> Term:
    """Replace the subterm of ``t`` at ``pos`` with ``s``."""
    if not pos:
        return s
    if isinstance(t, Var) or not 1 <= pos[0] <= len(t.args):
        raise InvalidPosition("position %r not in %s" % (pos, t))
    i = pos[0]
    args = list(t.args)
    args[i - 1] = replace_at(args[i - 1], pos[1:], s)
    return Fun(t.symbol, tuple(args))


def apply_subst(sigma: Subst, t: Term) -> Term:
    if isinstance(t, Var):
        return sigma.get(t.name, t)
    if not t.args:
        return t
    return Fun(t.symbol, tuple(apply_subst(sigma, a) for a in t.args))


def compose(sigma: Subst, tau: Subst) -> Subst:
    """Composition: applying the result equals applying sigma, then tau."""
    out = {x: apply_subst(tau, t) for x, t in sigma.items()}
    for x, t in tau.items():
        out.setdefault(x, t)
    return out


def match(pattern: Term, subject: Term,
          sigma: Optional[Subst] = None) -> Optional[Subst]:
    """Substitution with ``pattern * sigma == subject``, or None.

    The optional ``sigma`` argument pre-seeds bindings (it is not mutated).
    """
    out = dict(sigma) if sigma else {}
    stack = [(pattern, subject)]
    while stack:
        p, s = stack.pop()
        if isinstance(p, Var):
            bound = out.get(p.name)
            if bound is None:
                out[p.name] = s
            elif bound != s:
                return None
        elif isinstance(s, Var) or p.symbol != s.symbol \
                or len(p.args) != len(s.args):
            return None
        else:
            stack.extend(zip(p.args, s.args))
    return out


def occurs(name: str, t: Term) -> bool:
    if isinstance(t, Var):
        return t.name == name
    return any(occurs(name, a) for a in t.args)


def unify(s: Term, t: Term) -> Optional[Subst]:
    """Idempotent most general unifier of ``s`` and ``t``, or None.

    The algorithm is deterministic: equations are processed left to right
    and bindings are eagerly composed into the accumulated unifier, so the
    result depends only on the input pair.
    """
    unifier: Subst = {}
    queue: list[tuple[Term, Term]] = [(s, t)]
    while queue:
        lhs, rhs = queue.pop(0)
        lhs = apply_subst(unifier, lhs)
        rhs = apply_subst(unifier, rhs)
        if lhs == rhs:
            continue
        if isinstance(lhs, Fun) and isinstance(rhs, Fun):
            if lhs.symbol != rhs.symbol or len(lhs.args) != len(rhs.args):
                return None
            queue[:0] = list(zip(lhs.args, rhs.args))
            continue
        if isinstance(rhs, Var) and not isinstance(lhs, Var):
            lhs, rhs = rhs, lhs
        # lhs is a variable now
        if occurs(lhs.name, rhs):
            return None
        binding = {lhs.name: rhs}
        unifier = {x: apply_subst(binding, u) for x, u in unifier.items()}
        unifier[lhs.name] = rhs
    return unifier


def rename(t: Term, mapping: dict[str, str]) -> Term:
    return apply_subst({x: Var(y) for x, y in mapping.items()}, t)


def canonical_terms(ts: Sequence[Term]) -> tuple[Term, ...]:
    """Rename variables across ``ts`` to x1, x2, ... in first-occurrence order."""
    mapping: dict[str, str] = {}
    for t in ts:
        for x in variables(t):
            if x not in mapping:
                mapping[x] = "x%d" % (len(mapping) + 1)
    return tuple(rename(t, mapping) for t in ts)


def literally_similar(s: Term, t: Term) -> bool:
    """Equality up to renaming of variables (the relation written s ≐ t)."""
    return canonical_terms([s])[0] == canonical_terms([t])[0]


def encompasses(s: Term, t: Term) -> bool:
    """True if some subterm of ``s`` is an instance of ``t``."""
    return any(match(t, u) is not None for u in subterms(s))


def properly_encompasses(s: Term, t: Term) -> bool:
    """Encompassment minus its converse: s ⊒ t but not t ⊒ s."""
    return encompasses(s, t) and not encompasses(t, s)


@dataclass(frozen=True)
class Equation:
    """An unordered pair of terms, kept in the orientation it was written."""

    lhs: Term
    rhs: Term

    def __str__(self):
        return "%s == %s" % (self.lhs, self.rhs)

    def reversed(self) -> "Equation":
        return Equation(self.rhs, self.lhs)

    def is_trivial(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class Rule:
    """A rewrite rule lhs -> rhs.

    The usual variable conditions are enforced: the left-hand side is not a
    variable and every right-hand side variable occurs on the left.
    """

    lhs: Term
    rhs: Term

    def __post_init__(self):
        if isinstance(self.lhs, Var):
            raise ValueError("rule left-hand side may not be a variable: %s" % self)
        extra = set(variables(self.rhs)) - set(variables(self.lhs))
        if extra:
            raise ValueError(
                "rule %s has right-hand side variables %s not in left-hand side"
                % (self, sorted(extra)))

    def __str__(self):
        return "%s -> %s" % (self.lhs, self.rhs)

    def as_equation(self) -> Equation:
        return Equation(self.lhs, self.rhs)


RuleLike = Union[Rule, Equation]


def canonical_pair(p: RuleLike) -> tuple[Term, Term]:
    """Jointly renumbered (lhs, rhs); variants map to the same value."""
    return tuple(canonical_terms([p.lhs, p.rhs]))  # type: ignore[return-value]


def pair_variants(p: RuleLike, q: RuleLike) -> bool:
    """True if p and q are equal up to a renaming applied to both sides."""
    return canonical_pair(p) == canonical_pair(q)


def equation_variants(p: RuleLike, q: RuleLike) -> bool:
    """Variants as unordered pairs: p matches q or its reverse."""
    cp = canonical_pair(p)
    return cp == canonical_pair(q) or \
        cp == tuple(canonical_terms([q.rhs, q.lhs]))


def rename_apart(keep: RuleLike, shift: RuleLike) -> RuleLike:
    """A variant of ``shift`` sharing no variables with ``keep``.

    Renaming is deterministic: primes are appended to every variable of
    ``shift`` until the variable sets are disjoint.
    """
    keep_vars = set(variables(keep.lhs)) | set(variables(keep.rhs))
    shift_vars = set(variables(shift.lhs)) | set(variables(shift.rhs))
    suffix = ""
    while {v + suffix for v in shift_vars} & keep_vars:
        suffix += "'"
    if not suffix:
        return shift
    mapping = {v: v + suffix for v in shift_vars}
    out = type(shift)(rename(shift.lhs, mapping), rename(shift.rhs, mapping))
    return out


@dataclass
class Signature:
    """Function symbols with fixed arities."""

    arities: dict[str, int] = field(default_factory=dict)

    @classmethod
    def of_terms(cls, ts: Sequence[Term]) -> "Signature":
        sig = cls()
        for t in ts:
            sig.absorb(t)
        return sig

    def absorb(self, t: Term):
        for u in subterms(t):
            if isinstance(u, Fun):
                known = self.arities.setdefault(u.symbol, len(u.args))
                if known != len(u.args):
                    raise ValueError(
                        "symbol %s used with arities %d and %d"
                        % (u.symbol, known, len(u.args)))

    def check(self, t: Term) -> bool:
        for u in subterms(t):
            if isinstance(u, Fun):
                if self.arities.get(u.symbol) != len(u.args):
                    return False
        return True

    def symbols(self) -> list[str]:
        return sorted(self.arities)
