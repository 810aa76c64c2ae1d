"""Ambiguities, obstructions and convergence verdicts.

Two lhs occurrences inside one word make an *ambiguity*:

* overlap: ``grade = u' * a = b * u''`` with the shared part a nonempty
  proper suffix of u' and proper prefix of u'' (self-overlaps included);
* inclusion: ``grade = a * u' * b`` is itself the lhs of another rule,
  per occurrence of the inner lhs.

An overlap is *minimal* when its grade contains exactly two lhs
occurrences in total.  Each ambiguity carries an *obstruction*, the
difference of the two one-step rewrites of its grade:

    overlap:    S = b * f(u'') - f(u') * a
    inclusion:  S = f(u) - a * f(u') * b .

The diamond check reduces every obstruction of every ambiguity to
normal form; the system is Convergent iff every residue is zero.  The
triangle check does the same over minimal overlaps only and is valid
for minimal systems.  :func:`mc_residual` additionally rebuilds the
obstruction from the reduction trace, an exact flatness identity
(residual always 0) with the residue as the curvature term: zero residue
on a generator means the one-step deformation extends across it.

:func:`complete` orients nonzero residues into new rules by their
largest word under a deglex order and iterates the diamond check.
Measure certificates are refused for completion: after adding a rule
there is no guarantee the measure still certifies anything.
"""

import warnings
from dataclasses import dataclass
from typing import NamedTuple

from .freealg import Poly, count_occurrences, occurrences, print_order_key
from .order import DeglexOrder, certify_deglex
from .rewrite import DEFAULT_FUSE, Rule, System, normal_form

__all__ = [
    "Ambiguity", "AmbiguityResult", "ConvergenceReport", "MCResult",
    "find_overlaps", "find_inclusions", "obstruction",
    "check_convergence", "mc_residual", "complete",
]


@dataclass(frozen=True)
class Ambiguity:
    """One overlap or inclusion. For overlaps grade = lhs_left * a = b * lhs_right;
    for inclusions grade = lhs_left = a * lhs_right * b (left=outer, right=inner)."""

    kind: str
    grade: str
    left_rule: int
    right_rule: int
    a: str
    b: str
    minimal: bool

    def divisor_positions(self, system):
        """The two lhs occurrences as (start, rule) pairs, sorted by position."""
        if self.kind == "overlap":
            pair = [(0, self.left_rule), (len(self.b), self.right_rule)]
        else:
            outer_end = len(self.grade)
            inner = (len(self.a), self.right_rule)
            pair = sorted([inner, (0, self.left_rule)],
                          key=lambda sr: (sr[0], sr[0] + len(system.rules[sr[1]].lhs)))
        return tuple(pair)


def _count_lhs_occurrences(system, word):
    return sum(count_occurrences(r.lhs, word) for r in system.rules)


def _sort_key(amb):
    return (print_order_key(amb.grade), amb.kind,
            amb.left_rule, amb.right_rule, len(amb.a))


def find_overlaps(system):
    """All overlap ambiguities, self-overlaps included, minimality flagged.

    One record per (grade, left occurrence, right occurrence); the
    shared part ranges over nonempty proper suffixes of the left lhs
    that are nonempty proper prefixes of the right lhs.
    """
    out = []
    for i, ri in enumerate(system.rules):
        u1 = ri.lhs
        for j, rj in enumerate(system.rules):
            u2 = rj.lhs
            for k in range(1, len(u1)):
                shared = u1[k:]
                if len(shared) < len(u2) and u2.startswith(shared):
                    a = u2[len(shared):]
                    b = u1[:k]
                    grade = u1 + a
                    assert grade == b + u2
                    out.append(Ambiguity(
                        "overlap", grade, i, j, a, b,
                        _count_lhs_occurrences(system, grade) == 2))
    assert len({(o.grade, o.left_rule, o.right_rule, len(o.b)) for o in out}) == len(out)
    out.sort(key=_sort_key)
    return out


def find_inclusions(system):
    """All inclusion ambiguities: one rule's lhs inside another's, per occurrence."""
    out = []
    for i, outer in enumerate(system.rules):
        for j, inner in enumerate(system.rules):
            if i == j or len(inner.lhs) >= len(outer.lhs):
                continue
            for occ in occurrences(inner.lhs, outer.lhs):
                out.append(Ambiguity(
                    "inclusion", outer.lhs, i, j, occ.prefix, occ.suffix,
                    _count_lhs_occurrences(system, outer.lhs) == 2))
    out.sort(key=_sort_key)
    return out


def obstruction(system, amb):
    """The difference of the two one-step rewrites of the ambiguity's grade."""
    left = system.rules[amb.left_rule]
    right = system.rules[amb.right_rule]
    if amb.kind == "overlap":
        return right.rhs.sandwich(amb.b, "") - left.rhs.sandwich("", amb.a)
    return left.rhs - right.rhs.sandwich(amb.a, amb.b)


class AmbiguityResult(NamedTuple):
    ambiguity: Ambiguity
    obstruction: Poly
    residue: Poly
    trace: object

    @property
    def resolved(self):
        return self.residue.is_zero()


@dataclass(frozen=True)
class ConvergenceReport:
    mode: str
    convergent: bool
    entries: tuple

    @property
    def verdict(self):
        return "Convergent" if self.convergent else "NotConvergent"

    @property
    def failures(self):
        return tuple(e for e in self.entries if not e.resolved)


def check_convergence(system, certificate, mode="diamond", max_steps=DEFAULT_FUSE):
    """Reduce every obstruction; Convergent iff every residue is zero.

    diamond mode examines all overlaps and inclusions; triangle mode
    examines minimal overlaps only and refuses non-minimal systems.
    The certificate must already be Certified (the caller's duty).
    """
    if mode == "diamond":
        ambiguities = find_overlaps(system) + find_inclusions(system)
    elif mode == "triangle":
        if not system.minimal:
            raise ValueError("triangle mode requires a minimal system")
        ambiguities = [a for a in find_overlaps(system) if a.minimal]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    ambiguities.sort(key=_sort_key)
    entries = []
    for amb in ambiguities:
        s = obstruction(system, amb)
        residue, trace = normal_form(system, s, certificate, max_steps)
        entries.append(AmbiguityResult(amb, s, residue, trace))
    return ConvergenceReport(mode, all(e.resolved for e in entries), tuple(entries))


class MCResult(NamedTuple):
    """Trace-expansion of one obstruction: obstruction = witness + residue,
    so residual := obstruction - witness - residue is identically zero and
    the deformation extends across this generator iff residue == 0."""

    ambiguity: Ambiguity
    obstruction: Poly
    witness: Poly
    residue: Poly
    residual: Poly
    trace: object

    @property
    def satisfied(self):
        return self.residue.is_zero()


def mc_residual(system, amb, certificate, max_steps=DEFAULT_FUSE):
    s = obstruction(system, amb)
    residue, trace = normal_form(system, s, certificate, max_steps)
    witness = trace.witness(system)
    residual = s - witness - residue
    return MCResult(amb, s, witness, residue, residual, trace)


def complete(system, order, max_rounds=10, max_steps=DEFAULT_FUSE):
    """Orient failing residues into new rules until the diamond check passes.

    Only deglex orders are accepted: the new rule for a residue r is
    lead(r) -> lead(r) - r/leadcoeff with lead the order-largest word,
    which stays Certified by construction.  Returns (final system, last
    report); the report is NotConvergent when max_rounds runs out.
    """
    if not isinstance(order, DeglexOrder):
        raise TypeError("completion requires a deglex order; "
                        "measure certificates are refused")
    cur = system
    report = None
    for _ in range(max_rounds):
        res = certify_deglex(cur, order)
        if not res.certified:
            raise ValueError(f"system is not certified by the order: {res.witnesses[:3]}")
        report = check_convergence(cur, order, "diamond", max_steps)
        if report.convergent:
            return cur, report
        new_rules = list(cur.rules)
        seen = set(cur.lhs_words)
        for entry in report.failures:
            r = entry.residue
            lead = max(r.terms, key=order.sort_key)
            if not lead:
                raise ValueError(
                    "residue reduced to a nonzero constant: the presented "
                    "algebra is trivial and no rule can orient it")
            if lead in seen:
                continue
            if len(lead) == 1:
                warnings.warn(
                    f"completion oriented a length-1 lhs "
                    f"{cur.alphabet[ord(lead)]!r}; that generator is now redundant")
            lc = r.terms[lead]
            rest = Poly._raw(r.field, {w: c for w, c in r.terms.items() if w != lead})
            new_rules.append(Rule(lead, rest.scale(r.field.neg(r.field.invert(lc)))))
            seen.add(lead)
        cur = System(cur.alphabet, tuple(new_rules), cur.field)
    return cur, report
