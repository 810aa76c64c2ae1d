"""
The cubic pair: one relation that resolves, one that does not
=============================================================

Two rewriting systems over Q<x, y, z> that are inverse views of the
same cubic identity.  Reading the identity one way gives a rule with no
self-overlaps at all, so convergence is immediate; reading it the other
way gives a rule whose self-overlap produces an obstruction that no
sequence of reductions can clear.
"""

from ncrewrite import (
    QQ, DeglexOrder, MeasureCertificate, System, certify_deglex,
    certify_measure, check_convergence, find_inclusions, find_overlaps,
    mc_residual, normal_form, oracle_sweep, parse_poly, print_poly,
    print_word, reduction_graph_oracle,
)

NAMES = ("x", "y", "z")

# -- the resolving direction ------------------------------------------------
# Replace xyz by the sum of cubes.  Termination is not obvious (the rhs
# is longer than nothing, same length as the lhs), but the weighted
# occurrence count 3*#xyz + #y drops at every step: the xyz occurrence
# disappears, and at most one y survives in its place.

forward = System.from_strings(NAMES, [("x*y*z", "x^3 + y^3 + z^3")], QQ)
phi = MeasureCertificate({"\x00\x01\x02": 3, "\x01": 1})

print("forward rule:  x*y*z -> x^3 + y^3 + z^3")
print("certificate:", certify_measure(forward, phi).verdict)

# xyz shares no prefix/suffix with itself and contains no other lhs, so
# the ambiguity census is empty and the Diamond Lemma has nothing to
# check: convergence is free.
census = find_overlaps(forward) + find_inclusions(forward)
print("ambiguities:", len(census))
print("verdict:", check_convergence(forward, phi, "diamond").verdict)

# -- the sticking direction -------------------------------------------------
# Solve the same identity for x^3 instead.  Degree-lexicographic order
# with z < y < x certifies termination, but now the lhs x^3 overlaps
# itself in x^4 and x^5.

backward = System.from_strings(NAMES, [("x^3", "x*y*z - y^3 - z^3")], QQ)
order = DeglexOrder(3, precedence=(2, 1, 0))

print()
print("backward rule: x^3 -> x*y*z - y^3 - z^3")
print("certificate:", certify_deglex(backward, order).verdict)
for amb in find_overlaps(backward) + find_inclusions(backward):
    tag = "minimal" if amb.minimal else "non-minimal"
    print(f"  {amb.kind} at {print_word(amb.grade, NAMES)} ({tag})")

# The two ways of reducing x^4 (rewrite the left x^3 or the right one)
# land on different irreducible polynomials, so normal forms are not
# unique.  The exhaustive oracle confirms it by enumerating every
# reduction sequence of x^4.
forms = reduction_graph_oracle(backward, "\x00" * 4)
print("normal forms of x^4:")
for f in sorted(print_poly(f, NAMES) for f in forms):
    print("   ", f)

# check_convergence finds the same failure from the ambiguity side: the
# residue is what is left of the overlap obstruction after reduction,
# and a nonzero irreducible residue is exactly a Diamond Lemma failure.
report = check_convergence(backward, order, "diamond")
print("verdict:", report.verdict)
for entry in report.entries:
    print(f"  residue at {print_word(entry.ambiguity.grade, NAMES)}:",
          print_poly(entry.residue, NAMES))

# The triangle variant inspects minimal overlaps only; here that is the
# single word x^4, and the verdicts agree.
triangle = check_convergence(backward, order, "triangle")
print("triangle verdict:", triangle.verdict,
      f"({len(triangle.entries)} ambiguity examined)")

# Every reported residue comes with an exact bookkeeping identity:
# obstruction = residue + sum of the applied relations, so the verdict
# can be replayed without trusting the reducer.
mc = mc_residual(backward, find_overlaps(backward)[0], order)
assert not mc.residual
print("trace identity residual:", print_poly(mc.residual, NAMES))

# A certified system still reduces deterministically even when the
# global verdict is negative; the strategy always rewrites the largest
# reducible term.
g = parse_poly("x^4 + x*y*z", NAMES, QQ)
result, trace = normal_form(backward, g, order)
print(f"nf(x^4 + x*y*z) in {len(trace)} steps:", print_poly(result, NAMES))

# Sweep every word up to twice the lhs length: the very first screened
# word already witnesses nonuniqueness.
unique, witness, checked = oracle_sweep(backward, 6)
print("oracle sweep:", "unique" if unique else
      f"nonunique at {print_word(witness, NAMES)} ({checked} words checked)")
