"""
A randomized survey: decision procedure versus brute force
==========================================================

Draw random length-homogeneous systems over F2, decide each one with
the ambiguity calculus, and confront every verdict with two independent
referees: exhaustive enumeration of reduction sequences where that is
affordable, and an exact rank argument where it is not.  The same
protocol, scaled to 200 systems, is the third check of the acceptance
gate.
"""

import random

from ncrewrite import (
    DeglexOrder, FuseExceeded, PrimeField, Poly, Rule, System,
    certify_deglex, check_convergence, distinct_normal_forms, iter_words,
    linear_uniqueness_oracle, oracle_sweep, print_poly, print_word,
    reduction_graph_oracle,
)

F2 = PrimeField(2)
DENSITY = {2: 0.3, 3: 0.22, 4: 0.07}


def random_system(rng):
    """<=3 letters, <=3 rules, each rhs a sum of deglex-smaller words of
    the lhs length, so the identity deglex order certifies termination."""
    ngen = rng.choice([2, 2, 3])
    lens = [2, 2, 3, 3] if ngen == 3 else [2, 3, 3, 4]
    order = DeglexOrder(ngen)
    lhss = {}
    while len(lhss) < rng.choice([1, 2, 2, 3]):
        k = rng.choice(lens)
        lhss["".join(chr(rng.randrange(ngen)) for _ in range(k))] = None
    rules = []
    for w in lhss:
        smaller = [v for v in iter_words(ngen, len(w)) if len(v) == len(w)
                   and order.sort_key(v) < order.sort_key(w)]
        rules.append(Rule(w, Poly(F2, {v: F2.one for v in smaller
                                       if rng.random() < DENSITY[len(w)]})))
    return System(("a", "b", "c")[:ngen], tuple(rules), F2)


rng = random.Random(17)
systems = [random_system(rng) for _ in range(40)]

tally = {"Convergent": 0, "NotConvergent": 0}
fallbacks = 0
shown_witness = shown_fallback = False

for i, system in enumerate(systems):
    names = system.alphabet
    order = DeglexOrder(len(names))
    assert certify_deglex(system, order).certified
    window = 2 * max(len(r.lhs) for r in system.rules)
    report = check_convergence(system, order, "diamond")
    tally[report.verdict] += 1

    # referee 1: enumerate every reduction sequence of every word in the
    # window.  A FuseExceeded here means the reduction graph is too wide
    # to build, which in this family happens only on convergent systems
    # (nonconvergent ones are caught early by the randomized screen).
    try:
        unique, witness, _ = oracle_sweep(system, window, 60_000)
        agreed = unique == report.convergent
    except FuseExceeded:
        # referee 2: no graph at all, one exact rank computation per
        # degree (see docs/theory.md for the theorem).
        fallbacks += 1
        unique, bad_degree = linear_uniqueness_oracle(system, window)
        agreed = unique == report.convergent
        if not shown_fallback:
            shown_fallback = True
            rules = ", ".join(
                f"{print_word(r.lhs, names)} -> {len(r.rhs.terms)} terms"
                for r in system.rules)
            print(f"system {i}: reduction graph too wide ({rules})")
            print(f"  rank argument decides: "
                  f"{'unique' if unique else 'nonunique'} normal forms")
    assert agreed, f"system {i}: referees disagree"

    if not unique and not shown_witness:
        shown_witness = True
        forms = sorted(print_poly(f, names)
                       for f in reduction_graph_oracle(system, witness))
        print(f"system {i}: {report.verdict}, witness "
              f"{print_word(witness, names)} reaches {len(forms)} normal forms:")
        for f in forms[:2]:
            print("   ", f)

    # the randomized screen alone certifies nonuniqueness cheaply: any
    # two distinct results of random maximal reductions are both true
    # normal forms of the word.
    if not unique:
        sampled = distinct_normal_forms(system, witness, tries=16)
        assert len(sampled) > 1

print()
print(f"40 systems: {tally['Convergent']} convergent, "
      f"{tally['NotConvergent']} not; every verdict confirmed "
      f"({fallbacks} by the rank argument)")
