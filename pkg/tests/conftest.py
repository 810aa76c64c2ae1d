"""Shared builders for the test suite.

Random inputs always come from an explicit random.Random instance, so
every test is reproducible from the seed literal it passes in.
"""

import random

from ncrewrite import (
    QQ, DeglexOrder, MeasureCertificate, Poly, PrimeField, Rule, System,
    iter_words,
)

F2 = PrimeField(2)

# rhs density by lhs length: long rules get sparse tails, which keeps the
# exhaustive reduction-graph oracle affordable on most draws.
RHS_DENSITY = {2: 0.3, 3: 0.22, 4: 0.07}


def random_f2_system(rng):
    """Length-homogeneous random system over F2.

    Alphabet <= 3 letters, <= 3 rules, lhs length <= 4, and every rhs
    term is a deglex-smaller word of the same length as its lhs, so the
    identity-precedence deglex order certifies termination by
    construction.  Length-4 lhs words are only drawn on the 2-letter
    alphabet, keeping the oracle window at 2^8 words.
    """
    ngen = rng.choice([2, 2, 3])
    lens = [2, 2, 3, 3] if ngen == 3 else [2, 3, 3, 4]
    names = ("a", "b", "c")[:ngen]
    order = DeglexOrder(ngen)
    lhss = {}
    while len(lhss) < rng.choice([1, 2, 2, 3]):
        length = rng.choice(lens)
        lhss["".join(chr(rng.randrange(ngen)) for _ in range(length))] = None
    rules = []
    for w in lhss:
        smaller = [v for v in iter_words(ngen, len(w)) if len(v) == len(w)
                   and order.sort_key(v) < order.sort_key(w)]
        terms = {v: F2.one for v in smaller
                 if rng.random() < RHS_DENSITY[len(w)]}
        rules.append(Rule(w, Poly(F2, terms)))
    return System(names, tuple(rules), F2)


def random_monomial_system(rng, field=QQ):
    """Minimal monomial system: rhs zero, no length-1 lhs, no lhs a
    factor of another."""
    ngen = rng.choice([1, 2, 2, 3])
    names = ("x", "y", "z")[:ngen]
    lhss = []
    for _ in range(rng.choice([1, 2, 2, 3])):
        w = "".join(chr(rng.randrange(ngen))
                    for _ in range(rng.choice([2, 2, 3, 3, 4])))
        if all(w not in u and u not in w for u in lhss):
            lhss.append(w)
    rules = tuple(Rule(w, Poly.zero(field)) for w in lhss)
    return System(names, rules, field)


def convergent_xyz_system(field=QQ):
    """xyz -> x^3 over three generators: terminating under the occurrence
    measure 3*#xyz + #y, and convergent with no ambiguities at all."""
    return System.from_strings(
        ("x", "y", "z"), [("x*y*z", "x^3")], field)


def xyz_measure():
    return MeasureCertificate({"\x00\x01\x02": 3, "\x01": 1})


def nonconvergent_xcubed_system(field=QQ):
    """x^3 -> xyz - y^3 - z^3: terminating under deglex with z < y < x,
    but its x^4 overlap does not resolve."""
    return System.from_strings(
        ("x", "y", "z"), [("x^3", "x*y*z - y^3 - z^3")], field)


def xcubed_deglex():
    return DeglexOrder(3, precedence=(2, 1, 0))


def one_rule_monomial(word, ngen=1, names=("x", "y", "z"), field=QQ):
    return System(names[:ngen], (Rule(word, Poly.zero(field)),), field)
