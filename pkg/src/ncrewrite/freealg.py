"""Exact arithmetic in free associative algebras over Q and F_p.

A *word* is an element of the free monoid on an alphabet of generators.
Internally a word is a Python string whose code points are generator
indices (generator ``i`` is stored as ``chr(i)``), so substring search,
slicing and lexicographic comparison all agree with the index-sequence
semantics while running at C speed.  Generator *names* exist only at the
parse/print boundary.

A *polynomial* (:class:`Poly`) is a finite map from words to nonzero
coefficients of a fixed coefficient field, either the rationals
(:data:`QQ`, coefficients are ``Fraction``) or a prime field
(:class:`PrimeField`, coefficients are ints in ``range(p)``).  The empty
word is a legal monomial and plays the role of the algebra unit, so
constant terms are fine.  Zero coefficients are never stored; two equal
polynomials always hold identical term maps.

>>> p = parse_poly("x*y - y*x", ["x", "y"], QQ)
>>> print_poly(p + p, ["x", "y"])
'2*x*y - 2*y*x'
>>> parse_poly("2*x - 2*x", ["x"], QQ).is_zero()
True
"""

import re
from fractions import Fraction
from typing import NamedTuple

__all__ = [
    "QQ", "RationalField", "PrimeField", "ParseError",
    "Occurrence", "occurrences", "count_occurrences", "concat",
    "word_from_indices", "word_indices", "iter_words", "print_order_key",
    "Poly", "poly_add", "poly_scale", "poly_mul_sandwich",
    "parse_poly", "parse_word", "print_poly", "print_word",
]


class ParseError(ValueError):
    """Raised for malformed polynomial text or invalid coefficients."""


# ---------------------------------------------------------------------------
# coefficient fields

class RationalField:
    """The rationals.  Coefficients are ``fractions.Fraction`` values."""

    __slots__ = ()
    name = "Q"
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def invert(self, a):
        if not a:
            raise ZeroDivisionError("inverting 0 in Q")
        return 1 / Fraction(a)

    def from_fraction(self, q):
        return Fraction(q)

    def format_coeff(self, a):
        return str(a)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class PrimeField:
    """Integers modulo a prime p.  Coefficients are ints in ``range(p)``."""

    __slots__ = ("p",)

    def __init__(self, p):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p

    @property
    def name(self):
        return f"F{self.p}"

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def invert(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverting 0 in F{self.p}")
        return pow(a, -1, self.p)

    def from_fraction(self, q):
        q = Fraction(q)
        if q.denominator % self.p == 0:
            raise ParseError(
                f"coefficient {q} has no meaning in F{self.p}:"
                f" denominator {q.denominator} is not invertible")
        return q.numerator * pow(q.denominator, -1, self.p) % self.p

    def format_coeff(self, a):
        return str(a % self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


# ---------------------------------------------------------------------------
# words

def word_from_indices(indices):
    """Build a word from an iterable of generator indices."""
    return "".join(map(chr, indices))


def word_indices(word):
    """The tuple of generator indices of a word."""
    return tuple(map(ord, word))


def concat(u, v):
    return u + v


def print_order_key(word):
    # canonical display order: degree first, then lexicographic by index.
    return (len(word), word)


def iter_words(n_generators, max_length):
    """All words on n_generators letters of length <= max_length.

    Yields in display order, ascending: the empty word first, then by
    length, within a length lexicographically by index.
    """
    letters = [chr(i) for i in range(n_generators)]
    frontier = [""]
    yield ""
    for _ in range(max_length):
        frontier = [w + a for w in frontier for a in letters]
        yield from frontier


class Occurrence(NamedTuple):
    """One occurrence of a pattern inside a host word: host = prefix+pattern+suffix."""

    prefix: str
    pattern: str
    suffix: str

    @property
    def host(self):
        return self.prefix + self.pattern + self.suffix

    @property
    def start(self):
        return len(self.prefix)


def occurrences(pattern, host):
    """All occurrences of pattern in host, shortest prefix first.

    Overlapping occurrences count separately; the empty pattern is
    rejected (it would occur everywhere and means a malformed input).

    >>> [o.start for o in occurrences("aa", "aaaa")]
    [0, 1, 2]
    """
    if not pattern:
        raise ValueError("empty pattern has no well-defined occurrences")
    found = []
    i = host.find(pattern)
    while i != -1:
        found.append(Occurrence(host[:i], pattern, host[i + len(pattern):]))
        i = host.find(pattern, i + 1)
    return found


def count_occurrences(pattern, host):
    """len(occurrences(pattern, host)) without building the list."""
    if not pattern:
        raise ValueError("empty pattern has no well-defined occurrences")
    n = 0
    i = host.find(pattern)
    while i != -1:
        n += 1
        i = host.find(pattern, i + 1)
    return n


# ---------------------------------------------------------------------------
# polynomials

class Poly:
    """An element of the free associative algebra over a fixed field.

    Stored as a dict word -> coefficient with no zero values.  Instances
    are treated as immutable; all operations build new objects.
    """

    __slots__ = ("field", "terms", "_hash")

    def __init__(self, field, terms=()):
        items = terms.items() if isinstance(terms, dict) else terms
        self.field = field
        self.terms = {w: c for w, c in items if c}
        self._hash = None

    @staticmethod
    def _raw(field, term_dict):
        # fast path for internal callers that guarantee canonical input
        p = object.__new__(Poly)
        p.field = field
        p.terms = term_dict
        p._hash = None
        return p

    @classmethod
    def zero(cls, field):
        return cls._raw(field, {})

    @classmethod
    def term(cls, field, word, coeff=None):
        if coeff is None:
            coeff = field.one
        return cls._raw(field, {word: coeff} if coeff else {})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def support(self):
        """The set of words with nonzero coefficient."""
        return set(self.terms)

    def coeff(self, word):
        return self.terms.get(word, self.field.zero)

    def _check_field(self, other):
        if self.field != other.field:
            raise ValueError(
                f"mixed coefficient fields: {self.field!r} vs {other.field!r}")

    def __add__(self, other):
        self._check_field(other)
        add = self.field.add
        merged = dict(self.terms)
        for w, c in other.terms.items():
            s = add(merged.get(w, self.field.zero), c)
            if s:
                merged[w] = s
            elif w in merged:
                del merged[w]
        return Poly._raw(self.field, merged)

    def __neg__(self):
        neg = self.field.neg
        return Poly._raw(self.field, {w: neg(c) for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if not c:
            return Poly.zero(self.field)
        mul = self.field.mul
        return Poly._raw(self.field, {w: mul(c, v) for w, v in self.terms.items()})

    def sandwich(self, left, right):
        """left * self * right for words left, right."""
        return Poly._raw(
            self.field, {left + w + right: c for w, c in self.terms.items()})

    def __mul__(self, other):
        self._check_field(other)
        add, mul, zero = self.field.add, self.field.mul, self.field.zero
        out = {}
        for u, c in self.terms.items():
            for v, d in other.terms.items():
                w = u + v
                s = add(out.get(w, zero), mul(c, d))
                if s:
                    out[w] = s
                elif w in out:
                    del out[w]
        return Poly._raw(self.field, out)

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.field == other.field
                and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, frozenset(self.terms.items())))
        return self._hash

    def sorted_terms(self):
        """Term list in display order (largest first)."""
        return sorted(self.terms.items(),
                      key=lambda wc: print_order_key(wc[0]), reverse=True)

    def __repr__(self):
        body = ", ".join(f"{word_indices(w)}: {c}" for w, c in self.sorted_terms())
        return f"Poly<{self.field.name}>({{{body}}})"


def poly_add(p, q):
    return p + q


def poly_scale(c, p):
    return p.scale(c)


def poly_mul_sandwich(left, p, right):
    return p.sandwich(left, right)


# ---------------------------------------------------------------------------
# text format
#
#   poly   := sign? term (sign term)*          sign: '+' | '-'
#   term   := coeff ('*' factors)? | factors
#   factors:= factor ('*' factor)*
#   factor := NAME ('^' posint)?
#   coeff  := int ('/' posint)?
#
# A bare coeff term is a constant (coefficient times the empty word).

_TOKEN_RE = re.compile(r"(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<int>\d+)|(?P<op>[-+*/^])|(?P<bad>\S)")
NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


def _tokenize(text):
    tokens = []
    for m in _TOKEN_RE.finditer(text):
        if m.lastgroup == "bad":
            raise ParseError(f"unexpected character {m.group()!r} at position {m.start()}")
        tokens.append((m.lastgroup, m.group(), m.start()))
    return tokens


class _Parser:
    __slots__ = ("tokens", "pos", "index_of", "field")

    def __init__(self, text, names, field):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.index_of = {name: i for i, name in enumerate(names)}
        self.field = field

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None, -1)

    def take(self, kind=None):
        tok = self.peek()
        if tok[0] is None or (kind is not None and tok[0] != kind):
            raise ParseError(f"expected {kind or 'token'}, got {tok[1]!r}")
        self.pos += 1
        return tok

    def parse(self):
        pairs = []
        sign = 1
        if self.peek()[:2] in (("op", "+"), ("op", "-")):
            sign = -1 if self.take()[1] == "-" else 1
        pairs.append(self.term(sign))
        while self.pos < len(self.tokens):
            kind, val, at = self.take("op")
            if val not in "+-":
                raise ParseError(f"expected '+' or '-' at position {at}, got {val!r}")
            pairs.append(self.term(-1 if val == "-" else 1))
        zero = self.field.zero
        out = {}
        for w, c in pairs:
            s = self.field.add(out.get(w, zero), c)
            if s:
                out[w] = s
            elif w in out:
                del out[w]
        return Poly._raw(self.field, out)

    def term(self, sign):
        coeff = None
        if self.peek()[0] == "int":
            coeff = self.number()
            if self.peek()[:2] == ("op", "*"):
                self.take()
            else:
                # bare constant term
                return "", self.field.from_fraction(sign * coeff)
        word = [self.factor()]
        while self.peek()[:2] == ("op", "*"):
            self.take()
            word.append(self.factor())
        q = Fraction(sign) if coeff is None else sign * coeff
        return "".join(word), self.field.from_fraction(q)

    def number(self):
        num = int(self.take("int")[1])
        if self.peek()[:2] == ("op", "/"):
            self.take()
            den = int(self.take("int")[1])
            if den == 0:
                raise ParseError("zero denominator")
            return Fraction(num, den)
        return Fraction(num)

    def factor(self):
        kind, name, at = self.take()
        if kind != "name":
            raise ParseError(f"expected generator name at position {at}, got {name!r}")
        if name not in self.index_of:
            raise ParseError(f"unknown generator {name!r}")
        letter = chr(self.index_of[name])
        if self.peek()[:2] == ("op", "^"):
            self.take()
            exp_tok = self.take("int")
            exp = int(exp_tok[1])
            if exp < 1:
                raise ParseError(f"exponent must be a positive integer, got {exp}")
            return letter * exp
        return letter


def parse_poly(text, names, field):
    """Parse polynomial text over the given generator names and field.

    >>> parse_poly("x^3 + 1/2*y", ["x", "y"], QQ).coeff(chr(1))
    Fraction(1, 2)
    """
    if not text.strip():
        raise ParseError("empty input")
    return _Parser(text, names, field).parse()


def parse_word(text, names):
    """Parse text that must denote a single monomial with coefficient 1."""
    p = parse_poly(text, names, QQ)
    if len(p.terms) != 1:
        raise ParseError(f"expected a single word, got {len(p.terms)} terms: {text!r}")
    (w, c), = p.terms.items()
    if c != QQ.one:
        raise ParseError(f"expected coefficient 1 on a word, got {c}: {text!r}")
    return w


def print_word(word, names):
    """Display a word; runs of a generator collapse to powers.  ε prints as '1'."""
    if not word:
        return "1"
    parts = []
    run, count = word[0], 1
    for a in word[1:]:
        if a == run:
            count += 1
        else:
            parts.append((run, count))
            run, count = a, 1
    parts.append((run, count))
    return "*".join(
        names[ord(a)] if k == 1 else f"{names[ord(a)]}^{k}" for a, k in parts)


def print_poly(poly, names):
    """Deterministic display: terms in degree-lex order by index, largest first.

    Round-trips: parse_poly(print_poly(p, names), names, p.field) == p.
    """
    if not poly.terms:
        return "0"
    rational = isinstance(poly.field, RationalField)
    pieces = []
    for w, c in poly.sorted_terms():
        if rational and c < 0:
            negative, mag = True, -c
        else:
            negative, mag = False, c
        if not w:
            body = poly.field.format_coeff(mag)
        elif mag == poly.field.one:
            body = print_word(w, names)
        else:
            body = poly.field.format_coeff(mag) + "*" + print_word(w, names)
        if not pieces:
            pieces.append("-" + body if negative else body)
        else:
            pieces.append((" - " if negative else " + ") + body)
    return "".join(pieces)
