"""
Free-group words, their group ring, and presentations <x, y | r>.

Word grammar (whitespace ignored):

    word   := factor*
    factor := atom ("^" ["+"|"-"] digits)?
    atom   := letter | "1" | "(" word ")"

A lowercase letter is a generator, the uppercase letter its inverse, and
"1" the identity. Words are freely reduced on construction; the literal
(unreduced) letter sequence is still available through ``parse_letters`` so
that presentations can report whether the relator was typed reduced.
"""

import logging
import re
from collections import defaultdict
from dataclasses import dataclass
from math import gcd
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import InputError, UnsupportedError, ValidationError
from .lattice import IntegralPolytope, Point, hull

logger = logging.getLogger("polytope_invariants.words")

GENERATORS: Tuple[str, str] = ("x", "y")

Letter = Tuple[str, int]


def _letter_key(letter: Letter) -> Tuple[str, int]:
    gen, sign = letter
    return (gen, 0 if sign > 0 else 1)


def _free_reduce(letters: Iterable[Letter]) -> Tuple[Letter, ...]:
    stack: List[Letter] = []
    for gen, sign in letters:
        if stack and stack[-1] == (gen, -sign):
            stack.pop()
        else:
            stack.append((gen, sign))
    return tuple(stack)


def _invert(letters: Sequence[Letter]) -> List[Letter]:
    return [(gen, -sign) for gen, sign in reversed(letters)]


# ============================================================================
# Free words
# ============================================================================

@dataclass(frozen=True)
class FreeWord:
    """A freely reduced word; the empty word is the identity."""

    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        normalized = []
        for gen, sign in self.letters:
            if sign not in (1, -1):
                raise InputError(f"letter exponent must be +1 or -1, got {sign}", code="bad_letter")
            normalized.append((str(gen), int(sign)))
        object.__setattr__(self, "letters", _free_reduce(normalized))

    @classmethod
    def generator(cls, gen: str, power: int = 1) -> "FreeWord":
        sign = 1 if power > 0 else -1
        return cls(((gen, sign),) * abs(power))

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        if not isinstance(other, FreeWord):
            return NotImplemented
        return FreeWord(self.letters + other.letters)

    def __pow__(self, k: int) -> "FreeWord":
        base = self.letters if k >= 0 else tuple(_invert(self.letters))
        return FreeWord(base * abs(k))

    def inverse(self) -> "FreeWord":
        return FreeWord(tuple(_invert(self.letters)))

    def sort_key(self) -> Tuple[int, Tuple[Tuple[str, int], ...]]:
        """Shortlex order with x < X < y < Y."""
        return (len(self.letters), tuple(_letter_key(l) for l in self.letters))

    def exponent_sum(self, gen: str) -> int:
        return sum(sign for g, sign in self.letters if g == gen)

    def exponent_vector(self, alphabet: Sequence[str] = GENERATORS) -> Tuple[int, ...]:
        return tuple(self.exponent_sum(g) for g in alphabet)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return "".join(g if s > 0 else g.upper() for g, s in self.letters)


IDENTITY = FreeWord()


# ============================================================================
# Parsing
# ============================================================================

_TOKEN = re.compile(r"\s*(?:(?P<letter>[A-Za-z])|(?P<one>1)|(?P<open>\()|(?P<close>\))|(?P<caret>\^))")
_EXPONENT = re.compile(r"\s*(?P<exp>[+-]?\s*\d+)")


class _WordParser:
    def __init__(self, text: str, alphabet: Optional[Sequence[str]]):
        self.text = text
        self.pos = 0
        self.alphabet = tuple(alphabet) if alphabet is not None else None

    def error(self, message: str, code: str = "syntax_error") -> InputError:
        return InputError(
            f"{message} at position {self.pos}",
            detail={"position": self.pos, "text": self.text}, code=code,
        )

    def at_end(self) -> bool:
        return not self.text[self.pos:].strip()

    def peek(self) -> Optional[re.Match]:
        return _TOKEN.match(self.text, self.pos)

    def parse(self) -> List[Letter]:
        letters = self.word()
        if not self.at_end():
            raise self.error(f"unexpected character {self.text[self.pos:].strip()[0]!r}")
        return letters

    def word(self) -> List[Letter]:
        letters: List[Letter] = []
        while not self.at_end():
            m = self.peek()
            if m is None or m.group("close"):
                break
            letters.extend(self.factor())
        return letters

    def factor(self) -> List[Letter]:
        m = self.peek()
        if m is None:
            raise self.error("expected a letter, '1' or '('")
        if m.group("caret"):
            raise self.error("exponent without a base")
        self.pos = m.end()
        if m.group("letter"):
            ch = m.group("letter")
            gen = ch.lower()
            if self.alphabet is not None and gen not in self.alphabet:
                self.pos = m.start("letter")
                raise self.error(f"unknown generator {ch!r}", code="unknown_generator")
            atom = [(gen, 1 if ch.islower() else -1)]
        elif m.group("one"):
            atom = []
        else:
            start = m.start("open")
            atom = self.word()
            close = self.peek()
            if close is None or not close.group("close"):
                self.pos = start
                raise self.error("unbalanced '('")
            self.pos = close.end()
        nxt = self.peek()
        if nxt is not None and nxt.group("caret"):
            self.pos = nxt.end()
            e = _EXPONENT.match(self.text, self.pos)
            if e is None:
                raise self.error("expected an integer exponent")
            self.pos = e.end()
            k = int(re.sub(r"\s", "", e.group("exp")))
            base = atom if k >= 0 else _invert(atom)
            atom = base * abs(k)
        return atom


def parse_letters(text: str, alphabet: Optional[Sequence[str]] = GENERATORS) -> List[Letter]:
    """Literal letter sequence of ``text``, exponents expanded, not reduced."""
    return _WordParser(text, alphabet).parse()


def parse_word(text: str, alphabet: Optional[Sequence[str]] = GENERATORS) -> FreeWord:
    return FreeWord(tuple(parse_letters(text, alphabet)))


# ============================================================================
# Cyclic words
# ============================================================================

def is_cyclically_reduced(w: FreeWord) -> bool:
    letters = w.letters
    if len(letters) < 2:
        return True
    first_gen, first_sign = letters[0]
    return letters[-1] != (first_gen, -first_sign)


def cyclic_reduce(w: FreeWord) -> FreeWord:
    """Least rotation (shortlex) of the cyclic reduction; a conjugacy invariant."""
    letters = list(w.letters)
    while len(letters) >= 2 and letters[-1] == (letters[0][0], -letters[0][1]):
        letters = letters[1:-1]
    if not letters:
        return IDENTITY
    rotations = [letters[i:] + letters[:i] for i in range(len(letters))]
    best = min(rotations, key=lambda r: [_letter_key(l) for l in r])
    return FreeWord(tuple(best))


def is_proper_power(w: FreeWord) -> bool:
    """Whether w = u^k literally for some k >= 2."""
    n = len(w)
    if n == 0:
        raise InputError("proper-power test of the empty word", code="empty_word")
    letters = w.letters
    for d in range(1, n // 2 + 1):
        if n % d == 0 and letters == letters[:d] * (n // d):
            return True
    return False


# ============================================================================
# Group ring
# ============================================================================

@dataclass(frozen=True)
class FreeWordSum:
    """A finite integer combination of reduced words, an element of Z[F]."""

    terms: Tuple[Tuple[FreeWord, int], ...] = ()

    def __post_init__(self):
        acc: Dict[FreeWord, int] = defaultdict(int)
        for word, coef in self.terms:
            acc[word] += int(coef)
        merged = sorted(((w, c) for w, c in acc.items() if c), key=lambda t: t[0].sort_key())
        object.__setattr__(self, "terms", tuple(merged))

    @classmethod
    def from_mapping(cls, mapping: Mapping[FreeWord, int]) -> "FreeWordSum":
        return cls(tuple(mapping.items()))

    @classmethod
    def of(cls, word: Union[FreeWord, str], coef: int = 1) -> "FreeWordSum":
        if isinstance(word, str):
            word = parse_word(word, alphabet=None)
        return cls(((word, coef),))

    def as_dict(self) -> Dict[FreeWord, int]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: "FreeWordSum") -> "FreeWordSum":
        if not isinstance(other, FreeWordSum):
            return NotImplemented
        return FreeWordSum(self.terms + other.terms)

    def __neg__(self) -> "FreeWordSum":
        return FreeWordSum(tuple((w, -c) for w, c in self.terms))

    def __sub__(self, other: "FreeWordSum") -> "FreeWordSum":
        if not isinstance(other, FreeWordSum):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "FreeWordSum":
        if isinstance(other, int):
            return FreeWordSum(tuple((w, c * other) for w, c in self.terms))
        if isinstance(other, FreeWord):
            other = FreeWordSum(((other, 1),))
        if not isinstance(other, FreeWordSum):
            return NotImplemented
        return FreeWordSum(tuple(
            (u * v, a * b) for u, a in self.terms for v, b in other.terms
        ))

    def __rmul__(self, other) -> "FreeWordSum":
        if isinstance(other, int):
            return self * other
        if isinstance(other, FreeWord):
            return FreeWordSum(tuple((other * w, c) for w, c in self.terms))
        return NotImplemented

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out: List[str] = []
        for word, coef in self.terms:
            mag = abs(coef)
            body = str(word) if mag == 1 else (str(mag) if not word else f"{mag}*{word}")
            if not out:
                out.append(("-" if coef < 0 else "") + body)
            else:
                out.append(("- " if coef < 0 else "+ ") + body)
        return " ".join(out)


ONE = FreeWordSum(((IDENTITY, 1),))
ZERO = FreeWordSum()


def generator_minus_one(gen: str) -> FreeWordSum:
    """The element g - 1."""
    return FreeWordSum.of(FreeWord.generator(gen)) - ONE


_TERM = re.compile(r"^\s*(?P<coef>\d+)?\s*\*?\s*(?P<word>.*?)\s*$")


def _split_terms(text: str) -> List[Tuple[int, str]]:
    terms: List[Tuple[int, str]] = []
    depth = 0
    sign = 1
    start = 0
    prev = ""
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and prev != "^":
            chunk = text[start:i]
            if chunk.strip():
                terms.append((sign, chunk))
            elif prev:
                raise InputError(f"missing term before position {i}", detail={"position": i}, code="syntax_error")
            sign = 1 if ch == "+" else -1
            start = i + 1
        if not ch.isspace():
            prev = ch
    chunk = text[start:]
    if not chunk.strip():
        raise InputError("trailing operator in word sum", detail={"text": text}, code="syntax_error")
    terms.append((sign, chunk))
    return terms


def parse_word_sum(text: str, alphabet: Optional[Sequence[str]] = GENERATORS) -> FreeWordSum:
    """Parse a sum such as ``"1 + xy - xyxYX"`` or ``"2*x^2 - y"``; ``"0"`` is zero."""
    if text.strip() == "0":
        return ZERO
    result: List[Tuple[FreeWord, int]] = []
    for sign, chunk in _split_terms(text):
        m = _TERM.match(chunk)
        coef = int(m.group("coef")) if m.group("coef") else 1
        body = m.group("word")
        word = parse_word(body, alphabet) if body else IDENTITY
        result.append((word, sign * coef))
    return FreeWordSum(tuple(result))


# ============================================================================
# Fox calculus
# ============================================================================

def fox_derivative(r: Union[FreeWord, FreeWordSum], gen: str) -> FreeWordSum:
    """The free derivative d/d(gen), extended linearly to word sums."""
    if isinstance(r, FreeWordSum):
        total = ZERO
        for word, coef in r.terms:
            total = total + fox_derivative(word, gen) * coef
        return total
    terms: List[Tuple[FreeWord, int]] = []
    prefix: List[Letter] = []
    for letter in r.letters:
        g, sign = letter
        if g == gen:
            if sign > 0:
                terms.append((FreeWord(tuple(prefix)), 1))
            else:
                terms.append((FreeWord(tuple(prefix + [letter])), -1))
        prefix.append(letter)
    return FreeWordSum(tuple(terms))


# ============================================================================
# Abelianization
# ============================================================================

@dataclass(frozen=True)
class AbelianizationMap:
    """Integral map from the generator lattice Z^k to H_1 modulo torsion.

    Rows are covectors on Z^k; the image of a word is the matrix applied to
    its exponent vector.
    """

    matrix: Tuple[Tuple[int, ...], ...]
    alphabet: Tuple[str, ...] = GENERATORS

    def __post_init__(self):
        rows = tuple(tuple(int(a) for a in row) for row in self.matrix)
        if any(len(row) != len(self.alphabet) for row in rows):
            raise InputError("abelianization matrix does not match the alphabet", code="shape_mismatch")
        object.__setattr__(self, "matrix", rows)
        object.__setattr__(self, "alphabet", tuple(self.alphabet))

    @classmethod
    def identity(cls, alphabet: Sequence[str] = GENERATORS) -> "AbelianizationMap":
        k = len(alphabet)
        return cls(tuple(tuple(int(i == j) for j in range(k)) for i in range(k)), tuple(alphabet))

    @classmethod
    def from_relations(cls, rows: Iterable[Sequence[int]]) -> "AbelianizationMap":
        """Projection Z^2 -> H/torsion for H = Z^2 / (span of the relation rows)."""
        nonzero = [tuple(int(a) for a in row) for row in rows if any(row)]
        if any(len(row) != 2 for row in nonzero):
            raise InputError("relations must be vectors in Z^2", code="shape_mismatch")
        if not nonzero:
            return cls.identity()
        a, b = nonzero[0]
        if any(a * d - b * c for c, d in nonzero[1:]):
            return cls(())
        g = gcd(a, b)
        cov = (b // g, -a // g)
        if cov[0] < 0 or (cov[0] == 0 and cov[1] < 0):
            cov = (-cov[0], -cov[1])
        return cls((cov,))

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def apply(self, vector: Sequence[int]) -> Point:
        return tuple(sum(a * v for a, v in zip(row, vector)) for row in self.matrix)

    def image(self, word: FreeWord) -> Point:
        return self.apply(word.exponent_vector(self.alphabet))

    def generator_image(self, gen: str) -> Point:
        return self.image(FreeWord.generator(gen))


def abelianize_fibers(f: FreeWordSum, A: AbelianizationMap) -> Dict[Point, FreeWordSum]:
    """Split f by the lattice point of each word; zero fibers are dropped."""
    buckets: Dict[Point, List[Tuple[FreeWord, int]]] = defaultdict(list)
    for word, coef in f.terms:
        buckets[A.image(word)].append((word, coef))
    fibers = {h: FreeWordSum(tuple(terms)) for h, terms in sorted(buckets.items())}
    return {h: s for h, s in fibers.items() if s}


def newton_polytope(f: FreeWordSum, A: AbelianizationMap) -> IntegralPolytope:
    if A.rank == 0:
        raise UnsupportedError("first Betti number is zero; there is no lattice", code="b1_zero")
    fibers = abelianize_fibers(f, A)
    if not fibers:
        raise InputError("Newton polytope of the zero element", code="zero_element")
    return hull(fibers)


def walk_trace(w: FreeWord, alphabet: Sequence[str] = GENERATORS) -> List[Point]:
    """Lattice points visited reading w from the left, origin included."""
    index = {g: i for i, g in enumerate(alphabet)}
    pos = [0] * len(alphabet)
    trace = [tuple(pos)]
    for gen, sign in w.letters:
        pos[index[gen]] += sign
        trace.append(tuple(pos))
    return trace


# ============================================================================
# Presentations
# ============================================================================

_PRESENTATION = re.compile(r"^\s*<(?P<gens>[^|>]*)\|(?P<rel>[^>]*)>\s*$")


@dataclass(frozen=True)
class Presentation:
    """<x, y | r> together with the facts the invariants depend on."""

    relator: FreeWord
    text: str
    exponent_sums: Tuple[int, int]
    b1: int
    nonempty: bool
    reduced: bool
    cyclically_reduced: bool
    proper_power: bool
    abelianization: AbelianizationMap

    @property
    def nice(self) -> bool:
        return self.nonempty and self.reduced and self.cyclically_reduced and self.b1 == 2

    def flags(self) -> Dict[str, bool]:
        return {
            "nonempty": self.nonempty,
            "reduced": self.reduced,
            "cyclically_reduced": self.cyclically_reduced,
            "proper_power": self.proper_power,
        }

    def require_cyclically_reduced(self) -> None:
        failed = [k for k in ("nonempty", "reduced", "cyclically_reduced") if not getattr(self, k)]
        if failed:
            raise ValidationError(
                f"relator fails: {', '.join(failed)}",
                detail={"relator": str(self.relator), "failed": failed}, code="not_reduced",
            )

    def require_nice(self) -> None:
        self.require_cyclically_reduced()
        if self.b1 != 2:
            raise ValidationError(
                "presentation is not nice: b1 must be 2 (both exponent sums zero)",
                detail={"b1": self.b1, "exponent_sums": list(self.exponent_sums)},
                code="not_nice",
            )


def _presentation_body(text: str) -> str:
    m = _PRESENTATION.match(text)
    if m is None:
        if "<" in text or "|" in text or ">" in text:
            raise InputError("malformed presentation, expected <x,y|WORD>", detail={"text": text}, code="syntax_error")
        return text
    gens = [g.strip() for g in m.group("gens").split(",")]
    if gens != list(GENERATORS):
        raise InputError(
            "only presentations on the generators x, y are supported",
            detail={"generators": gens}, code="unknown_generator",
        )
    return m.group("rel")


def validate(text: str) -> Presentation:
    body = _presentation_body(text)
    literal = parse_letters(body, GENERATORS)
    if not literal:
        raise InputError("empty relator", detail={"text": text}, code="empty_relator")
    relator = FreeWord(tuple(literal))
    reduced = relator.letters == tuple(literal)
    nonempty = bool(relator)
    ex, ey = relator.exponent_vector(GENERATORS)
    b1 = 2 if ex == 0 and ey == 0 else 1
    pres = Presentation(
        relator=relator,
        text=text.strip(),
        exponent_sums=(ex, ey),
        b1=b1,
        nonempty=nonempty,
        reduced=reduced,
        cyclically_reduced=reduced and nonempty and is_cyclically_reduced(relator),
        proper_power=nonempty and is_proper_power(relator),
        abelianization=AbelianizationMap.from_relations([(ex, ey)]),
    )
    logger.debug("validated %s: b1=%d flags=%s", relator, b1, pres.flags())
    return pres
