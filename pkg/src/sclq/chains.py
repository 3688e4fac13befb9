"""Groups, cyclic words, and rational chains.

The ambient group is a free product of finitely generated free Abelian groups,
declared as e.g. "Z(a) * Z^2(v1,v2)". Group elements are written as words in
the generators; a word is stored as a cyclic sequence of syllables, one
syllable per maximal run of generators from a single factor. A chain is a
formal rational combination of cyclic words. Stable commutator length is a
function of the chain's image in homology-trivial 1-chains, so the only
normalizations applied here are the ones that matter for the computation:
tightening (cyclic reduction to alternating nonzero syllables), inversion of
negatively weighted words, and merging of equal cyclic words.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Iterator, NamedTuple, Optional, Sequence

from .rationals import Rat, fmt, rat


class ParseError(ValueError):
    """Bad input text; .position is a 0-based character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class TrivialWordError(ValueError):
    """A word reduced to the identity where a nontrivial one is required."""


class NotBoundaryError(ValueError):
    """The chain is not trivial in rational homology, so scl is undefined."""


IDENT_START = "abcdefghijklmnopqrstuvwxyz"
IDENT_CONT = IDENT_START + IDENT_START.upper() + "0123456789_"


@dataclass(frozen=True)
class GroupSpec:
    """A free product of free Abelian factors.

    factors[i] is a tuple of generator names; the factor's rank is its length.
    Generator names are globally unique and start with a lowercase letter, so a
    single uppercase letter in a word can only ever mean "inverse of the
    matching single-letter generator".
    """

    factors: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        seen: dict[str, tuple[int, int]] = {}
        for i, gens in enumerate(self.factors):
            if not gens:
                raise ValueError("factor with no generators")
            for j, g in enumerate(gens):
                if g in seen:
                    raise ValueError(f"duplicate generator name {g!r}")
                seen[g] = (i, j)
        object.__setattr__(self, "_gen_index", seen)

    @property
    def gen_index(self) -> dict[str, tuple[int, int]]:
        return self._gen_index  # type: ignore[attr-defined]

    def rank(self, factor: int) -> int:
        return len(self.factors[factor])

    def describe(self) -> str:
        parts = []
        for gens in self.factors:
            head = "Z" if len(gens) == 1 else f"Z^{len(gens)}"
            parts.append(f"{head}({','.join(gens)})")
        return " * ".join(parts)


class Syllable(NamedTuple):
    """A maximal run of one factor's generators: factor index + exponent vector."""

    factor: int
    exponents: tuple[int, ...]

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.exponents)


@dataclass(frozen=True)
class CyclicWord:
    """A tight cyclic word: nonzero syllables, adjacent factors distinct cyclically.

    Equality and hashing use the least rotation, so two rotations of the same
    cyclic word compare equal while rendering keeps the rotation it was built
    with.
    """

    syllables: tuple[Syllable, ...]

    def __post_init__(self):
        if not self.syllables:
            raise ValueError("empty cyclic word")
        n = len(self.syllables)
        for k, syl in enumerate(self.syllables):
            if syl.is_zero():
                raise ValueError("zero syllable in tight word")
            if n > 1 and syl.factor == self.syllables[(k + 1) % n].factor:
                raise ValueError("adjacent syllables share a factor")

    def canonical(self) -> tuple[Syllable, ...]:
        syls = self.syllables
        best = min(range(len(syls)), key=lambda r: syls[r:] + syls[:r])
        return syls[best:] + syls[:best]

    def __eq__(self, other):
        if not isinstance(other, CyclicWord):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def __len__(self):
        return len(self.syllables)

    def inverse(self) -> "CyclicWord":
        inv = tuple(
            Syllable(s.factor, tuple(-e for e in s.exponents))
            for s in reversed(self.syllables)
        )
        return CyclicWord(inv)

    def is_abelian_loop(self) -> bool:
        return len(self.syllables) == 1

    def render(self, spec: GroupSpec) -> str:
        parts = []
        for syl in self.syllables:
            gens = spec.factors[syl.factor]
            for g, e in zip(gens, syl.exponents):
                if e == 0:
                    continue
                parts.append(g if e == 1 else f"{g}^{e}")
        return " ".join(parts)


@dataclass(frozen=True)
class Chain:
    """Normalized rational chain: positive coefficients on distinct tight words."""

    terms: tuple[tuple[object, CyclicWord], ...]  # (Rational, word)

    def __iter__(self) -> Iterator[tuple[object, CyclicWord]]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def render(self, spec: GroupSpec) -> str:
        out = []
        for coeff, word in self.terms:
            text = word.render(spec)
            out.append(text if coeff == 1 else f"{fmt(coeff)} * {text}")
        return " + ".join(out)


def tighten(syllables: Sequence[Syllable]) -> Optional[CyclicWord]:
    """Cyclically merge same-factor runs and drop zero syllables.

    Returns None when the word collapses to the identity.
    """
    current = [s for s in syllables]
    while True:
        merged: list[Syllable] = []
        for syl in current:
            if syl.is_zero():
                continue
            if merged and merged[-1].factor == syl.factor:
                summed = tuple(
                    a + b for a, b in zip(merged[-1].exponents, syl.exponents)
                )
                merged[-1] = Syllable(syl.factor, summed)
                if merged[-1].is_zero():
                    merged.pop()
            else:
                merged.append(syl)
        # cyclic wrap: first and last may now share a factor
        if len(merged) > 1 and merged[0].factor == merged[-1].factor:
            summed = tuple(
                a + b for a, b in zip(merged[-1].exponents, merged[0].exponents)
            )
            merged = merged[1:-1] + [Syllable(merged[0].factor, summed)]
            current = merged
            continue
        if merged == current:
            break
        current = merged
    if not current:
        return None
    return CyclicWord(tuple(current))


# ---------------------------------------------------------------------------
# parsing


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        self.skip_ws()
        if self.peek() != ch:
            raise ParseError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.peek() in "+-":
            self.pos += 1
        digits = self.pos
        while self.peek().isdigit():
            self.pos += 1
        if self.pos == digits:
            raise ParseError("expected an integer", start)
        return int(self.text[start : self.pos])

    def ident(self) -> str:
        self.skip_ws()
        start = self.pos
        if self.peek() not in IDENT_START:
            raise ParseError("expected a generator name (lowercase letter)", self.pos)
        self.pos += 1
        while self.peek() in IDENT_CONT:
            self.pos += 1
        return self.text[start : self.pos]

    def done(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)


def parse_group_spec(text: str) -> GroupSpec:
    """Parse "Z(a) * Z^2(b,c) * ..." into a GroupSpec."""
    sc = _Scanner(text)
    factors: list[tuple[str, ...]] = []
    while True:
        sc.skip_ws()
        if sc.peek() != "Z":
            raise ParseError("expected 'Z'", sc.pos)
        sc.pos += 1
        rank = 1
        sc.skip_ws()
        if sc.peek() == "^":
            sc.pos += 1
            at = sc.pos
            rank = sc.integer()
            if rank < 1:
                raise ParseError("rank must be at least 1", at)
        sc.expect("(")
        gens = [sc.ident()]
        sc.skip_ws()
        while sc.peek() == ",":
            sc.pos += 1
            gens.append(sc.ident())
            sc.skip_ws()
        sc.expect(")")
        if len(gens) != rank:
            raise ParseError(
                f"rank {rank} factor lists {len(gens)} generators", sc.pos
            )
        factors.append(tuple(gens))
        sc.skip_ws()
        if sc.peek() == "*":
            sc.pos += 1
            continue
        break
    if not sc.done():
        raise ParseError("trailing input after group", sc.pos)
    try:
        return GroupSpec(tuple(factors))
    except ValueError as exc:
        raise ParseError(str(exc), 0) from None


def default_group_for(text: str) -> GroupSpec:
    """One rank-1 factor per distinct lowercase letter appearing in a chain."""
    letters: list[str] = []
    for ch in text:
        low = ch.lower()
        if ch.isalpha() and low not in letters:
            letters.append(low)
    if not letters:
        raise ParseError("chain mentions no generators", 0)
    return GroupSpec(tuple((g,) for g in sorted(letters)))


def _parse_word(sc: _Scanner, spec: GroupSpec) -> CyclicWord:
    """One word: generator tokens with optional ^exponent, longest-match names."""
    names = sorted(spec.gen_index, key=len, reverse=True)
    raw: list[Syllable] = []
    start = sc.pos
    while True:
        sc.skip_ws()
        ch = sc.peek()
        if not ch or ch in "+*":
            break
        matched = None
        for name in names:
            if sc.text.startswith(name, sc.pos):
                matched = name
                break
        exp_sign = 1
        if matched is None:
            if ch.isupper() and ch.lower() in spec.gen_index:
                matched = ch.lower()
                exp_sign = -1
            else:
                raise ParseError(f"unknown generator at {ch!r}", sc.pos)
        sc.pos += len(matched)
        exp = 1
        if sc.peek() == "^":
            sc.pos += 1
            exp = sc.integer()
        factor, coord = spec.gen_index[matched]
        vec = [0] * spec.rank(factor)
        vec[coord] = exp_sign * exp
        raw.append(Syllable(factor, tuple(vec)))
    if not raw:
        raise ParseError("expected a word", sc.pos)
    word = tighten(raw)
    if word is None:
        raise ParseError("word reduces to the identity", start)
    return word


def parse_chain(text: str, spec: Optional[GroupSpec] = None) -> tuple[Chain, GroupSpec]:
    """Parse "3/2 * abAB + c^2" into a normalized chain.

    Without an explicit group, each lowercase letter used becomes its own
    rank-1 free factor.
    """
    if spec is None:
        spec = default_group_for(text)
    sc = _Scanner(text)
    terms: list[tuple[object, CyclicWord]] = []
    while True:
        sc.skip_ws()
        coeff = rat(1)
        # a term may open with "rational *"
        save = sc.pos
        ch = sc.peek()
        if ch.isdigit() or ch in "+-":
            num = sc.integer()
            sc.skip_ws()
            if sc.peek() == "/":
                sc.pos += 1
                den_at = sc.pos
                den = sc.integer()
                if den == 0:
                    raise ParseError("zero denominator", den_at)
                coeff = Rat(num, den)
            else:
                coeff = Rat(num)
            sc.skip_ws()
            if sc.peek() == "*":
                sc.pos += 1
            else:
                raise ParseError("expected '*' after coefficient", sc.pos)
        else:
            sc.pos = save
        word = _parse_word(sc, spec)
        terms.append((coeff, word))
        sc.skip_ws()
        if sc.peek() == "+":
            sc.pos += 1
            continue
        break
    if not sc.done():
        raise ParseError("trailing input after chain", sc.pos)
    return normalize_chain(terms), spec


def normalize_chain(terms: Sequence[tuple[object, CyclicWord]]) -> Chain:
    """Flip negative coefficients onto inverse words, merge equal words, drop zeros."""
    merged: dict[tuple[Syllable, ...], list] = {}
    for coeff, word in terms:
        coeff = Rat(coeff)
        if coeff == 0:
            continue
        if coeff < 0:
            coeff, word = -coeff, word.inverse()
        key = word.canonical()
        if key in merged:
            merged[key][0] += coeff
        else:
            merged[key] = [coeff, word]
    out = [
        (coeff, word)
        for coeff, word in (tuple(v) for v in merged.values())
        if coeff != 0
    ]
    out.sort(key=lambda cw: cw[1].canonical())
    return Chain(tuple(out))


# ---------------------------------------------------------------------------
# homology and scaling


def homology_class(chain: Chain, spec: GroupSpec) -> tuple[tuple[object, ...], ...]:
    """Image in H_1(G;Q) = direct sum of the factors' exponent lattices over Q."""
    sums = [[Rat(0)] * spec.rank(i) for i in range(len(spec.factors))]
    for coeff, word in chain:
        for syl in word.syllables:
            row = sums[syl.factor]
            for k, e in enumerate(syl.exponents):
                row[k] += coeff * e
    return tuple(tuple(row) for row in sums)


def is_boundary(chain: Chain, spec: GroupSpec) -> bool:
    return all(all(x == 0 for x in row) for row in homology_class(chain, spec))


def scale_to_integral(chain: Chain) -> tuple[int, Chain]:
    """Least N >= 1 with N * chain integral; returns (N, scaled chain)."""
    n = 1
    for coeff, _ in chain:
        n = lcm(n, int(coeff.denominator))
    scaled = tuple((Rat(coeff * n), word) for coeff, word in chain)
    return n, Chain(scaled)
