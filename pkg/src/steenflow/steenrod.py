"""The mod-2 Steenrod algebra and its action on truncated polynomial rings.

Words ``(i1, ..., ik)`` stand for the composite Sq^{i1} ... Sq^{ik}.  A word
is admissible when ``i_j >= 2 * i_{j+1}`` throughout; the admissible words
form a basis, and ``adem_normalize`` rewrites any F2-sum of words into it by
repeated leftmost resolution of inadmissible pairs.

The primitive operations of degree ``2^(i+1) - 1`` are generated recursively
from the degree-1 Bockstein by commutators with the even squares:

    Q_0 = Sq^1,        Q_{i+1} = Sq^(2^(i+1)) Q_i + Q_i Sq^(2^(i+1)).

They form an exterior algebra, obey the Leibniz rule, and on a degree-1
class satisfy the power rule Q_i(x) = x^(2^(i+1)).  The analogous recursion
at an odd prime p (via the p-th power operations and degree 2p^i - 1) is not
implemented here; everything downstream is mod 2.

Availability over coefficient spectra: Q_i always acts over full complex
bordism and over ordinary mod-p coefficients, only the Bockstein survives
over the integers, and over the r-th Postnikov truncation of complex bordism
Q_i is guaranteed exactly when ``r >= 2^(i+1) - 2``.

All functions are pure; the memo tables behind normalization and evaluation
are append-only caches of deterministic values, so concurrent use is safe
under the interpreter's execution model.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .rings import (
    ACTION_POLYNOMIAL,
    AlgebraError,
    InhomogeneousElement,
    RingElement,
    RingPresentation,
    binomial_mod2,
)

Word = tuple[int, ...]


class MissingSteenrodAction(AlgebraError):
    """A generator without an action table was hit by a positive square."""


class BraneInfeasibleError(AlgebraError):
    """The requested Lagrangian carries no compatible brane structure."""


def word_degree(word: Word) -> int:
    return sum(word)


def is_admissible(word: Word) -> bool:
    return all(word[k] >= 2 * word[k + 1] for k in range(len(word) - 1))


@lru_cache(maxsize=None)
def _admissible_expansion(word: Word) -> frozenset:
    """Admissible-basis expansion of a single word (memoized rewriting)."""
    for k in range(len(word) - 1):
        a, b = word[k], word[k + 1]
        if a < 2 * b:
            out: set[Word] = set()
            for c in range(a // 2 + 1):
                if not binomial_mod2(b - c - 1, a - 2 * c):
                    continue
                mid = (a + b - c, c) if c else (a + b - c,)
                out ^= _admissible_expansion(word[:k] + mid + word[k + 2 :])
            return frozenset(out)
    return frozenset({word})


@dataclass(frozen=True)
class SteenrodElement:
    """F2-sum of admissible words, all of one degree."""

    words: frozenset

    def __post_init__(self):
        degs = set()
        for w in self.words:
            if not all(isinstance(i, int) and i > 0 for i in w):
                raise AlgebraError(f"word {w!r} must have positive entries")
            if not is_admissible(w):
                raise AlgebraError(f"word {w!r} is not admissible")
            degs.add(word_degree(w))
        if len(degs) > 1:
            raise AlgebraError(f"element mixes degrees {sorted(degs)}")

    @property
    def is_zero(self) -> bool:
        return not self.words

    def degree(self) -> int | None:
        return word_degree(next(iter(self.words))) if self.words else None

    def __add__(self, other: "SteenrodElement") -> "SteenrodElement":
        out = SteenrodElement(self.words ^ other.words)
        return out

    def __str__(self) -> str:
        if not self.words:
            return "0"
        return " + ".join(
            "Sq(" + ",".join(str(i) for i in w) + ")"
            for w in sorted(self.words, reverse=True)
        )


def adem_normalize(raw) -> SteenrodElement:
    """Rewrite an F2-sum of arbitrary Sq-words in the admissible basis.

    Accepts a SteenrodElement, a single word, or an iterable of words; zero
    entries (identity squares) are dropped from words first.  Idempotent on
    admissible input.
    """
    if isinstance(raw, SteenrodElement):
        words = raw.words
    elif raw and isinstance(raw, tuple) and all(isinstance(x, int) for x in raw):
        words = [raw]
    else:
        words = list(raw)
    out: set[Word] = set()
    for w in words:
        w = tuple(i for i in w if i != 0)
        out ^= _admissible_expansion(w)
    return SteenrodElement(frozenset(out))


def sq(*indices: int) -> SteenrodElement:
    """The element Sq^{i1} ... Sq^{ik}, normalized."""
    return adem_normalize(tuple(indices))


def compose(x: SteenrodElement, y: SteenrodElement, normalize: bool = True):
    """Product x * y in the Steenrod algebra.

    With ``normalize=False`` the raw concatenated words are returned instead
    (useful to exercise evaluation independently of the Adem rewriting).
    """
    raw: set[Word] = set()
    for u in x.words:
        for v in y.words:
            raw ^= {u + v}
    if normalize:
        return adem_normalize(raw)
    return frozenset(raw)


@lru_cache(maxsize=None)
def milnor_q(i: int) -> SteenrodElement:
    """The i-th primitive, of degree 2^(i+1) - 1, in the admissible basis."""
    if i < 0:
        raise AlgebraError("milnor_q needs i >= 0")
    if i == 0:
        return SteenrodElement(frozenset({(1,)}))
    prev = milnor_q(i - 1)
    even = 2**i  # Sq^(2^i) is twice the (2^(i-1))-th power operation
    raw: set[Word] = set()
    for w in prev.words:
        raw ^= {(even,) + w}
        raw ^= {w + (even,)}
    result = adem_normalize(raw)
    if result.degree() != 2 ** (i + 1) - 1:
        raise AlgebraError("primitive recursion produced the wrong degree")
    return result


# -- action on ring elements ---------------------------------------------------


@lru_cache(maxsize=None)
def _submasks_sorted(e: int) -> tuple[int, ...]:
    """All c with C(e, c) odd, ascending (the bitwise submasks of e)."""
    out = []
    s = e
    while True:
        out.append(s)
        if s == 0:
            break
        s = (s - 1) & e
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _sq_monomial(ring: RingPresentation, a: int, mono: Word) -> frozenset:
    """Total square component Sq^a of a monomial, by the Cartan formula.

    Distributes a over the generator powers: a factor t^e of generator degree
    d contributes Sq^(d*c)(t^e) = C(e, c) t^(e+c) and nothing in other
    degrees, so the expansion runs over per-generator choices c with odd
    binomial coefficient and total weight a.
    """
    if a == 0:
        return frozenset({mono})
    gens = ring.generators
    active = [g for g, e in enumerate(mono) if e]
    for g in active:
        if gens[g].action != ACTION_POLYNOMIAL:
            raise MissingSteenrodAction(
                f"generator {gens[g].name!r} carries no square action table"
            )
    out: set[Word] = set()
    exps = list(mono)

    def rec(pos: int, budget: int):
        if pos == len(active):
            if budget == 0:
                red = ring.reduce_monomial(tuple(exps))
                if red is not None:
                    out.symmetric_difference_update((red,))
            return
        g = active[pos]
        d = gens[g].degree
        e = mono[g]
        for c in _submasks_sorted(e):
            cost = d * c
            if cost > budget:
                break
            exps[g] = e + c
            rec(pos + 1, budget - cost)
        exps[g] = e

    rec(0, a)
    return frozenset(out)


def _apply_word(ring: RingPresentation, word: Word, monos: frozenset) -> frozenset:
    current = monos
    for a in reversed(word):
        nxt: set[Word] = set()
        for m in current:
            nxt ^= _sq_monomial(ring, a, m)
        current = frozenset(nxt)
        if not current:
            break
    return current


def apply(op, element: RingElement) -> RingElement:
    """Evaluate a Steenrod operation on a homogeneous ring element.

    ``op`` may be a SteenrodElement, a single word, or any iterable of words;
    raw words are evaluated letter by letter, with no Adem rewriting, which
    is what makes this usable as an oracle for the normalization itself.
    """
    if isinstance(op, SteenrodElement):
        words = op.words
    elif isinstance(op, tuple) and all(isinstance(x, int) for x in op):
        words = [op]
    else:
        words = list(op)
    if not element.is_homogeneous:
        raise InhomogeneousElement("apply() needs a homogeneous element")
    ring = element.ring
    out: set[Word] = set()
    for w in words:
        w = tuple(i for i in w if i != 0)
        out ^= _apply_word(ring, w, element.monomials)
    return RingElement(ring, frozenset(out))


def total_square(element: RingElement) -> RingElement:
    """Sum of all Sq^a applied to a homogeneous element (a finite sum here)."""
    d = element.degree()
    if d is None:
        return element
    result = element.ring.zero()
    for a in range(d + 1):
        result = result + apply((a,), element)
    return result


# -- parsing of operation expressions ------------------------------------------

_TERM_RE = re.compile(
    r"\s*(?:Q(\d+)|Sq\(\s*(\d+(?:\s*,\s*\d+)*)\s*\)|Sq(\d+))\s*"
)


def parse_operation(text: str) -> SteenrodElement:
    """Parse ``"Q1"``, ``"Sq3"`` or the full grammar ``"Sq(3) + Sq(2,1)"``."""
    text = text.strip()
    if text == "0":
        return SteenrodElement(frozenset())
    words: set[Word] = set()
    for term in text.split("+"):
        m = _TERM_RE.fullmatch(term)
        if not m:
            raise AlgebraError(f"cannot parse operation term {term!r}")
        if m.group(1) is not None:
            elem = milnor_q(int(m.group(1)))
            words ^= elem.words
        elif m.group(2) is not None:
            word = tuple(int(x) for x in m.group(2).split(","))
            words ^= _admissible_expansion(tuple(i for i in word if i))
        else:
            words ^= _admissible_expansion((int(m.group(3)),))
    return SteenrodElement(frozenset(words))


# -- availability over coefficient ring spectra ---------------------------------

GATE_KINDS = ("MU", "tauMU", "HFp", "HZ")


@dataclass(frozen=True)
class TruncationGate:
    """Which ring spectrum the operations must lift over."""

    kind: str
    level: int | None = None  # truncation level r, for kind == "tauMU"
    prime: int = 2

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise AlgebraError(f"unknown ring spectrum tag {self.kind!r}")
        if self.kind == "tauMU":
            if self.level is None or self.level < 0:
                raise AlgebraError("tauMU gate needs a truncation level r >= 0")
        elif self.level is not None:
            raise AlgebraError(f"{self.kind} gate takes no truncation level")


def q_available(gate: TruncationGate, i: int) -> bool:
    """Whether Q_i is guaranteed to lift over the given coefficient spectrum."""
    if i < 0:
        raise AlgebraError("q_available needs i >= 0")
    if gate.kind == "MU":
        return True
    if gate.kind == "HFp":
        return True
    if gate.kind == "HZ":
        return i == 0  # only the Bockstein survives integrally
    return 2 ** (i + 1) - 2 <= gate.level


def available_qs_for_lagrangian(n: int) -> set[int]:
    """Indices i with 2^(i+1) <= n - 1, the gate at truncation level n - 3.

    This is the set of primitives acting on the Floer cohomology of the
    n-dimensional real projective Lagrangian; n must be odd and >= 3 for the
    brane structure to exist at all.
    """
    if n < 3 or n % 2 == 0:
        raise BraneInfeasibleError(
            f"n = {n}: no brane structure (need n odd and >= 3)"
        )
    out = set()
    i = 0
    while 2 ** (i + 1) <= n - 1:
        out.add(i)
        i += 1
    return out
