"""Exact arithmetic in finitely presented graded-commutative F2-algebras.

A ring is presented by named generators with positive degrees and optional
nilpotency truncations (``gen ** e == 0``).  Every coefficient is normalized
to F2, so an element is completely described by its set of monomials
(exponent vectors).  Inhomogeneous elements are allowed; degree queries flag
them explicitly.

Presentations and elements are immutable and every operation is pure, so
values can be shared and evaluated concurrently without coordination.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class AlgebraError(Exception):
    """Base class for errors raised by the algebra layer."""


class PresentationMismatch(AlgebraError):
    """Operands belong to different ring presentations."""


class InhomogeneousElement(AlgebraError):
    """A homogeneous element was required."""


class ConsistencyError(AlgebraError):
    """An internal cross-check failed; results cannot be trusted."""


# Steenrod behaviour of a polynomial generator t of degree d:
#   "polynomial": Sq^0 t = t, Sq^d t = t^2, all other squares vanish.
#   "none": the action on this generator is not part of the presentation.
ACTION_POLYNOMIAL = "polynomial"
ACTION_NONE = "none"
_ACTIONS = (ACTION_POLYNOMIAL, ACTION_NONE)


def binomial_mod2(k: int, i: int) -> int:
    """Binomial coefficient C(k, i) mod 2.

    By Lucas' theorem this is 1 exactly when the binary digits of i are
    contained in those of k.
    """
    if k < 0 or i < 0:
        return 0
    return 1 if (k & i) == i else 0


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    truncation: int | None = None
    action: str = ACTION_POLYNOMIAL

    def __post_init__(self):
        if not self.name or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", self.name):
            raise AlgebraError(f"bad generator name {self.name!r}")
        if self.degree < 1:
            raise AlgebraError(f"generator {self.name}: degree must be >= 1")
        if self.truncation is not None and self.truncation < 1:
            raise AlgebraError(f"generator {self.name}: truncation must be >= 1")
        if self.action not in _ACTIONS:
            raise AlgebraError(f"generator {self.name}: unknown action {self.action!r}")


@dataclass(frozen=True)
class RingPresentation:
    """A graded-commutative F2-algebra given by truncated polynomial generators."""

    generators: tuple[Generator, ...]

    def __post_init__(self):
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise AlgebraError("generator names must be unique")
        object.__setattr__(self, "_hash", hash(self.generators))

    def __hash__(self):  # cached; presentations are hashed heavily by apply()
        return self._hash

    # -- basic queries -------------------------------------------------

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    def index(self, name: str) -> int:
        for k, g in enumerate(self.generators):
            if g.name == name:
                return k
        raise AlgebraError(f"unknown generator {name!r}")

    def monomial_degree(self, exps: tuple[int, ...]) -> int:
        return sum(e * g.degree for e, g in zip(exps, self.generators))

    def reduce_monomial(self, exps: tuple[int, ...]) -> tuple[int, ...] | None:
        """Return the monomial, or None if a truncation relation kills it."""
        for e, g in zip(exps, self.generators):
            if g.truncation is not None and e >= g.truncation:
                return None
        return exps

    # -- element constructors ------------------------------------------

    def zero(self) -> "RingElement":
        return RingElement(self, frozenset())

    def one(self) -> "RingElement":
        return self.element([(0,) * len(self.generators)])

    def gen(self, name: str, power: int = 1) -> "RingElement":
        exps = [0] * len(self.generators)
        exps[self.index(name)] = power
        return self.element([tuple(exps)])

    def element(self, monomials) -> "RingElement":
        """Build an element from exponent vectors, reducing mod 2 and truncations."""
        out: set[tuple[int, ...]] = set()
        for m in monomials:
            m = self.reduce_monomial(tuple(m))
            if m is not None:
                out ^= {m}
        return RingElement(self, frozenset(out))

    # -- enumeration ----------------------------------------------------

    def graded_dimension(self, d: int) -> int:
        """Number of monomials of total degree d."""
        if d < 0:
            return 0
        counts = [1] + [0] * d
        for g in self.generators:
            top = g.truncation - 1 if g.truncation is not None else d // g.degree
            nxt = [0] * (d + 1)
            for t in range(d + 1):
                if counts[t] == 0:
                    continue
                for e in range(top + 1):
                    tot = t + e * g.degree
                    if tot > d:
                        break
                    nxt[tot] += counts[t]
            counts = nxt
        return counts[d]

    def monomials_of_degree(self, d: int):
        """Yield every exponent vector of total degree d."""
        gens = self.generators

        def rec(idx: int, remaining: int, acc: tuple[int, ...]):
            if idx == len(gens):
                if remaining == 0:
                    yield acc
                return
            g = gens[idx]
            top = remaining // g.degree
            if g.truncation is not None:
                top = min(top, g.truncation - 1)
            for e in range(top + 1):
                yield from rec(idx + 1, remaining - e * g.degree, acc + (e,))

        yield from rec(0, d, ())

    # -- parsing ---------------------------------------------------------

    def parse(self, text: str) -> "RingElement":
        """Parse the canonical rendering, e.g. ``"w1^3 + w1*w2 + w3"``."""
        text = text.strip()
        if text in ("0", ""):
            return self.zero()
        out: set[tuple[int, ...]] = set()
        for term in text.split("+"):
            term = term.strip()
            if not term:
                raise AlgebraError("empty term in element expression")
            exps = [0] * len(self.generators)
            if term != "1":
                for factor in term.split("*"):
                    m = re.fullmatch(r"\s*([A-Za-z_][A-Za-z0-9_]*)(?:\^(\d+))?\s*", factor)
                    if not m:
                        raise AlgebraError(f"cannot parse factor {factor!r}")
                    exps[self.index(m.group(1))] += int(m.group(2) or 1)
            red = self.reduce_monomial(tuple(exps))
            if red is not None:
                out ^= {red}
        return RingElement(self, frozenset(out))

    # -- serialization ----------------------------------------------------

    def to_json_dict(self) -> dict:
        gens = []
        for g in self.generators:
            entry: dict = {"name": g.name, "degree": g.degree}
            if g.truncation is not None:
                entry["truncation"] = g.truncation
            if g.action != ACTION_POLYNOMIAL:
                entry["action"] = g.action
            gens.append(entry)
        return {"generators": gens}

    @classmethod
    def from_json_dict(cls, data: dict) -> "RingPresentation":
        gens = tuple(
            Generator(
                name=e["name"],
                degree=int(e["degree"]),
                truncation=e.get("truncation"),
                action=e.get("action", ACTION_POLYNOMIAL),
            )
            for e in data["generators"]
        )
        return cls(gens)


@dataclass(frozen=True)
class RingElement:
    """An F2-sum of monomials in a fixed presentation."""

    ring: RingPresentation
    monomials: frozenset

    def __post_init__(self):
        n = len(self.ring.generators)
        for m in self.monomials:
            if len(m) != n or any(e < 0 for e in m):
                raise AlgebraError(f"malformed monomial {m!r}")
            if self.ring.reduce_monomial(m) is None:
                raise AlgebraError(f"monomial {m!r} violates a truncation relation")

    # -- predicates -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.monomials

    @property
    def is_homogeneous(self) -> bool:
        return len({self.ring.monomial_degree(m) for m in self.monomials}) <= 1

    def degree(self) -> int | None:
        """Common degree of all monomials; None for zero.

        Raises InhomogeneousElement when monomials of different degrees mix.
        """
        degs = {self.ring.monomial_degree(m) for m in self.monomials}
        if not degs:
            return None
        if len(degs) > 1:
            raise InhomogeneousElement(f"element mixes degrees {sorted(degs)}")
        return degs.pop()

    def degrees(self) -> set[int]:
        return {self.ring.monomial_degree(m) for m in self.monomials}

    def homogeneous_part(self, d: int) -> "RingElement":
        return RingElement(
            self.ring,
            frozenset(m for m in self.monomials if self.ring.monomial_degree(m) == d),
        )

    # -- arithmetic ---------------------------------------------------------

    def _check_ring(self, other: "RingElement"):
        if self.ring != other.ring:
            raise PresentationMismatch("elements live in different presentations")

    def __add__(self, other: "RingElement") -> "RingElement":
        self._check_ring(other)
        return RingElement(self.ring, self.monomials ^ other.monomials)

    def __mul__(self, other: "RingElement") -> "RingElement":
        self._check_ring(other)
        out: set[tuple[int, ...]] = set()
        for a in self.monomials:
            for b in other.monomials:
                m = self.ring.reduce_monomial(tuple(x + y for x, y in zip(a, b)))
                if m is not None:
                    out ^= {m}
        return RingElement(self.ring, frozenset(out))

    def __pow__(self, n: int) -> "RingElement":
        if n < 0:
            raise AlgebraError("negative powers are not defined")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: int) -> "RingElement":
        """Multiply by an integer coefficient, reduced mod 2."""
        return self if c % 2 else self.ring.zero()

    # -- rendering ------------------------------------------------------------

    def __str__(self) -> str:
        if not self.monomials:
            return "0"
        names = self.ring.names
        terms = []
        for m in sorted(self.monomials, reverse=True):
            factors = [
                f"{names[i]}^{e}" if e > 1 else names[i]
                for i, e in enumerate(m)
                if e
            ]
            terms.append("*".join(factors) if factors else "1")
        return " + ".join(terms)


# -- presentation shorthands (the CLI grammar rp:n / cp:n / poly:m) -----------


def rp_ring(n: int) -> RingPresentation:
    """Cohomology of n-dimensional real projective space: F2[x]/(x^(n+1)), |x| = 1."""
    if n < 0:
        raise AlgebraError("rp:n needs n >= 0")
    return RingPresentation((Generator("x", 1, truncation=n + 1),))


def cp_ring(n: int) -> RingPresentation:
    """Cohomology of n-dimensional complex projective space: F2[c]/(c^(n+1)), |c| = 2."""
    if n < 0:
        raise AlgebraError("cp:n needs n >= 0")
    return RingPresentation((Generator("c", 2, truncation=n + 1),))


def poly_ring(m: int, prefix: str = "t") -> RingPresentation:
    """Polynomial ring on m degree-1 generators, used as the evaluation oracle ring."""
    if m < 1:
        raise AlgebraError("poly:m needs m >= 1")
    return RingPresentation(tuple(Generator(f"{prefix}{j}", 1) for j in range(1, m + 1)))


def parse_ring_shorthand(text: str) -> RingPresentation:
    m = re.fullmatch(r"(rp|cp|poly):(\d+)", text.strip())
    if not m:
        raise AlgebraError(f"unknown ring shorthand {text!r} (expected rp:n, cp:n or poly:m)")
    kind, n = m.group(1), int(m.group(2))
    if kind == "rp":
        return rp_ring(n)
    if kind == "cp":
        return cp_ring(n)
    return poly_ring(n)
