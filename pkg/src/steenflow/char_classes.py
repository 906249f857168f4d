"""Odd power-sum characteristic classes in Stiefel-Whitney variables.

The class of index i is the power sum of the Stiefel-Whitney roots in degree
2^(i+1) - 1, i.e. the image of the Thom class under the i-th primitive,
divided back through the Thom isomorphism.  Its universal expansion in the
elementary symmetric classes w_1, w_2, ... is computed by Newton's identities
over the integers and only then reduced mod 2; running the recursion directly
in characteristic 2 degenerates.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from .rings import (
    ACTION_NONE,
    AlgebraError,
    ConsistencyError,
    Generator,
    RingElement,
    RingPresentation,
)
from . import steenrod


class MissingWClasses(AlgebraError):
    """A formal bundle does not carry enough Stiefel-Whitney data."""


class MissingTwistClass(AlgebraError):
    """The twisted module has no twist class for the requested index."""


@lru_cache(maxsize=None)
def w_ring(max_rank: int) -> RingPresentation:
    """Formal Stiefel-Whitney ring F2[w1..w_max_rank], |w_j| = j.

    Squares on the w_j (Wu-type formulas) are out of scope, so the
    generators carry no action table.
    """
    if max_rank < 1:
        raise AlgebraError("w_ring needs max_rank >= 1")
    return RingPresentation(
        tuple(Generator(f"w{j}", j, action=ACTION_NONE) for j in range(1, max_rank + 1))
    )


def _poly_mul(a: dict, b: dict, rank: int) -> dict:
    out: dict[tuple, int] = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            key = tuple(x + y for x, y in zip(ea, eb))
            out[key] = out.get(key, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


def _e_var(j: int, rank: int) -> dict:
    exps = [0] * rank
    exps[j - 1] = 1
    return {tuple(exps): 1}


@lru_cache(maxsize=None)
def _newton_power_sum(k: int, rank: int) -> tuple:
    """Integer expansion of the k-th power sum in e_1..e_rank (e_j = 0 beyond)."""
    if k < 1:
        raise AlgebraError("power sums are indexed from 1")
    if k == 1:
        return tuple(_e_var(1, rank).items())
    acc: dict[tuple, int] = {}
    for m in range(1, k):
        if m > rank:
            break
        sign = 1 if m % 2 == 1 else -1
        prev = dict(_newton_power_sum(k - m, rank))
        for exps, c in _poly_mul(_e_var(m, rank), prev, rank).items():
            acc[exps] = acc.get(exps, 0) + sign * c
    if k <= rank:
        sign = 1 if k % 2 == 1 else -1
        for exps, c in _e_var(k, rank).items():
            acc[exps] = acc.get(exps, 0) + sign * k * c
    return tuple(sorted((e, c) for e, c in acc.items() if c))


def qi_universal(i: int, max_rank: int) -> RingElement:
    """Power sum p_(2^(i+1)-1) written in w_1..w_max_rank, reduced mod 2.

    Stable once ``max_rank >= 2^(i+1) - 1``; below that the answer is the
    rank-truncated expansion.
    """
    if i < 0:
        raise AlgebraError("qi_universal needs i >= 0")
    k = 2 ** (i + 1) - 1
    ring = w_ring(max_rank)
    monos = [exps for exps, c in _newton_power_sum(k, max_rank) if c % 2]
    return ring.element(monos)


def root_power_sum(ring: RingPresentation, k: int) -> RingElement:
    """Sum of k-th powers of all degree-1 generators of a polynomial ring."""
    out = ring.zero()
    for g in ring.generators:
        if g.degree != 1:
            raise AlgebraError("root_power_sum expects degree-1 generators")
        out = out + ring.gen(g.name, k)
    return out


# -- bundle descriptors -------------------------------------------------------


@dataclass(frozen=True)
class SplitBundle:
    """Sum of line bundles: degree-1 root classes with multiplicities."""

    roots: tuple  # pairs (RingElement, multiplicity)
    trivial_summands: int = 0

    def __post_init__(self):
        for root, mult in self.roots:
            if root.degree() not in (1, None):
                raise AlgebraError("split-bundle roots must be homogeneous of degree 1")
            if mult < 0:
                raise AlgebraError("root multiplicities must be >= 0")


@dataclass(frozen=True)
class FormalBundle:
    """A bundle known only through its total Stiefel-Whitney class.

    ``known_through`` marks the degree up to which the class is trusted; when
    None, the element is taken as complete (all higher components vanish).
    """

    total_sw: RingElement
    known_through: int | None = None

    def __post_init__(self):
        ring = self.total_sw.ring
        if self.total_sw.homogeneous_part(0) != ring.one():
            raise AlgebraError("a total Stiefel-Whitney class starts with 1")


@dataclass(frozen=True)
class VirtualDifference:
    plus: "BundleDescriptor"
    minus: "BundleDescriptor"


BundleDescriptor = Union[SplitBundle, FormalBundle, VirtualDifference]


def bundle_to_json_dict(bundle: BundleDescriptor) -> dict:
    if isinstance(bundle, SplitBundle):
        ring = bundle.roots[0][0].ring if bundle.roots else None
        return {
            "kind": "split",
            "ring": ring.to_json_dict() if ring else None,
            "roots": [{"root": str(r), "multiplicity": m} for r, m in bundle.roots],
            "trivial_summands": bundle.trivial_summands,
        }
    if isinstance(bundle, FormalBundle):
        out = {
            "kind": "formal",
            "ring": bundle.total_sw.ring.to_json_dict(),
            "total_sw": str(bundle.total_sw),
        }
        if bundle.known_through is not None:
            out["known_through"] = bundle.known_through
        return out
    if isinstance(bundle, VirtualDifference):
        return {
            "kind": "difference",
            "plus": bundle_to_json_dict(bundle.plus),
            "minus": bundle_to_json_dict(bundle.minus),
        }
    raise AlgebraError(f"unknown bundle descriptor {bundle!r}")


def bundle_from_json_dict(data: dict) -> BundleDescriptor:
    kind = data.get("kind")
    if kind == "split":
        ring = RingPresentation.from_json_dict(data["ring"])
        roots = tuple((ring.parse(e["root"]), int(e["multiplicity"])) for e in data["roots"])
        return SplitBundle(roots, int(data.get("trivial_summands", 0)))
    if kind == "formal":
        ring = RingPresentation.from_json_dict(data["ring"])
        return FormalBundle(ring.parse(data["total_sw"]), data.get("known_through"))
    if kind == "difference":
        return VirtualDifference(
            bundle_from_json_dict(data["plus"]), bundle_from_json_dict(data["minus"])
        )
    raise AlgebraError(f"unknown bundle kind {kind!r}")


def qi_of_bundle(i: int, bundle: BundleDescriptor) -> RingElement:
    """Evaluate the index-i class on a bundle descriptor.

    Split bundles sum root powers, formal bundles substitute their graded
    Stiefel-Whitney components into the universal expansion, and a virtual
    difference is the sum of its two sides (additivity makes negation a
    no-op mod 2).  Trivial summands contribute nothing.
    """
    k = 2 ** (i + 1) - 1
    if isinstance(bundle, SplitBundle):
        if not bundle.roots:
            raise AlgebraError("split bundle with no roots has no ambient ring")
        ring = bundle.roots[0][0].ring
        out = ring.zero()
        for root, mult in bundle.roots:
            if mult % 2:
                out = out + root**k
        return out
    if isinstance(bundle, FormalBundle):
        if bundle.known_through is not None and bundle.known_through < k:
            raise MissingWClasses(
                f"total class known through degree {bundle.known_through}, need {k}"
            )
        ring = bundle.total_sw.ring
        universal = qi_universal(i, max_rank=k)
        parts = {j: bundle.total_sw.homogeneous_part(j) for j in range(1, k + 1)}
        out = ring.zero()
        for mono in universal.monomials:
            term = ring.one()
            for j, e in enumerate(mono, start=1):
                for _ in range(e):
                    term = term * parts[j]
            out = out + term
        return out
    if isinstance(bundle, VirtualDifference):
        return qi_of_bundle(i, bundle.plus) + qi_of_bundle(i, bundle.minus)
    raise AlgebraError(f"unknown bundle descriptor {bundle!r}")


# -- twisted module action ----------------------------------------------------


@dataclass(frozen=True)
class ThomTwist:
    """A rank-shifted module over a base ring, twisted by given classes.

    ``twists`` maps the operation index i to the class chi_i of degree
    2^(i+1) - 1 (the image of the module's orientation class under Q_i,
    divided by the orientation class).  When the base ring has a full square
    action, each chi_i must satisfy Q_i(chi_i) = chi_i^2; this is what makes
    the twisted action square to zero.
    """

    base: RingPresentation
    rank_shift: int
    twists: tuple  # pairs (i, RingElement)

    def __post_init__(self):
        seen = set()
        for i, chi in self.twists:
            if i < 0 or i in seen:
                raise AlgebraError("twist indices must be distinct and >= 0")
            seen.add(i)
            if chi.ring != self.base:
                raise AlgebraError("twist class lives outside the base ring")
            if not chi.is_zero and chi.degree() != 2 ** (i + 1) - 1:
                raise AlgebraError(
                    f"twist class for i={i} must be homogeneous of degree {2 ** (i + 1) - 1}"
                )
        if all(g.action != ACTION_NONE for g in self.base.generators):
            for i, chi in self.twists:
                if steenrod.apply(steenrod.milnor_q(i), chi) != chi * chi:
                    raise ConsistencyError(
                        f"twist class for i={i} violates Q_i(chi) = chi^2"
                    )

    @classmethod
    def make(cls, base: RingPresentation, rank_shift: int, twists: dict) -> "ThomTwist":
        return cls(base, rank_shift, tuple(sorted(twists.items())))

    def twist_class(self, i: int) -> RingElement:
        for j, chi in self.twists:
            if j == i:
                return chi
        raise MissingTwistClass(f"no twist class recorded for i={i}")


def thom_apply(tw: ThomTwist, i: int, u: RingElement) -> RingElement:
    """Action of the i-th primitive on the twisted module, divided by the
    orientation class: chi_i * u + Q_i(u)."""
    if u.ring != tw.base:
        raise AlgebraError("element lives outside the twist's base ring")
    if not u.is_homogeneous:
        raise AlgebraError("thom_apply needs a homogeneous element")
    chi = tw.twist_class(i)
    return chi * u + steenrod.apply(steenrod.milnor_q(i), u)
