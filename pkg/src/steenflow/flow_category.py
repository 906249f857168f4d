"""Finite truncated flow-category specs, their chain complexes and homology.

A spec records generators with an integer grading and a strictly ordered
action key, plus integer counts on pairs whose grading drops by exactly one.
Moduli of dimension >= 1 are never stored; their existence is only reflected
in the requirement that the differential squares to zero, which ``validate``
checks and reports rather than assuming.

Coefficients follow the convention: 0 means the integers, a prime p means the
field with p elements.  Over a field signs are irrelevant; over the integers
the counts carry whatever signs the caller assigned (orientations are input
here, not derived).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

from .linalg import IntMatrix, integer_rank, rank_mod_p, smith_normal_form
from .rings import AlgebraError


class ValidationFailure(AlgebraError):
    """A complex was requested from a spec that fails validation."""


@dataclass(frozen=True)
class FlowGenerator:
    id: str
    mu: int
    rank: int  # action-order key; flows go from smaller to larger rank


@dataclass(frozen=True)
class FlowCategorySpec:
    """A finite window of generators and counts.

    An unbounded index set is represented by such a window together with
    ``periodicity_hint``, the declared grading period of the full object;
    window computations are justified by the stability of homology under
    window growth (see ``finite_range_restrict``).  The hint is metadata,
    nothing recomputes with it.
    """

    truncation: int  # the level N; moduli exist below dimension N - 1
    generators: tuple
    counts: tuple  # triples (from_id, to_id, count)
    periodicity_hint: int | None = None

    def __post_init__(self):
        if self.truncation < 3:
            raise AlgebraError("truncation level N must be >= 3")
        ids = [g.id for g in self.generators]
        if len(set(ids)) != len(ids):
            raise AlgebraError("generator ids must be unique")
        known = set(ids)
        seen_pairs = set()
        for src, dst, _ in self.counts:
            if src not in known or dst not in known:
                raise AlgebraError(f"count references unknown generator ({src}, {dst})")
            if (src, dst) in seen_pairs:
                raise AlgebraError(f"duplicate count for pair ({src}, {dst})")
            seen_pairs.add((src, dst))

    def generator(self, gid: str) -> FlowGenerator:
        for g in self.generators:
            if g.id == gid:
                return g
        raise AlgebraError(f"unknown generator {gid!r}")

    def count_map(self) -> dict:
        return {(s, d): c for s, d, c in self.counts}

    # -- serialization ---------------------------------------------------

    def to_json_dict(self) -> dict:
        out = {
            "N": self.truncation,
            "generators": [
                {"id": g.id, "mu": g.mu, "rank": g.rank} for g in self.generators
            ],
            "counts": [
                {"from": s, "to": d, "count": c} for s, d, c in self.counts
            ],
        }
        if self.periodicity_hint is not None:
            out["periodicity"] = self.periodicity_hint
        return out

    @classmethod
    def from_json_dict(cls, data: dict) -> "FlowCategorySpec":
        gens = tuple(
            FlowGenerator(e["id"], int(e["mu"]), int(e["rank"]))
            for e in data["generators"]
        )
        counts = tuple(
            (e["from"], e["to"], int(e["count"])) for e in data.get("counts", [])
        )
        return cls(int(data["N"]), gens, counts, data.get("periodicity"))


# -- validation -----------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    kind: str  # "grading_violation" | "ordering_violation" | "d2_violation"
    witness: tuple
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple

    @property
    def clean(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.clean:
            return "clean"
        return "; ".join(f"{v.kind}{v.witness}: {v.detail}" for v in self.violations)


def validate(spec: FlowCategorySpec, coeff: int = 2) -> ValidationReport:
    """Check grading gaps, action ordering, and that the differential squares
    to zero over the chosen coefficients.  Problems are reported, not raised."""
    out: list[Violation] = []
    for src, dst, c in spec.counts:
        if c == 0:
            continue
        a, b = spec.generator(src), spec.generator(dst)
        gap = a.mu - b.mu
        if gap != 1:
            out.append(
                Violation("grading_violation", (src, dst), f"grading gap {gap} != 1")
            )
        if a.rank >= b.rank:
            out.append(
                Violation(
                    "ordering_violation",
                    (src, dst),
                    f"action ranks {a.rank} >= {b.rank} (counted pairs need a strict order)",
                )
            )
    # d^2 over pairs with grading gap 2, using only legal gap-1 counts
    cmap = {}
    for src, dst, c in spec.counts:
        if spec.generator(src).mu - spec.generator(dst).mu == 1:
            cmap[(src, dst)] = c
    by_mu: dict[int, list] = {}
    for g in spec.generators:
        by_mu.setdefault(g.mu, []).append(g)
    for p in spec.generators:
        for r in by_mu.get(p.mu - 2, []):
            total = sum(
                cmap.get((p.id, q.id), 0) * cmap.get((q.id, r.id), 0)
                for q in by_mu.get(p.mu - 1, [])
            )
            if coeff:
                total %= coeff
            if total:
                out.append(
                    Violation(
                        "d2_violation",
                        (p.id, r.id),
                        f"d^2 entry {total} over {'Z' if coeff == 0 else f'F{coeff}'}",
                    )
                )
    return ValidationReport(tuple(out))


# -- the chain complex ------------------------------------------------------


@dataclass(frozen=True)
class FloerComplex:
    coeff: int  # 0 for Z, a prime p for F_p
    bases: dict  # degree -> ordered tuple of generator ids
    differentials: dict  # degree n -> IntMatrix mapping degree n to n - 1

    def degree_span(self) -> tuple[int, int] | None:
        if not self.bases:
            return None
        return (min(self.bases), max(self.bases))

    def differential(self, n: int) -> IntMatrix:
        if n in self.differentials:
            return self.differentials[n]
        return IntMatrix.zero(len(self.bases.get(n - 1, ())), len(self.bases.get(n, ())))


def floer_complex(spec: FlowCategorySpec, coeff: int = 2) -> FloerComplex:
    """Assemble the chain complex; refuses specs that do not validate."""
    report = validate(spec, coeff)
    if not report.clean:
        raise ValidationFailure(str(report))
    by_mu: dict[int, list] = {}
    for g in spec.generators:
        by_mu.setdefault(g.mu, []).append(g)
    bases = {
        mu: tuple(g.id for g in sorted(gens, key=lambda g: (g.rank, g.id)))
        for mu, gens in by_mu.items()
    }
    cmap = spec.count_map()
    diffs: dict[int, IntMatrix] = {}
    for n, src_basis in bases.items():
        dst_basis = bases.get(n - 1, ())
        rows = tuple(
            tuple(cmap.get((s, d), 0) for s in src_basis) for d in dst_basis
        )
        diffs[n] = IntMatrix(rows, len(src_basis), row_labels=dst_basis, col_labels=src_basis)
    return FloerComplex(coeff, bases, diffs)


@dataclass(frozen=True)
class HomologyGroup:
    rank: int  # dimension over F_p, or free rank over Z
    torsion: tuple = ()  # invariant factors > 1, Z coefficients only

    def __str__(self) -> str:
        parts = []
        if self.rank:
            parts.append(f"rank {self.rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


def homology(cx: FloerComplex, lo: int | None = None, hi: int | None = None) -> dict:
    """Kernel-mod-image in each degree of the requested range."""
    span = cx.degree_span()
    if span is None:
        return {}
    if lo is None:
        lo = span[0]
    if hi is None:
        hi = span[1]
    out: dict[int, HomologyGroup] = {}
    for n in range(lo, hi + 1):
        dim = len(cx.bases.get(n, ()))
        d_n = cx.differential(n)
        d_up = cx.differential(n + 1)
        if cx.coeff:
            rank = dim - rank_mod_p(d_n, cx.coeff) - rank_mod_p(d_up, cx.coeff)
            out[n] = HomologyGroup(rank)
        else:
            snf_up = smith_normal_form(d_up)
            free = dim - integer_rank(d_n) - len(snf_up)
            out[n] = HomologyGroup(free, tuple(t for t in snf_up if t > 1))
    return out


def finite_range_restrict(spec: FlowCategorySpec, lo: int, hi: int) -> FlowCategorySpec:
    """Sub-spec on generators whose action rank lies in [lo, hi]."""
    if lo > hi:
        return FlowCategorySpec(spec.truncation, (), (), spec.periodicity_hint)
    keep = tuple(g for g in spec.generators if lo <= g.rank <= hi)
    ids = {g.id for g in keep}
    counts = tuple((s, d, c) for s, d, c in spec.counts if s in ids and d in ids)
    return FlowCategorySpec(spec.truncation, keep, counts, spec.periodicity_hint)


# -- coefficient ring spectra -------------------------------------------------


@lru_cache(maxsize=None)
def partition_count(k: int) -> int:
    """Number of partitions of k, by the usual quadratic recurrence."""
    if k < 0:
        return 0
    if k == 0:
        return 1
    total = 0
    j = 1
    while True:
        g1 = j * (3 * j - 1) // 2
        g2 = j * (3 * j + 1) // 2
        if g1 > k and g2 > k:
            break
        sign = 1 if j % 2 else -1
        if g1 <= k:
            total += sign * partition_count(k - g1)
        if g2 <= k:
            total += sign * partition_count(k - g2)
        j += 1
    return total


@dataclass(frozen=True)
class GroupDescriptor:
    kind: str  # "zero" | "free" | "torsion"
    rank: int = 0
    torsion: tuple = ()

    def __str__(self) -> str:
        if self.kind == "zero":
            return "0"
        if self.kind == "free":
            return f"free of rank {self.rank}"
        return " + ".join(self.torsion)


@dataclass(frozen=True)
class RingSpectrumData:
    """Homotopy of the coefficient ring spectrum, as much as the engine needs.

    Complex bordism has a free homotopy ring with one polynomial generator in
    each even positive degree, hence rank in degree d equal to the number of
    partitions of d/2, and nothing in odd degrees; a truncation zeroes all
    degrees above its level.
    """

    tag: str  # "MU" | "tauMU" | "HFp" | "HZ"
    level: int | None = None
    prime: int = 2

    def __post_init__(self):
        if self.tag not in ("MU", "tauMU", "HFp", "HZ"):
            raise AlgebraError(f"unsupported ring spectrum tag {self.tag!r}")
        if self.tag == "tauMU" and (self.level is None or self.level < 0):
            raise AlgebraError("tauMU needs a truncation level r >= 0")

    @property
    def pi0(self) -> str:
        return f"Z/{self.prime}" if self.tag == "HFp" else "Z"

    def homotopy_group(self, d: int) -> GroupDescriptor:
        if d < 0:
            return GroupDescriptor("zero")
        if self.tag in ("MU", "tauMU"):
            if self.tag == "tauMU" and d > self.level:
                return GroupDescriptor("zero")
            if d % 2:
                return GroupDescriptor("zero")
            return GroupDescriptor("free", partition_count(d // 2))
        if self.tag == "HFp":
            return (
                GroupDescriptor("torsion", torsion=(f"Z/{self.prime}",))
                if d == 0
                else GroupDescriptor("zero")
            )
        return GroupDescriptor("free", 1) if d == 0 else GroupDescriptor("zero")


def obstruction_group(spectrum: RingSpectrumData, gap: int) -> GroupDescriptor:
    """Group housing the obstruction to extending collapse data across a pair
    of generators with the given grading gap: homotopy in degree gap - 2."""
    if gap < 2:
        raise AlgebraError("obstruction groups are defined for gaps >= 2")
    return spectrum.homotopy_group(gap - 2)


@dataclass(frozen=True)
class SafeTruncation:
    r: int
    effective_r: int
    note: str | None = None


def max_safe_truncation(N: int, spectrum: RingSpectrumData | None = None) -> SafeTruncation:
    """Largest coefficient truncation a level-N spec supports: r = N - 3.

    For bordism-type spectra an odd r buys nothing (odd homotopy vanishes),
    so the effective level drops by one.
    """
    if N < 3:
        raise AlgebraError("truncation level N must be >= 3")
    r = N - 3
    effective = r
    if spectrum is not None and spectrum.tag in ("MU", "tauMU") and r % 2 == 1:
        effective = r - 1
    note = "level-0 truncation: plain pi_0 coefficients" if r == 0 else None
    return SafeTruncation(r, effective, note)


def parse_spectrum(text: str) -> RingSpectrumData:
    """Parse CLI ring tags: MU, tauMU:r, HF2 / HFp:p, HZ."""
    text = text.strip()
    if text == "MU":
        return RingSpectrumData("MU")
    if text == "HZ":
        return RingSpectrumData("HZ")
    if text.startswith("tauMU:"):
        return RingSpectrumData("tauMU", level=int(text.split(":", 1)[1]))
    if text.startswith("HFp:"):
        return RingSpectrumData("HFp", prime=int(text.split(":", 1)[1]))
    if text.startswith("HF"):
        return RingSpectrumData("HFp", prime=int(text[2:] or 2))
    raise AlgebraError(f"unknown ring spectrum {text!r}")


def load_spec(path: str) -> FlowCategorySpec:
    with open(path, "r", encoding="utf-8") as fh:
        return FlowCategorySpec.from_json_dict(json.load(fh))
