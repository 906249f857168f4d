"""Worked suite for the real projective Lagrangian inside complex projective space.

For odd n >= 3 the Lagrangian carries a brane structure (its stable tangent
bundle is n + 1 copies of one line bundle, and n + 1 is even, so it extends
over the ambient space), the Floer cohomology has exactly one generator x_d
per degree d mod n + 1, and the primitives Q_i of index 2^(i+1) <= n - 1 act
on it.  The action is pinned by the degree-1 power rule away from the top of
each period; in the band of width 2^(i+1) - 1 below the period boundary the
associated-graded argument says nothing, and entries there are reported as
undetermined rather than guessed.

For a clean intersection consisting of a point plus a connected component C,
the surviving structure forces two families of relations on the cohomology
generators y_d of C (one from each filtration direction); where both apply
they combine into a product formula and a closed form for the generator
action, and a degree-(2^(i+1) - 1) tangential characteristic class of C is
forced to be nonzero.

The only known realization of such a component is the (n-1)-dimensional real
projective space (a standard Morse-Bott pushoff produces it), and one may
expect it to be the only one up to homotopy equivalence; the engine never
assumes that, and keeps products of the y_d formal except where the combined
identities pin them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .char_classes import ThomTwist
from .rings import (
    ACTION_NONE,
    AlgebraError,
    ConsistencyError,
    Generator,
    RingElement,
    RingPresentation,
    rp_ring,
)
from .steenrod import (
    BraneInfeasibleError,
    apply,
    available_qs_for_lagrangian,
    milnor_q,
)
from .ohpoz import DegreeWindow, pss_range


class UnavailableOperation(AlgebraError):
    """The requested primitive does not act for this Lagrangian."""


def _check_available(n: int, i: int):
    if i not in available_qs_for_lagrangian(n):
        raise UnavailableOperation(f"Q_{i} does not act for n = {n} (need 2^(i+1) <= n - 1)")


# -- brane feasibility ----------------------------------------------------------


@dataclass(frozen=True)
class BraneVerdict:
    feasible: bool
    reason: str


def brane_feasible(n: int) -> BraneVerdict:
    """Whether the n-dimensional real projective Lagrangian carries a brane.

    The stable tangent bundle is (n + 1) copies of the tautological line
    bundle; the ambient restriction provides those in pairs, so the parity of
    n + 1 decides.  Equivalently the minimal period n + 1 must be even.
    """
    if n < 2:
        raise AlgebraError("brane_feasible needs n >= 2")
    if n % 2 == 1:
        return BraneVerdict(
            True,
            f"n + 1 = {n + 1} is even: the (n+1)-fold line-bundle tangent class "
            "extends over the ambient space in pairs",
        )
    return BraneVerdict(
        False,
        f"n + 1 = {n + 1} is odd: a brane structure would force an even minimal period",
    )


# -- the Floer action table -------------------------------------------------------


@dataclass(frozen=True)
class StrongQiValue:
    status: str  # "determined" | "transgression-unknown"
    coefficient: int | None = None  # 0 or 1 when determined
    degree: int | None = None  # index of the target generator, mod n + 1

    def render(self) -> str:
        if self.status != "determined":
            return "transgression-unknown"
        return f"x_{self.degree}" if self.coefficient else "0"


def strong_qi(n: int, i: int, d: int) -> StrongQiValue:
    """Action of Q_i on the degree-d Floer generator, when determined.

    Determined range: 0 <= d <= n - 2^(i+1) + 1, where the value is d times
    the generator 2^(i+1) - 1 steps up (indices mod n + 1).  Above that the
    operation crosses a period boundary and the counting argument leaves it
    open.
    """
    if n % 2 == 0 or n < 3:
        raise BraneInfeasibleError(f"n = {n}: no brane structure (need n odd and >= 3)")
    _check_available(n, i)
    if not 0 <= d <= n:
        raise AlgebraError(f"degree d = {d} out of range 0..{n}")
    step = 2 ** (i + 1) - 1
    if d <= n - 2 ** (i + 1) + 1:
        return StrongQiValue("determined", d % 2, (d + step) % (n + 1))
    return StrongQiValue("transgression-unknown")


@dataclass(frozen=True)
class AlphaEntry:
    coefficient: int  # k mod 2
    exponent: int  # k + 2^(i+1) - 1, before truncation
    value: RingElement  # the truncated ring value (may be zero)


def projective_action_table(n: int) -> dict:
    """Action of every available Q_i on the powers x^k of the projective ring.

    Each entry is computed by the Cartan-formula evaluator and asserted equal
    to the closed form k * x^(k + 2^(i+1) - 1) (truncated); a mismatch means
    the engine is internally inconsistent.
    """
    ring = rp_ring(n)
    table: dict[tuple[int, int], AlphaEntry] = {}
    for i in sorted(available_qs_for_lagrangian(n)):
        step = 2 ** (i + 1) - 1
        q = milnor_q(i)
        for k in range(n + 1):
            computed = apply(q, ring.gen("x", k) if k else ring.one())
            closed = ring.element([(k + step,)]) if k % 2 else ring.zero()
            if computed != closed:
                raise ConsistencyError(
                    f"evaluator disagrees with the closed form at (i={i}, k={k})"
                )
            table[(i, k)] = AlphaEntry(k % 2, k + step, computed)
    return table


# -- point + connected component identities ---------------------------------------


def y_cohomology_ring(n: int) -> RingPresentation:
    """Formal model of the cohomology of the connected component: one
    generator y_d in each degree 1..n-1.  Products of the y_d are kept as
    opaque basis monomials, and no square action is assumed."""
    return RingPresentation(
        tuple(Generator(f"y{d}", d, action=ACTION_NONE) for d in range(1, n))
    )


def _y(ring: RingPresentation, d: int) -> RingElement:
    return ring.one() if d == 0 else ring.gen(f"y{d}")


def primary_identity_max_d(n: int, r: int, i: int) -> int:
    """Top degree for the main identity."""
    return n - max(1, r) - 2 ** (i + 1) + 1


def dual_identity_max_d(n: int, r: int, i: int) -> int:
    """Top degree for the reversed-filtration identity."""
    return min(n - 1, (r - 2) % (n + 1)) - 2 ** (i + 1) + 1


@dataclass(frozen=True)
class PtConnParams:
    n: int  # odd, >= 3
    r: int  # residue with the point's grading one below it, in 0..n
    i: int  # operation index
    d: int  # degree of the component generator

    def __post_init__(self):
        if self.n < 3 or self.n % 2 == 0:
            raise BraneInfeasibleError(f"n = {self.n}: need n odd and >= 3")
        if not 0 <= self.r <= self.n:
            raise AlgebraError(f"residue r = {self.r} out of range 0..{self.n}")
        _check_available(self.n, self.i)
        if self.d < 0:
            raise AlgebraError("degree d must be >= 0")


@dataclass(frozen=True)
class PtConnReport:
    params: PtConnParams
    applicable: tuple  # subset of ("primary", "dual")
    primary_rhs: RingElement | None  # value of Q_i y_d from the main identity
    dual_rhs: RingElement | None  # value from the reversed-filtration identity
    product_relation: tuple | None  # (y_{d+step}, y_d * y_step) when both apply
    qi_value: RingElement | None  # d * y_{d+step} when both apply


def ptconn_identities(params: PtConnParams) -> PtConnReport:
    """Evaluate which of the two identities constrain Q_i y_d, mod 2.

    Main identity (degrees 0 <= d <= n - max(1, r) - 2^(i+1) + 1):
        Q_i y_d = (r + d) y_{d+s} + r y_s y_d,     s = 2^(i+1) - 1.
    Reversed-filtration identity (0 <= d <= min(n-1, (r-2) mod (n+1)) - 2^(i+1) + 1):
        Q_i y_d = (r + d + 1) y_{d+s} + (r + 1) y_s y_d.
    Where both hold, their sum forces y_{d+s} = y_d y_s and Q_i y_d = d y_{d+s}.
    Out-of-range parameters yield an empty applicability set.
    """
    n, r, i, d = params.n, params.r, params.i, params.d
    step = 2 ** (i + 1) - 1
    ring = y_cohomology_ring(n)
    applicable = []
    primary_rhs = dual_rhs = None
    if 0 <= d <= primary_identity_max_d(n, r, i):
        applicable.append("primary")
        primary_rhs = _y(ring, d + step).scale(r + d) + (_y(ring, step) * _y(ring, d)).scale(r)
    if 0 <= d <= dual_identity_max_d(n, r, i):
        applicable.append("dual")
        dual_rhs = _y(ring, d + step).scale(r + d + 1) + (_y(ring, step) * _y(ring, d)).scale(
            r + 1
        )
    product_relation = qi_value = None
    if primary_rhs is not None and dual_rhs is not None:
        product_relation = (_y(ring, d + step), _y(ring, d) * _y(ring, step))
        qi_value = _y(ring, d + step).scale(d)
    return PtConnReport(params, tuple(applicable), primary_rhs, dual_rhs, product_relation, qi_value)


@dataclass(frozen=True)
class QtcVerdict:
    status: str  # "guaranteed" | "not-guaranteed"
    value: RingElement | None
    r_prime: int  # residue seen by the reversed filtration

    def render(self) -> str:
        return str(self.value) if self.status == "guaranteed" else "not-guaranteed"


def ptconn_qtc(n: int, r: int, i: int) -> QtcVerdict:
    """Nonvanishing of the degree-(2^(i+1)-1) tangential class of the component.

    Guaranteed when 2^(i+1) <= min(n-1, n-r, (r-2) mod (n+1)) + 1, i.e. when
    both identity ranges admit d = 0; the class then equals y_{2^(i+1)-1}.
    """
    if n < 3 or n % 2 == 0:
        raise BraneInfeasibleError(f"n = {n}: need n odd and >= 3")
    if not 0 <= r <= n:
        raise AlgebraError(f"residue r = {r} out of range 0..{n}")
    r_prime = (n - r + 2) % (n + 1)
    bound = min(n - 1, n - r, (r - 2) % (n + 1)) + 1
    if i in available_qs_for_lagrangian(n) and 2 ** (i + 1) <= bound:
        ring = y_cohomology_ring(n)
        return QtcVerdict("guaranteed", _y(ring, 2 ** (i + 1) - 1), r_prime)
    return QtcVerdict("not-guaranteed", None, r_prime)


@dataclass(frozen=True)
class PowerRuleRecord:
    applicable: bool
    relations: tuple  # pairs (source tag, RingElement rhs) for y_1^(2^(i+1))
    detail: str


def power_rule_check(n: int, r: int, i: int) -> PowerRuleRecord:
    """Expressions for y_1^(2^(i+1)), obtained by substituting d = 1.

    The degree-1 power rule identifies Q_i y_1 with y_1^(2^(i+1)), so every
    identity applicable at d = 1 rewrites that power.  Needs 2^(i+2) < n,
    which guarantees d = 1 lies in at least one range for every residue.
    """
    if 2 ** (i + 2) >= n:
        return PowerRuleRecord(False, (), f"needs 2^(i+2) = {2 ** (i + 2)} < n = {n}")
    report = ptconn_identities(PtConnParams(n, r, i, 1))
    relations = []
    if report.primary_rhs is not None:
        relations.append(("primary", report.primary_rhs))
    if report.dual_rhs is not None:
        relations.append(("dual", report.dual_rhs))
    if report.qi_value is not None:
        relations.append(("combined", report.qi_value))
    detail = "both identities apply" if len(report.applicable) == 2 else (
        f"only the {report.applicable[0]} identity applies" if report.applicable else
        "no identity applies at d = 1"
    )
    return PowerRuleRecord(bool(relations), tuple(relations), detail)


# -- full report --------------------------------------------------------------------


@dataclass(frozen=True)
class HFReport:
    n: int
    period: int
    available: tuple  # sorted operation indices
    actions: dict  # (i, d) -> StrongQiValue
    pss: DegreeWindow

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "period": self.period,
            "available": list(self.available),
            "pss_range": [self.pss.lo, self.pss.hi],
            "generators": [f"x_{d}" for d in range(self.n + 1)],
            "actions": [
                {
                    "i": i,
                    "d": d,
                    "status": v.status,
                    **(
                        {"coefficient": v.coefficient, "degree": v.degree}
                        if v.status == "determined"
                        else {}
                    ),
                }
                for (i, d), v in sorted(self.actions.items())
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "HFReport":
        actions = {}
        for e in data["actions"]:
            if e["status"] == "determined":
                v = StrongQiValue("determined", int(e["coefficient"]), int(e["degree"]))
            else:
                v = StrongQiValue(e["status"])
            actions[(int(e["i"]), int(e["d"]))] = v
        lo, hi = data["pss_range"]
        return cls(
            int(data["n"]),
            int(data["period"]),
            tuple(int(i) for i in data["available"]),
            actions,
            DegreeWindow(int(lo), int(hi)),
        )


def build_hf_report(n: int) -> HFReport:
    """Complete action table for the degree-indexed Floer generators."""
    available = tuple(sorted(available_qs_for_lagrangian(n)))
    actions = {
        (i, d): strong_qi(n, i, d) for i in available for d in range(n + 1)
    }
    return HFReport(n, n + 1, available, actions, pss_range(n, n + 1))


def rpn_thom_twist(n: int, r: int, indices) -> ThomTwist:
    """Twisted module over the projective model of the component, with twist
    classes r * y^(2^(i+1)-1); the consistency rule holds because squaring a
    degree-1 power with odd exponent is exactly the operation's power rule."""
    ring = rp_ring(n - 1)  # the component model is (n-1)-dimensional
    twists = {}
    for i in indices:
        step = 2 ** (i + 1) - 1
        chi = ring.element([(step,)]) if r % 2 else ring.zero()
        twists[i] = chi
    return ThomTwist.make(ring, r, twists)
