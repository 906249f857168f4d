"""Clean-intersection spectral-sequence engine at the level of F2 dimensions.

The first page is assembled from the component cohomologies, shifted by their
twist ranks, with each component replicated across a window of periods (cap
shifts by the period N).  All verdicts are counting arguments: a differential
of bidegree (r, 1) kills one class in filtration p, total degree k, and one
in filtration p + r, total degree k + 1, so per-residue totals can only drop,
and they drop in adjacent-residue pairs.

Differentials are never known here as maps; the engine only decides whether a
pattern of them could exist.  The surplus feasibility check is a conservative
relaxation (a layered max-flow that enforces the order/degree geometry and
per-cell capacities by role, but not page-order scheduling), so it may accept
patterns a finer analysis would reject; it never rejects a realizable one.
Whether differentials may run between caps of the same component is not
constrained either way, beyond the strict filtration order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from itertools import product as _cartesian

import networkx as nx

from .rings import AlgebraError, RingPresentation


@dataclass(frozen=True)
class CleanComponentData:
    """One connected clean component: graded F2 dimensions plus twist data.

    ``twist_rank`` is an absolute representative of the rank of the twisting
    module; only its residue mod the period enters the counting.  The
    ``filtration`` key is the action order among components of one period.
    """

    name: str
    betti: tuple
    twist_rank: int
    filtration: int
    connected: bool = True
    closed_manifold: bool = False
    presentation: RingPresentation | None = None

    def __post_init__(self):
        if not self.betti or any(b < 0 for b in self.betti):
            raise AlgebraError(f"component {self.name}: bad Betti vector")
        if self.connected and self.betti[0] < 1:
            raise AlgebraError(f"component {self.name}: connected but b_0 = 0")
        if self.closed_manifold and tuple(reversed(self.betti)) != tuple(self.betti):
            raise AlgebraError(
                f"component {self.name}: closed manifolds need symmetric Betti numbers"
            )

    @property
    def dim(self) -> int:
        return len(self.betti) - 1


@dataclass(frozen=True)
class CleanScenario:
    n_mu: int
    target: tuple  # graded F2 dimensions of the limit, per residue mod n_mu
    components: tuple
    window: int = 3  # periods; 3 is enough for any (r, 1)-differential between caps

    def __post_init__(self):
        if self.n_mu < 3:
            raise AlgebraError("period must be >= 3")
        if self.window < 3:
            raise AlgebraError("cap window must cover >= 3 periods")
        if len(self.target) != self.n_mu:
            raise AlgebraError("target must list one dimension per residue")
        filts = [c.filtration for c in self.components]
        if len(set(filts)) != len(filts):
            raise AlgebraError("component filtration indices must be distinct")
        object.__setattr__(
            self,
            "components",
            tuple(sorted(self.components, key=lambda c: c.filtration)),
        )

    # -- serialization ---------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "N_mu": self.n_mu,
            "target": list(self.target),
            "window": self.window,
            "components": [
                {
                    "name": c.name,
                    "betti": list(c.betti),
                    "twist": c.twist_rank,
                    "filtration": c.filtration,
                    "connected": c.connected,
                    "closed_manifold": c.closed_manifold,
                }
                for c in self.components
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "CleanScenario":
        n_mu = int(data["N_mu"])
        target = data["target"]
        if target == "oh-rpn":
            target = [1] * n_mu
        comps = tuple(
            CleanComponentData(
                name=e["name"],
                betti=tuple(int(b) for b in e["betti"]),
                twist_rank=int(e["twist"]),
                filtration=int(e.get("filtration", k)),
                connected=bool(e.get("connected", True)),
                closed_manifold=bool(e.get("closed_manifold", False)),
            )
            for k, e in enumerate(data["components"])
        )
        return cls(n_mu, tuple(int(t) for t in target), comps, int(data.get("window", 3)))


@dataclass(frozen=True)
class SpectralPage:
    """Bigraded dimensions, cells indexed by (filtration p, total degree k)."""

    n_mu: int
    cells: tuple  # triples (p, k, dim), dim > 0
    page: int = 1
    variant: str = "cohomological"
    column_info: tuple = ()  # pairs (p, (component name, cap index))

    def __post_init__(self):
        if any(d <= 0 for _, _, d in self.cells):
            raise AlgebraError("page dimensions must be positive")
        if self.variant not in ("cohomological", "homological"):
            raise AlgebraError(f"unknown page variant {self.variant!r}")
        # canonical ordering makes structural equality order-independent
        object.__setattr__(self, "cells", tuple(sorted(self.cells)))
        object.__setattr__(self, "column_info", tuple(sorted(self.column_info)))

    @property
    def differential_bidegree(self) -> tuple[int, int]:
        return (self.page, 1) if self.variant == "cohomological" else (-self.page, -1)

    def cell_map(self) -> dict:
        return {(p, k): d for p, k, d in self.cells}

    def residue_totals(self, k_lo: int, k_hi: int) -> list:
        """Per-residue class counts over total degrees in [k_lo, k_hi)."""
        totals = [0] * self.n_mu
        for _, k, d in self.cells:
            if k_lo <= k < k_hi:
                totals[k % self.n_mu] += d
        return totals


def assemble_e1(s: CleanScenario) -> SpectralPage:
    """First page of the scenario: column p carries the cohomology of its
    component shifted by the twist rank, replicated across cap periods.

    Twist ranks are reduced mod the period before anchoring: changing the
    representative is the same as renumbering caps, and the reduction keeps
    every component inside the window (components must have dimension below
    the period for the window bookkeeping to see whole periods).
    """
    cells = []
    columns = []
    m = len(s.components)
    for cap in range(s.window):
        for pos, comp in enumerate(s.components):
            p = cap * m + pos
            columns.append((p, (comp.name, cap)))
            anchor = comp.twist_rank % s.n_mu
            for j, b in enumerate(comp.betti):
                if b:
                    cells.append((p, anchor + cap * s.n_mu + j, b))
    return SpectralPage(s.n_mu, tuple(cells), 1, "cohomological", tuple(columns))


def dual_page(page: SpectralPage) -> SpectralPage:
    """Homological transpose: degrees and filtrations reflect, dimensions are
    unchanged (mod-2 universal coefficients), and the differential bidegree
    flips sign.  Applying it twice is the identity."""
    variant = "homological" if page.variant == "cohomological" else "cohomological"
    cells = tuple(sorted((-p, -k, d) for p, k, d in page.cells))
    columns = tuple(sorted((-p, info) for p, info in page.column_info))
    return SpectralPage(page.n_mu, cells, page.page, variant, columns)


def reflected_scenario(s: CleanScenario) -> CleanScenario:
    """The scenario whose direct assembly matches the dual page rewritten
    cohomologically: twists negate and shift by the component dimension,
    Betti vectors reverse, filtration order reverses.

    The reflected Betti vectors are page bookkeeping, not spaces, so the
    connectivity flag is dropped (a reversed vector may start with 0).
    """
    comps = tuple(
        replace(
            c,
            twist_rank=-c.twist_rank - c.dim,
            betti=tuple(reversed(c.betti)),
            filtration=-c.filtration,
            connected=False,
        )
        for c in s.components
    )
    return CleanScenario(s.n_mu, s.target, comps, s.window)


# -- differential bookkeeping (optional rank-level input) ----------------------


@dataclass(frozen=True)
class DifferentialDatum:
    """A differential of the given page and rank between two cells."""

    page: int
    source: tuple  # (p, k)
    rank: int


def run_differentials(page: SpectralPage, diffs) -> SpectralPage:
    """Apply rank-level differentials, checking bidegree and capacities."""
    cells = page.cell_map()
    for d in diffs:
        if d.page < 1 or d.rank < 0:
            raise AlgebraError("differential needs page >= 1 and rank >= 0")
        dp, dk = (d.page, 1) if page.variant == "cohomological" else (-d.page, -1)
        src = d.source
        dst = (src[0] + dp, src[1] + dk)
        if cells.get(src, 0) < d.rank or cells.get(dst, 0) < d.rank:
            raise AlgebraError(f"differential rank {d.rank} exceeds cell dimension at {src}->{dst}")
        cells[src] -= d.rank
        cells[dst] -= d.rank
    kept = tuple(sorted((p, k, v) for (p, k), v in cells.items() if v))
    return SpectralPage(page.n_mu, kept, page.page, page.variant, page.column_info)


# -- scenario verdicts ----------------------------------------------------------


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    pair_counts: tuple | None  # (residue rho, pairs killing (rho, rho+1)) per rho
    reason: str


@dataclass(frozen=True)
class ScenarioVerdict:
    kind: str  # "contradiction" | "consistent_collapse_forced" | "surplus_requires_differentials"
    witness_residue: int | None = None
    detail: str = ""
    feasibility: FeasibilityReport | None = None

    def to_json_dict(self) -> dict:
        out = {"kind": self.kind, "detail": self.detail}
        if self.witness_residue is not None:
            out["witness_residue"] = self.witness_residue
        if self.feasibility is not None:
            out["feasibility"] = {
                "feasible": self.feasibility.feasible,
                "pair_counts": list(map(list, self.feasibility.pair_counts or ())),
                "reason": self.feasibility.reason,
            }
        return out


def _death_pair_solutions(surplus: list) -> list:
    """Nonnegative m with m[rho] + m[rho-1] = surplus[rho] on the residue cycle.

    m[rho] counts differential pairs killing one class in residue rho and one
    in rho + 1.  Each pair kills two classes, so an odd total surplus is
    already impossible; on an even cycle there may be a one-parameter family.
    """
    n = len(surplus)
    if sum(surplus) % 2:
        return []
    solutions = []
    for t in range(surplus[0] + 1):  # m[0] + m[n-1] = surplus[0] bounds m[0]
        m = [t]
        ok = True
        for rho in range(1, n):
            nxt = surplus[rho] - m[rho - 1]
            if nxt < 0:
                ok = False
                break
            m.append(nxt)
        if ok and m[0] + m[-1] == surplus[0]:
            solutions.append(tuple(m))
    return solutions


def _pairing_flow_feasible(page: SpectralPage, pair_counts, k_mid: int) -> bool:
    """Max-flow check that the requested pairs have order/degree-compatible
    slots: sources in the middle period, targets strictly later in filtration
    with total degree one higher, per-cell capacities respected by role."""
    need = sum(pair_counts)
    if need == 0:
        return True
    n = page.n_mu
    g = nx.DiGraph()
    cells = page.cells
    for rho, m in enumerate(pair_counts):
        if m:
            g.add_edge("S", ("L", rho), capacity=m)
    for p, k, d in cells:
        if k_mid <= k < k_mid + n:
            rho = k % n
            if pair_counts[rho]:
                g.add_edge(("L", rho), ("low", p, k), capacity=d)
                g.add_edge(("low", p, k), ("lowout", p, k), capacity=d)
    for p, k, d in cells:
        for p2, k2, d2 in cells:
            if p2 > p and k2 == k + 1 and g.has_node(("lowout", p, k)):
                g.add_edge(("lowout", p, k), ("up", p2, k2), capacity=d2)
                g.add_edge(("up", p2, k2), "T", capacity=d2)
    if "S" not in g or "T" not in g:
        return False
    value, _ = nx.maximum_flow(g, "S", "T")
    return value >= need


def check_scenario(s: CleanScenario, differentials=()) -> ScenarioVerdict:
    """Compare first-page totals with the target, residue by residue.

    A deficit anywhere is a contradiction (differentials only shrink the
    page).  An exact match forces collapse, since any differential pair would
    create a deficit.  A surplus must be killable by bidegree-(r, 1) pairs;
    when no such pattern exists geometrically, that is a contradiction too,
    and otherwise the verdict reports a witnessing pair pattern.
    """
    page = assemble_e1(s)
    if differentials:
        page = run_differentials(page, differentials)
    if not page.cells:
        if any(s.target):
            rho = next(r for r, t in enumerate(s.target) if t)
            return ScenarioVerdict(
                "contradiction",
                witness_residue=rho,
                detail="empty first page cannot reach a nonzero target",
            )
        return ScenarioVerdict("consistent_collapse_forced", detail="empty page, zero target")
    k0 = min(k for _, k, _ in page.cells)
    k_mid = k0 + (s.window // 2) * s.n_mu
    totals = page.residue_totals(k_mid, k_mid + s.n_mu)
    for rho in range(s.n_mu):
        if totals[rho] < s.target[rho]:
            return ScenarioVerdict(
                "contradiction",
                witness_residue=rho,
                detail=(
                    f"residue {rho}: first page supports {totals[rho]} < target "
                    f"{s.target[rho]} (differentials cannot create classes)"
                ),
            )
    surplus = [totals[rho] - s.target[rho] for rho in range(s.n_mu)]
    if not any(surplus):
        return ScenarioVerdict(
            "consistent_collapse_forced",
            detail=(
                "first page matches the target in every residue; any differential "
                "pair would create a deficit, so all differentials vanish"
            ),
        )
    solutions = _death_pair_solutions(surplus)
    if not solutions:
        worst = max(range(s.n_mu), key=lambda r: surplus[r])
        return ScenarioVerdict(
            "contradiction",
            witness_residue=worst,
            detail=(
                "surplus classes cannot be killed: differentials remove classes in "
                "adjacent-residue pairs and no nonnegative pair pattern matches the surplus"
            ),
            feasibility=FeasibilityReport(False, None, "no adjacent-pair solution"),
        )
    for m in solutions:
        if _pairing_flow_feasible(page, m, k_mid):
            return ScenarioVerdict(
                "surplus_requires_differentials",
                detail="surplus classes admit an order/degree-compatible pairing",
                feasibility=FeasibilityReport(
                    True, tuple((rho, c) for rho, c in enumerate(m) if c), "max-flow witness"
                ),
            )
    worst = max(range(s.n_mu), key=lambda r: surplus[r])
    return ScenarioVerdict(
        "contradiction",
        witness_residue=worst,
        detail=(
            "surplus classes admit no order/degree-compatible differential pairing "
            "inside the cap window"
        ),
        feasibility=FeasibilityReport(False, None, "no pairing slots (max-flow)"),
    )


def collapse_certificate(s: CleanScenario) -> bool:
    """For an exact-match scenario, confirm by exhaustion that every single
    geometrically possible differential pair would break some residue."""
    page = assemble_e1(s)
    k0 = min(k for _, k, _ in page.cells)
    k_mid = k0 + (s.window // 2) * s.n_mu
    totals = page.residue_totals(k_mid, k_mid + s.n_mu)
    if totals != list(s.target):
        return False
    for p, k, _ in page.cells:
        for p2, k2, _ in page.cells:
            if p2 > p and k2 == k + 1:
                # killing this pair leaves residues k, k+1 short
                if totals[k % s.n_mu] - 1 >= s.target[k % s.n_mu] and totals[
                    k2 % s.n_mu
                ] - 1 >= s.target[k2 % s.n_mu]:
                    return False
    return True


# -- searches and ranges --------------------------------------------------------


def oh_target(n_mu: int) -> tuple:
    """One class per residue: the Floer answer for the projective Lagrangian."""
    return (1,) * n_mu


def point_plus_component_scenario(
    n: int,
    betti,
    point_twist: int,
    component_twist: int,
    window: int = 3,
    connected: bool = True,
    closed: bool = True,
) -> CleanScenario:
    point = CleanComponentData("pt", (1,), point_twist, filtration=0)
    comp = CleanComponentData(
        "C",
        tuple(betti),
        component_twist,
        filtration=1,
        connected=connected,
        closed_manifold=closed,
    )
    return CleanScenario(n + 1, oh_target(n + 1), (point, comp), window)


def connected_scenario(
    n: int,
    betti,
    twist: int,
    window: int = 3,
    connected: bool = True,
    closed: bool = True,
) -> CleanScenario:
    comp = CleanComponentData(
        "C", tuple(betti), twist, filtration=0, connected=connected, closed_manifold=closed
    )
    return CleanScenario(n + 1, oh_target(n + 1), (comp,), window)


def _betti_profiles(max_dim: int, cap: int, connected: bool, closed: bool):
    """All candidate Betti vectors up to the given dimension and entry cap.

    A connected space contributes exactly one class in degree 0; a closed
    manifold has a symmetric profile; the top entry is nonzero (it defines
    the dimension).
    """
    for dim in range(max_dim + 1):
        ranges = []
        for pos in range(dim + 1):
            if pos == 0 and connected:
                ranges.append((1,))
            elif pos == dim:
                ranges.append(tuple(range(1, cap + 1)))
            else:
                ranges.append(tuple(range(cap + 1)))
        for prof in _cartesian(*ranges):
            if closed and tuple(reversed(prof)) != prof:
                continue
            yield prof


def search_components(
    n: int,
    shape: str,
    betti_cap: int = 3,
    connected: bool = True,
    closed: bool = True,
) -> list:
    """All Betti profiles admitting some twist assignment that survives the
    counting test.  Shapes: "conn" (one component, dimension up to n) and
    "pt+conn" (a point plus one component, dimension up to n - 1)."""
    if shape not in ("conn", "pt+conn"):
        raise AlgebraError(f"unknown search shape {shape!r}")
    n_mu = n + 1
    max_dim = n if shape == "conn" else n - 1
    admissible = []
    for profile in _betti_profiles(max_dim, betti_cap, connected, closed):
        found = False
        for twist in range(n_mu):
            if shape == "conn":
                verdict = check_scenario(
                    connected_scenario(n, profile, twist, connected=connected, closed=closed)
                )
                found = verdict.kind != "contradiction"
            else:
                for pt_twist in range(n_mu):
                    verdict = check_scenario(
                        point_plus_component_scenario(
                            n, profile, pt_twist, twist, connected=connected, closed=closed
                        )
                    )
                    if verdict.kind != "contradiction":
                        found = True
                        break
            if found:
                break
        if found:
            admissible.append(profile)
    return sorted(admissible)


@dataclass(frozen=True)
class DegreeWindow:
    lo: int
    hi: int

    @property
    def is_empty(self) -> bool:
        return self.lo > self.hi

    def __contains__(self, d: int) -> bool:
        return self.lo <= d <= self.hi

    def __str__(self) -> str:
        return "empty" if self.is_empty else f"[{self.lo}, {self.hi}]"


def pss_range(n: int, n_mu: int, d_min: int = 0, d_max: int = 0) -> DegreeWindow:
    """Degree window where Floer cohomology agrees with the singular
    cohomology of the Lagrangian; the optional shifts shave the ends for
    coefficient modules spread over degrees [d_min, d_max]."""
    return DegreeWindow(n - n_mu + 2 + d_max, n_mu - 2 + d_min)


def load_scenario(path: str) -> CleanScenario:
    with open(path, "r", encoding="utf-8") as fh:
        return CleanScenario.from_json_dict(json.load(fh))
