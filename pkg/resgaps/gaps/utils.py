import logging
import math
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple

from resgaps.arith.models import SymMatrix
from resgaps.arith.utils import ceil_sqrt, floor_sqrt, is_rational_square
from resgaps.catalog.models import Catalog, SurfaceCase
from resgaps.catalog.utils import witness_p_dot_o
from resgaps.errors import Inapplicable, TraceError
from resgaps.fibers.utils import contr_single, height, pairing
from resgaps.forms.utils import A4_FORM, four_square, represents
from resgaps.gaps.models import (
    DensityReport,
    GapCertificate,
    GapVerdict,
    NecessaryResult,
    OneGapRow,
    Route,
    SearchWindow,
    Status,
    WitnessTrace,
)
from resgaps.lattice.models import RootA
from resgaps.lattice.utils import (
    cartan,
    find_frame,
    find_vector,
    in_narrow,
    minimal_vector,
    vectors_in_window,
)

logger = logging.getLogger(__name__)

# Root frames inside E(K)^0 that make every height 2ℓ reachable
FRAMES = (
    ("A1^4", SymMatrix.identity(4).scaled(2)),
    ("A4", cartan(RootA(4))),
)

DENSITY_METHODS = ("auto", "decide", "closed-form")


def _window(case: SurfaceCase, k: int) -> Tuple[Fraction, Fraction, bool]:
    """[2+2k-c_max, 2+2k-c_min], right-open when Δ = 2."""
    c_max, c_min, delta = case.bounds
    return 2 + 2 * k - c_max, 2 + 2 * k - c_min, delta == 2


def _to_free(case: SurfaceCase, narrow_coords) -> Tuple[int, ...]:
    return tuple(int(x) for x in case.narrow_gram.apply(narrow_coords))


def _zeros(case: SurfaceCase) -> Tuple[Fraction, ...]:
    return tuple(Fraction(0) for _ in case.t)


def _narrow_trace(case: SurfaceCase, k: int, route: Route, narrow_coords, frame: Optional[str] = None) -> WitnessTrace:
    coords = _to_free(case, narrow_coords)
    return WitnessTrace(
        route=route,
        k=k,
        coords=coords,
        height=case.free_gram.quadratic(coords),
        p_dot_o=k,
        contributions=_zeros(case),
        frame=frame,
    )


def _narrow_route(case: SurfaceCase, k: int, budget: Optional[int]) -> Optional[WitnessTrace]:
    narrow = case.narrow_gram
    for name, pattern in FRAMES:
        frame = find_frame(narrow, pattern)
        if frame is None:
            continue
        weights = four_square(k + 1) if name == "A1^4" else represents(A4_FORM, k + 1, budget)
        if weights is None:
            continue
        coords = tuple(sum(w * root[i] for w, root in zip(weights, frame)) for i in range(narrow.dim))
        return _narrow_trace(case, k, Route.FRAME, coords, frame=name)
    found = find_vector(narrow, 2 + 2 * k, budget)
    if found is None:
        return None
    return _narrow_trace(case, k, Route.NARROW, found.coords)


def _torsion_route(case: SurfaceCase, k: int, budget: Optional[int]) -> Optional[WitnessTrace]:
    if case.torsion.is_trivial:
        return None
    found = find_vector(case.narrow_gram, 2 * k, budget)
    if found is None:
        return None
    coords = _to_free(case, found.coords)
    return WitnessTrace(
        route=Route.TORSION,
        k=k,
        coords=coords,
        height=case.free_gram.quadratic(coords),
        partner="Q",
        p_dot_o=k - 1,
        contributions=_zeros(case),
    )


def _interval_partner(case: SurfaceCase) -> str:
    return "O|Q" if case.bounds.delta == 2 else "O"


def _square_route(case: SurfaceCase, k: int, budget: Optional[int]) -> Optional[WitnessTrace]:
    if case.bounds.delta > 2:
        return None
    lower, upper, upper_open = _window(case, k)
    base = minimal_vector(case.free_gram)
    mu = base.norm
    for n in range(max(ceil_sqrt(lower / mu), 1), floor_sqrt(upper / mu) + 1):
        value = n * n * mu
        if (upper_open and value == upper) or value.denominator == 1:
            continue
        return WitnessTrace(
            route=Route.SQUARE,
            k=k,
            coords=tuple(n * x for x in base.coords),
            height=value,
            partner=_interval_partner(case),
        )
    return None


def _interval_route(case: SurfaceCase, k: int, budget: Optional[int]) -> Optional[WitnessTrace]:
    if case.bounds.delta > 2:
        return None
    lower, upper, upper_open = _window(case, k)
    free = case.free_gram
    best = None
    for vector in vectors_in_window(free, lower, upper, upper_open=upper_open, budget=budget):
        if in_narrow(free, vector.coords):
            continue
        if best is None or vector.sort_key() < best.sort_key():
            best = vector
    if best is None:
        return None
    return WitnessTrace(
        route=Route.INTERVAL,
        k=k,
        coords=best.coords,
        height=best.norm,
        partner=_interval_partner(case),
    )


def _override_route(case: SurfaceCase, k: int, budget: Optional[int]) -> Optional[WitnessTrace]:
    for witness in case.witnesses:
        if witness_p_dot_o(case, witness) != k:
            continue
        return WitnessTrace(
            route=Route.OVERRIDE,
            k=k,
            coords=witness.coords,
            height=case.free_gram.quadratic(witness.coords),
            p_dot_o=k,
            contributions=tuple(contr_single(t, i) for t, i in zip(case.t, witness.components)),
            torsion=witness.torsion,
        )
    return None


ROUTES = (_narrow_route, _torsion_route, _square_route, _interval_route, _override_route)


def check_trace(case: SurfaceCase, trace: WitnessTrace) -> None:
    """Re-derive the claimed intersection number through the height formulas.

    Raises:
        TraceError: If the witness does not give P·O = k (or P·Q = k).
    """
    k = trace.k

    def fail(reason: str):
        raise TraceError(f"case {case.id}, k={k}, {trace.route.value} witness {trace.coords}: {reason}")

    zeros = _zeros(case)
    if trace.route is Route.DISJOINT:
        # O·O = -1 on a rational elliptic surface and ⟨O, Q⟩ = 0
        if k != 0 or case.torsion.is_trivial or pairing(-1, 0, 0, []) != 0:
            fail("O and a torsion section do not give k = 0")
        return

    free = case.free_gram
    h = free.quadratic(trace.coords)
    if h != trace.height:
        fail(f"stated height {trace.height} but h = {h}")
    narrow = in_narrow(free, trace.coords)

    if trace.route in (Route.NARROW, Route.FRAME):
        if not narrow or height(k, zeros) != h:
            fail(f"h = {h} is not 2 + 2k for a section of E(K)^0")
    elif trace.route is Route.TORSION:
        if not narrow or case.torsion.is_trivial:
            fail("needs a section of E(K)^0 and a nonzero torsion section")
        if height(k - 1, zeros) != h or pairing(k - 1, 0, k, zeros) != 0:
            fail(f"h = {h} does not give P·Q = {k}")
    elif trace.route is Route.OVERRIDE:
        if height(k, trace.contributions) != h:
            fail(f"contributions {trace.contributions} do not give P·O = {k}")
    else:
        if narrow:
            fail("interval witnesses must lie outside E(K)^0")
        c_max, c_min, delta = case.bounds
        first = math.ceil((h - 2 + c_min) / 2)
        last = math.floor((h - 2 + c_max) / 2)
        candidates = range(first, last + 1)
        if not candidates:
            fail(f"h = {h} admits no contribution in [{c_min}, {c_max}]")
        for p_dot_o in candidates:
            contribution = 2 + 2 * p_dot_o - h
            if p_dot_o == k:
                continue
            # Δ = 2 and minimal contribution: P·Q = P·O + 1 for torsion Q
            if (
                delta == 2
                and p_dot_o == k - 1
                and contribution == c_min
                and not case.torsion.is_trivial
                and pairing(p_dot_o, 0, k, [Fraction(0)]) == 0
            ):
                continue
            fail(f"P·O = {p_dot_o} with contribution {contribution} is also possible")


def sufficient_realize(case: SurfaceCase, k: int, budget: Optional[int] = None) -> Optional[WitnessTrace]:
    """First sufficient route that produces a section realizing k, validated."""
    for route in ROUTES:
        trace = route(case, k, budget)
        if trace is None:
            continue
        check_trace(case, trace)
        logger.debug(f"case {case.id}, k={k}: realized by {trace.route.value} route, P = {trace.coords}")
        return trace
    return None


def necessary_holds(case: SurfaceCase, k: int, budget: Optional[int] = None) -> NecessaryResult:
    """Whether some section has a height compatible with P·O = k.

    (i) P in E(K)^0 with h = 2+2k, or (ii) P outside E(K)^0 with h in
    [2+2k-c_max, 2+2k-c_min]. With nontrivial torsion every class has a lift
    outside E(K)^0, so (ii) then accepts narrow classes too.
    """
    target = 2 + 2 * k
    c_max, c_min, _ = case.bounds
    found = find_vector(case.narrow_gram, target, budget)
    narrow_window = SearchWindow("narrow", Fraction(target), Fraction(target), found=int(found is not None))
    if found is not None:
        return NecessaryResult(True, "narrow", _to_free(case, found.coords), (narrow_window,))

    free = case.free_gram
    lifts = not case.torsion.is_trivial
    hit = next(
        (
            vector
            for vector in vectors_in_window(free, target - c_max, target - c_min, budget=budget)
            if lifts or not in_narrow(free, vector.coords)
        ),
        None,
    )
    outer_window = SearchWindow("outside-narrow", target - c_max, target - c_min, found=int(hit is not None))
    return NecessaryResult(
        hit is not None,
        "outside-narrow" if hit is not None else None,
        hit.coords if hit is not None else None,
        (narrow_window, outer_window),
    )


def _decide_rank_zero(case: SurfaceCase, k: int) -> GapVerdict:
    if k == 0 and not case.torsion.is_trivial:
        trace = WitnessTrace(Route.DISJOINT, 0, (), Fraction(0), partner="Q", p_dot_o=-1)
        check_trace(case, trace)
        return GapVerdict(case.id, k, Status.REALIZED, witness=trace)
    reason = (
        "E(K) is finite and distinct torsion sections are disjoint"
        if k > 0
        else "E(K) = {O}: there is no second section"
    )
    return GapVerdict(case.id, k, Status.GAP, certificate=GapCertificate((), reason))


def decide(case: SurfaceCase, k: int, budget: Optional[int] = None) -> GapVerdict:
    """Realized, Gap or Unknown for the intersection number k on this surface.

    Raises:
        BudgetExceeded: If an enumeration exceeds the node budget.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if case.rank == 0:
        return _decide_rank_zero(case, k)

    trace = sufficient_realize(case, k, budget)
    if trace is not None:
        return GapVerdict(case.id, k, Status.REALIZED, witness=trace)

    necessary = necessary_holds(case, k, budget)
    if not necessary.holds:
        certificate = GapCertificate(necessary.windows, "no section has a height compatible with P·O = k")
        return GapVerdict(case.id, k, Status.GAP, certificate=certificate)

    _, c_min, delta = case.bounds
    if delta < 2:
        reason = f"section {necessary.coords} meets the necessary condition but no route applies"
    elif delta == 2:
        reason = (
            f"the only candidates have h = {2 + 2 * k - c_min}; deciding needs to know "
            f"whether their contribution equals c_min"
        )
    else:
        reason = f"delta = {delta} > 2 and no narrow, torsion or catalog witness exists"
    logger.warning(f"case {case.id}, k={k}: unknown, {reason}")
    return GapVerdict(case.id, k, Status.UNKNOWN, reason=reason)


def closed_form_r1(case: SurfaceCase, k: int) -> bool:
    """Gap test for torsion-free rank-1 cases: True iff k is a gap.

    k is realized iff μ(2+2k) is a square, or some n with μn ∉ ℤ has n² in
    [(2+2k-c_max)/μ, (2+2k-c_min)/μ].

    E(K)^0 is generated by (1/μ)P here, so its heights are m²/μ and the
    square in the first condition must be the square of an integer.
    """
    if case.rank != 1 or not case.torsion.is_trivial:
        raise Inapplicable(f"case {case.id} is not torsion-free of rank 1")
    mu = case.mu
    c_max, c_min, _ = case.bounds
    target = 2 + 2 * k
    if (mu * target).denominator == 1 and is_rational_square(mu * target):
        return False
    lower, upper = (target - c_max) / mu, (target - c_min) / mu
    for n in range(ceil_sqrt(lower), floor_sqrt(upper) + 1):
        if (mu * n).denominator != 1:
            return False
    return True


def gap_density(case: SurfaceCase, n: int, method: str = "auto", budget: Optional[int] = None) -> DensityReport:
    """Gaps among 1..n; Unknown verdicts are counted apart, never as gaps."""
    if method not in DENSITY_METHODS:
        raise ValueError(f"method must be one of {', '.join(DENSITY_METHODS)}")
    if n < 1:
        raise ValueError("n must be positive")
    applicable = case.rank == 1 and case.torsion.is_trivial
    if method == "closed-form" and not applicable:
        raise Inapplicable(f"case {case.id} is not torsion-free of rank 1")
    closed = method == "closed-form" or (method == "auto" and applicable)

    gaps: List[int] = []
    unknown: List[int] = []
    for k in range(1, n + 1):
        if closed:
            if closed_form_r1(case, k):
                gaps.append(k)
            continue
        status = decide(case, k, budget).status
        if status is Status.GAP:
            gaps.append(k)
        elif status is Status.UNKNOWN:
            unknown.append(k)
    if unknown:
        logger.warning(f"case {case.id}: {len(unknown)} of {n} values stay unknown")
    return DensityReport(case.id, n, "closed-form" if closed else "decide", tuple(gaps), tuple(unknown))


_ONE_GAP_METHODS = {
    Route.TORSION: "torsion-h2",
    Route.SQUARE: "square",
    Route.INTERVAL: "interval",
    Route.OVERRIDE: "override",
}


def _one_gap_row(case: SurfaceCase, budget: Optional[int]) -> OneGapRow:
    if case.rank == 0:
        return OneGapRow(case.id, True, "rank-zero")
    verdict = decide(case, 1, budget)
    if verdict.status is Status.GAP:
        return OneGapRow(case.id, True, "gap-certificate")
    if verdict.status is Status.UNKNOWN:
        return OneGapRow(case.id, None, "unknown")
    route = verdict.witness.route
    if route in (Route.NARROW, Route.FRAME):
        method = "diag-4" if 4 in case.narrow_gram.diagonal else "narrow-h4"
    else:
        method = _ONE_GAP_METHODS[route]
    return OneGapRow(case.id, False, method)


def one_gap_class(
    catalog: Catalog,
    ids: Optional[Iterable[int]] = None,
    budget: Optional[int] = None,
) -> List[OneGapRow]:
    """Which cases have 1 as a gap number, and which route settled k = 1."""
    rows = []
    for case_id in sorted(catalog.cases) if ids is None else ids:
        case = catalog.cases.get(case_id)
        if case is None:
            logger.warning(f"Case {case_id} is not in the catalog, skipped")
            continue
        rows.append(_one_gap_row(case, budget))
    return rows


def scan(case: SurfaceCase, max_k: int, budget: Optional[int] = None) -> List[GapVerdict]:
    """Verdicts for k = 0..max_k in order."""
    if max_k < 0:
        raise ValueError("max must be nonnegative")
    verdicts = [decide(case, k, budget) for k in range(max_k + 1)]
    logger.info(f"case {case.id}: scanned k <= {max_k}, gaps {[v.k for v in verdicts if v.status is Status.GAP]}")
    return verdicts
