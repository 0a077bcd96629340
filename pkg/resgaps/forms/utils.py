import logging
import math
from fractions import Fraction
from typing import Dict, Optional, Tuple

from resgaps.arith.models import render_rational
from resgaps.arith.utils import adjugate, ceil_sqrt, floor_sqrt
from resgaps.catalog.models import SurfaceCase
from resgaps.errors import MalformedSpec
from resgaps.forms.models import IntQuadraticForm
from resgaps.forms.schemas import RepresentationRecord
from resgaps.lattice.models import ExplicitGram, RootA
from resgaps.lattice.utils import cartan, find_vector, parse_lattice, realize

logger = logging.getLogger(__name__)

Coords = Tuple[int, ...]

# q(x) = x1² + x2² + x3² + x4² - x1x2 - x2x3 - x3x4, i.e. half the A4 Cartan form
A4_FORM = IntQuadraticForm(cartan(RootA(4)), divisor=2)

# An integer-valued positive form is universal iff it represents all of these
CRITICAL_290 = (
    1, 2, 3, 5, 6, 7, 10, 13, 14, 15, 17, 19, 21, 22, 23, 26, 29, 30, 31,
    34, 35, 37, 42, 58, 93, 110, 145, 203, 290,
)


def build_qx(case: SurfaceCase) -> IntQuadraticForm:
    """Q_X = det(E(K)^0)·h on the free part, as the adjugate of the narrow Gram.

    Raises:
        RankZero: For cases without free part.
    """
    return IntQuadraticForm(adjugate(case.narrow_gram))


def parse_form(text: str) -> IntQuadraticForm:
    """Read a form from lattice text, e.g. "[[1,0],[0,2]]" or "1/2[[2,-1],[-1,2]]"."""
    spec = parse_lattice(text)
    if spec is None:
        raise MalformedSpec("a form needs positive rank")
    gram = spec.gram if isinstance(spec, ExplicitGram) else realize(spec)
    return IntQuadraticForm.from_gram(gram)


def represents(form: IntQuadraticForm, n: int, budget: Optional[int] = None) -> Optional[Coords]:
    """Lexicographically first x with Q(x) = n, or None after a complete search."""
    if n < 0:
        raise ValueError("target must be nonnegative")
    found = find_vector(form.gram, n, budget=budget)
    return found.coords if found is not None else None


def represents_in_interval(
    form: IntQuadraticForm,
    lo,
    hi,
    open_right: bool = False,
    exclude_multiples_of: Optional[int] = None,
    budget: Optional[int] = None,
) -> Optional[Coords]:
    """Witness of the smallest represented integer in [lo, hi] (or [lo, hi)).

    With `exclude_multiples_of` set to d, integers divisible by d are skipped.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    low = max(math.ceil(lo), 0)
    high = math.floor(hi)
    if open_right and high == hi:
        high -= 1
    for value in range(low, high + 1):
        if exclude_multiples_of and value % exclude_multiples_of == 0:
            continue
        witness = represents(form, value, budget)
        if witness is not None:
            logger.debug(f"represents_in_interval: {value} = Q{witness}")
            return witness
    return None


def four_square(n: int) -> Tuple[int, int, int, int]:
    """Lexicographically smallest (a, b, c, d) with a >= b >= c >= d >= 0 and a²+b²+c²+d² = n."""
    if n < 0:
        raise ValueError("four_square needs n >= 0")
    for a in range(ceil_sqrt(Fraction(n, 4)), math.isqrt(n) + 1):
        rest_a = n - a * a
        for b in range(ceil_sqrt(Fraction(rest_a, 3)), min(a, math.isqrt(rest_a)) + 1):
            rest_b = rest_a - b * b
            for c in range(ceil_sqrt(Fraction(rest_b, 2)), min(b, math.isqrt(rest_b)) + 1):
                rest_c = rest_b - c * c
                d = floor_sqrt(Fraction(rest_c))
                if d * d == rest_c and d <= c:
                    return a, b, c, d
    raise ArithmeticError(f"no four-square decomposition of {n}")


def check_290_critical(form: IntQuadraticForm, budget: Optional[int] = None) -> Dict[int, Optional[Coords]]:
    """Witness (or None) for each critical integer of the 290 criterion.

    All entries witnessed means the form is universal; this conclusion is
    only valid for integer-valued forms, which IntQuadraticForm guarantees.
    """
    report = {n: represents(form, n, budget) for n in CRITICAL_290}
    missing = [n for n, witness in report.items() if witness is None]
    if missing:
        logger.info(f"check_290_critical: form misses {missing}")
    return report


def is_universal(report: Dict[int, Optional[Coords]]) -> bool:
    return all(witness is not None for witness in report.values())


def represent_record(
    form: IntQuadraticForm,
    target: int,
    case_id: Optional[int] = None,
    inputs: Optional[Dict[str, str]] = None,
    budget: Optional[int] = None,
) -> RepresentationRecord:
    witness = represents(form, target, budget)
    return RepresentationRecord(
        case_id=case_id,
        inputs=inputs or {"case": str(case_id), "target": str(target)},
        status="represented" if witness is not None else "not-represented",
        form=[[render_rational(x) for x in row] for row in form.matrix.entries],
        divisor=form.divisor,
        target=target,
        witness=list(witness) if witness is not None else None,
    )
