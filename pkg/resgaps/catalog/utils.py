import logging
import math
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Dict, List, Optional, Union

from pydantic import ValidationError as RowError

from resgaps.arith.models import SymMatrix, parse_rational, render_rational
from resgaps.arith.utils import det
from resgaps.catalog.models import PROVENANCE_TAGS, Catalog, SectionWitness, SurfaceCase, Torsion
from resgaps.catalog.schemas import CaseAnalysis, CaseSummary, CatalogRow
from resgaps.config import config
from resgaps.errors import (
    DimensionMismatch,
    InvalidComponent,
    MalformedSpec,
    NotFound,
    NotPositiveDefinite,
    ParseError,
    SingularMatrix,
    ValidationError,
)
from resgaps.fibers.models import FiberConfig
from resgaps.fibers.utils import bounds, contr_single
from resgaps.forms.utils import build_qx
from resgaps.lattice.models import RootA, RootD, RootE
from resgaps.lattice.utils import (
    direct_sum,
    minimal_vector,
    parse_lattice,
    realize,
    render_lattice,
    summands,
)

logger = logging.getLogger(__name__)

DEFAULT_CATALOG = "oguiso_shioda.txt"

_FIELDS = tuple(CatalogRow.model_fields)


def _root_det(root) -> int:
    if isinstance(root, RootA):
        return root.n + 1
    if isinstance(root, RootD):
        return 4
    return {6: 3, 7: 2, 8: 1}[root.n]


def _parse_provenance(text: str) -> tuple:
    if ":" not in text:
        pairs = [("*", text.strip())]
    else:
        pairs = []
        for item in text.split(","):
            name, _, tag = item.partition(":")
            if name.strip() not in _FIELDS:
                raise ParseError(f"provenance names unknown field {name!r}")
            pairs.append((name.strip(), tag.strip()))
    for _, tag in pairs:
        if tag not in PROVENANCE_TAGS:
            raise ParseError(f"unknown provenance tag {tag!r}")
    return tuple(pairs)


def case_from_row(row: CatalogRow) -> SurfaceCase:
    """Turn a raw row into a SurfaceCase; syntax only, no validation."""
    try:
        t = summands(parse_lattice(row.T))
        if any(not isinstance(part, (RootA, RootD, RootE)) for part in t):
            raise ParseError(f"T must be a sum of root lattices, got {row.T!r}")
        stated = tuple(
            parse_rational(value) if value is not None else None
            for value in (row.c_max, row.c_min, row.delta)
        )
        return SurfaceCase(
            id=row.id,
            t=t,
            mw_free=parse_lattice(row.EK_free_gram),
            torsion=Torsion.parse(row.torsion),
            mu=parse_rational(row.mu) if row.mu is not None else None,
            stated_bounds=stated,
            provenance=_parse_provenance(row.provenance),
            fibers=FiberConfig.parse(row.fibers) if row.fibers else None,
            witnesses=tuple(SectionWitness.parse(w) for w in row.witness.split("&")) if row.witness else (),
            note=row.note,
        )
    except (MalformedSpec, DimensionMismatch) as e:
        raise ParseError(str(e))
    except ValueError as e:
        raise ParseError(str(e))


def witness_p_dot_o(case: SurfaceCase, witness: SectionWitness) -> Fraction:
    """P·O solved from h(P) = 2 + 2·P·O - Σ contr_v(P)."""
    if case.free_gram is None:
        raise ValidationError(case.id, "witness given for a rank-0 case")
    if len(witness.components) != len(case.t):
        raise ValidationError(case.id, f"witness {witness} needs {len(case.t)} component indices")
    height = case.free_gram.quadratic(witness.coords)
    contributions = sum((contr_single(t, i) for t, i in zip(case.t, witness.components)), Fraction(0))
    return (height - 2 + contributions) / 2


def validate_case(case: SurfaceCase) -> None:
    """Check a case against the lattice-theoretic facts every row must satisfy.

    Raises:
        ValidationError: With the first violated property as reason.
    """

    def fail(reason: str):
        raise ValidationError(case.id, reason)

    try:
        for root in case.t:
            realize(root)
        free = case.free_gram
    except (NotPositiveDefinite, SingularMatrix, MalformedSpec) as e:
        fail(f"lattice does not realize: {e}")

    rank_t = sum(root.n for root in case.t)
    if case.rank + rank_t != 8:
        fail(f"rank {case.rank} + rank T {rank_t} != 8")

    if free is not None:
        narrow = case.narrow_gram
        if not narrow.is_even():
            fail(f"narrow Gram {narrow} is not even integral")
    det_t = math.prod(_root_det(root) for root in case.t)
    det_free = det(free) if free is not None else Fraction(1)
    if det_free * det_t != case.torsion.order ** 2:
        fail(f"det(E(K) free) * det(T) = {det_free * det_t}, expected |torsion|^2 = {case.torsion.order ** 2}")

    recomputed = case.bounds
    for name, stated, actual in zip(("c_max", "c_min", "delta"), case.stated_bounds, recomputed):
        if stated is not None and stated != actual:
            fail(f"stored {name} {stated} differs from recomputed {actual}")
    if recomputed.c_max > 0:
        if recomputed.c_max >= 4:
            fail(f"c_max {recomputed.c_max} is not below 4")
        if recomputed.delta >= 2 and case.torsion.is_trivial:
            fail(f"delta {recomputed.delta} >= 2 needs nontrivial torsion")

    if free is None:
        if case.mu is not None:
            fail("mu given for a rank-0 case")
    else:
        if case.mu is None:
            fail("mu is required when the rank is positive")
        minimum = minimal_vector(free).norm
        if minimum != case.mu:
            fail(f"stored mu {case.mu} differs from minimal norm {minimum}")

    if case.fibers is not None and case.fibers.t_lattices != case.t_multiset:
        fail(f"fibers {case.fibers} do not give T")

    for witness in case.witnesses:
        if len(witness.coords) != case.rank:
            fail(f"witness {witness} needs {case.rank} coordinates")
        if witness.torsion and case.torsion.is_trivial:
            fail(f"witness {witness} uses torsion of a torsion-free case")
        try:
            p_dot_o = witness_p_dot_o(case, witness)
        except InvalidComponent as e:
            fail(f"witness {witness}: {e}")
        if p_dot_o.denominator != 1 or p_dot_o < 0:
            fail(f"witness {witness} gives P.O = {p_dot_o}")


def parse_catalog(text: str) -> Catalog:
    """Parse and validate catalog text; the first bad row aborts the load."""
    cases: Dict[int, SurfaceCase] = {}
    version, notes = 1, []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("@"):
            key, _, value = line[1:].partition(" ")
            if key == "format":
                version = int(value)
            elif key == "note":
                notes.append(value.strip())
            else:
                raise ParseError(f"unknown directive @{key}", number)
            continue
        fields = {}
        for item in line.split("|"):
            name, sep, value = item.partition("=")
            if not sep:
                raise ParseError(f"field {item.strip()!r} is not name=value", number)
            fields[name.strip()] = value.strip()
        try:
            case = case_from_row(CatalogRow(**fields))
        except RowError as e:
            raise ParseError(f"bad record: {e.errors()[0]['loc']} {e.errors()[0]['msg']}", number)
        except ParseError as e:
            raise ParseError(str(e), number)
        if case.id in cases:
            raise ValidationError(case.id, "duplicate id", number)
        try:
            validate_case(case)
        except ValidationError as e:
            raise ValidationError(e.case_id, e.reason, number)
        cases[case.id] = case
    return Catalog(cases, version, tuple(notes))


def load_catalog(path: Optional[Union[str, Path]] = None) -> Catalog:
    """Load from `path`, else from config.CATALOG, else the embedded default."""
    path = path or config.CATALOG
    if path:
        text = Path(path).read_text(encoding="utf-8")
        source = str(path)
    else:
        text = resources.files("resgaps.catalog").joinpath("data", DEFAULT_CATALOG).read_text(encoding="utf-8")
        source = f"embedded {DEFAULT_CATALOG}"
    catalog = parse_catalog(text)
    logger.info(f"Loaded {len(catalog)} cases from {source}")
    return catalog


def render_t(case: SurfaceCase) -> str:
    return render_lattice(direct_sum(case.t))


def _render_provenance(case: SurfaceCase) -> str:
    if len(case.provenance) == 1 and case.provenance[0][0] == "*":
        return case.provenance[0][1]
    return ",".join(f"{name}:{tag}" for name, tag in case.provenance)


def render_row(case: SurfaceCase) -> str:
    c_max, c_min, delta = case.stated_bounds
    fields = [
        ("id", str(case.id)),
        ("T", render_t(case)),
        ("EK_free_gram", render_lattice(case.mw_free)),
        ("torsion", str(case.torsion)),
        ("mu", case.mu),
        ("c_max", c_max),
        ("c_min", c_min),
        ("delta", delta),
        ("fibers", str(case.fibers) if case.fibers else None),
        ("witness", "&".join(str(w) for w in case.witnesses) or None),
        ("provenance", _render_provenance(case)),
        ("note", case.note),
    ]
    return " | ".join(
        f"{name}={render_rational(value) if isinstance(value, Fraction) else value}"
        for name, value in fields
        if value is not None
    )


def render_catalog(catalog: Catalog) -> str:
    lines = [f"@format {catalog.version}"]
    lines += [f"@note {note}" for note in catalog.notes]
    lines += [render_row(case) for case in catalog]
    return "\n".join(lines) + "\n"


def save_catalog(catalog: Catalog, path: Union[str, Path]) -> None:
    Path(path).write_text(render_catalog(catalog), encoding="utf-8")
    logger.info(f"Saved {len(catalog)} cases to {path}")


def narrow_gram(case: SurfaceCase) -> SymMatrix:
    """Gram matrix of E(K)^0; RankZero for rank-0 cases."""
    return case.narrow_gram


def lookup(catalog: Catalog, query: Union[int, str]) -> Union[SurfaceCase, List[SurfaceCase]]:
    """A case by id, or every case whose T matches a Kodaira configuration."""
    if isinstance(query, int) or str(query).strip().isdigit():
        case_id = int(query)
        if case_id not in catalog.cases:
            raise NotFound(f"case {case_id} is not in the catalog")
        return catalog.cases[case_id]
    wanted = FiberConfig.parse(str(query)).t_lattices
    found = [case for case in catalog if case.t_multiset == wanted]
    if not found:
        raise NotFound(f"no case with fibers {query}")
    return found


def _matrix_strings(m: Optional[SymMatrix]) -> Optional[List[List[str]]]:
    if m is None:
        return None
    return [[render_rational(x) for x in row] for row in m.entries]


def summarize_case(case: SurfaceCase) -> CaseSummary:
    return CaseSummary(
        id=case.id,
        T=render_t(case),
        rank=case.rank,
        torsion=str(case.torsion),
        mu=render_rational(case.mu) if case.mu is not None else None,
    )


def analyze_case(case: SurfaceCase, inputs: Optional[Dict[str, str]] = None) -> CaseAnalysis:
    """T, r, torsion, μ, bounds, narrow Gram and Q_X of a catalog case."""
    c_max, c_min, delta = case.bounds
    has_free = case.rank > 0
    return CaseAnalysis(
        case_id=case.id,
        inputs=inputs or {"case": str(case.id)},
        T=render_t(case),
        fibers=str(case.fibers) if case.fibers else None,
        rank=case.rank,
        torsion=str(case.torsion),
        mu=render_rational(case.mu) if case.mu is not None else None,
        c_max=render_rational(c_max),
        c_min=render_rational(c_min),
        delta=render_rational(delta),
        narrow_gram=_matrix_strings(case.narrow_gram) if has_free else None,
        narrow_det=render_rational(det(case.narrow_gram)) if has_free else None,
        q_x=_matrix_strings(build_qx(case).matrix) if has_free else None,
        provenance={name: case.source_of(name) for name in ("T", "EK_free_gram", "torsion", "mu")},
        matches=[case.id],
    )


def analyze_fibers(catalog: Catalog, text: str) -> CaseAnalysis:
    """Bounds of a Kodaira configuration, plus the catalog cases sharing its T."""
    fibers = FiberConfig.parse(text)
    inputs = {"fibers": str(fibers)}
    try:
        matches = lookup(catalog, str(fibers))
    except NotFound:
        logger.warning(f"No catalog case has fibers {fibers}; reporting bounds only")
        c_max, c_min, delta = bounds(fibers)
        return CaseAnalysis(
            case_id=None,
            inputs=inputs,
            T=render_lattice(direct_sum(fibers.t_lattices)),
            fibers=str(fibers),
            rank=None,
            torsion=None,
            mu=None,
            c_max=render_rational(c_max),
            c_min=render_rational(c_min),
            delta=render_rational(delta),
            narrow_gram=None,
            narrow_det=None,
            q_x=None,
            provenance={},
            matches=[],
        )
    record = analyze_case(matches[0], inputs)
    return record.model_copy(update={"fibers": str(fibers), "matches": [case.id for case in matches]})

