import logging
import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple

from resgaps.arith.models import SymMatrix, parse_rational, render_rational
from resgaps.arith.utils import floor_sqrt, inverse, ldlt
from resgaps.config import config
from resgaps.errors import BoundTooLarge, MalformedSpec
from resgaps.lattice.models import (
    DirectSum,
    Dual,
    ExplicitGram,
    LatticeSpec,
    LatticeVector,
    Root,
    RootA,
    RootD,
    RootE,
    ScaledUnit,
)

logger = logging.getLogger(__name__)

# Bourbaki labelling: 1-3-4-5-6-7-8 with 2 attached to 4 (0-based here)
_E_EDGES = ((0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3))


def cartan(root: Root) -> SymMatrix:
    """Cartan matrix of a simply-laced root lattice in its simple-root basis."""
    if isinstance(root, RootA):
        if root.n < 1:
            raise MalformedSpec(f"A{root.n} needs n >= 1")
        edges = [(i, i + 1) for i in range(root.n - 1)]
    elif isinstance(root, RootD):
        if root.n < 4:
            raise MalformedSpec(f"D{root.n} needs n >= 4")
        edges = [(i, i + 1) for i in range(root.n - 2)] + [(root.n - 3, root.n - 1)]
    elif isinstance(root, RootE):
        if root.n not in (6, 7, 8):
            raise MalformedSpec(f"E{root.n} needs n in 6, 7, 8")
        edges = [(i, j) for i, j in _E_EDGES if i < root.n and j < root.n]
    else:
        raise MalformedSpec(f"not a root lattice: {root!r}")
    rows = [[2 if i == j else 0 for j in range(root.n)] for i in range(root.n)]
    for i, j in edges:
        rows[i][j] = rows[j][i] = -1
    return SymMatrix.of(rows)


@lru_cache(maxsize=512)
def realize(spec: LatticeSpec) -> SymMatrix:
    """Gram matrix of a lattice expression; the result is positive-definite."""
    if isinstance(spec, (RootA, RootD, RootE)):
        gram = cartan(spec)
    elif isinstance(spec, ScaledUnit):
        if spec.q <= 0:
            raise MalformedSpec(f"<{spec.q}> is not positive")
        gram = SymMatrix.of([[spec.q]])
    elif isinstance(spec, ExplicitGram):
        gram = spec.gram
    elif isinstance(spec, DirectSum):
        if not spec.parts:
            raise MalformedSpec("empty direct sum")
        gram = SymMatrix.block_diag(*(realize(part) for part in spec.parts))
    elif isinstance(spec, Dual):
        gram = inverse(realize(spec.child))
    else:
        raise MalformedSpec(f"unknown lattice node {spec!r}")
    ldlt(gram)
    return gram


def summands(spec: Optional[LatticeSpec]) -> Tuple[LatticeSpec, ...]:
    if spec is None:
        return ()
    if isinstance(spec, DirectSum):
        return tuple(leaf for part in spec.parts for leaf in summands(part))
    return (spec,)


def direct_sum(parts: Sequence[LatticeSpec]) -> Optional[LatticeSpec]:
    flat = tuple(leaf for part in parts for leaf in summands(part))
    if not flat:
        return None
    return flat[0] if len(flat) == 1 else DirectSum(flat)


# Lattice text: A3, D5, E7, X* (dual), X^k, <p/q>, [[..]] or p/q[[..]], X+Y, (..), 0
_TOKEN = re.compile(
    r"\s*(?:(?P<root>[ADE]\d+)"
    r"|(?P<unit><[^<>]*>)"
    r"|(?P<matrix>(?:\d+(?:/\d+)?)?\[\[.*?\]\])"
    r"|(?P<op>[+*^()])"
    r"|(?P<int>\d+))"
)


def _tokenize(text: str) -> List[Tuple[str, str]]:
    tokens = []
    position = 0
    text = text.rstrip()
    while position < len(text):
        match = _TOKEN.match(text, position)
        if not match or match.end() == position:
            raise MalformedSpec(f"unexpected input at {text[position:]!r}")
        kind = match.lastgroup
        tokens.append((kind, match.group(kind)))
        position = match.end()
    return tokens


def _parse_matrix(token: str) -> SymMatrix:
    scale_text, body = token.split("[[", 1)
    rows = re.findall(r"\[([^\[\]]*)\]", "[[" + body)
    try:
        matrix = SymMatrix.of([[parse_rational(x) for x in row.split(",")] for row in rows])
        return matrix.scaled(parse_rational(scale_text)) if scale_text else matrix
    except ValueError as e:
        raise MalformedSpec(f"bad matrix {token!r}: {e}")


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.position = 0

    def peek(self) -> Optional[Tuple[str, str]]:
        return self.tokens[self.position] if self.position < len(self.tokens) else None

    def take(self) -> Tuple[str, str]:
        token = self.peek()
        if token is None:
            raise MalformedSpec("unexpected end of lattice expression")
        self.position += 1
        return token

    def expr(self) -> LatticeSpec:
        parts = [self.term()]
        while self.peek() == ("op", "+"):
            self.take()
            parts.append(self.term())
        return direct_sum(parts)

    def term(self) -> LatticeSpec:
        node = self.atom()
        while self.peek() in (("op", "*"), ("op", "^")):
            _, op = self.take()
            if op == "*":
                node = Dual(node)
            else:
                kind, count = self.take()
                if kind != "int" or int(count) < 1:
                    raise MalformedSpec(f"bad exponent {count!r}")
                node = direct_sum([node] * int(count))
        return node

    def atom(self) -> LatticeSpec:
        kind, value = self.take()
        if kind == "root":
            family, n = value[0], int(value[1:])
            return {"A": RootA, "D": RootD, "E": RootE}[family](n)
        if kind == "unit":
            try:
                return ScaledUnit(parse_rational(value[1:-1]))
            except ValueError as e:
                raise MalformedSpec(str(e))
        if kind == "matrix":
            return ExplicitGram(_parse_matrix(value))
        if (kind, value) == ("op", "("):
            node = self.expr()
            if self.take() != ("op", ")"):
                raise MalformedSpec("missing ')'")
            return node
        raise MalformedSpec(f"unexpected token {value!r}")


def parse_lattice(text: str) -> Optional[LatticeSpec]:
    """Parse lattice text; "0" stands for the rank-0 lattice (None)."""
    if text.strip() == "0":
        return None
    parser = _Parser(text)
    if not parser.tokens:
        raise MalformedSpec("empty lattice expression")
    spec = parser.expr()
    if parser.peek() is not None:
        raise MalformedSpec(f"trailing input {parser.peek()[1]!r}")
    return spec


def _render_matrix(gram: SymMatrix) -> str:
    denominator = math.lcm(*(x.denominator for row in gram.entries for x in row))
    if denominator == 1:
        return str(gram)
    return f"1/{denominator}{gram.scaled(denominator)}"


def _render_term(spec: LatticeSpec) -> str:
    if isinstance(spec, (RootA, RootD, RootE)):
        return spec.label
    if isinstance(spec, ScaledUnit):
        return f"<{render_rational(spec.q)}>"
    if isinstance(spec, ExplicitGram):
        return _render_matrix(spec.gram)
    if isinstance(spec, Dual):
        return _render_term(spec.child) + "*"
    return f"({render_lattice(spec)})"


def render_lattice(spec: Optional[LatticeSpec]) -> str:
    if spec is None:
        return "0"
    if not isinstance(spec, DirectSum):
        return _render_term(spec)
    runs: List[List] = []
    for part in spec.parts:
        if runs and runs[-1][0] == part:
            runs[-1][1] += 1
        else:
            runs.append([part, 1])
    return "+".join(
        _render_term(part) + (f"^{count}" if count > 1 else "") for part, count in runs
    )


@lru_cache(maxsize=512)
def _prepared(gram: SymMatrix):
    # Reversed basis so that the outermost enumeration level is coordinate 0
    return ldlt(gram.reversed())


def _integer_span(center: Fraction, radius_sq: Fraction, strict: bool = False) -> Optional[Tuple[int, int]]:
    """Integers y with (y - center)² <= radius_sq (< if strict), as an inclusive range."""
    if radius_sq < 0 or (strict and radius_sq == 0):
        return None

    def inside(y: int) -> bool:
        gap = (y - center) ** 2
        return gap < radius_sq if strict else gap <= radius_sq

    reach = floor_sqrt(radius_sq) + 1
    lo, hi = math.floor(center) - reach, math.ceil(center) + reach
    while lo <= hi and not inside(lo):
        lo += 1
    while hi >= lo and not inside(hi):
        hi -= 1
    return (lo, hi) if lo <= hi else None


def vectors_in_window(
    gram: SymMatrix,
    lower,
    upper,
    *,
    upper_open: bool = False,
    budget: Optional[int] = None,
) -> Iterator[LatticeVector]:
    """Yield every ±-class x with lower <= xᵀGx <= upper, lexicographically.

    Fincke–Pohst enumeration on the exact LDLᵀ of the reversed Gram. The
    representative of a class is the one whose first nonzero coordinate is
    positive; the zero vector is included when lower <= 0.

    Raises:
        BoundTooLarge: If more than `budget` nodes would be visited.
    """
    lower, upper = Fraction(lower), Fraction(upper)
    if upper < 0 or lower > upper:
        return
    limit = config.VECTOR_BUDGET if budget is None else budget
    lower_tri, pivots = _prepared(gram)
    size = gram.dim
    ys = [0] * size
    visited = 0

    def tick():
        nonlocal visited
        visited += 1
        if visited > limit:
            raise BoundTooLarge(f"enumeration of norms in [{lower}, {upper}] exceeds budget {limit}")

    def centre(i: int) -> Fraction:
        return -sum((lower_tri[j][i] * ys[j] for j in range(i + 1, size)), Fraction(0))

    def leaf(partial: Fraction, free: bool) -> Iterator[LatticeVector]:
        c = centre(0)
        span = _integer_span(c, (upper - partial) / pivots[0])
        if span is None:
            return
        lo, hi = span
        if not free:
            lo = max(lo, 0)
        hole = None
        if lower > partial:
            hole = _integer_span(c, (lower - partial) / pivots[0], strict=True)
        ranges = [(lo, hi)] if hole is None else [(lo, min(hi, hole[0] - 1)), (max(lo, hole[1] + 1), hi)]
        for start, stop in ranges:
            for value in range(start, stop + 1):
                tick()
                norm = partial + pivots[0] * (value - c) ** 2
                if upper_open and norm == upper:
                    continue
                ys[0] = value
                yield LatticeVector(tuple(reversed(ys)), norm)
        ys[0] = 0

    def descend(i: int, partial: Fraction, free: bool) -> Iterator[LatticeVector]:
        if i == 0:
            yield from leaf(partial, free)
            return
        c = centre(i)
        span = _integer_span(c, (upper - partial) / pivots[i])
        if span is None:
            return
        lo, hi = span
        if not free:
            lo = max(lo, 0)
        for value in range(lo, hi + 1):
            tick()
            ys[i] = value
            yield from descend(i - 1, partial + pivots[i] * (value - c) ** 2, free or value > 0)
        ys[i] = 0

    yield from descend(size - 1, Fraction(0), False)


def short_vectors(gram: SymMatrix, bound, budget: Optional[int] = None) -> List[LatticeVector]:
    """All ±-classes of norm <= bound, zero included, sorted by (norm, coords)."""
    bound = Fraction(bound)
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    found = sorted(vectors_in_window(gram, 0, bound, budget=budget), key=LatticeVector.sort_key)
    logger.debug(f"short_vectors: {len(found)} classes of norm <= {bound} in rank {gram.dim}")
    return found


def find_vector(gram: SymMatrix, norm, budget: Optional[int] = None) -> Optional[LatticeVector]:
    """Lexicographically first ±-class of exactly the given norm."""
    return next(vectors_in_window(gram, norm, norm, budget=budget), None)


@lru_cache(maxsize=256)
def minimal_vector(gram: SymMatrix) -> LatticeVector:
    """First class of the minimal nonzero norm."""
    nonzero = [v for v in short_vectors(gram, min(gram.diagonal)) if any(v.coords)]
    return nonzero[0]


def in_narrow(free_gram: SymMatrix, coords: Sequence[int]) -> bool:
    """True iff B·coords is integral, i.e. the section lies in the narrow lattice."""
    return all(x.denominator == 1 for x in free_gram.apply(coords))


@lru_cache(maxsize=128)
def find_frame(gram: SymMatrix, pattern: SymMatrix) -> Optional[Tuple[Tuple[int, ...], ...]]:
    """Norm-2 vectors of `gram` whose Gram matrix is `pattern`, or None."""
    if gram.dim < pattern.dim or any(x != 2 for x in pattern.diagonal):
        return None
    classes = [v.coords for v in vectors_in_window(gram, 2, 2)]
    roots = classes + [tuple(-x for x in v) for v in classes]
    images = {v: gram.apply(v) for v in roots}
    chosen: List[Tuple[int, ...]] = []

    def extend() -> bool:
        if len(chosen) == pattern.dim:
            return True
        i = len(chosen)
        for v in roots:
            image = images[v]
            if all(sum(a * b for a, b in zip(chosen[j], image)) == pattern[i, j] for j in range(i)):
                chosen.append(v)
                if extend():
                    return True
                chosen.pop()
        return False

    if not extend():
        return None
    logger.debug(f"find_frame: embedded pattern of rank {pattern.dim} in rank {gram.dim}")
    return tuple(chosen)
