"""
Exact graded polynomial algebra.

Ring elements are sparse polynomials over the rationals or GF(2) backed by
``sympy.polys.rings``. A :class:`QuotientRing` completes its relations to a
Groebner basis once (Buchberger with the chain and product criteria) and
answers normal form and Hilbert function queries from it. The
:func:`macaulay_rank` oracle computes the same dimensions by fraction-free
elimination on Macaulay matrices and shares no code with the completion.
"""
import logging
import math
import time
from enum import Enum
from fractions import Fraction
from functools import reduce
from threading import Lock
from typing import Dict, Hashable, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

from sympy import Integer, Rational
from sympy.polys.domains import GF, QQ
from sympy.polys.groebnertools import groebner
from sympy.polys.orderings import grevlex
from sympy.polys.rings import PolyElement, PolyRing

from .config import completion_timeout, max_degree_override
from .exceptions import CompletionTimeoutError, DegreeBoundError, UniverseMismatchError

logger = logging.getLogger(__name__)

_GF2 = GF(2)
Scalar = Union[int, Fraction]


class CoefficientField(Enum):
    RATIONAL = "q"
    GF2 = "gf2"

    @property
    def domain(self):
        return QQ if self is CoefficientField.RATIONAL else _GF2

    @property
    def characteristic(self) -> int:
        return 0 if self is CoefficientField.RATIONAL else 2

    def to_domain(self, value: Scalar):
        """Convert an exact rational into the sympy ground domain."""
        value = Fraction(value)
        if self is CoefficientField.GF2:
            if value.denominator % 2 == 0:
                raise UniverseMismatchError("{} is not defined modulo 2".format(value))
            return _GF2.from_sympy(Integer(value.numerator % 2))
        return QQ.from_sympy(Rational(value.numerator, value.denominator))

    def to_fraction(self, coefficient) -> Fraction:
        value = self.domain.to_sympy(coefficient)
        result = Fraction(int(value.p), int(value.q))
        if self is CoefficientField.GF2:
            result = Fraction(result.numerator % 2)
        return result


class Generator(NamedTuple):
    """A ring generator: an opaque key, its degree and its token prefix."""

    key: Hashable
    degree: int
    prefix: str

    @property
    def token(self) -> str:
        return "{}{}".format(self.prefix, self.key)


class HilbertEntry(NamedTuple):
    degree: int
    dimension: int


class Presentation:
    """
    A graded commutative algebra given by generators and relations.

    Parameters
    ----------
    generators : sequence of Generator
        Generators in the order used by the monomial order.
    field : CoefficientField
        Coefficient field.
    socle_degree : int, optional
        Top degree of the presented ring, if known.
    name : str
        Label used in messages and reports.
    """

    def __init__(
        self,
        generators: Sequence[Generator],
        field: CoefficientField = CoefficientField.RATIONAL,
        socle_degree: Optional[int] = None,
        name: str = "",
    ):
        if not isinstance(field, CoefficientField):
            raise TypeError("field must be a CoefficientField, not type {}".format(type(field)))
        generators = tuple(generators)
        for g in generators:
            if not isinstance(g, Generator):
                raise TypeError("generators must be Generator values, not type {}".format(type(g)))
            if g.degree not in (1, 2):
                raise ValueError("generator degree must be 1 or 2, not {}".format(g.degree))
        self._generators = generators
        self._index = {}
        self._tokens = {}
        for n, g in enumerate(generators):
            if g.key in self._index:
                raise ValueError("generator {} is listed twice".format(g.token))
            self._index[g.key] = n
            self._tokens[g.token] = n
        self._field = field
        self._socle_degree = socle_degree
        self._name = name
        symbols = ",".join("x{}".format(n) for n in range(len(generators)))
        self._ring = PolyRing(symbols, field.domain, grevlex)
        self._relations: List[RingElement] = []
        self._frozen = False

    # PROPERTIES
    @property
    def generators(self) -> Tuple[Generator, ...]:
        return self._generators

    @property
    def field(self) -> CoefficientField:
        return self._field

    @property
    def name(self) -> str:
        return self._name

    @property
    def ring(self) -> PolyRing:
        return self._ring

    @property
    def relations(self) -> Tuple["RingElement", ...]:
        return tuple(self._relations)

    @property
    def socle_degree(self) -> Optional[int]:
        return self._socle_degree

    @property
    def degree_step(self) -> int:
        """Greatest common divisor of the generator degrees."""
        if not self._generators:
            return 1
        return reduce(math.gcd, (g.degree for g in self._generators))

    @property
    def degree_bound(self) -> int:
        """
        The degree guard of this ring.

        ``MODULI_MAX_DEGREE`` overrides it. Otherwise it is the larger of the
        socle degree and the highest relation degree.
        """
        override = max_degree_override()
        if override is not None:
            return override
        bound = self._socle_degree or 0
        for relation in self._relations:
            bound = max(bound, relation.degree)
        return bound

    # ELEMENTS
    def index_of(self, key: Hashable) -> int:
        return self._index[key]

    def has_generator(self, key: Hashable) -> bool:
        return key in self._index

    def generator_by_token(self, token: str) -> Optional[Generator]:
        n = self._tokens.get(token)
        return None if n is None else self._generators[n]

    def gen(self, key: Hashable) -> "RingElement":
        if key not in self._index:
            raise KeyError("no generator {!r} in {}".format(key, self._name or "this presentation"))
        return RingElement(self, self._ring.gens[self._index[key]])

    def scalar(self, value: Scalar) -> "RingElement":
        return RingElement(self, self._ring.ground_new(self._field.to_domain(value)))

    @property
    def zero(self) -> "RingElement":
        return RingElement(self, self._ring.zero)

    @property
    def one(self) -> "RingElement":
        return RingElement(self, self._ring.one)

    def add_relation(self, relation: "RingElement") -> None:
        if self._frozen:
            raise RuntimeError("relations cannot be added after completion")
        self._check(relation)
        if not relation.is_homogeneous:
            raise ValueError("relation {} is not homogeneous".format(relation))
        self._relations.append(relation)

    def _check(self, element: "RingElement") -> None:
        if not isinstance(element, RingElement):
            raise TypeError("expected a RingElement, not type {}".format(type(element)))
        if element.presentation is not self:
            raise UniverseMismatchError("element belongs to a different presentation")

    def monomial_degree(self, monomial: Sequence[int]) -> int:
        return sum(e * g.degree for e, g in zip(monomial, self._generators))

    def __repr__(self):
        return "{}({!r}, {} generators, {} relations, {})".format(
            type(self).__name__, self._name, len(self._generators), len(self._relations), self._field.value
        )


class RingElement:
    """A polynomial in the generators of a presentation."""

    __slots__ = ("_presentation", "_poly")

    def __init__(self, presentation: Presentation, poly: PolyElement):
        self._presentation = presentation
        self._poly = poly

    @property
    def presentation(self) -> Presentation:
        return self._presentation

    @property
    def poly(self) -> PolyElement:
        return self._poly

    @property
    def is_zero(self) -> bool:
        return not self._poly

    @property
    def degree(self) -> int:
        if not self._poly:
            return 0
        return max(self._presentation.monomial_degree(m) for m in self._poly.keys())

    @property
    def is_homogeneous(self) -> bool:
        return len({self._presentation.monomial_degree(m) for m in self._poly.keys()}) <= 1

    def terms(self) -> List[Tuple[Tuple[Generator, ...], Fraction]]:
        """Terms in decreasing monomial order; monomials list generators with multiplicity."""
        gens = self._presentation.generators
        field = self._presentation.field
        result = []
        for monomial, coefficient in self._poly.terms():
            factors = []
            for g, e in zip(gens, monomial):
                factors.extend([g] * e)
            result.append((tuple(factors), field.to_fraction(coefficient)))
        return result

    # ARITHMETIC
    def _coerce(self, other) -> Optional[PolyElement]:
        if isinstance(other, RingElement):
            if other._presentation is not self._presentation:
                raise UniverseMismatchError("cannot combine elements of different presentations")
            return other._poly
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._presentation.scalar(other)._poly
        return None

    def __add__(self, other):
        poly = self._coerce(other)
        if poly is None:
            return NotImplemented
        return RingElement(self._presentation, self._poly + poly)

    __radd__ = __add__

    def __sub__(self, other):
        poly = self._coerce(other)
        if poly is None:
            return NotImplemented
        return RingElement(self._presentation, self._poly - poly)

    def __rsub__(self, other):
        poly = self._coerce(other)
        if poly is None:
            return NotImplemented
        return RingElement(self._presentation, poly - self._poly)

    def __mul__(self, other):
        poly = self._coerce(other)
        if poly is None:
            return NotImplemented
        return RingElement(self._presentation, self._poly * poly)

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self._presentation, -self._poly)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a non-negative integer, not {}".format(exponent))
        return RingElement(self._presentation, self._poly ** exponent)

    def __eq__(self, other):
        poly = self._coerce(other)
        if poly is None:
            return NotImplemented
        return self._poly == poly

    def __hash__(self):
        return hash((id(self._presentation), frozenset(self._poly.items())))

    def __bool__(self):
        return bool(self._poly)

    def __str__(self):
        if not self._poly:
            return "0"
        text = ""
        for n, (factors, coefficient) in enumerate(self.terms()):
            magnitude = abs(coefficient)
            if not factors:
                body = _format_fraction(magnitude)
            elif magnitude == 1:
                body = "*".join(g.token for g in factors)
            else:
                body = "{}*{}".format(_format_fraction(magnitude), "*".join(g.token for g in factors))
            if n == 0:
                text = ("-" if coefficient < 0 else "") + body
            else:
                text += " {} {}".format("-" if coefficient < 0 else "+", body)
        return text

    def __repr__(self):
        return "RingElement({})".format(self)


def _format_fraction(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return "{}/{}".format(value.numerator, value.denominator)


class QuotientRing(Presentation):
    """
    A presentation together with its completed Groebner basis.

    The basis is computed on first use under an internal lock; afterwards
    all queries only read it.
    """

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._lock = Lock()
        self._basis: Optional[List[PolyElement]] = None

    @property
    def is_completed(self) -> bool:
        return self._basis is not None

    def completed_basis(self) -> List[PolyElement]:
        if self._basis is not None:
            return self._basis
        if not self._lock.acquire(timeout=completion_timeout()):
            raise CompletionTimeoutError("timed out waiting for the completion of {}".format(self._name))
        try:
            if self._basis is None:
                self._frozen = True
                polys = [r.poly for r in self._relations if r.poly]
                start = time.perf_counter()
                basis = groebner(polys, self._ring, method="buchberger") if polys else []
                logger.info(
                    "completed %s: %d relations, %d basis elements in %.2fs",
                    self._name or "quotient ring",
                    len(polys),
                    len(basis),
                    time.perf_counter() - start,
                )
                self._basis = basis
        finally:
            self._lock.release()
        return self._basis

    def leading_monomials(self) -> List[Tuple[int, ...]]:
        return [g.LM for g in self.completed_basis()]

    # ALGEBRA COMMANDS
    def normal_form(self, element: RingElement) -> RingElement:
        self._check(element)
        bound = self.degree_bound
        if element.degree > bound:
            raise DegreeBoundError(
                "degree {} exceeds the bound {} of {}".format(element.degree, bound, self._name)
            )
        basis = self.completed_basis()
        if not basis or not element.poly:
            return element
        return RingElement(self, element.poly.rem(basis))

    def equal(self, first: RingElement, second: RingElement) -> bool:
        return self.normal_form(first - second).is_zero

    def standard_monomials(self, degree: int) -> List[Tuple[int, ...]]:
        """Monomials of the given degree not divisible by any leading monomial."""
        leads = self.leading_monomials()
        width = len(self._generators)

        def standard(monomial):
            return not any(all(a >= b for a, b in zip(monomial, lead)) for lead in leads)

        # standard monomials form an order ideal, so grow them one factor at a time
        frontier = [m for m in [tuple([0] * width)] if standard(m)]
        seen = set(frontier)
        found = []
        while frontier:
            next_frontier = []
            for monomial in frontier:
                d = self.monomial_degree(monomial)
                if d == degree:
                    found.append(monomial)
                    continue
                for n, g in enumerate(self._generators):
                    if d + g.degree > degree:
                        continue
                    bigger = list(monomial)
                    bigger[n] += 1
                    bigger = tuple(bigger)
                    if bigger not in seen and standard(bigger):
                        seen.add(bigger)
                        next_frontier.append(bigger)
            frontier = next_frontier
        return sorted(found, reverse=True)


def normal_form(q: QuotientRing, element: RingElement) -> RingElement:
    if not isinstance(q, QuotientRing):
        raise TypeError("q must be a QuotientRing, not type {}".format(type(q)))
    return q.normal_form(element)


def hilbert_function(q: QuotientRing, dmax: Optional[int] = None) -> List[HilbertEntry]:
    """
    Dimensions of the graded pieces of ``q`` up to degree ``dmax``.

    Degrees advance by the common step of the generator degrees, so a ring
    generated in degree 2 reports degrees 0, 2, 4, ...

    Raises
    ------
    DegreeBoundError
        If ``dmax`` exceeds the degree bound of ``q``.
    """
    if not isinstance(q, QuotientRing):
        raise TypeError("q must be a QuotientRing, not type {}".format(type(q)))
    if dmax is None:
        dmax = q.socle_degree if q.socle_degree is not None else q.degree_bound
    if dmax < 0:
        raise ValueError("dmax must be non-negative, not {}".format(dmax))
    if dmax > q.degree_bound:
        raise DegreeBoundError("degree {} exceeds the bound {} of {}".format(dmax, q.degree_bound, q.name))
    step = q.degree_step
    return [HilbertEntry(d, len(q.standard_monomials(d))) for d in range(0, dmax + 1, step)]


def euler_characteristic(entries: Iterable[HilbertEntry]) -> int:
    return sum((-1) ** e.degree * e.dimension for e in entries)


# MACAULAY ORACLE
def _monomials_of_degree(degrees: Sequence[int], target: int) -> Iterator[Tuple[int, ...]]:
    width = len(degrees)

    def extend(position: int, remaining: int, prefix: List[int]):
        if position == width:
            if remaining == 0:
                yield tuple(prefix)
            return
        step = degrees[position]
        for exponent in range(remaining // step + 1):
            prefix.append(exponent)
            yield from extend(position + 1, remaining - exponent * step, prefix)
            prefix.pop()

    yield from extend(0, target, [])


def _integer_row(coefficients: Dict[int, Fraction], modulus: int) -> Dict[int, int]:
    if modulus:
        return {c: v.numerator % modulus for c, v in coefficients.items() if v.numerator % modulus}
    scale = reduce(math.lcm, (v.denominator for v in coefficients.values()), 1)
    return {c: int(v * scale) for c, v in coefficients.items() if v}


def _primitive(row: Dict[int, int]) -> Dict[int, int]:
    content = reduce(math.gcd, row.values(), 0)
    if content > 1:
        row = {c: v // content for c, v in row.items()}
    return row


def _elimination_rank(rows: Iterable[Dict[int, int]], modulus: int) -> int:
    """Rank by incremental fraction-free elimination on sparse integer rows."""
    pivots: Dict[int, Dict[int, int]] = {}
    for row in sorted(rows, key=len):
        while row:
            lead = min(row)
            pivot = pivots.get(lead)
            if pivot is None:
                pivots[lead] = row
                break
            a, b = pivot[lead], row[lead]
            combined = {c: a * v for c, v in row.items()}
            for c, v in pivot.items():
                value = combined.get(c, 0) - b * v
                if modulus:
                    value %= modulus
                if value:
                    combined[c] = value
                else:
                    combined.pop(c, None)
            if modulus:
                row = {c: v % modulus for c, v in combined.items() if v % modulus}
            else:
                row = _primitive(combined)
    return len(pivots)


def macaulay_rank(p: Presentation, d: int) -> int:
    """
    Dimension of the degree ``d`` piece of ``p``, computed as the number of
    monomials of degree ``d`` minus the rank of the Macaulay matrix.
    """
    if not isinstance(p, Presentation):
        raise TypeError("p must be a Presentation, not type {}".format(type(p)))
    if not isinstance(d, int) or d < 0:
        raise ValueError("d must be a non-negative integer, not {}".format(d))
    degrees = [g.degree for g in p.generators]
    columns = {m: n for n, m in enumerate(_monomials_of_degree(degrees, d))}
    if not columns:
        return 0
    field = p.field
    modulus = field.characteristic
    rows = []
    for relation in p.relations:
        items = [(m, field.to_fraction(c)) for m, c in relation.poly.items()]
        if not items:
            continue
        e = p.monomial_degree(items[0][0])
        if e > d:
            continue
        for multiplier in _monomials_of_degree(degrees, d - e):
            coefficients = {}
            for monomial, value in items:
                column = columns[tuple(a + b for a, b in zip(monomial, multiplier))]
                coefficients[column] = coefficients.get(column, Fraction(0)) + value
            row = _integer_row(coefficients, modulus)
            if row:
                rows.append(row if modulus else _primitive(row))
    rank = _elimination_rank(rows, modulus)
    logger.debug("macaulay matrix of %s in degree %d: %d columns, %d rows, rank %d",
                 p.name, d, len(columns), len(rows), rank)
    return len(columns) - rank
