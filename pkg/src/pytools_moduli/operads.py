"""
Operad and module structures on strata.

Elements are formal linear combinations of stable trees (:class:`StrataSum`).
Three flavors exist:

* complex, the operad of the complex moduli spaces, arity n with trees on
  n+1 leaves and output leaf n+1;
* real, the bigraded spaces with k real inputs and l conjugate-pair inputs,
  trees with k+1 real leaves and l pairs, output real leaf k+1;
* conjugate, k pair inputs, trees with no real leaves and k+1 pairs, output
  pair k+1.

Arity-one complex and (1, 0) real elements are scalars. The bicolored
structure on complex and real elements is exposed through
:class:`BicoloredElement` with colors ``+`` and ``R``.
"""
import logging
from enum import Enum
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
from tqdm import tqdm

from .exceptions import ArityError, ColorMismatchError, FlavorMismatchError, SlotError
from .trees import (
    ComplexStableTree,
    RealStableTree,
    glue_complex,
    glue_real_complex,
    glue_real_real,
    graft_complex_all,
    graft_real_pairs,
    graft_real_reals,
    random_complex_tree,
    random_real_tree,
)

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]
Tree = Union[ComplexStableTree, RealStableTree]


class Flavor(Enum):
    COMPLEX = "complex"
    REAL = "real"
    CONJUGATE = "conjugate"


class Color(Enum):
    PLUS = "+"
    REAL = "R"


class _Unit:
    """Key of the scalar term of a unit-arity sum."""

    __slots__ = ()

    def __repr__(self):
        return "UNIT"

    def sort_key(self):
        return ("unit",)


UNIT = _Unit()


class StrataSum:
    """
    A finite linear combination of strata trees of one flavor and shape.

    Parameters
    ----------
    flavor : Flavor
        Complex, real or conjugate.
    plus_inputs : int
        Number of inputs of color ``+`` (the complex arity, or the pair count).
    real_inputs : int
        Number of real inputs, only nonzero for the real flavor.
    terms : mapping
        Tree (or ``UNIT`` for scalar shapes) to coefficient.
    """

    __slots__ = ("_flavor", "_plus", "_real", "_terms")

    def __init__(self, flavor: Flavor, plus_inputs: int, real_inputs: int = 0, terms: Optional[Mapping] = None):
        if not isinstance(flavor, Flavor):
            raise TypeError("flavor must be a Flavor, not type {}".format(type(flavor)))
        _check_shape(flavor, plus_inputs, real_inputs)
        self._flavor = flavor
        self._plus = plus_inputs
        self._real = real_inputs
        clean: Dict[object, Fraction] = {}
        for key, value in (terms or {}).items():
            value = Fraction(value)
            if not value:
                continue
            self._check_key(key)
            clean[key] = clean.get(key, Fraction(0)) + value
        self._terms = {k: v for k, v in clean.items() if v}

    # CONSTRUCTORS
    @classmethod
    def from_tree(cls, tree: Tree, coefficient: Scalar = 1, flavor: Optional[Flavor] = None) -> "StrataSum":
        """Wrap one tree; real trees without real leaves become conjugate elements."""
        if isinstance(tree, ComplexStableTree):
            return cls(Flavor.COMPLEX, tree.n_labels - 1, 0, {tree: coefficient})
        if isinstance(tree, RealStableTree):
            if flavor is None:
                flavor = Flavor.REAL if tree.n_real else Flavor.CONJUGATE
            if flavor is Flavor.REAL:
                return cls(Flavor.REAL, tree.n_pairs, tree.n_real - 1, {tree: coefficient})
            return cls(Flavor.CONJUGATE, tree.n_pairs - 1, 0, {tree: coefficient})
        raise TypeError("tree must be a stable tree, not type {}".format(type(tree)))

    @classmethod
    def unit(cls, flavor: Flavor, coefficient: Scalar = 1) -> "StrataSum":
        if flavor is Flavor.COMPLEX:
            return cls(Flavor.COMPLEX, 1, 0, {UNIT: coefficient})
        if flavor is Flavor.REAL:
            return cls(Flavor.REAL, 0, 1, {UNIT: coefficient})
        raise FlavorMismatchError("the conjugate module has no unit")

    @classmethod
    def zero(cls, flavor: Flavor, plus_inputs: int, real_inputs: int = 0) -> "StrataSum":
        return cls(flavor, plus_inputs, real_inputs, {})

    # PROPERTIES
    @property
    def flavor(self) -> Flavor:
        return self._flavor

    @property
    def plus_inputs(self) -> int:
        return self._plus

    @property
    def real_inputs(self) -> int:
        return self._real

    @property
    def arity(self) -> int:
        return self._plus + self._real

    @property
    def shape(self) -> Tuple[Flavor, int, int]:
        return (self._flavor, self._plus, self._real)

    @property
    def is_unit_shape(self) -> bool:
        return _is_unit_shape(self._flavor, self._plus, self._real)

    @property
    def terms(self) -> Dict[object, Fraction]:
        return dict(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def sorted_terms(self) -> List[Tuple[object, Fraction]]:
        return sorted(self._terms.items(), key=lambda item: item[0].sort_key())

    def _check_key(self, key) -> None:
        if self.is_unit_shape:
            if key is not UNIT:
                raise ArityError("unit-arity elements are scalars")
            return
        if key is UNIT:
            raise ArityError("only unit-arity elements are scalars")
        if self._flavor is Flavor.COMPLEX:
            ok = isinstance(key, ComplexStableTree) and key.n_labels == self._plus + 1
        elif self._flavor is Flavor.REAL:
            ok = isinstance(key, RealStableTree) and (key.n_real, key.n_pairs) == (self._real + 1, self._plus)
        else:
            ok = isinstance(key, RealStableTree) and (key.n_real, key.n_pairs) == (0, self._plus + 1)
        if not ok:
            raise ArityError("tree {!r} does not have the shape {}".format(key, self.describe()))

    def describe(self) -> str:
        if self._flavor is Flavor.COMPLEX:
            return "O_C({})".format(self._plus)
        if self._flavor is Flavor.REAL:
            return "O_R({},{})".format(self._real, self._plus)
        return "O_RC({})".format(self._plus)

    # ARITHMETIC
    def _same_shape(self, other: "StrataSum") -> None:
        if not isinstance(other, StrataSum):
            raise TypeError("expected a StrataSum, not type {}".format(type(other)))
        if other.shape != self.shape:
            raise FlavorMismatchError("cannot add {} and {}".format(self.describe(), other.describe()))

    def __add__(self, other):
        self._same_shape(other)
        terms = dict(self._terms)
        for key, value in other._terms.items():
            terms[key] = terms.get(key, Fraction(0)) + value
        return StrataSum(self._flavor, self._plus, self._real, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self.scaled(-1)

    def scaled(self, factor: Scalar) -> "StrataSum":
        factor = Fraction(factor)
        return StrataSum(self._flavor, self._plus, self._real, {k: v * factor for k, v in self._terms.items()})

    def __rmul__(self, factor):
        if isinstance(factor, (int, Fraction)) and not isinstance(factor, bool):
            return self.scaled(factor)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, StrataSum):
            return NotImplemented
        return self.shape == other.shape and self._terms == other._terms

    def __hash__(self):
        return hash((self.shape, frozenset(self._terms.items())))

    def __repr__(self):
        parts = ["{}*{!r}".format(v, k) for k, v in self.sorted_terms()]
        return "StrataSum({}: {})".format(self.describe(), " + ".join(parts) or "0")


def _is_unit_shape(flavor: Flavor, plus: int, real: int) -> bool:
    if flavor is Flavor.COMPLEX:
        return plus == 1
    if flavor is Flavor.REAL:
        return (real, plus) == (1, 0)
    return False


def _check_shape(flavor: Flavor, plus: int, real: int) -> None:
    for name, value in (("plus_inputs", plus), ("real_inputs", real)):
        if not isinstance(value, int) or isinstance(value, bool) or value < 0:
            raise ArityError("{} must be a non-negative integer, not {!r}".format(name, value))
    if flavor is Flavor.COMPLEX:
        if plus < 1 or real:
            raise ArityError("complex elements have arity n >= 1 and no real inputs")
    elif flavor is Flavor.REAL:
        if real < 1 or real + plus < 1:
            raise ArityError("real elements need at least one real input")
    elif plus < 1 or real:
        raise ArityError("conjugate elements need at least one pair input and no real inputs")


# COMPOSITION
def _bilinear(x: StrataSum, y: StrataSum, shape: Tuple[Flavor, int, int], glue) -> StrataSum:
    terms: Dict[object, Fraction] = {}
    for tx, cx in x._terms.items():
        for ty, cy in y._terms.items():
            tree = glue(tx, ty)
            terms[tree] = terms.get(tree, Fraction(0)) + cx * cy
    return StrataSum(shape[0], shape[1], shape[2], terms)


def _scalar(x: StrataSum) -> Fraction:
    return x._terms.get(UNIT, Fraction(0))


def _compose_pair(x: StrataSum, i: int, y: StrataSum) -> StrataSum:
    """Compose a complex ``y`` into pair input ``i`` of a real or conjugate ``x``."""
    if y.flavor is not Flavor.COMPLEX:
        raise ColorMismatchError("pair inputs accept complex elements, not {}".format(y.describe()))
    if not 1 <= i <= x.plus_inputs:
        raise SlotError("pair slot {} is out of range [1, {}]".format(i, x.plus_inputs))
    if y.is_unit_shape:
        return x.scaled(_scalar(y))
    shape = (x.flavor, x.plus_inputs + y.plus_inputs - 1, x.real_inputs)
    return _bilinear(x, y, shape, lambda tx, ty: glue_real_complex(tx, i, ty))


def _compose_real(x: StrataSum, r: int, y: StrataSum) -> StrataSum:
    """Compose a real ``y`` into real input ``r`` of a real ``x``."""
    if y.flavor is not Flavor.REAL:
        raise ColorMismatchError("real inputs accept real elements, not {}".format(y.describe()))
    if not 1 <= r <= x.real_inputs:
        raise SlotError("real slot {} is out of range [1, {}]".format(r, x.real_inputs))
    if y.is_unit_shape:
        return x.scaled(_scalar(y))
    if x.is_unit_shape:
        return y.scaled(_scalar(x))
    shape = (Flavor.REAL, x.plus_inputs + y.plus_inputs, x.real_inputs + y.real_inputs - 1)
    return _bilinear(x, y, shape, lambda tx, ty: glue_real_real(tx, r, ty))


def partial_compose(x: StrataSum, i: int, y: StrataSum) -> StrataSum:
    """
    Compose ``y`` into input ``i`` of ``x``.

    Inputs of a real element are numbered with the pair inputs first, then
    the real inputs.
    """
    if not isinstance(x, StrataSum) or not isinstance(y, StrataSum):
        raise TypeError("partial_compose expects StrataSum values")
    if not isinstance(i, int) or not 1 <= i <= x.arity:
        raise SlotError("slot {} is out of range [1, {}]".format(i, x.arity))
    if x.flavor is Flavor.COMPLEX:
        if y.flavor is not Flavor.COMPLEX:
            raise ColorMismatchError("complex inputs accept complex elements, not {}".format(y.describe()))
        if y.is_unit_shape:
            return x.scaled(_scalar(y))
        if x.is_unit_shape:
            return y.scaled(_scalar(x))
        shape = (Flavor.COMPLEX, x.plus_inputs + y.plus_inputs - 1, 0)
        return _bilinear(x, y, shape, lambda tx, ty: glue_complex(tx, i, ty))
    if i <= x.plus_inputs:
        return _compose_pair(x, i, y)
    return _compose_real(x, i - x.plus_inputs, y)


def _fill_mode(x: StrataSum, ys: Sequence[StrataSum]) -> str:
    """How ``ys`` fills the inputs of ``x``: ``all``, ``pairs`` or ``reals``."""
    flavors = [y.flavor for y in ys]
    if x.flavor is Flavor.COMPLEX:
        if len(ys) != x.arity:
            raise ArityError("expected {} inputs, got {}".format(x.arity, len(ys)))
        return "all"
    if x.flavor is Flavor.CONJUGATE:
        if len(ys) != x.plus_inputs:
            raise ArityError("expected {} inputs, got {}".format(x.plus_inputs, len(ys)))
        return "pairs"
    bicolored = [Flavor.COMPLEX] * x.plus_inputs + [Flavor.REAL] * x.real_inputs
    if flavors == bicolored:
        return "all"
    if flavors == [Flavor.COMPLEX] * x.plus_inputs:
        return "pairs"
    if flavors == [Flavor.REAL] * x.real_inputs:
        return "reals"
    raise ArityError("cannot fill the inputs of {} with the given {} elements".format(x.describe(), len(ys)))


def full_compose(x: StrataSum, ys: Sequence[StrataSum]) -> StrataSum:
    """
    Compose one element into each input of ``x`` at once.

    ``ys`` fills every input, or for a real ``x`` either all pair inputs
    (complex ``ys``) or all real inputs (real ``ys``). Trees are grafted at
    all sites in one step; the result equals the partial compositions taken
    from the last input to the first.
    """
    if not isinstance(x, StrataSum):
        raise TypeError("x must be a StrataSum, not type {}".format(type(x)))
    ys = list(ys)
    mode = _fill_mode(x, ys)
    if x.flavor is Flavor.COMPLEX:
        return _full_complex(x, ys)
    if mode == "pairs":
        return _full_pairs(x, ys)
    if mode == "reals":
        return _full_reals(x, ys)
    return _full_pairs(_full_reals(x, ys[x.plus_inputs:]), ys[:x.plus_inputs])


def _expand(ys: Sequence[StrataSum], flavor: Flavor) -> Iterable[Tuple[Fraction, List[Optional[Tree]]]]:
    """Every choice of one term per input, with the product of the coefficients."""
    options = []
    for y in ys:
        if y.flavor is not flavor:
            raise ColorMismatchError("expected {} inputs, got {}".format(flavor.value, y.describe()))
        options.append([(c, None if key is UNIT else key) for key, c in y._terms.items()])
    for combination in product(*options):
        coefficient = Fraction(1)
        for c, _ in combination:
            coefficient *= c
        yield coefficient, [tree for _, tree in combination]


def _full_complex(x: StrataSum, ys: Sequence[StrataSum]) -> StrataSum:
    plus = sum(y.plus_inputs for y in ys)
    terms: Dict[object, Fraction] = {}
    for coefficient, trees in _expand(ys, Flavor.COMPLEX):
        for tx, cx in x._terms.items():
            if tx is UNIT:
                key = UNIT if trees[0] is None else trees[0]
            else:
                key = graft_complex_all(tx, trees)
            terms[key] = terms.get(key, Fraction(0)) + cx * coefficient
    return StrataSum(Flavor.COMPLEX, plus, 0, terms)


def _full_pairs(x: StrataSum, ys: Sequence[StrataSum]) -> StrataSum:
    """Fill the first ``len(ys)`` pair inputs of ``x``."""
    if len(ys) > x.plus_inputs:
        raise ArityError("expected at most {} pair inputs, got {}".format(x.plus_inputs, len(ys)))
    if not ys:
        return x
    plus = sum(y.plus_inputs for y in ys) + x.plus_inputs - len(ys)
    terms: Dict[object, Fraction] = {}
    for coefficient, trees in _expand(ys, Flavor.COMPLEX):
        for tx, cx in x._terms.items():
            key = graft_real_pairs(tx, trees)
            terms[key] = terms.get(key, Fraction(0)) + cx * coefficient
    return StrataSum(x.flavor, plus, x.real_inputs, terms)


def _full_reals(x: StrataSum, ys: Sequence[StrataSum]) -> StrataSum:
    if len(ys) != x.real_inputs:
        raise ArityError("expected {} real inputs, got {}".format(x.real_inputs, len(ys)))
    plus = x.plus_inputs + sum(y.plus_inputs for y in ys)
    real = sum(y.real_inputs for y in ys)
    terms: Dict[object, Fraction] = {}
    for coefficient, trees in _expand(ys, Flavor.REAL):
        for tx, cx in x._terms.items():
            if tx is UNIT:
                key = UNIT if trees[0] is None else trees[0]
            else:
                key = graft_real_reals(tx, trees)
            terms[key] = terms.get(key, Fraction(0)) + cx * coefficient
    return StrataSum(Flavor.REAL, plus, real, terms)


def iterated_compose(x: StrataSum, ys: Sequence[StrataSum]) -> StrataSum:
    """The expansion of :func:`full_compose` into partial compositions, last input first."""
    ys = list(ys)
    mode = _fill_mode(x, ys)
    result = x
    if x.flavor is Flavor.REAL and mode != "pairs":
        reals = ys if mode == "reals" else ys[x.plus_inputs:]
        for r in range(len(reals), 0, -1):
            result = _compose_real(result, r, reals[r - 1])
        ys = [] if mode == "reals" else ys[:x.plus_inputs]
    for slot in range(len(ys), 0, -1):
        result = partial_compose(result, slot, ys[slot - 1])
    return result


def relabel_pairs(x: StrataSum, mapping: Mapping[int, int]) -> StrataSum:
    """Permute the conjugate pair labels of every tree of a real element."""
    if x.flavor is Flavor.COMPLEX:
        raise FlavorMismatchError("complex elements have no conjugate pairs")
    if x.is_unit_shape:
        return x
    return StrataSum(x.flavor, x.plus_inputs, x.real_inputs,
                     {tree.relabel_pairs(mapping): c for tree, c in x._terms.items()})


# BICOLORED STRUCTURE
class BicoloredElement:
    """
    An element of the bicolored collection: a complex element of arity n or
    a real element with k+1 real inputs and l-1 pair inputs, where
    n = k + l.
    """

    __slots__ = ("_sum",)

    def __init__(self, strata: StrataSum):
        if not isinstance(strata, StrataSum):
            raise TypeError("strata must be a StrataSum, not type {}".format(type(strata)))
        if strata.flavor is Flavor.CONJUGATE:
            raise FlavorMismatchError("conjugate elements are not part of the bicolored structure")
        self._sum = strata

    @classmethod
    def unit(cls, color: Color) -> "BicoloredElement":
        return cls(StrataSum.unit(Flavor.COMPLEX if color is Color.PLUS else Flavor.REAL))

    @property
    def strata(self) -> StrataSum:
        return self._sum

    @property
    def arity(self) -> int:
        return self._sum.arity

    @property
    def arity_plus(self) -> int:
        return self._sum.plus_inputs

    @property
    def grade(self) -> int:
        """Auxiliary grade: real inputs minus one, zero for complex elements."""
        return 0 if self._sum.flavor is Flavor.COMPLEX else self._sum.real_inputs - 1

    @property
    def out(self) -> Color:
        return Color.PLUS if self._sum.flavor is Flavor.COMPLEX else Color.REAL

    def in_slot(self, i: int) -> Color:
        if not isinstance(i, int) or not 1 <= i <= self.arity:
            raise SlotError("slot {} is out of range [1, {}]".format(i, self.arity))
        return Color.PLUS if i <= self.arity_plus else Color.REAL

    def __eq__(self, other):
        if not isinstance(other, BicoloredElement):
            return NotImplemented
        return self._sum == other._sum

    def __hash__(self):
        return hash(self._sum)

    def __repr__(self):
        return "BicoloredElement({!r})".format(self._sum)


def out(x: BicoloredElement) -> Color:
    return x.out


def in_slot(x: BicoloredElement, i: int) -> Color:
    return x.in_slot(i)


def arity(x: BicoloredElement) -> int:
    return x.arity


def arity_plus(x: BicoloredElement) -> int:
    return x.arity_plus


def circ(x: BicoloredElement, i: int, y: BicoloredElement) -> BicoloredElement:
    """Partial composition, defined when the color of input ``i`` of x is the output color of y."""
    if x.in_slot(i) is not y.out:
        raise ColorMismatchError(
            "input {} has color {} but the inserted element has output color {}".format(
                i, x.in_slot(i).value, y.out.value
            )
        )
    return BicoloredElement(partial_compose(x.strata, i, y.strata))


class Verdict(Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNDEFINED = "undefined"


def _compare(left, right) -> Verdict:
    try:
        a = left()
        b = right()
    except (ColorMismatchError, SlotError):
        return Verdict.UNDEFINED
    return Verdict.HOLDS if a == b else Verdict.FAILS


def check_114a(x: BicoloredElement, y: BicoloredElement, z: BicoloredElement, i: int, j: int) -> Verdict:
    """
    Sequential associativity: x o_i (y o_j z) against (x o_i y) o_s z, where
    s = j+i-1 when y and z have the same output color and s = j+|x|+ otherwise.
    """
    def left():
        return circ(x, i, circ(y, j, z))

    def right():
        shift = j + i - 1 if y.out is z.out else j + x.arity_plus
        return circ(circ(x, i, y), shift, z)

    return _compare(left, right)


def _swap_pair_blocks(element: BicoloredElement, start: int, first: int, second: int) -> BicoloredElement:
    """Move the pair block start+1..start+first after the following block of size ``second``."""
    strata = element.strata
    if strata.flavor is not Flavor.REAL or not first or not second:
        return element
    mapping = {p: p for p in range(1, strata.plus_inputs + 1)}
    for p in range(start + 1, start + first + 1):
        mapping[p] = p + second
    for p in range(start + first + 1, start + first + second + 1):
        mapping[p] = p - first
    return BicoloredElement(relabel_pairs(strata, mapping))


def check_114b(
    x: BicoloredElement, y: BicoloredElement, z: BicoloredElement, i: int, j: int, strict: bool = False
) -> Verdict:
    """
    Parallel associativity for i < j: (x o_i y) o_{j+|y|-1} z against
    (x o_j z) o_s y, where s = i when y has output color + and s = i+|z|+
    otherwise.

    When y has output color R both composites append the pair inputs of y
    and z after those of x in opposite orders; unless ``strict`` is set,
    the right side is compared after exchanging those two blocks.
    """
    if not i < j:
        return Verdict.UNDEFINED

    def left():
        return circ(circ(x, i, y), j + y.arity - 1, z)

    def right():
        shift = i if y.out is Color.PLUS else i + z.arity_plus
        composite = circ(circ(x, j, z), shift, y)
        if strict or y.out is Color.PLUS:
            return composite
        return _swap_pair_blocks(composite, x.arity_plus, z.arity_plus, y.arity_plus)

    return _compare(left, right)


def check_units(x: BicoloredElement, i: int) -> Verdict:
    """Both unit laws: x o_i 1 = x and 1 o_1 x = x."""
    def right_unit():
        return circ(x, i, BicoloredElement.unit(x.in_slot(i)))

    def left_unit():
        return circ(BicoloredElement.unit(x.out), 1, x)

    first = _compare(right_unit, lambda: x)
    if first is not Verdict.HOLDS:
        return first
    return _compare(left_unit, lambda: x)


def check_expansion(x: StrataSum, ys: Sequence[StrataSum]) -> Verdict:
    """The direct multi-site graft against the iterated partial compositions."""
    return _compare(lambda: full_compose(x, ys), lambda: iterated_compose(x, ys))


# SAMPLING
class SweepFailure(NamedTuple):
    x: object
    y: object
    z: object
    i: int
    j: int


class SweepReport(NamedTuple):
    identity: str
    samples: int
    seed: int
    failures: List[SweepFailure]
    undefined: int


IDENTITIES = ("114a", "114b", "units", "expandcomp", "classical")


def _random_coefficient(rng: np.random.Generator) -> Fraction:
    value = 0
    while value == 0:
        value = int(rng.integers(-3, 4))
    return Fraction(value)


def random_element(rng: np.random.Generator, color: Color, max_arity: int = 5, max_terms: int = 2) -> BicoloredElement:
    """A random element with the given output color and arity at most ``max_arity``."""
    if color is Color.PLUS:
        n = int(rng.integers(1, max_arity + 1))
        if n == 1:
            return BicoloredElement(StrataSum.unit(Flavor.COMPLEX, _random_coefficient(rng)))
        terms = {}
        for _ in range(int(rng.integers(1, max_terms + 1))):
            terms[random_complex_tree(rng, n + 1)] = _random_coefficient(rng)
        return BicoloredElement(StrataSum(Flavor.COMPLEX, n, 0, terms))
    n = int(rng.integers(1, max_arity + 1))
    real = int(rng.integers(1, n + 1))
    plus = n - real
    if (real, plus) == (1, 0):
        return BicoloredElement(StrataSum.unit(Flavor.REAL, _random_coefficient(rng)))
    terms = {}
    for _ in range(int(rng.integers(1, max_terms + 1))):
        terms[random_real_tree(rng, real + 1, plus)] = _random_coefficient(rng)
    return BicoloredElement(StrataSum(Flavor.REAL, plus, real, terms))


def _random_color(rng: np.random.Generator) -> Color:
    return Color.PLUS if rng.integers(0, 2) == 0 else Color.REAL


def _sample(identity: str, rng: np.random.Generator, max_arity: int):
    if identity == "classical":
        x = random_element(rng, Color.PLUS, max_arity)
        y = random_element(rng, Color.PLUS, max_arity)
        z = random_element(rng, Color.PLUS, max_arity)
        return x, y, z, int(rng.integers(1, x.arity + 1)), int(rng.integers(1, y.arity + 1))
    if identity == "114a":
        x = random_element(rng, _random_color(rng), max_arity)
        i = int(rng.integers(1, x.arity + 1))
        y = random_element(rng, x.in_slot(i), max_arity)
        j = int(rng.integers(1, y.arity + 1))
        z = random_element(rng, y.in_slot(j), max_arity)
        return x, y, z, i, j
    if identity == "114b":
        x = random_element(rng, _random_color(rng), max_arity)
        while x.arity < 2:
            x = random_element(rng, _random_color(rng), max_arity)
        i, j = sorted(int(v) for v in rng.choice(np.arange(1, x.arity + 1), size=2, replace=False))
        y = random_element(rng, x.in_slot(i), max_arity)
        z = random_element(rng, x.in_slot(j), max_arity)
        return x, y, z, i, j
    if identity == "units":
        x = random_element(rng, _random_color(rng), max_arity)
        return x, None, None, int(rng.integers(1, x.arity + 1)), 0
    if identity == "expandcomp":
        x = random_element(rng, _random_color(rng), max_arity - 1)
        ys = [random_element(rng, x.in_slot(s), 3) for s in range(1, x.arity + 1)]
        return x, ys, None, 0, 0
    raise ValueError("unknown identity {!r}, expected one of {}".format(identity, IDENTITIES))


def _evaluate(identity: str, sample) -> Verdict:
    x, y, z, i, j = sample
    if identity in ("114a", "classical"):
        verdict = check_114a(x, y, z, i, j)
        if identity == "classical" and verdict is Verdict.HOLDS and x.arity >= 2:
            # parallel composition into the first and last inputs
            return check_114b(x, y, z, 1, x.arity, strict=True)
        return verdict
    if identity == "114b":
        return check_114b(x, y, z, i, j)
    if identity == "units":
        return check_units(x, i)
    return check_expansion(x.strata, [e.strata for e in y])


def sweep(
    identity: str,
    samples: int = 500,
    seed: int = 7,
    max_arity: int = 5,
    progress: bool = False,
) -> SweepReport:
    """
    Check an identity on seeded random composable samples.

    Each sample draws from its own child of ``numpy.random.SeedSequence(seed)``,
    so a failure can be replayed from the seed and its sample index.
    """
    if identity not in IDENTITIES:
        raise ValueError("unknown identity {!r}, expected one of {}".format(identity, IDENTITIES))
    if not isinstance(samples, int) or samples < 0:
        raise ValueError("samples must be a non-negative integer, not {!r}".format(samples))
    if not isinstance(seed, int) or seed < 0:
        raise ValueError("seed must be a non-negative integer, not {!r}".format(seed))
    children = np.random.SeedSequence(seed).spawn(samples)
    failures = []
    undefined = 0
    for index, child in enumerate(tqdm(children, desc=identity, disable=not progress)):
        rng = np.random.default_rng(child)
        sample = _sample(identity, rng, max_arity)
        verdict = _evaluate(identity, sample)
        if verdict is Verdict.UNDEFINED:
            undefined += 1
        elif verdict is Verdict.FAILS:
            failures.append(SweepFailure(*sample))
            logger.warning("%s failed on sample %d of seed %d", identity, index, seed)
    logger.info("%s: %d samples, %d failures, %d undefined", identity, samples, len(failures), undefined)
    return SweepReport(identity, samples, seed, failures, undefined)
