"""
Text and JSON formats.

Ring expressions are sums of terms ``c * G1 * G2 ...`` where ``c`` is an
integer or a fraction ``p/q`` and the ``G`` are generator tokens such as
``D{1,2|3,4}`` or ``RD{1,2|3,4,5}``. Blocks may be written in any order
and are canonicalized before lookup, so ``D{3,4|1,2}`` and ``D{1,2|3,4}``
name the same divisor.

Trees use the dual-graph JSON layout::

    {"vertices": [0, 1], "edges": [[0, 1]], "leaves": {"1": 0, ...}}

Real trees leave ``leaves`` empty and add a ``real`` member with the
vertex involution, the real leaves and the conjugate pairs.
"""
import json
import re
from fractions import Fraction
from typing import Iterator, List, NamedTuple, Optional, Tuple, Union

from .exactalg import Presentation, RingElement
from .exceptions import ExpressionSyntaxError, LabelError, UnknownGeneratorError
from .labels import MINUS, PLUS, REAL, Leaf, make_partition2
from .operads import UNIT, Flavor, StrataSum
from .trees import ComplexStableTree, RealStableTree, complex_tree_from_graph, real_tree_from_graph

Tree = Union[ComplexStableTree, RealStableTree]

_TOKEN_SPEC = [
    ("gen", r"[A-Za-z]+\{[^{}]*\}"),
    ("num", r"\d+"),
    ("plus", r"\+"),
    ("minus", r"-"),
    ("mul", r"\*"),
    ("div", r"/"),
    ("skip", r"[ \t\r\n]+"),
    ("mismatch", r"."),
]
_TOKEN_RE = re.compile("|".join("(?P<{}>{})".format(name, pattern) for name, pattern in _TOKEN_SPEC))
_GEN_RE = re.compile(r"^([A-Za-z]+)\{([^|{}]*)\|([^|{}]*)\}$")


class Token(NamedTuple):
    type: str
    value: str
    where: Tuple[int, int]


def _position(text: str, offset: int) -> Tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    column = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, column


def _error(text: str, offset: int, mesg: str, cls=ExpressionSyntaxError) -> ExpressionSyntaxError:
    line, column = _position(text, offset)
    return cls(mesg, line, column)


def tokenize(text: str) -> Iterator[Token]:
    for mo in _TOKEN_RE.finditer(text):
        kind = mo.lastgroup
        if kind == "skip":
            continue
        if kind == "mismatch":
            raise _error(text, mo.start(), "unexpected character {!r}".format(mo.group()))
        yield Token(kind, mo.group(), (mo.start(), mo.end()))
    yield Token("end", "", (len(text), len(text)))


def _parse_block(text: str, offset: int, block: str) -> List[int]:
    labels = []
    for item in block.split(","):
        item = item.strip()
        if not item.isdigit():
            raise _error(text, offset, "expected a label in {{...}}, found {!r}".format(item))
        labels.append(int(item))
    return labels


class _ExpressionParser:
    """Recursive descent over ``[sign] term ((+|-) term)*``."""

    def __init__(self, text: str, presentation: Presentation):
        self.text = text
        self.presentation = presentation
        self.tokens = list(tokenize(text))
        self.pos = 0
        gens = presentation.generators
        self.ell = max(max(g.key.ground) for g in gens) if gens else None

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def advance(self, kind: Optional[str] = None) -> Token:
        token = self.current
        if kind is not None and token.type != kind:
            raise self.fail(token, "expected {}, found {}".format(kind, token.value or "end of input"))
        self.pos += 1
        return token

    def fail(self, token: Token, mesg: str, cls=ExpressionSyntaxError) -> ExpressionSyntaxError:
        return _error(self.text, token.where[0], mesg, cls)

    def parse(self) -> RingElement:
        sign = 1
        if self.current.type in ("plus", "minus"):
            sign = -1 if self.advance().type == "minus" else 1
        result = self.term() * sign
        while self.current.type in ("plus", "minus"):
            sign = -1 if self.advance().type == "minus" else 1
            result = result + self.term() * sign
        if self.current.type != "end":
            raise self.fail(self.current, "unexpected {!r}".format(self.current.value))
        return result

    def term(self) -> RingElement:
        result = self.factor()
        while self.current.type == "mul":
            self.advance()
            result = result * self.factor()
        return result

    def factor(self) -> RingElement:
        token = self.current
        if token.type == "num":
            self.advance()
            value = Fraction(int(token.value))
            if self.current.type == "div":
                self.advance()
                denominator = self.advance("num")
                if int(denominator.value) == 0:
                    raise self.fail(denominator, "division by zero")
                value /= int(denominator.value)
            return self.presentation.scalar(value)
        if token.type == "gen":
            self.advance()
            return self.presentation.gen(self.generator(token).key)
        raise self.fail(token, "expected a coefficient or a generator, found {}".format(token.value or "end of input"))

    def generator(self, token: Token):
        mo = _GEN_RE.match(token.value)
        if mo is None:
            raise self.fail(token, "generator {!r} must have the form P{{J|K}}".format(token.value))
        prefix, first, second = mo.groups()
        j = _parse_block(self.text, token.where[0], first)
        k = _parse_block(self.text, token.where[0], second)
        if self.ell is None:
            raise self.fail(token, "{} has no generators".format(self.presentation.name), UnknownGeneratorError)
        if len(set(j) | set(k)) != len(j) + len(k) or set(j) | set(k) != set(range(1, self.ell + 1)):
            raise self.fail(
                token, "{} does not split the labels 1..{}".format(token.value, self.ell), UnknownGeneratorError
            )
        try:
            partition = make_partition2(self.ell, j, divisor=True)
        except LabelError as err:
            raise self.fail(token, str(err), UnknownGeneratorError) from err
        generator = self.presentation.generator_by_token("{}{}".format(prefix, partition))
        if generator is None:
            raise self.fail(
                token, "no generator {}{} in {}".format(prefix, partition, self.presentation.name), UnknownGeneratorError
            )
        return generator


def parse_ring_expression(text: str, presentation: Presentation) -> RingElement:
    """
    Parse a ring expression into an element of ``presentation``.

    Raises
    ------
    ExpressionSyntaxError
        On malformed input, with the line and column of the offending token.
    UnknownGeneratorError
        If a generator token does not name a generator of the presentation.
    """
    if not isinstance(text, str):
        raise TypeError("text must be a str, not type {}".format(type(text)))
    if not isinstance(presentation, Presentation):
        raise TypeError("presentation must be a Presentation, not type {}".format(type(presentation)))
    return _ExpressionParser(text, presentation).parse()


# TREE JSON
def tree_to_dict(tree: Tree) -> dict:
    """The JSON-ready dual graph of ``tree``, in canonical vertex order."""
    graph = tree.to_graph()
    result = {
        "vertices": list(graph.vertices),
        "edges": [list(e) for e in graph.edges],
        "leaves": {},
    }
    if isinstance(tree, ComplexStableTree):
        result["leaves"] = {str(a): v for a, v in sorted(graph.leaves.items())}
        return result
    if not isinstance(tree, RealStableTree):
        raise TypeError("tree must be a stable tree, not type {}".format(type(tree)))
    leaves = graph.leaves
    result["real"] = {
        "involution": {str(v): w for v, w in sorted(graph.involution.items())},
        "realLeaves": {str(a.index): v for a, v in sorted(leaves.items()) if a.kind == REAL},
        "pairs": {
            str(p): {"plus": leaves[Leaf(PLUS, p)], "minus": leaves[Leaf(MINUS, p)]}
            for p in range(1, tree.n_pairs + 1)
        },
    }
    return result


def tree_to_json(tree: Tree, indent: Optional[int] = None) -> str:
    return json.dumps(tree_to_dict(tree), indent=indent)


def _int_keys(mapping, what: str) -> dict:
    if not isinstance(mapping, dict):
        raise ExpressionSyntaxError("{} must be a JSON object".format(what))
    result = {}
    for key, value in mapping.items():
        try:
            result[int(key)] = value
        except ValueError:
            raise ExpressionSyntaxError("{} key {!r} is not an integer".format(what, key)) from None
    return result


def tree_from_dict(data: dict) -> Tree:
    """Build a tree from the dual-graph layout; stability and shape are validated."""
    if not isinstance(data, dict):
        raise ExpressionSyntaxError("a tree must be a JSON object")
    for field in ("vertices", "edges"):
        if not isinstance(data.get(field), list):
            raise ExpressionSyntaxError("tree member {!r} must be a list".format(field))
    vertices = data["vertices"]
    try:
        edges = [(u, v) for u, v in data["edges"]]
    except (TypeError, ValueError):
        raise ExpressionSyntaxError("tree edges must be [u, v] pairs") from None
    real = data.get("real")
    if real is None:
        return complex_tree_from_graph(vertices, edges, _int_keys(data.get("leaves", {}), "leaves"))
    if not isinstance(real, dict):
        raise ExpressionSyntaxError("tree member 'real' must be a JSON object")
    involution = _int_keys(real.get("involution", {}), "involution")
    real_leaves = _int_keys(real.get("realLeaves", {}), "realLeaves")
    pairs = {}
    for p, entry in _int_keys(real.get("pairs", {}), "pairs").items():
        if not isinstance(entry, dict) or "plus" not in entry or "minus" not in entry:
            raise ExpressionSyntaxError("pair {} needs 'plus' and 'minus' vertices".format(p))
        pairs[p] = (entry["plus"], entry["minus"])
    return real_tree_from_graph(vertices, edges, involution, real_leaves, pairs)


def _load(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise ExpressionSyntaxError(err.msg, err.lineno, err.colno) from None


def parse_tree(text: str) -> Tree:
    """Parse a tree from JSON text."""
    return tree_from_dict(_load(text))


# STRATA SUM JSON
def strata_to_dict(element: StrataSum) -> dict:
    terms = []
    for key, coefficient in element.sorted_terms():
        terms.append({
            "coefficient": str(coefficient),
            "tree": "unit" if key is UNIT else tree_to_dict(key),
        })
    return {
        "flavor": element.flavor.value,
        "plusInputs": element.plus_inputs,
        "realInputs": element.real_inputs,
        "terms": terms,
    }


def strata_from_dict(data) -> StrataSum:
    """
    Build a StrataSum. A bare tree object is accepted as a single term with
    coefficient 1.
    """
    if isinstance(data, dict) and "vertices" in data:
        return StrataSum.from_tree(tree_from_dict(data))
    if not isinstance(data, dict) or "flavor" not in data:
        raise ExpressionSyntaxError("an element must be a tree or an object with 'flavor' and 'terms'")
    try:
        flavor = Flavor(data["flavor"])
    except ValueError:
        raise ExpressionSyntaxError("unknown flavor {!r}".format(data["flavor"])) from None
    terms = {}
    for entry in data.get("terms", []):
        if not isinstance(entry, dict) or "tree" not in entry:
            raise ExpressionSyntaxError("each term needs a 'tree'")
        try:
            coefficient = Fraction(str(entry.get("coefficient", 1)))
        except (ValueError, ZeroDivisionError):
            raise ExpressionSyntaxError("bad coefficient {!r}".format(entry.get("coefficient"))) from None
        key = UNIT if entry["tree"] == "unit" else tree_from_dict(entry["tree"])
        terms[key] = terms.get(key, Fraction(0)) + coefficient
    return StrataSum(flavor, data.get("plusInputs", 0), data.get("realInputs", 0), terms)


def parse_strata(text: str) -> StrataSum:
    return strata_from_dict(_load(text))

