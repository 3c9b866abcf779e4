"""Exact sparse multivariate polynomials over the rationals.

The variable universe is parametrized by a rank ``n`` and a number of
vector-variable copies ``N``.  Copy ``a`` (1-based) carries the 2n coordinates
``x<a>.<i>`` and ``y<a>.<i>`` for ``i = 1..n``; on top of that there are the
``n`` spinor variables ``z<i>`` shared by all copies.  All coefficients are
`fractions.Fraction`, so every operation is exact and equality is structural.

Term order: variables are ordered with the z family last, then by copy, then
by index, with x before y at equal (copy, index).  Monomials are compared by
the lexicographic order induced on their sparse (variable, exponent) lists
with larger exponents of earlier variables first; this fixed order is what
makes bases and matrices reproducible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, Iterator, List, Optional, Tuple


class UniverseMismatch(ValueError):
    """Raised when two objects live over different (n, N) variable universes."""


class PolyParseError(ValueError):
    """Raised on malformed polynomial/operator text or JSON."""


# ---------------------------------------------------------------------------
# Variables
# ---------------------------------------------------------------------------

_FAMILY_RANK = {"x": 0, "y": 1, "z": 2}


@dataclass(frozen=True)
class VarId:
    """A single variable: family 'x'/'y'/'z', copy (None for z), 1-based index."""

    family: str
    copy: Optional[int]
    index: int

    def __post_init__(self):
        if self.family not in _FAMILY_RANK:
            raise ValueError(f"unknown variable family {self.family!r}")
        if (self.family == "z") != (self.copy is None):
            raise ValueError("z variables carry no copy; x/y variables need one")
        if self.index < 1 or (self.copy is not None and self.copy < 1):
            raise ValueError("copy and index are 1-based")

    @property
    def sort_key(self) -> Tuple[int, int, int, int]:
        if self.family == "z":
            return (1, 0, self.index, 2)
        return (0, self.copy, self.index, _FAMILY_RANK[self.family])

    def __str__(self) -> str:
        if self.family == "z":
            return f"z{self.index}"
        return f"{self.family}{self.copy}.{self.index}"

    def in_universe(self, n: int, N: int) -> bool:
        if self.index > n:
            return False
        return self.copy is None or self.copy <= N


_VAR_RE = re.compile(r"^(d?)([xyz])(\d+)(?:\.(\d+))?$")


def parse_var(name: str, n: int, N: int, *, allow_deriv: bool = False):
    """Parse a variable token like ``x1.2``, ``z3`` or (operator mode) ``dz3``.

    For N=1 the aliases ``x2``/``y2`` (no dot) mean copy 1, index 2.
    Returns (VarId, is_derivative).
    """
    m = _VAR_RE.match(name)
    if not m:
        raise PolyParseError(f"cannot parse variable {name!r}")
    dflag, family, first, second = m.groups()
    if dflag and not allow_deriv:
        raise PolyParseError(f"derivative factor {name!r} not allowed in a polynomial")
    try:
        if family == "z":
            if second is not None:
                raise PolyParseError(f"z variables carry no copy: {name!r}")
            var = VarId("z", None, int(first))
        elif second is not None:
            var = VarId(family, int(first), int(second))
        else:
            if N != 1:
                raise PolyParseError(
                    f"{name!r}: the copy-free alias is only accepted for N=1"
                )
            var = VarId(family, 1, int(first))
    except PolyParseError:
        raise
    except ValueError as exc:
        raise PolyParseError(f"bad variable {name!r}: {exc}") from exc
    if not var.in_universe(n, N):
        raise PolyParseError(f"variable {var} outside the (n={n}, N={N}) universe")
    return var, bool(dflag)


def variables(n: int, N: int) -> List[VarId]:
    """All universe variables in the fixed term order."""
    out = []
    for a in range(1, N + 1):
        for i in range(1, n + 1):
            out.append(VarId("x", a, i))
            out.append(VarId("y", a, i))
    out.extend(VarId("z", None, i) for i in range(1, n + 1))
    return out


def copy_variables(n: int, a: int) -> List[VarId]:
    """The 2n coordinates of copy a, in term order."""
    out = []
    for i in range(1, n + 1):
        out.append(VarId("x", a, i))
        out.append(VarId("y", a, i))
    return out


def z_variables(n: int) -> List[VarId]:
    return [VarId("z", None, i) for i in range(1, n + 1)]


# ---------------------------------------------------------------------------
# Monomials: canonical sorted tuples of (VarId, positive exponent)
# ---------------------------------------------------------------------------

Monomial = Tuple[Tuple[VarId, int], ...]

ONE: Monomial = ()


def mono_from_dict(exps: Dict[VarId, int]) -> Monomial:
    items = [(v, e) for v, e in exps.items() if e != 0]
    for v, e in items:
        if e < 0:
            raise ValueError(f"negative exponent for {v}")
    items.sort(key=lambda ve: ve[0].sort_key)
    return tuple(items)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return mono_from_dict(exps)


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_z_degree(m: Monomial) -> int:
    return sum(e for v, e in m if v.family == "z")


def mono_copy_degree(m: Monomial, a: int) -> int:
    return sum(e for v, e in m if v.copy == a)


def mono_sort_key(m: Monomial):
    # Lex order on the sparse (variable, exponent) list; negated exponents put
    # higher powers of earlier variables first (x^2 before x*y before y^2).
    return tuple((v.sort_key, -e) for v, e in m)


def mono_str(m: Monomial) -> str:
    if not m:
        return "1"
    parts = []
    for v, e in m:
        parts.append(str(v) if e == 1 else f"{v}^{e}")
    return "*".join(parts)


# ---------------------------------------------------------------------------
# Multi-degrees
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MultiDegree:
    """Total x+y degree per vector-variable copy, plus the spinor z degree."""

    per_copy: Tuple[int, ...]
    z_degree: int = 0

    def __post_init__(self):
        if any(d < 0 for d in self.per_copy) or self.z_degree < 0:
            raise ValueError("degrees must be nonnegative")

    @property
    def N(self) -> int:
        return len(self.per_copy)


def mono_multidegree(m: Monomial, N: int) -> MultiDegree:
    per_copy = [0] * N
    z = 0
    for v, e in m:
        if v.family == "z":
            z += e
        else:
            per_copy[v.copy - 1] += e
    return MultiDegree(tuple(per_copy), z)


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


class Poly:
    """A sparse exact polynomial over the (n, N) universe.

    Values are immutable after construction; all arithmetic returns new
    objects, so instances are safe to share across threads.
    """

    __slots__ = ("n", "N", "terms")

    def __init__(self, n: int, N: int, terms: Optional[Dict[Monomial, Fraction]] = None):
        if n < 1 or N < 1:
            raise ValueError("need n >= 1 and N >= 1")
        self.n = n
        self.N = N
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                c = _as_fraction(c)
                if c != 0:
                    clean[m] = c
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, n: int, N: int) -> "Poly":
        return cls(n, N)

    @classmethod
    def const(cls, n: int, N: int, c) -> "Poly":
        return cls(n, N, {ONE: _as_fraction(c)})

    @classmethod
    def var(cls, n: int, N: int, v) -> "Poly":
        if isinstance(v, str):
            v, _ = parse_var(v, n, N)
        if not v.in_universe(n, N):
            raise UniverseMismatch(f"{v} outside the (n={n}, N={N}) universe")
        return cls(n, N, {((v, 1),): Fraction(1)})

    # -- basic protocol -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.n == other.n and self.N == other.N and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(self.n, self.N, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.N, frozenset(self.terms.items())))

    def _check(self, other: "Poly"):
        if self.n != other.n or self.N != other.N:
            raise UniverseMismatch(
                f"(n={self.n}, N={self.N}) vs (n={other.n}, N={other.N})"
            )

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.n, self.N, other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return Poly(self.n, self.N, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.n, self.N, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.n, self.N, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            return Poly(self.n, self.N, {m: c * v for m, v in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        out: Dict[Monomial, Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = mono_mul(ma, mb)
                out[m] = out.get(m, Fraction(0)) + ca * cb
        return Poly(self.n, self.N, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not polynomials")
        out = Poly.const(self.n, self.N, 1)
        for _ in range(e):
            out = out * self
        return out

    # -- calculus and grading -----------------------------------------------

    def partial(self, v) -> "Poly":
        """Exact formal partial derivative with respect to v."""
        if isinstance(v, str):
            v, _ = parse_var(v, self.n, self.N)
        out: Dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            exps = dict(m)
            e = exps.get(v, 0)
            if e == 0:
                continue
            if e == 1:
                del exps[v]
            else:
                exps[v] = e - 1
            mm = mono_from_dict(exps)
            out[mm] = out.get(mm, Fraction(0)) + c * e
        return Poly(self.n, self.N, out)

    def homogeneous_component(self, d: MultiDegree) -> "Poly":
        """Sum of the terms of exactly multidegree d (an idempotent projection)."""
        if d.N != self.N:
            raise UniverseMismatch(f"multidegree has {d.N} copies, universe has {self.N}")
        out = {
            m: c
            for m, c in self.terms.items()
            if mono_multidegree(m, self.N) == d
        }
        return Poly(self.n, self.N, out)

    def multidegree(self) -> Optional[MultiDegree]:
        """The common multidegree of all terms, or None if mixed or zero."""
        degs = {mono_multidegree(m, self.N) for m in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def occurring_multidegrees(self) -> List[MultiDegree]:
        degs = {mono_multidegree(m, self.N) for m in self.terms}
        return sorted(degs, key=lambda d: (d.per_copy, d.z_degree))

    def copy_degree_of_terms(self, a: int) -> Optional[int]:
        """Degree in copy a if uniform over all terms, else None."""
        degs = {mono_copy_degree(m, a) for m in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def max_z_degree(self) -> int:
        return max((mono_z_degree(m) for m in self.terms), default=0)

    # -- views ----------------------------------------------------------------

    def items_sorted(self) -> List[Tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda mc: mono_sort_key(mc[0]))

    def leading(self) -> Tuple[Monomial, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return self.items_sorted()[0]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.items_sorted():
            sign = "-" if c < 0 else "+"
            c = abs(c)
            if not m:
                body = str(c)
            elif c == 1:
                body = mono_str(m)
            else:
                body = f"{c}*{mono_str(m)}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    __repr__ = __str__

    # -- serialization --------------------------------------------------------

    def to_json(self) -> List[dict]:
        out = []
        for m, c in self.items_sorted():
            out.append({"coef": str(c), "exps": {str(v): e for v, e in m}})
        return out


def poly_add(p: Poly, q: Poly) -> Poly:
    return p + q


def poly_mul(p: Poly, q: Poly) -> Poly:
    return p * q


def partial(p: Poly, v) -> Poly:
    return p.partial(v)


def homogeneous_component(p: Poly, d: MultiDegree) -> Poly:
    return p.homogeneous_component(d)


# ---------------------------------------------------------------------------
# Monomial bases of graded components
# ---------------------------------------------------------------------------


def _compositions(total: int, slots: int) -> Iterator[Tuple[int, ...]]:
    """All length-``slots`` tuples of nonnegative ints summing to total."""
    if slots == 0:
        if total == 0:
            yield ()
        return
    if slots == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, slots - 1):
            yield (first,) + rest


def monos_of_degree(vars_: List[VarId], degree: int) -> List[Monomial]:
    """All monomials in the given variables of exact total degree."""
    out = []
    for exps in _compositions(degree, len(vars_)):
        out.append(mono_from_dict({v: e for v, e in zip(vars_, exps) if e}))
    return out


def monomial_basis(
    n: int, N: int, d: MultiDegree, num_vars: Optional[int] = None
) -> List[Monomial]:
    """Ordered basis of the multidegree-d component of the (n, N) universe.

    ``num_vars`` restricts copy 1 to its first ``num_vars`` coordinates (the
    R^m validation path for the classical harmonic checks); it requires N=1.
    """
    if d.N != N:
        raise ValueError(f"multidegree has {d.N} copies, expected {N}")
    if num_vars is not None:
        if N != 1:
            raise ValueError("num_vars restriction only supported for N=1")
        if not 1 <= num_vars <= 2 * n:
            raise ValueError(f"num_vars must lie in 1..{2*n}")
    factors: List[List[Monomial]] = []
    for a in range(1, N + 1):
        vars_a = copy_variables(n, a)
        if num_vars is not None and a == 1:
            vars_a = vars_a[:num_vars]
        factors.append(monos_of_degree(vars_a, d.per_copy[a - 1]))
    if d.z_degree:
        factors.append(monos_of_degree(z_variables(n), d.z_degree))
    basis = [ONE]
    for fac in factors:
        basis = [mono_mul(m, f) for m in basis for f in fac]
    basis.sort(key=mono_sort_key)
    return basis


def graded_dimension(n: int, N: int, d: MultiDegree) -> int:
    """Closed-form count of monomial_basis via stars and bars."""
    count = 1
    for la in d.per_copy:
        count *= comb(la + 2 * n - 1, 2 * n - 1)
    count *= comb(d.z_degree + n - 1, n - 1)
    return count


# ---------------------------------------------------------------------------
# Text and JSON input
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z][A-Za-z0-9.]*)|(?P<op>[-+*^]))"
)


def _tokenize(text: str) -> List[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise PolyParseError(f"unexpected input at {text[pos:pos+10]!r}")
            break
        tokens.append(m.group("num") or m.group("name") or m.group("op"))
        pos = m.end()
    return tokens


def parse_terms(text: str, n: int, N: int, *, allow_deriv: bool = False):
    """Parse the polynomial/operator text grammar.

    Yields (coef, mult_exps, deriv_exps) triples, one per textual term.
    Plain polynomial inputs always have empty deriv_exps.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise PolyParseError("empty input")
    terms = []
    i = 0
    while i < len(tokens):
        sign = Fraction(1)
        while i < len(tokens) and tokens[i] in "+-":
            if tokens[i] == "-":
                sign = -sign
            i += 1
        if i >= len(tokens):
            raise PolyParseError("dangling sign at end of input")
        coef = sign
        mult: Dict[VarId, int] = {}
        deriv: Dict[VarId, int] = {}
        expect_atom = True
        consumed = False
        while i < len(tokens):
            tok = tokens[i]
            if tok in "+-":
                break
            if tok == "*":
                i += 1
                expect_atom = True
                continue
            if tok == "^":
                raise PolyParseError("misplaced '^'")
            if not expect_atom:
                raise PolyParseError(f"missing '*' before {tok!r}")
            # exponent lookahead
            exp = 1
            adv = 1
            if i + 2 < len(tokens) and tokens[i + 1] == "^":
                exp_tok = tokens[i + 2]
                if not exp_tok.isdigit():
                    raise PolyParseError(f"bad exponent {exp_tok!r}")
                exp = int(exp_tok)
                adv = 3
            elif i + 1 < len(tokens) and tokens[i + 1] == "^":
                raise PolyParseError("dangling '^'")
            if re.fullmatch(r"\d+(?:/\d+)?", tok):
                if adv != 1:
                    raise PolyParseError("numeric coefficients take no exponent")
                coef *= Fraction(tok)
            else:
                var, is_deriv = parse_var(tok, n, N, allow_deriv=allow_deriv)
                target = deriv if is_deriv else mult
                target[var] = target.get(var, 0) + exp
            i += adv
            expect_atom = False
            consumed = True
        if not consumed:
            raise PolyParseError("empty term")
        terms.append((coef, mult, deriv))
    return terms


def parse_poly(text: str, n: int, N: int) -> Poly:
    """Parse the polynomial text grammar, e.g. ``3/2*x1.1^2*z1 - y1.2``."""
    out: Dict[Monomial, Fraction] = {}
    for coef, mult, _ in parse_terms(text, n, N, allow_deriv=False):
        m = mono_from_dict(mult)
        out[m] = out.get(m, Fraction(0)) + coef
    return Poly(n, N, out)


def poly_from_json(data: Iterable[dict], n: int, N: int) -> Poly:
    out: Dict[Monomial, Fraction] = {}
    for entry in data:
        try:
            coef = Fraction(entry["coef"])
            exps = entry.get("exps", {})
        except (KeyError, TypeError, ValueError) as exc:
            raise PolyParseError(f"bad polynomial JSON entry {entry!r}") from exc
        mult: Dict[VarId, int] = {}
        for name, e in exps.items():
            var, _ = parse_var(name, n, N)
            mult[var] = mult.get(var, 0) + int(e)
        m = mono_from_dict(mult)
        out[m] = out.get(m, Fraction(0)) + coef
    return Poly(n, N, out)
