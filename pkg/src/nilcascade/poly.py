"""Sparse multivariate polynomials over Q in root variables (the symmetric algebra).

A monomial is a tuple of (root, exponent) pairs sorted by the root sort key;
a polynomial maps monomials to nonzero Fraction coefficients.  The empty
monomial is the constant term.  Structural equality of the underlying dicts
is polynomial equality because keys are canonical and zeros are dropped.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ValidationError
from .rationals import format_rational, parse_rational
from .roots import Root, parse_root

Monomial = tuple  # tuple[tuple[Root, int], ...]

ONE: Monomial = ()


def monomial(*roots: Root) -> Monomial:
    counts: dict[Root, int] = {}
    for root in roots:
        counts[root] = counts.get(root, 0) + 1
    return tuple(sorted(counts.items(), key=lambda kv: kv[0].sort_key()))


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    counts = dict(a)
    for root, exp in b:
        counts[root] = counts.get(root, 0) + exp
    return tuple(sorted(counts.items(), key=lambda kv: kv[0].sort_key()))


def monomial_degree(m: Monomial) -> int:
    return sum(exp for _, exp in m)


def monomial_letters(m: Monomial) -> list[Root]:
    """The monomial's roots repeated with multiplicity."""
    out: list[Root] = []
    for root, exp in m:
        out.extend([root] * exp)
    return out


def _monomial_key(m: Monomial):
    return (monomial_degree(m), tuple((root.sort_key(), exp) for root, exp in m))


class SymPoly:
    """Element of S(n): sparse polynomial in the variables e_alpha."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {m: Fraction(c) for m, c in (terms or {}).items() if c != 0}

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "SymPoly":
        return SymPoly()

    @staticmethod
    def const(value) -> "SymPoly":
        return SymPoly({ONE: Fraction(value)})

    @staticmethod
    def var(root: Root) -> "SymPoly":
        return SymPoly({monomial(root): Fraction(1)})

    # -- ring structure ----------------------------------------------------

    def __add__(self, other: "SymPoly") -> "SymPoly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return SymPoly(out)

    def __sub__(self, other: "SymPoly") -> "SymPoly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) - c
        return SymPoly(out)

    def __neg__(self) -> "SymPoly":
        return SymPoly({m: -c for m, c in self.terms.items()})

    def __mul__(self, other) -> "SymPoly":
        if isinstance(other, (int, Fraction)):
            return SymPoly({m: c * other for m, c in self.terms.items()})
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = monomial_mul(m1, m2)
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return SymPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, SymPoly) and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- queries -------------------------------------------------------------

    def degree(self) -> int:
        return max((monomial_degree(m) for m in self.terms), default=0)

    def variables(self) -> set:
        return {root for m in self.terms for root, _ in m}

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def evaluate(self, value_of) -> Fraction:
        """Substitute value_of(root) for every variable and evaluate exactly."""
        total = Fraction(0)
        for m, c in self.terms.items():
            prod = c
            for root, exp in m:
                prod *= Fraction(value_of(root)) ** exp
            total += prod
        return total

    # -- display and serialization ---------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=_monomial_key):
            c = self.terms[m]
            factors = []
            for root, exp in m:
                factors.append(f"({root})" + (f"^{exp}" if exp > 1 else ""))
            if not factors:
                parts.append(f"{c}")
                continue
            body = "*".join(factors)
            coeff = "" if c == 1 else ("-" if c == -1 else f"{c}*")
            parts.append(f"{coeff}{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"SymPoly({self})"

    def to_json(self) -> list:
        out = []
        for m in sorted(self.terms, key=_monomial_key):
            out.append({
                "coeff": format_rational(self.terms[m]),
                "monomial": [{"root": str(root), "power": exp} for root, exp in m],
            })
        return out

    @staticmethod
    def from_json(data, path: str | None = None) -> "SymPoly":
        if not isinstance(data, list):
            raise ValidationError("bad-poly", "polynomial must be a JSON list of terms", path)
        terms: dict = {}
        for entry in data:
            if not isinstance(entry, dict) or "coeff" not in entry:
                raise ValidationError("bad-poly", "each term needs a 'coeff'", path)
            coeff = parse_rational(entry["coeff"], path)
            pairs = []
            for factor in entry.get("monomial", []):
                root = parse_root(factor["root"], path)
                power = int(factor.get("power", 1))
                if power < 1:
                    raise ValidationError("bad-poly", f"power must be >= 1, got {power}", path)
                pairs.append((root, power))
            m = monomial(*monomial_letters(tuple(pairs)))
            terms[m] = terms.get(m, Fraction(0)) + coeff
        return SymPoly(terms)


def poisson_bracket(f: SymPoly, g: SymPoly, algebra) -> SymPoly:
    """{f, g}: the Leibniz extension of the Lie bracket on generators."""
    out = SymPoly.zero()
    for m1, c1 in f.terms.items():
        for m2, c2 in g.terms.items():
            for k1, (x, e1) in enumerate(m1):
                rest1 = monomial_mul(m1[:k1] + m1[k1 + 1:], ((x, e1 - 1),) if e1 > 1 else ())
                for k2, (y, e2) in enumerate(m2):
                    brk = algebra.bracket_roots(x, y)
                    if not brk:
                        continue
                    rest2 = monomial_mul(m2[:k2] + m2[k2 + 1:], ((y, e2 - 1),) if e2 > 1 else ())
                    scale = c1 * c2 * e1 * e2
                    base = monomial_mul(rest1, rest2)
                    terms = {monomial_mul(base, monomial(z)): scale * cz for z, cz in brk.items()}
                    out = out + SymPoly(terms)
    return out
