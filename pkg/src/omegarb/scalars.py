"""Exact rational coefficients and canonical formal linear combinations.

Everything downstream (parameter structures, tree and word algebras, the
classifier) computes over the rationals, represented by
:class:`fractions.Fraction`: numerator/denominator in lowest terms with a
positive denominator, so equality of coefficients is decidable and exact.
A :class:`FormalSum` is a finite linear combination of hashable basis
elements with nonzero Fraction coefficients; the zero element is the empty
sum.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def parse_scalar(text: str) -> Fraction:
    """Parse a scalar literal "p/q" or "p" (q omitted means 1)."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad scalar literal {text!r}: {exc}") from None


def format_scalar(value: Fraction) -> str:
    return str(value)


def _sort_key(basis):
    key = getattr(basis, "sort_key", None)
    if key is not None:
        return key() if callable(key) else key
    return basis


class FormalSum:
    """A finite map basis -> nonzero Scalar, in canonical form.

    Instances are immutable; arithmetic returns new sums. Iteration yields
    (basis, coefficient) pairs in the canonical basis order.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | Iterable | None = None):
        acc: dict = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for basis, coeff in items:
                coeff = Fraction(coeff)
                if coeff:
                    cur = acc.get(basis, ZERO) + coeff
                    if cur:
                        acc[basis] = cur
                    else:
                        acc.pop(basis, None)
        self._terms = acc

    @classmethod
    def zero(cls) -> "FormalSum":
        return cls()

    @classmethod
    def term(cls, basis, coeff: Fraction | int = 1) -> "FormalSum":
        out = cls()
        coeff = Fraction(coeff)
        if coeff:
            out._terms[basis] = coeff
        return out

    @classmethod
    def _raw(cls, terms: dict) -> "FormalSum":
        # internal: terms must already be canonical (no zeros)
        out = cls()
        out._terms = terms
        return out

    def items(self) -> list:
        return sorted(self._terms.items(), key=lambda kv: _sort_key(kv[0]))

    def __iter__(self) -> Iterator:
        return iter(self.items())

    def coeff(self, basis) -> Fraction:
        return self._terms.get(basis, ZERO)

    def support(self) -> list:
        return [b for b, _ in self.items()]

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "FormalSum") -> "FormalSum":
        if not isinstance(other, FormalSum):
            return NotImplemented
        if not self._terms:
            return other
        if not other._terms:
            return self
        acc = dict(self._terms)
        for basis, coeff in other._terms.items():
            cur = acc.get(basis, ZERO) + coeff
            if cur:
                acc[basis] = cur
            else:
                acc.pop(basis, None)
        return FormalSum._raw(acc)

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        return self + (-other)

    def __neg__(self) -> "FormalSum":
        return FormalSum._raw({b: -c for b, c in self._terms.items()})

    def scale(self, factor: Fraction | int) -> "FormalSum":
        factor = Fraction(factor)
        if not factor:
            return FormalSum()
        if factor == 1:
            return self
        return FormalSum._raw({b: factor * c for b, c in self._terms.items()})

    def __rmul__(self, factor) -> "FormalSum":
        if isinstance(factor, (int, Fraction)):
            return self.scale(factor)
        return NotImplemented

    def map_basis(self, fn: Callable) -> "FormalSum":
        """Relabel basis elements through fn (linear extension of b -> fn(b))."""
        acc: dict = {}
        for basis, coeff in self._terms.items():
            image = fn(basis)
            cur = acc.get(image, ZERO) + coeff
            if cur:
                acc[image] = cur
            else:
                acc.pop(image, None)
        return FormalSum._raw(acc)

    def apply_linear(self, fn: Callable[[object], "FormalSum"]) -> "FormalSum":
        """Linear extension of a basis map b -> FormalSum."""
        out = FormalSum()
        for basis, coeff in self._terms.items():
            out = out + fn(basis).scale(coeff)
        return out

    def __repr__(self) -> str:
        if not self._terms:
            return "FormalSum(0)"
        parts = [f"{c}*{b!r}" for b, c in self.items()]
        return "FormalSum(" + " + ".join(parts) + ")"


def bilinear_extend(fn: Callable[[object, object], FormalSum]):
    """The unique bilinear extension of a basis-pair map to pairs of sums."""

    def extended(x: FormalSum, y: FormalSum) -> FormalSum:
        out = FormalSum()
        for bx, cx in x._terms.items():
            for by, cy in y._terms.items():
                out = out + fn(bx, by).scale(cx * cy)
        return out

    return extended
