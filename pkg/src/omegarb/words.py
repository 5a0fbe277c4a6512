"""Typed words over a basis-presented algebra and the commutative free object.

A :class:`FiniteAlgebra` is an associative algebra given by structure
constants over a finite basis (optionally unital, optionally commutative);
associativity, the unit law, and the commutativity flag are verified at
construction.  A :class:`TypedWord` alternates basis indices of the algebra
with type indices of the parameter structure; multilinearity in the algebra
slots is resolved by expanding products over the basis, so word sums stay in
canonical form.  :class:`WordAlgebra` implements the four-case inductive
product, the prepend operators P_w, and the universal morphism; ``unitize``
adjoins a unit (new basis index 0) and ``sh_prime_filter`` recognizes the
free-object subspace generated by a non-unital algebra inside its
unitization.
"""

from __future__ import annotations

from fractions import Fraction

from .omega import OmegaStructure, StructureError
from .scalars import FormalSum, parse_scalar

__all__ = [
    "FiniteAlgebra",
    "TypedWord",
    "WordAlgebra",
    "word_length",
    "unitize",
    "sh_prime_filter",
    "sum_in_sh_prime",
    "word_evaluate",
    "parse_algebra",
    "serialize_algebra",
    "parse_word_expr",
    "word_to_str",
    "word_sum_to_str",
]


class FiniteAlgebra:
    """Associative algebra with basis labels and structure-constant table.

    ``mult[i][j]`` is the product of basis elements i and j as a FormalSum
    over basis indices.
    """

    def __init__(self, labels, mult, unit=None, commutative=False):
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        self.mult = tuple(tuple(row) for row in mult)
        self.unit = unit
        self.commutative = bool(commutative)
        if len(self.mult) != self.dim or any(len(row) != self.dim for row in self.mult):
            raise StructureError("multiplication table has wrong shape")
        self._validate()

    def _validate(self):
        rng = range(self.dim)
        for i in rng:
            for j in rng:
                for k in rng:
                    lhs = self.mult[i][j].apply_linear(lambda m: self.mult[m][k])
                    rhs = self.mult[j][k].apply_linear(lambda m: self.mult[i][m])
                    if lhs != rhs:
                        raise StructureError(
                            f"structure constants not associative at basis triple ({i},{j},{k})"
                        )
        if self.commutative:
            for i in rng:
                for j in rng:
                    if self.mult[i][j] != self.mult[j][i]:
                        raise StructureError(
                            f"commutative flag set but basis pair ({i},{j}) does not commute"
                        )
        if self.unit is not None:
            e = self.unit
            for i in rng:
                if self.mult[e][i] != FormalSum.term(i) or self.mult[i][e] != FormalSum.term(i):
                    raise StructureError(f"declared unit {e} is not a two-sided unit")

    def product_basis(self, i: int, j: int) -> FormalSum:
        return self.mult[i][j]

    def element(self, label: str) -> FormalSum:
        try:
            return FormalSum.term(self.labels.index(label))
        except ValueError:
            raise StructureError(f"unknown basis label {label!r}") from None

    def __eq__(self, other):
        return (
            isinstance(other, FiniteAlgebra)
            and self.labels == other.labels
            and self.mult == other.mult
            and self.unit == other.unit
            and self.commutative == other.commutative
        )

    def __repr__(self):
        return f"FiniteAlgebra(labels={self.labels}, unit={self.unit})"


class TypedWord:
    __slots__ = ("entries", "types", "_hash")

    def __init__(self, entries, types):
        entries = tuple(entries)
        types = tuple(types)
        if len(entries) != len(types) + 1:
            raise ValueError("entries count must be types count + 1")
        self.entries = entries
        self.types = types
        self._hash = hash((entries, types))

    def __eq__(self, other):
        if not isinstance(other, TypedWord):
            return NotImplemented
        return self.entries == other.entries and self.types == other.types

    def __hash__(self):
        return self._hash

    def sort_key(self):
        return (len(self.entries), self.types, self.entries)

    def __repr__(self):
        return f"TypedWord(entries={self.entries}, types={self.types})"


def word_length(w: TypedWord) -> int:
    return len(w.entries)


def unitize(algebra: FiniteAlgebra) -> FiniteAlgebra:
    """Adjoin a unit: new basis index 0, old basis shifted up by one.

    The product rule is (c + a)(d + b) = cd + (cb + da + ab) for scalars
    c, d and algebra elements a, b.
    """
    dim = algebra.dim
    labels = ("1",) + tuple(algebra.labels)
    mult = []
    for i in range(dim + 1):
        row = []
        for j in range(dim + 1):
            if i == 0:
                row.append(FormalSum.term(j))
            elif j == 0:
                row.append(FormalSum.term(i))
            else:
                row.append(algebra.mult[i - 1][j - 1].map_basis(lambda b: b + 1))
        mult.append(tuple(row))
    return FiniteAlgebra(labels, mult, unit=0, commutative=algebra.commutative)


def sh_prime_filter(w: TypedWord, ua: FiniteAlgebra) -> bool:
    """Membership in the subspace generated by the non-unital part: words of
    length one must avoid the adjoined unit; longer words are unrestricted."""
    if ua.unit is None:
        raise StructureError("filter needs the unitization (a marked unit index)")
    if len(w.entries) == 1:
        return w.entries[0] != ua.unit
    return True


def sum_in_sh_prime(s: FormalSum, ua: FiniteAlgebra) -> bool:
    return all(sh_prime_filter(w, ua) for w, _ in s)


class WordAlgebra:
    """Typed words over a unital algebra, with the inductive product."""

    def __init__(self, omega: OmegaStructure, algebra: FiniteAlgebra):
        if not omega.weight_zero and not omega.has_strict_weight:
            raise StructureError(
                "word product needs strict (dot, lambda) weight data or weight-0 mode"
            )
        if algebra.unit is None:
            raise StructureError(
                "word operators need a unital algebra; apply unitize() first"
            )
        self.omega = omega
        self.algebra = algebra
        self._cache: dict = {}

    def one(self) -> FormalSum:
        return FormalSum.term(TypedWord((self.algebra.unit,), ()))

    def zero(self) -> FormalSum:
        return FormalSum.zero()

    def word(self, entries, types) -> FormalSum:
        return FormalSum.term(TypedWord(entries, types))

    def p_op(self, w: int, x: FormalSum | TypedWord) -> FormalSum:
        if isinstance(x, TypedWord):
            x = FormalSum.term(x)
        if not 0 <= w < self.omega.size:
            raise StructureError(f"type index {w} outside carrier")
        e = self.algebra.unit
        return x.map_basis(
            lambda word: TypedWord((e,) + word.entries, (w,) + word.types)
        )

    def product(self, u: FormalSum | TypedWord, v: FormalSum | TypedWord) -> FormalSum:
        if isinstance(u, TypedWord):
            u = FormalSum.term(u)
        if isinstance(v, TypedWord):
            v = FormalSum.term(v)
        acc: dict = {}
        for w1, c1 in u._terms.items():
            for w2, c2 in v._terms.items():
                factor = c1 * c2
                one = factor == 1
                for w, c in self.diamond_basis(w1, w2)._terms.items():
                    cur = acc.get(w, 0) + (c if one else factor * c)
                    if cur:
                        acc[w] = cur
                    else:
                        del acc[w]
        return FormalSum._raw(acc)

    def _cons(self, head: FormalSum, ty: int, tail: FormalSum) -> FormalSum:
        acc: dict = {}
        for k, ck in head:
            for word, cw in tail:
                key = TypedWord((k,) + word.entries, (ty,) + word.types)
                cur = acc.get(key, 0) + ck * cw
                if cur:
                    acc[key] = cur
                else:
                    acc.pop(key, None)
        return FormalSum(acc)

    def diamond_basis(self, a: TypedWord, b: TypedWord) -> FormalSum:
        key = (a, b)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        head = self.algebra.product_basis(a.entries[0], b.entries[0])
        m = len(a.types)
        n = len(b.types)
        if m == 0 and n == 0:
            res = head.map_basis(lambda k: TypedWord((k,), ()))
        elif n == 0:
            res = self._cons(head, a.types[0], FormalSum.term(_tail(a)))
        elif m == 0:
            res = self._cons(head, b.types[0], FormalSum.term(_tail(b)))
        else:
            om = self.omega
            al, be = a.types[0], b.types[0]
            ta, tb = _tail(a), _tail(b)
            res = self._cons(
                head,
                om.right(al, be),
                self.product(self.p_op(om.rhd(al, be), ta), FormalSum.term(tb)),
            ) + self._cons(
                head,
                om.left(al, be),
                self.product(FormalSum.term(ta), self.p_op(om.lhd(al, be), tb)),
            )
            if not om.weight_zero:
                coeff = om.lam_at(al, be)
                if coeff:
                    res = res + self._cons(
                        head, om.dot(al, be), self.diamond_basis(ta, tb)
                    ).scale(coeff)
        self._cache[key] = res
        return res


def _tail(w: TypedWord) -> TypedWord:
    return TypedWord(w.entries[1:], w.types[1:])


def word_evaluate(x: FormalSum | TypedWord, f, R, algebra: FiniteAlgebra):
    """The universal morphism: f on length-one words, then
    fbar(a0 (x)_t tail) = f(a0) * P_t(fbar(tail)).

    ``f`` maps basis indices of ``algebra`` to elements of ``R``; it must be
    an algebra morphism, which is verified on all basis pairs first.
    """
    for i in range(algebra.dim):
        for j in range(algebra.dim):
            expect = FormalSum.zero()
            for k, c in algebra.product_basis(i, j):
                expect = expect + f[k].scale(c)
            if R.product(f[i], f[j]) != expect:
                raise StructureError(
                    f"f is not an algebra morphism on basis pair ({i},{j})"
                )

    def eval_word(w: TypedWord):
        acc = f[w.entries[0]]
        if w.types:
            acc = R.product(acc, R.p_op(w.types[0], eval_word(_tail(w))))
        return acc

    if isinstance(x, TypedWord):
        return eval_word(x)
    out = R.zero()
    for w, c in x:
        out = out + eval_word(w).scale(c)
    return out


# ---------------------------------------------------------------------------
# Algebra file format and word expressions


def parse_algebra(text: str) -> FiniteAlgebra:
    """Parse the algebra format: ``basis``, ``unit``, ``commutative``,
    ``mult`` entries (key = value, ';' or newline separated)."""
    from .omega import _parse_value  # shared literal parser

    fields = {}
    for chunk in text.replace(";", "\n").splitlines():
        line = chunk.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise StructureError(f"expected 'key = value', got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key in fields:
            raise StructureError(f"duplicate key {key!r}")
        fields[key] = value
    if "basis" not in fields or "mult" not in fields:
        raise StructureError("algebra file needs 'basis' and 'mult'")
    basis_raw = fields.pop("basis").strip()
    if basis_raw.startswith("["):
        labels = [tok for tok in basis_raw.strip("[]").replace(",", " ").split() if tok]
    else:
        labels = basis_raw.split()
    unit = None
    if "unit" in fields:
        raw = fields.pop("unit").strip()
        if raw.lower() != "none":
            unit = labels.index(raw) if raw in labels else int(raw)
    commutative = False
    if "commutative" in fields:
        commutative = fields.pop("commutative").strip().lower() in ("1", "true", "yes")
    raw_mult = _parse_value(fields.pop("mult"))
    if fields:
        raise StructureError(f"unknown keys {sorted(fields)}")
    mult = tuple(
        tuple(
            FormalSum({int(b): c for b, c in cell.items()}) if isinstance(cell, dict)
            else FormalSum.term(int(cell))
            for cell in row
        )
        for row in raw_mult
    )
    return FiniteAlgebra(labels, mult, unit=unit, commutative=commutative)


def serialize_algebra(a: FiniteAlgebra) -> str:
    lines = ["basis = [" + ", ".join(a.labels) + "]"]
    lines.append(f"unit = {a.labels[a.unit] if a.unit is not None else 'none'}")
    lines.append(f"commutative = {'true' if a.commutative else 'false'}")
    rows = []
    for row in a.mult:
        rows.append(
            "[" + ",".join("{" + ",".join(f"{b}:{c}" for b, c in cell) + "}" for cell in row) + "]"
        )
    lines.append("mult = [" + ",".join(rows) + "]")
    return "\n".join(lines) + "\n"


def word_to_str(w: TypedWord, algebra: FiniteAlgebra, type_labels) -> str:
    parts = [algebra.labels[w.entries[0]]]
    for ty, entry in zip(w.types, w.entries[1:]):
        parts.append(f"[{type_labels[ty]}]")
        parts.append(algebra.labels[entry])
    return " ".join(parts)


def word_sum_to_str(s: FormalSum, algebra: FiniteAlgebra, type_labels) -> str:
    if s.is_zero():
        return "0"
    parts = []
    for w, c in s:
        body = word_to_str(w, algebra, type_labels)
        if c == 1:
            parts.append(body)
        elif c == -1:
            parts.append("-" + body)
        else:
            parts.append(f"{c}*({body})")
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


class _WordExprParser:
    """Word-sum expressions: same +/- /* layering as tree expressions, with
    atoms ``entry [type] entry [type] entry`` and optional '(...)' grouping."""

    def __init__(self, text, algebra: FiniteAlgebra, type_labels, word_algebra=None):
        from .trees import _tokenize_expr

        self.tokens = _tokenize_expr(text)
        self.pos = 0
        self.algebra = algebra
        self.entry_index = {lab: i for i, lab in enumerate(algebra.labels)}
        self.type_index = {lab: i for i, lab in enumerate(type_labels)}
        self.word_algebra = word_algebra

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            from .trees import ExprError

            raise ExprError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        self.pos += 1
        return tok

    def parse(self) -> FormalSum:
        from .trees import ExprError

        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ExprError(f"trailing input {tok[1]!r}", tok[2])
        if isinstance(value, Fraction):
            if value == 0:
                return FormalSum.zero()
            raise ExprError("expression is a bare scalar, not a word sum", 0)
        return value

    def expr(self):
        from .trees import ExprError

        acc = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            if isinstance(acc, Fraction) or isinstance(rhs, Fraction):
                raise ExprError("cannot add a bare scalar to a word sum", self.peek()[2])
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        from .trees import ExprError

        acc = self.atom()
        while self.peek()[0] == "*":
            self.take()
            rhs = self.atom()
            if isinstance(acc, Fraction) and isinstance(rhs, Fraction):
                acc = acc * rhs
            elif isinstance(acc, Fraction):
                acc = rhs.scale(acc)
            elif isinstance(rhs, Fraction):
                acc = acc.scale(rhs)
            else:
                if self.word_algebra is None:
                    raise ExprError("product of two words needs an ambient structure", self.peek()[2])
                acc = self.word_algebra.product(acc, rhs)
        return acc

    def atom(self):
        from .trees import ExprError

        tok = self.peek()
        if tok[0] == "num":
            # numeric basis labels (the adjoined unit is labelled "1") win
            # over scalar literals; for a unital algebra the two readings of
            # an expression like "1 * w" agree anyway
            if tok[1] in self.entry_index:
                return FormalSum.term(self.word())
            self.take()
            return Fraction(tok[1])
        if tok[0] == "-":
            self.take()
            return -self.atom()
        if tok[0] == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        if tok[0] == "name":
            return FormalSum.term(self.word())
        raise ExprError(f"expected a scalar, '(' or an entry label, found {tok[1]!r}", tok[2])

    def word(self) -> TypedWord:
        from .trees import ExprError

        entries = [self._entry()]
        types = []
        while self.peek()[0] == "[":
            self.take()
            name = self.take("name")
            if name[1] not in self.type_index:
                raise ExprError(f"unknown type label {name[1]!r}", name[2])
            types.append(self.type_index[name[1]])
            self.take("]")
            entries.append(self._entry())
        return TypedWord(tuple(entries), tuple(types))

    def _entry(self):
        from .trees import ExprError

        tok = self.peek()
        if tok[0] not in ("name", "num"):
            raise ExprError(f"expected a basis label, found {tok[1]!r}", tok[2])
        self.take()
        if tok[1] not in self.entry_index:
            raise ExprError(f"unknown basis label {tok[1]!r}", tok[2])
        return self.entry_index[tok[1]]


def parse_word_expr(
    text: str,
    algebra: FiniteAlgebra,
    type_labels,
    word_algebra: WordAlgebra | None = None,
) -> FormalSum:
    return _WordExprParser(text, algebra, type_labels, word_algebra).parse()
