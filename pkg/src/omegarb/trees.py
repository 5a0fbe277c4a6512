"""Typed angularly decorated planar rooted trees and their free algebra.

A :class:`Tree` is a root vertex with an ordered, nonempty tuple of
children separated by angle decorations.  Each child is either a leaf
(``None``) or an internal edge ``(type_index, subtree)`` typed by a carrier
element of the ambient parameter structure.  The one-leaf tree is the
multiplicative identity; the trivial tree appears only as a leaf child,
never as a standalone algebra element, which keeps the basis of formal
sums uniform.

:class:`TreeAlgebra` implements the inductive product: depth-1 corollas
concatenate their angle lists; when at least one of the two boundary
children (last child of the left factor, first child of the right factor)
is a leaf, the roots merge and the boundary pair collapses onto the
non-leaf member; when both are internal edges with types a, b the boundary
pair expands to the three grafted terms typed (a->b, a|>b), (a<-b, a<|b)
and weight * (a.b) before merging, recursing on the subtrees.  Grafting on
a new root realizes the Rota-Baxter operator family.
"""

from __future__ import annotations

from fractions import Fraction

from .omega import OmegaStructure, StructureError
from .scalars import FormalSum

__all__ = [
    "Tree",
    "unit",
    "corolla",
    "graft",
    "depth",
    "branches",
    "leaf_count",
    "TreeAlgebra",
    "rb_operator",
    "assoc_counterexample_search",
    "all_trees",
    "tree_to_str",
    "sum_to_str",
    "parse_tree_expr",
]


class Tree:
    __slots__ = ("children", "angles", "_hash", "_key", "_depth")

    def __init__(self, children, angles):
        children = tuple(children)
        angles = tuple(angles)
        if not children:
            raise ValueError("a tree has at least one child (the one-leaf tree)")
        if len(angles) != len(children) - 1:
            raise ValueError("angle count must be children count - 1")
        self.children = children
        self.angles = angles
        self._hash = hash((children, angles))
        self._key = None
        self._depth = None

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Tree):
            return NotImplemented
        return (
            self._hash == other._hash
            and self.angles == other.angles
            and self.children == other.children
        )

    def __hash__(self):
        return self._hash

    def sort_key(self):
        # recursive lexicographic on (arity, angle labels, child markers)
        if self._key is None:
            kids = tuple(
                (0,) if c is None else (1, c[0], c[1].sort_key()) for c in self.children
            )
            self._key = (len(self.children), self.angles, kids)
        return self._key

    def __repr__(self):
        return f"Tree{self.sort_key()!r}"


_UNIT = Tree((None,), ())


def unit() -> Tree:
    """The one-leaf single-vertex tree, the identity of the product."""
    return _UNIT


def corolla(angles) -> Tree:
    """A single vertex with only leaf children, decorated by the given angles."""
    angles = tuple(angles)
    return Tree((None,) * (len(angles) + 1), angles)


def graft(omega: int, t: Tree | FormalSum):
    """New root below the argument, connected by an edge typed ``omega``."""
    if isinstance(t, FormalSum):
        return t.map_basis(lambda b: Tree(((omega, b),), ()))
    return Tree(((omega, t),), ())


def depth(t: Tree) -> int:
    if t._depth is None:
        t._depth = 1 + max(
            (depth(c[1]) for c in t.children if c is not None), default=0
        )
    return t._depth


def branches(t: Tree) -> int:
    return len(t.children)


def leaf_count(t: Tree) -> int:
    return sum(1 if c is None else leaf_count(c[1]) for c in t.children)


class TreeAlgebra:
    """The free algebra on trees over a parameter structure.

    Elements are formal sums of trees; the product is memoized on basis
    pairs, which makes large exhaustive identity scans cheap.
    """

    def __init__(self, omega: OmegaStructure):
        if not omega.weight_zero and not omega.has_strict_weight:
            raise StructureError(
                "tree product needs strict (dot, lambda) weight data or weight-0 mode"
            )
        self.omega = omega
        self._cache: dict = {}

    def one(self) -> FormalSum:
        return FormalSum.term(_UNIT)

    def zero(self) -> FormalSum:
        return FormalSum.zero()

    def element(self, t: Tree) -> FormalSum:
        return FormalSum.term(t)

    def p_op(self, w: int, x: FormalSum | Tree) -> FormalSum:
        if isinstance(x, Tree):
            x = FormalSum.term(x)
        if not 0 <= w < self.omega.size:
            raise StructureError(f"type index {w} outside carrier")
        return graft(w, x)

    def product(self, u: FormalSum | Tree, v: FormalSum | Tree) -> FormalSum:
        if isinstance(u, Tree):
            u = FormalSum.term(u)
        if isinstance(v, Tree):
            v = FormalSum.term(v)
        acc: dict = {}
        for t1, c1 in u._terms.items():
            for t2, c2 in v._terms.items():
                factor = c1 * c2
                one = factor == 1
                for t, c in self.diamond_basis(t1, t2)._terms.items():
                    cur = acc.get(t, 0) + (c if one else factor * c)
                    if cur:
                        acc[t] = cur
                    else:
                        del acc[t]
        return FormalSum._raw(acc)

    def diamond_basis(self, t: Tree, u: Tree) -> FormalSum:
        key = (t, u)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        last = t.children[-1]
        first = u.children[0]
        head = t.children[:-1]
        tail = u.children[1:]
        angles = t.angles + u.angles
        if last is None or first is None:
            merged = first if last is None else last
            res = FormalSum.term(Tree(head + (merged,) + tail, angles))
        else:
            a, left_sub = last
            b, right_sub = first
            om = self.omega
            mid = graft(
                om.right(a, b),
                self.diamond_basis(graft(om.rhd(a, b), left_sub), right_sub),
            ) + graft(
                om.left(a, b),
                self.diamond_basis(left_sub, graft(om.lhd(a, b), right_sub)),
            )
            if not om.weight_zero:
                coeff = om.lam_at(a, b)
                if coeff:
                    mid = mid + graft(
                        om.dot(a, b), self.diamond_basis(left_sub, right_sub)
                    ).scale(coeff)
            res = mid.map_basis(
                lambda r: Tree(head + (r.children[0],) + tail, angles)
            )
        self._cache[key] = res
        return res

    def evaluate(self, x: FormalSum | Tree, f, target):
        """The universal morphism determined by the generator images ``f``.

        ``f`` maps angle labels to elements of ``target``, an algebra over
        the same parameter structure exposing one/product/p_op.
        """
        if target.omega != self.omega:
            raise StructureError("target algebra is over a different parameter structure")
        if isinstance(x, Tree):
            return self._eval_tree(x, f, target)
        out = None
        for t, c in x:
            val = self._eval_tree(t, f, target).scale(c)
            out = val if out is None else out + val
        return out if out is not None else target.zero()

    def _eval_tree(self, t: Tree, f, target):
        factors = []
        for i, child in enumerate(t.children):
            if child is not None:
                w, sub = child
                factors.append(target.p_op(w, self._eval_tree(sub, f, target)))
            if i < len(t.angles):
                label = t.angles[i]
                if label not in f:
                    raise StructureError(f"no image for generator {label!r}")
                factors.append(f[label])
        if not factors:
            return target.one()
        acc = factors[0]
        for fac in factors[1:]:
            acc = target.product(acc, fac)
        return acc


def rb_operator(algebra: TreeAlgebra, omega: int, u) -> FormalSum:
    """Alias of grafting, exposing the operator-family role."""
    return algebra.p_op(omega, u)


def assoc_counterexample_search(omega: OmegaStructure, gens, bound: int = 3):
    """First associativity witness among triples of grafted generator trees.

    Trees are built by grafting the generator corollas (single angles plus
    the two-angle corolla when two generators are available) up to the depth
    bound; returns (t1, t2, t3) with (t1*t2)*t3 != t1*(t2*t3), or None.
    """
    alg = TreeAlgebra(omega)
    gens = list(gens)
    bases = [corolla((g,)) for g in gens]
    if len(gens) >= 2:
        bases.append(corolla((gens[0], gens[1])))
    pool = []
    tier = [graft(w, b) for b in bases for w in range(omega.size)]
    pool.extend(tier)
    d = 2
    while d < bound:
        tier = [graft(w, t) for t in tier for w in range(omega.size)]
        pool.extend(tier)
        d += 1
    for t1 in pool:
        s1 = FormalSum.term(t1)
        for t2 in pool:
            s12 = alg.product(s1, FormalSum.term(t2))
            for t3 in pool:
                s3 = FormalSum.term(t3)
                lhs = alg.product(s12, s3)
                rhs = alg.product(s1, alg.product(FormalSum.term(t2), s3))
                if lhs != rhs:
                    return (t1, t2, t3)
    return None


def all_trees(alphabet, n_types: int, max_leaves: int, max_depth: int):
    """All trees with the given bounds, canonically ordered.

    Exhaustive over shapes, angle decorations, and edge types; sizes grow
    fast, so callers keep the bounds small.
    """
    alphabet = tuple(alphabet)
    memo: dict = {}

    def trees_exact(p, d):
        key = (p, d)
        if key in memo:
            return memo[key]
        if d < 1:
            memo[key] = []
            return []
        out = []
        # child option lists per leaf count
        def child_options(q):
            opts = []
            if q == 1:
                opts.append(None)
            for sub in trees_exact(q, d - 1):
                for w in range(n_types):
                    opts.append((w, sub))
            return opts

        def compositions(total, parts):
            if parts == 1:
                yield (total,)
                return
            for first in range(1, total - parts + 2):
                for rest in compositions(total - first, parts - 1):
                    yield (first,) + rest

        for k in range(1, p + 1):
            for comp in compositions(p, k):
                opt_lists = [child_options(q) for q in comp]
                if any(not opts for opts in opt_lists):
                    continue
                def expand(idx, chosen):
                    if idx == len(opt_lists):
                        for angles in _tuples(alphabet, k - 1):
                            out.append(Tree(tuple(chosen), angles))
                        return
                    for opt in opt_lists[idx]:
                        expand(idx + 1, chosen + [opt])
                expand(0, [])
        memo[key] = out
        return out

    result = []
    for p in range(1, max_leaves + 1):
        result.extend(trees_exact(p, max_depth))
    result.sort(key=Tree.sort_key)
    return result


def _tuples(pool, k):
    if k == 0:
        yield ()
        return
    for rest in _tuples(pool, k - 1):
        for x in pool:
            yield (x,) + rest


# ---------------------------------------------------------------------------
# Serialization and parsing


def tree_to_str(t: Tree, type_labels) -> str:
    parts = []
    for i, child in enumerate(t.children):
        if child is None:
            parts.append("|")
        else:
            w, sub = child
            parts.append(f"[{type_labels[w]}]" + tree_to_str(sub, type_labels))
        if i < len(t.angles):
            parts.append(t.angles[i])
    return "(" + " ".join(parts) + ")"


def sum_to_str(s: FormalSum, type_labels) -> str:
    if s.is_zero():
        return "0"
    parts = []
    for t, c in s:
        body = tree_to_str(t, type_labels)
        if c == 1:
            rendered = body
        elif c == -1:
            rendered = "-" + body
        else:
            rendered = f"{c}*{body}"
        parts.append(rendered)
    out = parts[0]
    for p in parts[1:]:
        if p.startswith("-"):
            out += " - " + p[1:]
        else:
            out += " + " + p
    return out


class ExprError(ValueError):
    """Syntax or name error in a tree/word expression, with position."""

    def __init__(self, message, pos):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


def _tokenize_expr(text):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "()[]|+*":
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch == "-" or ch.isdigit():
            j = i + 1
            while j < n and (text[j].isdigit() or text[j] == "/"):
                j += 1
            if text[i:j] == "-":
                tokens.append(("-", "-", i))
            else:
                tokens.append(("num", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        raise ExprError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", n))
    return tokens


class _TreeExprParser:
    """Recursive-descent parser for tree-sum expressions.

    Grammar::

        expr   := term (('+'|'-') term)*
        term   := atom ('*' atom)*
        atom   := SCALAR | tree
        tree   := '(' child (ANGLE child)* ')'
        child  := '|'  |  '[' TYPE ']' tree

    ``*`` between two tree atoms is the algebra product and needs an
    algebra in scope; scalar-by-tree ``*`` is scaling and always available.
    """

    def __init__(self, text, type_labels, algebra=None):
        self.tokens = _tokenize_expr(text)
        self.pos = 0
        self.type_index = {lab: i for i, lab in enumerate(type_labels)}
        self.algebra = algebra

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise ExprError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        self.pos += 1
        return tok

    def parse(self) -> FormalSum:
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ExprError(f"trailing input {tok[1]!r}", tok[2])
        if isinstance(value, Fraction):
            if value == 0:
                return FormalSum.zero()
            raise ExprError("expression is a bare scalar, not a tree sum", 0)
        return value

    def expr(self):
        acc = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            acc = self._combine_add(acc, rhs, op)
        return acc

    def _combine_add(self, a, b, op):
        if isinstance(a, Fraction) and a == 0:
            a = FormalSum.zero()
        if isinstance(b, Fraction) and b == 0:
            b = FormalSum.zero()
        if isinstance(a, Fraction) or isinstance(b, Fraction):
            raise ExprError("cannot add a bare scalar to a tree sum", self.peek()[2])
        return a + b if op == "+" else a - b

    def term(self):
        acc = self.atom()
        while self.peek()[0] == "*":
            self.take()
            rhs = self.atom()
            acc = self._combine_mul(acc, rhs)
        return acc

    def _combine_mul(self, a, b):
        if isinstance(a, Fraction) and isinstance(b, Fraction):
            return a * b
        if isinstance(a, Fraction):
            return b.scale(a)
        if isinstance(b, Fraction):
            return a.scale(b)
        if self.algebra is None:
            raise ExprError("product of two trees needs an ambient structure", self.peek()[2])
        return self.algebra.product(a, b)

    def atom(self):
        tok = self.peek()
        if tok[0] == "num":
            self.take()
            return Fraction(tok[1])
        if tok[0] == "-":
            self.take()
            inner = self.atom()
            if isinstance(inner, Fraction):
                return -inner
            return -inner
        if tok[0] == "(":
            return FormalSum.term(self.tree())
        raise ExprError(f"expected a scalar or '(', found {tok[1]!r}", tok[2])

    def tree(self) -> Tree:
        self.take("(")
        children = [self.child()]
        angles = []
        while self.peek()[0] != ")":
            name = self.take("name")
            angles.append(name[1])
            children.append(self.child())
        self.take(")")
        return Tree(tuple(children), tuple(angles))

    def child(self):
        tok = self.peek()
        if tok[0] == "|":
            self.take()
            return None
        if tok[0] == "[":
            self.take()
            name = self.take("name")
            if name[1] not in self.type_index:
                raise ExprError(f"unknown type label {name[1]!r}", name[2])
            self.take("]")
            return (self.type_index[name[1]], self.tree())
        raise ExprError(f"expected '|' or '[', found {tok[1]!r}", tok[2])


def parse_tree_expr(text: str, type_labels, algebra: TreeAlgebra | None = None) -> FormalSum:
    """Parse a tree-sum expression; with an algebra, '*' between trees multiplies."""
    return _TreeExprParser(text, type_labels, algebra).parse()
