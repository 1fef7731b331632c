"""The groupoid of n-ary forest pairs.

An element is an equivalence class of pairs of forests ``(minus, plus)``
with equal leaf counts, modulo simultaneously adding or removing a caret
at matching leaf positions of both forests.  Elements are stored in the
canonical fully reduced form: no index ``k`` remains at which leaves
``k..k+n-1`` of both forests are the children of a single caret.

Heads are the roots of ``minus``, feet the roots of ``plus``.  Elements
with one head and one foot form the group of interest; elements with one
head are the vertices of the cube complex built in ``steinfarley``.

Multiplication composes ``a`` then ``b`` when ``a.feet == b.heads``: the
plus forest of ``a`` and the minus forest of ``b`` are grown to their
least common refinement, the outer forests are grown along, and the
result is reduced.  The serialized form is ``<forest>|<forest>``
(minus first) in the grammar of :mod:`forestgroups.trees`.
"""

from __future__ import annotations

from . import trees
from .trees import Forest, Tree, TreeError, trivial_forest


class GroupoidError(ValueError):
    """Violated precondition of a groupoid operation."""


def _caret_sites(forest):
    """First-leaf indices of carets whose children are all leaves."""
    sites = []
    offset = 0

    def go(node, offset):
        if node.is_leaf:
            return
        if all(c.is_leaf for c in node.children):
            sites.append(offset)
            return
        for child in node.children:
            go(child, offset)
            offset += child.leaf_count

    for t in forest.trees:
        go(t, offset)
        offset += t.leaf_count
    return sites


def _collapse_tree(tree, k):
    """Collapse the all-leaf caret whose first leaf has index ``k``."""
    if tree.is_leaf:
        raise TreeError("no caret to collapse")
    if k == 0 and all(c.is_leaf for c in tree.children):
        return trees.leaf(tree.arity)
    offset = 0
    for pos, child in enumerate(tree.children):
        if k < offset + child.leaf_count:
            new_children = (
                tree.children[:pos]
                + (_collapse_tree(child, k - offset),)
                + tree.children[pos + 1 :]
            )
            return Tree(tree.arity, new_children)
        offset += child.leaf_count
    raise TreeError("collapse index out of range")


def collapse_caret(forest, k):
    """Remove the all-leaf caret of ``forest`` spanning leaves k..k+n-1."""
    offset = 0
    for pos, t in enumerate(forest.trees):
        if k < offset + t.leaf_count:
            new_trees = (
                forest.trees[:pos]
                + (_collapse_tree(t, k - offset),)
                + forest.trees[pos + 1 :]
            )
            return Forest(forest.arity, new_trees)
        offset += t.leaf_count
    raise TreeError("collapse index out of range")


def reducible_indices(minus, plus):
    """Leaf indices at which both forests carry a collapsible caret."""
    return sorted(set(_caret_sites(minus)) & set(_caret_sites(plus)))


def reduce_forest_pair(minus, plus):
    """Fully reduce a raw pair, collapsing the leftmost caret first.

    Any collapse order reaches the same canonical form; the leftmost
    strategy just makes the computation deterministic.
    """
    while True:
        sites = reducible_indices(minus, plus)
        if not sites:
            return minus, plus
        k = sites[0]
        minus = collapse_caret(minus, k)
        plus = collapse_caret(plus, k)


class GroupoidElement:
    """A reduced n-ary forest pair ``[minus, plus]``."""

    __slots__ = ("arity", "minus", "plus", "_hash")

    def __init__(self, minus, plus, _reduced=False):
        if minus.arity != plus.arity:
            raise GroupoidError("arity mismatch between forests")
        if minus.leaf_count != plus.leaf_count:
            raise GroupoidError(
                f"leaf-count mismatch: {minus.leaf_count} vs {plus.leaf_count}"
            )
        if not _reduced:
            minus, plus = reduce_forest_pair(minus, plus)
        self.arity = minus.arity
        self.minus = minus
        self.plus = plus
        self._hash = hash((minus, plus))

    @property
    def heads(self):
        return self.minus.num_roots

    @property
    def feet(self):
        return self.plus.num_roots

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, GroupoidElement):
            return NotImplemented
        return (
            self._hash == other._hash
            and self.minus == other.minus
            and self.plus == other.plus
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"GroupoidElement({render_element(self)!r}, n={self.arity})"

    def __mul__(self, other):
        return multiply(self, other)


def reduce(minus, plus):
    """Canonical groupoid element of a raw forest pair."""
    return GroupoidElement(minus, plus)


def identity(roots, arity):
    forest = trivial_forest(arity, roots)
    return GroupoidElement(forest, forest, _reduced=True)


def invert(element):
    return GroupoidElement(element.plus, element.minus, _reduced=True)


def _tree_lcm(t, u):
    """Least common refinement of two trees plus per-leaf graft lists.

    Returns ``(lcm, onto_t, onto_u)`` where grafting ``onto_t`` onto the
    leaves of ``t`` yields ``lcm``, and likewise for ``u``.
    """
    arity = t.arity
    if t.is_leaf:
        return u, [u], [trees.leaf(arity)] * u.leaf_count
    if u.is_leaf:
        return t, [trees.leaf(arity)] * t.leaf_count, [t]
    children = []
    onto_t = []
    onto_u = []
    for ct, cu in zip(t.children, u.children):
        c, dt, du = _tree_lcm(ct, cu)
        children.append(c)
        onto_t.extend(dt)
        onto_u.extend(du)
    return Tree(arity, tuple(children)), onto_t, onto_u


def forest_lcm(f, g):
    """Least common refinement of two forests with equal root counts."""
    if f.num_roots != g.num_roots:
        raise GroupoidError("forest lcm needs equal root counts")
    lcm_trees = []
    onto_f = []
    onto_g = []
    for tf, tg in zip(f.trees, g.trees):
        c, df, dg = _tree_lcm(tf, tg)
        lcm_trees.append(c)
        onto_f.extend(df)
        onto_g.extend(dg)
    return Forest(f.arity, lcm_trees), onto_f, onto_g


def multiply(a, b):
    """Product ``a * b``; requires ``a.feet == b.heads``."""
    if a.arity != b.arity:
        raise GroupoidError("arity mismatch")
    if a.feet != b.heads:
        raise GroupoidError(f"feet/heads mismatch: {a.feet} vs {b.heads}")
    _, onto_aplus, onto_bminus = forest_lcm(a.plus, b.minus)
    new_minus = trees.graft(a.minus, onto_aplus)
    new_plus = trees.graft(b.plus, onto_bminus)
    return GroupoidElement(new_minus, new_plus)


def as_element(forest):
    """View a forest as the splitting element ``[forest, trivial]``."""
    return GroupoidElement(
        forest, trivial_forest(forest.arity, forest.leaf_count), _reduced=True
    )


def le(x, y):
    """Whether ``y`` is obtained from ``x`` by splitting feet (``x <= y``)."""
    if x.arity != y.arity or x.heads != y.heads:
        return False
    if (y.plus.num_roots - x.plus.num_roots) % (x.arity - 1) != 0:
        return False
    try:
        q = multiply(invert(x), y)
    except GroupoidError:
        return False
    return q.plus.is_trivial


def elementary_le(x, y):
    """Whether ``y = x * E`` for an elementary forest ``E`` (``x`` precedes ``y``)."""
    if x.arity != y.arity or x.heads != y.heads:
        return False
    try:
        q = multiply(invert(x), y)
    except GroupoidError:
        return False
    return q.plus.is_trivial and q.minus.is_elementary


def splitting_forest(x, y):
    """The forest ``C`` with ``x * C = y``, if one exists."""
    q = multiply(invert(x), y)
    if not q.plus.is_trivial:
        raise GroupoidError("second element is not a splitting of the first")
    return q.minus


def elementary_cofaces(x):
    """All ``(E, x*E)`` over elementary forests ``E`` on the feet of ``x``.

    There are ``2**x.feet`` of them, one per subset of feet to split;
    the empty subset yields ``x`` itself.
    """
    r = x.feet
    out = []
    for mask in range(1 << r):
        positions = [k for k in range(r) if mask >> k & 1]
        forest = trees.elementary_forest(x.arity, r, positions)
        out.append((forest, multiply(x, as_element(forest))))
    return out


def split(x, k):
    """Split foot ``k`` of ``x`` with a single caret."""
    if not 0 <= k < x.feet:
        raise GroupoidError(f"foot index {k} out of range")
    forest = trees.elementary_forest(x.arity, x.feet, [k])
    return multiply(x, as_element(forest))


def merge(x, k):
    """Merge the ``arity`` consecutive feet ``k..k+arity-1`` of ``x``."""
    n = x.arity
    if not 0 <= k <= x.feet - n:
        raise GroupoidError(f"merge index {k} out of range")
    forest = trees.elementary_forest(n, x.feet - (n - 1), [k])
    merger = GroupoidElement(
        trivial_forest(n, x.feet), forest, _reduced=True
    )
    return multiply(x, merger)


def transitivity_witness(x, y):
    """Group element ``g`` with ``g * x == y`` for one-headed x, y.

    Both inputs must have one head and equal feet; ``g = y * x^{-1}``
    then lies in the one-head-one-foot group.
    """
    if x.heads != 1 or y.heads != 1:
        raise GroupoidError("transitivity witness needs one-headed elements")
    if x.feet != y.feet:
        raise GroupoidError(f"feet mismatch: {x.feet} vs {y.feet}")
    if x.arity != y.arity:
        raise GroupoidError("arity mismatch")
    return multiply(y, invert(x))


def generator_x(i, arity):
    """The ``i``-th standard group generator as a reduced tree pair.

    Both trees hang off a right spine.  The plus (domain) side is the
    spine with ``i + 2`` carets; the minus (range) side is the spine
    with ``i + 1`` carets plus one caret at its second-to-last leaf.
    The family satisfies ``x_j x_i == x_i x_{j+arity-1}`` for ``i < j``,
    which is validated by the test suite rather than assumed.
    """
    if i < 0:
        raise GroupoidError("generator index must be >= 0")
    n = arity
    plus = trees.vine(n, i + 2)
    minus = trees.attach_caret(trees.vine(n, i + 1), (i + 1) * (n - 1) - 1)
    return GroupoidElement(
        Forest(n, [minus]), Forest(n, [plus]), _reduced=True
    )


def render_element(element):
    return (
        trees.render_forest(element.minus) + "|" + trees.render_forest(element.plus)
    )


def parse_element(text, arity):
    """Parse ``<forest>|<forest>``; the result is reduced on ingest."""
    bar = text.find("|")
    if bar < 0:
        raise trees.ParseError("expected '|' between two forests", len(text))
    minus = trees.parse_forest(text[:bar], arity)
    try:
        plus = trees.parse_forest(text[bar + 1 :], arity)
    except trees.ParseError as exc:
        raise trees.ParseError(str(exc).rsplit(" (at", 1)[0], bar + 1 + exc.position)
    return GroupoidElement(minus, plus)
