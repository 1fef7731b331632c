"""Ordered rooted n-ary trees and forests.

A tree is either a single leaf or an internal node carrying exactly
``arity`` ordered subtrees.  Leaves are numbered left to right starting
at 0, and the depth of a leaf is its edge distance from the root of its
own tree.  The depth sequence of a tree (or of a forest, reading the
trees in order) is the raw material for all character computations:

* ``L`` is the depth of the first leaf, ``R`` the depth of the last;
* the j-th change of depth is ``d_j - d_{j+1}``;
* ``D_i`` sums the changes of depth over positions ``j == i mod (arity-1)``.

For a single tree the changes of depth telescope, so
``D_0 + ... + D_{arity-2} == L - R``.

Serialization grammar (ASCII, no whitespace):

* leaf: ``*``
* internal node: ``(`` followed by exactly ``arity`` child encodings
  followed by ``)``
* forest: ``[`` tree encodings separated by ``,`` ``]``
"""

from __future__ import annotations


class TreeError(ValueError):
    """Structural problem with a tree or forest."""


class ParseError(ValueError):
    """Malformed tree/forest text; carries the offending position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class Tree:
    """An immutable ordered rooted n-ary tree.

    ``children`` is the empty tuple for a leaf, otherwise a tuple of
    exactly ``arity`` subtrees.
    """

    __slots__ = ("arity", "children", "leaf_count", "_hash")

    def __init__(self, arity, children=()):
        if arity < 2:
            raise TreeError(f"arity must be >= 2, got {arity}")
        children = tuple(children)
        if children and len(children) != arity:
            raise TreeError(
                f"internal node needs exactly {arity} children, got {len(children)}"
            )
        for child in children:
            if child.arity != arity:
                raise TreeError("child arity mismatch")
        self.arity = arity
        self.children = children
        self.leaf_count = 1 if not children else sum(c.leaf_count for c in children)
        self._hash = hash((arity,) + tuple(hash(c) for c in children))

    @property
    def is_leaf(self):
        return not self.children

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Tree):
            return NotImplemented
        return (
            self._hash == other._hash
            and self.arity == other.arity
            and self.children == other.children
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Tree({self.arity}, {render_tree(self)!r})"

    def leaf_depths(self):
        """Depths of the leaves in left-to-right order."""
        depths = []
        stack = [(self, 0)]
        while stack:
            node, depth = stack.pop()
            if node.is_leaf:
                depths.append(depth)
            else:
                for child in reversed(node.children):
                    stack.append((child, depth + 1))
        return depths

    def num_carets(self):
        count = 0
        stack = [self]
        while stack:
            node = stack.pop()
            if not node.is_leaf:
                count += 1
                stack.extend(node.children)
        return count


def leaf(arity):
    return Tree(arity)


def caret(arity):
    """The tree with a single internal node and ``arity`` leaves."""
    return Tree(arity, tuple(Tree(arity) for _ in range(arity)))


def vine(arity, carets):
    """Right spine: ``carets`` nested carets, each on the last child."""
    t = leaf(arity)
    for _ in range(carets):
        t = Tree(arity, tuple(leaf(arity) for _ in range(arity - 1)) + (t,))
    return t


class Forest:
    """An ordered nonempty sequence of trees of common arity."""

    __slots__ = ("arity", "trees", "leaf_count", "_hash")

    def __init__(self, arity, trees):
        trees = tuple(trees)
        if not trees:
            raise TreeError("a forest needs at least one tree")
        for t in trees:
            if t.arity != arity:
                raise TreeError("tree arity mismatch in forest")
        self.arity = arity
        self.trees = trees
        self.leaf_count = sum(t.leaf_count for t in trees)
        self._hash = hash((arity, trees))

    @property
    def num_roots(self):
        return len(self.trees)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Forest):
            return NotImplemented
        return (
            self._hash == other._hash
            and self.arity == other.arity
            and self.trees == other.trees
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Forest({self.arity}, {render_forest(self)!r})"

    def leaf_depths(self):
        """Leaf depths in global order, each measured from its own root."""
        depths = []
        for t in self.trees:
            depths.extend(t.leaf_depths())
        return depths

    def num_carets(self):
        return sum(t.num_carets() for t in self.trees)

    @property
    def is_trivial(self):
        return all(t.is_leaf for t in self.trees)

    @property
    def is_elementary(self):
        """Every tree is either trivial or a single caret."""
        return all(t.is_leaf or all(c.is_leaf for c in t.children) for t in self.trees)


def trivial_forest(arity, roots):
    return Forest(arity, tuple(leaf(arity) for _ in range(roots)))


def elementary_forest(arity, roots, caret_positions):
    """Elementary forest with single carets exactly at ``caret_positions``."""
    positions = set(caret_positions)
    if not positions <= set(range(roots)):
        raise TreeError("caret positions out of root range")
    return Forest(
        arity,
        tuple(caret(arity) if i in positions else leaf(arity) for i in range(roots)),
    )


class ProtoVector:
    """The measurements (L, R, D_0..D_{n-2}) of a tree or forest."""

    __slots__ = ("L", "R", "D")

    def __init__(self, L, R, D):
        self.L = L
        self.R = R
        self.D = tuple(D)

    def __eq__(self, other):
        if not isinstance(other, ProtoVector):
            return NotImplemented
        return (self.L, self.R, self.D) == (other.L, other.R, other.D)

    def __hash__(self):
        return hash((self.L, self.R, self.D))

    def __repr__(self):
        return f"ProtoVector(L={self.L}, R={self.R}, D={self.D})"


def proto(obj):
    """Compute the proto measurements of a Tree or Forest.

    The n-1 entries of ``D`` are indexed 0..n-2; entry ``i`` sums the
    changes of depth ``d_j - d_{j+1}`` over ``j == i mod (n-1)``.
    """
    arity = obj.arity
    depths = obj.leaf_depths()
    modulus = arity - 1
    D = [0] * modulus
    for j in range(len(depths) - 1):
        D[j % modulus] += depths[j] - depths[j + 1]
    return ProtoVector(depths[0], depths[-1], D)


def _attach_caret_tree(tree, k):
    """Replace leaf ``k`` of ``tree`` by a caret, returning a new tree."""
    if tree.is_leaf:
        if k != 0:
            raise IndexError("leaf index out of range")
        return caret(tree.arity)
    offset = 0
    for pos, child in enumerate(tree.children):
        if k < offset + child.leaf_count:
            new_children = (
                tree.children[:pos]
                + (_attach_caret_tree(child, k - offset),)
                + tree.children[pos + 1 :]
            )
            return Tree(tree.arity, new_children)
        offset += child.leaf_count
    raise IndexError("leaf index out of range")


def attach_caret(obj, k):
    """Attach a caret at leaf ``k`` of a Tree or Forest.

    Returns a new value of the same kind; the leaf count grows by
    ``arity - 1``.
    """
    if not 0 <= k < obj.leaf_count:
        raise IndexError(f"leaf index {k} out of range for {obj.leaf_count} leaves")
    if isinstance(obj, Tree):
        return _attach_caret_tree(obj, k)
    offset = 0
    for pos, t in enumerate(obj.trees):
        if k < offset + t.leaf_count:
            new_trees = (
                obj.trees[:pos]
                + (_attach_caret_tree(t, k - offset),)
                + obj.trees[pos + 1 :]
            )
            return Forest(obj.arity, new_trees)
        offset += t.leaf_count
    raise IndexError("unreachable")


def graft(obj, subtrees):
    """Graft ``subtrees[j]`` onto leaf ``j`` of a Tree or Forest."""
    if len(subtrees) != obj.leaf_count:
        raise TreeError("need exactly one subtree per leaf")
    it = iter(subtrees)

    def go(tree):
        if tree.is_leaf:
            sub = next(it)
            if sub.arity != tree.arity:
                raise TreeError("graft arity mismatch")
            return sub
        return Tree(tree.arity, tuple(go(c) for c in tree.children))

    if isinstance(obj, Tree):
        return go(obj)
    return Forest(obj.arity, tuple(go(t) for t in obj.trees))


# --- serialization ---------------------------------------------------------


def render_tree(tree):
    parts = []

    def go(node):
        if node.is_leaf:
            parts.append("*")
        else:
            parts.append("(")
            for child in node.children:
                go(child)
            parts.append(")")

    go(tree)
    return "".join(parts)


def render_forest(forest):
    return "[" + ",".join(render_tree(t) for t in forest.trees) + "]"


class _Parser:
    def __init__(self, text, arity):
        self.text = text
        self.arity = arity
        self.pos = 0

    def peek(self):
        if self.pos >= len(self.text):
            return None
        return self.text[self.pos]

    def fail(self, message):
        raise ParseError(message, self.pos)

    def tree(self):
        ch = self.peek()
        if ch == "*":
            self.pos += 1
            return leaf(self.arity)
        if ch == "(":
            self.pos += 1
            children = tuple(self.tree() for _ in range(self.arity))
            if self.peek() != ")":
                self.fail(f"expected ')' closing a node of {self.arity} children")
            self.pos += 1
            return Tree(self.arity, children)
        self.fail("expected '*' or '('")

    def forest(self):
        if self.peek() != "[":
            self.fail("expected '[' opening a forest")
        self.pos += 1
        trees = [self.tree()]
        while self.peek() == ",":
            self.pos += 1
            trees.append(self.tree())
        if self.peek() != "]":
            self.fail("expected ',' or ']' in forest")
        self.pos += 1
        return Forest(self.arity, trees)

    def done(self):
        if self.pos != len(self.text):
            self.fail("trailing characters")


def parse_tree(text, arity):
    parser = _Parser(text, arity)
    tree = parser.tree()
    parser.done()
    return tree


def parse_forest(text, arity):
    parser = _Parser(text, arity)
    forest = parser.forest()
    parser.done()
    return forest
