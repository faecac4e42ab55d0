"""Cotree: the rooted Union/Join decomposition tree of a cograph.

A cograph is a graph with no induced 4-vertex path; equivalently, it is built
from single vertices by disjoint union and join.  Every cograph has a unique
minimal cotree: leaves are the graph vertices, interior nodes carry a Union
or Join tag, tags strictly alternate along every root-to-leaf path, and every
interior node has at least two children.  Two graph vertices are adjacent
exactly when the lowest common ancestor of their leaves is a Join node.

Text format (whitespace-insensitive between tokens, ``#`` starts a line
comment)::

    cotree := "x" | "(" kind cotree cotree cotree* ")"
    kind   := "J" | "U"

The root tag is unconstrained by the grammar; alternation is enforced below
it.  Leaves are numbered 0..n-1 left to right by the parser.

Nodes live in an index-addressed pool of parallel arrays with a free list,
so leaf removal is O(1) and a full diagonalization run allocates no nodes.
Children sit in a doubly linked sibling list; child order is an
implementation convenience (it fixes deterministic tie-breaking), not part
of the graph semantics.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

UNION = -1
JOIN = -2
_FREE = -3

KIND_CHAR = {UNION: "U", JOIN: "J"}
_CHAR_KIND = {"U": UNION, "J": JOIN}


class CotreeError(Exception):
    """Base error for cotree construction and manipulation."""


class CotreeParseError(CotreeError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class CotreeInvariantError(CotreeError):
    """A structural invariant of the minimal cotree is violated."""


@dataclass(frozen=True)
class SiblingPair:
    """A maximum-depth pair of sibling leaves.

    ``k`` is the leaf a diagonalization step removes first, ``l`` the leaf
    that (usually) survives; both are node indexes sharing ``parent``.
    """

    k: int
    l: int
    parent: int
    parent_kind: str  # "U" or "J"


class Cotree:
    """Pool-backed minimal cotree.

    Parallel arrays indexed by node id:

    ``kind``      UNION, JOIN, or the leaf's vertex id (>= 0); _FREE when the
                  slot is on the free list.
    ``parent``    parent node id, -1 at the root.
    ``depth``     0 at the root, parent depth + 1 elsewhere.
    ``first_child`` / ``last_child`` / ``next_sib`` / ``prev_sib``
                  doubly linked, ordered child lists (-1 terminators).
    ``n_children`` / ``n_leaf_children``
                  child counts, maintained incrementally.
    ``rank``      pre-order position at build time; stable under removals and
                  used for deterministic tie-breaking.
    """

    __slots__ = (
        "kind", "parent", "depth", "first_child", "last_child",
        "next_sib", "prev_sib", "n_children", "n_leaf_children", "rank",
        "root", "n_leaves", "_free",
    )

    def __init__(self):
        self.kind: list[int] = []
        self.parent: list[int] = []
        self.depth: list[int] = []
        self.first_child: list[int] = []
        self.last_child: list[int] = []
        self.next_sib: list[int] = []
        self.prev_sib: list[int] = []
        self.n_children: list[int] = []
        self.n_leaf_children: list[int] = []
        self.rank: list[int] = []
        self.root: int = -1
        self.n_leaves: int = 0
        self._free: list[int] = []

    # ------------------------------------------------------------------
    # pool plumbing

    def _alloc(self, kind: int, parent: int) -> int:
        if self._free:
            i = self._free.pop()
            self.kind[i] = kind
            self.parent[i] = parent
            self.depth[i] = 0 if parent == -1 else self.depth[parent] + 1
            self.first_child[i] = -1
            self.last_child[i] = -1
            self.next_sib[i] = -1
            self.prev_sib[i] = -1
            self.n_children[i] = 0
            self.n_leaf_children[i] = 0
            self.rank[i] = i
        else:
            i = len(self.kind)
            self.kind.append(kind)
            self.parent.append(parent)
            self.depth.append(0 if parent == -1 else self.depth[parent] + 1)
            self.first_child.append(-1)
            self.last_child.append(-1)
            self.next_sib.append(-1)
            self.prev_sib.append(-1)
            self.n_children.append(0)
            self.n_leaf_children.append(0)
            self.rank.append(i)
        if parent != -1:
            self._append_child(parent, i)
        return i

    def _append_child(self, p: int, c: int) -> None:
        last = self.last_child[p]
        if last == -1:
            self.first_child[p] = c
        else:
            self.next_sib[last] = c
            self.prev_sib[c] = last
        self.last_child[p] = c
        self.n_children[p] += 1
        if self.kind[c] >= 0:
            self.n_leaf_children[p] += 1

    def _free_node(self, i: int) -> None:
        self.kind[i] = _FREE
        self._free.append(i)

    def _unlink(self, c: int) -> None:
        """Detach c from its parent's child list (counts not touched)."""
        p = self.parent[c]
        prv, nxt = self.prev_sib[c], self.next_sib[c]
        if prv != -1:
            self.next_sib[prv] = nxt
        else:
            self.first_child[p] = nxt
        if nxt != -1:
            self.prev_sib[nxt] = prv
        else:
            self.last_child[p] = prv
        self.prev_sib[c] = self.next_sib[c] = -1

    # ------------------------------------------------------------------
    # basic accessors

    def is_leaf(self, i: int) -> bool:
        return self.kind[i] >= 0

    def vertex(self, i: int) -> int:
        """Graph-vertex id carried by leaf node i."""
        v = self.kind[i]
        if v < 0:
            raise CotreeError(f"node {i} is not a leaf")
        return v

    def kind_char(self, i: int) -> str:
        return KIND_CHAR[self.kind[i]]

    def children(self, i: int) -> list[int]:
        out = []
        c = self.first_child[i]
        while c != -1:
            out.append(c)
            c = self.next_sib[c]
        return out

    def preorder(self) -> Iterator[int]:
        if self.root == -1:
            return
        stack = [self.root]
        while stack:
            i = stack.pop()
            yield i
            c = self.last_child[i]
            while c != -1:
                stack.append(c)
                c = self.prev_sib[c]

    def interior_nodes(self) -> Iterator[int]:
        for i in self.preorder():
            if self.kind[i] < 0:
                yield i

    def leaf_node_of_vertex(self) -> list[int]:
        """vertex id -> leaf node id (O(n) scan)."""
        out = [-1] * self.n_leaves
        for i in self.preorder():
            v = self.kind[i]
            if v >= 0:
                out[v] = i
        return out

    @property
    def n_nodes(self) -> int:
        return len(self.kind) - len(self._free)

    # ------------------------------------------------------------------
    # construction

    @classmethod
    def parse(cls, text: str) -> "Cotree":
        """Parse the text format into a validated cotree.

        Leaves receive vertex ids 0..n-1 in left-to-right order.  Raises
        CotreeParseError with a 1-based position on any syntax or
        alternation violation.
        """
        tokens = _tokenize(text)
        if not tokens:
            raise CotreeParseError("expected a cotree, found end of input", 1, 1)
        t = cls()
        next_vertex = 0
        # stack holds open interior nodes
        stack: list[int] = []
        pos = 0
        done = False  # a complete top-level cotree has been read
        while pos < len(tokens):
            ch, ln, col = tokens[pos]
            if done:
                raise CotreeParseError("unexpected trailing content", ln, col)
            if ch == "(":
                pos += 1
                if pos >= len(tokens) or tokens[pos][0] not in _CHAR_KIND:
                    raise CotreeParseError("expected node kind 'J' or 'U'", ln, col)
                kch, kln, kcol = tokens[pos]
                kind = _CHAR_KIND[kch]
                parent = stack[-1] if stack else -1
                if parent != -1 and t.kind[parent] == kind:
                    raise CotreeParseError(
                        f"alternation violation: '{kch}' node under a '{kch}' node",
                        kln, kcol)
                node = t._alloc(kind, parent)
                if parent == -1:
                    t.root = node
                stack.append(node)
                pos += 1
            elif ch == ")":
                if not stack:
                    raise CotreeParseError("unmatched ')'", ln, col)
                node = stack.pop()
                if t.n_children[node] < 2:
                    raise CotreeParseError(
                        "interior node needs at least 2 children", ln, col)
                if not stack:
                    done = True
                pos += 1
            elif ch == "x":
                if not stack:
                    # a bare leaf is a complete single-vertex cotree
                    node = t._alloc(next_vertex, -1)
                    t.root = node
                    done = True
                else:
                    t._alloc(next_vertex, stack[-1])
                next_vertex += 1
                pos += 1
            else:
                raise CotreeParseError(f"unexpected character {ch!r}", ln, col)
        if stack:
            raise CotreeParseError("unclosed '(' at end of input",
                                   tokens[-1][1], tokens[-1][2])
        t.n_leaves = next_vertex
        t._assign_ranks()
        t.validate()
        return t

    def _assign_ranks(self) -> None:
        for r, i in enumerate(self.preorder()):
            self.rank[i] = r

    def serialize(self) -> str:
        """Canonical text form; round-trips through parse()."""
        if self.root == -1:
            raise CotreeError("cannot serialize an empty cotree")
        parts: list[str] = []
        stack: list[tuple[int, bool]] = [(self.root, False)]
        while stack:
            node, closing = stack.pop()
            if closing:
                parts.append(")")
                continue
            if self.kind[node] >= 0:
                parts.append("x")
            else:
                parts.append("(" + KIND_CHAR[self.kind[node]])
                stack.append((node, True))
                c = self.last_child[node]
                while c != -1:
                    stack.append((c, False))
                    c = self.prev_sib[c]
        buf = []
        for tok in parts:
            if buf and tok != ")":
                buf.append(" ")
            buf.append(tok)
        return "".join(buf)

    def copy(self) -> "Cotree":
        t = Cotree.__new__(Cotree)
        t.kind = self.kind.copy()
        t.parent = self.parent.copy()
        t.depth = self.depth.copy()
        t.first_child = self.first_child.copy()
        t.last_child = self.last_child.copy()
        t.next_sib = self.next_sib.copy()
        t.prev_sib = self.prev_sib.copy()
        t.n_children = self.n_children.copy()
        t.n_leaf_children = self.n_leaf_children.copy()
        t.rank = self.rank.copy()
        t.root = self.root
        t.n_leaves = self.n_leaves
        t._free = self._free.copy()
        return t

    # ------------------------------------------------------------------
    # validation

    def validate(self, full: bool = True) -> None:
        """Check every structural invariant; raise CotreeInvariantError.

        With ``full`` the leaf vertex ids must be exactly {0..n-1}; a
        shrinking working copy (mid-diagonalization) passes ``full=False``
        since its leaves keep their original ids and only need to stay
        distinct (they are re-indexable).
        """
        if self.root == -1:
            raise CotreeInvariantError("empty cotree")
        if self.parent[self.root] != -1:
            raise CotreeInvariantError("root has a parent")
        seen = set()
        vertices = []
        live = 0
        stack = [self.root]
        while stack:
            i = stack.pop()
            if i in seen:
                raise CotreeInvariantError(f"node {i} reached twice")
            seen.add(i)
            live += 1
            k = self.kind[i]
            if k == _FREE:
                raise CotreeInvariantError(f"freed node {i} still linked")
            expected_depth = 0 if self.parent[i] == -1 else self.depth[self.parent[i]] + 1
            if self.depth[i] != expected_depth:
                raise CotreeInvariantError(
                    f"node {i}: stored depth {self.depth[i]} != {expected_depth}")
            if k >= 0:
                vertices.append(k)
                if self.first_child[i] != -1 or self.n_children[i]:
                    raise CotreeInvariantError(f"leaf {i} has children")
                continue
            kids = self.children(i)
            if len(kids) < 2:
                raise CotreeInvariantError(f"interior node {i} has {len(kids)} child(ren)")
            if len(kids) != self.n_children[i]:
                raise CotreeInvariantError(f"node {i}: child count mismatch")
            leaf_kids = sum(1 for c in kids if self.kind[c] >= 0)
            if leaf_kids != self.n_leaf_children[i]:
                raise CotreeInvariantError(f"node {i}: leaf-child count mismatch")
            for c in kids:
                if self.parent[c] != i:
                    raise CotreeInvariantError(f"node {c}: bad parent link")
                if self.kind[c] < 0 and self.kind[c] == k:
                    raise CotreeInvariantError(
                        f"alternation violation at node {c}")
                stack.append(c)
        if live != self.n_nodes:
            raise CotreeInvariantError("pool contains unreachable live nodes")
        if len(vertices) != self.n_leaves:
            raise CotreeInvariantError("leaf count out of sync")
        if len(set(vertices)) != len(vertices):
            raise CotreeInvariantError("duplicate leaf vertex ids")
        if full and sorted(vertices) != list(range(self.n_leaves)):
            raise CotreeInvariantError(
                "leaf vertex ids are not a permutation of 0..n-1")
        if self.n_leaves >= 2 and self.kind[self.root] >= 0:
            raise CotreeInvariantError("multi-vertex cotree with a leaf root")

    # ------------------------------------------------------------------
    # sibling selection and leaf removal

    def deepest_sibling_pair(self) -> SiblingPair:
        """The canonical maximum-depth sibling pair.

        Among equally deep candidates, picks the interior node that comes
        first in pre-order and its two leftmost children.  Requires >= 2
        leaves.
        """
        if self.n_leaves < 2:
            raise CotreeError("no sibling pair in a single-leaf cotree")
        best = -1
        best_key = (-1, 0)
        kind = self.kind
        n_children = self.n_children
        n_leaf_children = self.n_leaf_children
        for i in self.preorder():
            if kind[i] < 0 and n_children[i] == n_leaf_children[i]:
                key = (self.depth[i], -self.rank[i])
                if key > best_key:
                    best_key = key
                    best = i
        if best == -1:
            raise CotreeInvariantError("no all-leaf interior node found")
        k = self.first_child[best]
        return SiblingPair(k=k, l=self.next_sib[k], parent=best,
                           parent_kind=KIND_CHAR[self.kind[best]])

    def remove_leaf(self, v: int) -> None:
        """Remove leaf node v, keeping the tree a minimal cotree.

        Three cases: the parent keeps >= 2 children (plain deletion); the
        parent is left with a single leaf child, which replaces the parent;
        the parent is left with a single interior child, whose children are
        spliced into the grandparent (they carry the grandparent-compatible
        tag).  A 2-leaf root collapses to a single-leaf tree, and removing
        the final leaf leaves the tree empty (only the diagonalizer's double
        removals ever do that).
        """
        self._remove_leaf_ev(v)

    def _remove_leaf_ev(self, v: int) -> tuple[int, int]:
        """remove_leaf core; returns (gained_leaves, new_root) node ids.

        ``gained_leaves`` is the node whose child list gained leaves through
        a collapse (-1 if none), ``new_root`` the interior node promoted to
        the root (-1 if none).  The diagonalizer uses these to maintain its
        ready-node schedule.
        """
        if v < 0 or v >= len(self.kind) or self.kind[v] == _FREE:
            raise CotreeError(f"node {v} is not present")
        if self.kind[v] < 0:
            raise CotreeError(f"node {v} is not a leaf")
        p = self.parent[v]
        if p == -1:
            self.root = -1
            self.n_leaves = 0
            self._free_node(v)
            return (-1, -1)
        self._unlink(v)
        self._free_node(v)
        self.n_leaves -= 1
        self.n_children[p] -= 1
        self.n_leaf_children[p] -= 1
        if self.n_children[p] == 1:
            return self._collapse(p)
        return (-1, -1)

    def _collapse(self, p: int) -> tuple[int, int]:
        """Replace interior p, now holding a single child, per the removal
        rules.  Returns the (gained_leaves, new_root) event pair."""
        u = self.first_child[p]
        g = self.parent[p]
        if g == -1:
            # p was the root: u is the whole remaining tree
            self.parent[u] = -1
            self.root = u
            self._free_node(p)
            if self.kind[u] >= 0:
                self.depth[u] = 0
                return (-1, -1)
            self._shift_depths(u, -self.depth[u])
            return (-1, u)
        if self.kind[u] >= 0:
            # single surviving leaf moves into p's slot under g
            self._replace_slot(p, u, u)
            self.parent[u] = g
            self.depth[u] = self.depth[p]
            self.n_leaf_children[g] += 1
            self._free_node(p)
            return (g, -1)
        # single surviving interior child: same tag as g, so its children
        # are spliced into g at p's position to keep alternation
        assert self.kind[u] == self.kind[g]
        cfirst = self.first_child[u]
        clast = self.last_child[u]
        self._replace_slot(p, cfirst, clast)
        self.n_children[g] += self.n_children[u] - 1
        self.n_leaf_children[g] += self.n_leaf_children[u]
        new_depth = self.depth[p]
        c = cfirst
        while c != -1:
            self.parent[c] = g
            self._shift_depths(c, new_depth - self.depth[c])
            c = self.next_sib[c]
        self._free_node(p)
        self._free_node(u)
        return (g, -1)

    def _replace_slot(self, old: int, first: int, last: int) -> None:
        """Substitute the sibling chain first..last for node old under
        old's parent; old is left unlinked."""
        g = self.parent[old]
        prv, nxt = self.prev_sib[old], self.next_sib[old]
        self.prev_sib[first] = prv
        self.next_sib[last] = nxt
        if prv != -1:
            self.next_sib[prv] = first
        else:
            self.first_child[g] = first
        if nxt != -1:
            self.prev_sib[nxt] = last
        else:
            self.last_child[g] = last
        self.prev_sib[old] = self.next_sib[old] = -1

    def _shift_depths(self, node: int, delta: int) -> None:
        if delta == 0:
            return
        stack = [node]
        depth = self.depth
        while stack:
            i = stack.pop()
            depth[i] += delta
            c = self.first_child[i]
            while c != -1:
                stack.append(c)
                c = self.next_sib[c]


def _tokenize(text: str) -> list[tuple[str, int, int]]:
    tokens = []
    line = 1
    col = 0
    in_comment = False
    for ch in text:
        col += 1
        if ch == "\n":
            line += 1
            col = 0
            in_comment = False
            continue
        if in_comment:
            continue
        if ch == "#":
            in_comment = True
            continue
        if ch.isspace():
            continue
        tokens.append((ch, line, col))
    return tokens


class CotreeBuilder:
    """Incremental construction for generators and the recognizer.

    Nodes must be added parent-first; children end up in insertion order.
    Leaf vertex ids are either all explicit or all auto-assigned in
    insertion order.
    """

    def __init__(self):
        self._t = Cotree()
        self._auto_vertex = 0
        self._explicit = None  # tri-state until the first leaf

    def interior(self, kind: int, parent: int = -1) -> int:
        if kind not in (UNION, JOIN):
            raise CotreeError("interior kind must be UNION or JOIN")
        t = self._t
        if parent == -1:
            if t.root != -1:
                raise CotreeError("root already set")
        elif t.kind[parent] == kind:
            raise CotreeError("alternation violation in builder")
        node = t._alloc(kind, parent)
        if parent == -1:
            t.root = node
        return node

    def leaf(self, parent: int = -1, vertex: Optional[int] = None) -> int:
        t = self._t
        explicit = vertex is not None
        if self._explicit is None:
            self._explicit = explicit
        elif self._explicit != explicit:
            raise CotreeError("mix of explicit and auto leaf vertex ids")
        if not explicit:
            vertex = self._auto_vertex
            self._auto_vertex += 1
        if parent == -1:
            if t.root != -1:
                raise CotreeError("root already set")
        node = t._alloc(vertex, parent)
        if parent == -1:
            t.root = node
        t.n_leaves += 1
        return node

    def build(self, validate: bool = True) -> Cotree:
        t = self._t
        t._assign_ranks()
        if validate:
            t.validate()
        return t
