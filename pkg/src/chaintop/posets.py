"""Finite posets (fintoposets), order complexes, and the graded incidence
algebra.

A poset is stored by its covering relation; the full order is the
reflexive-transitive closure of the covers. Grading of the incidence
algebra is by height difference of interval endpoints, which makes the
grade-0 piece the (commutative) diagonal subalgebra.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ValidationError
from .simplicial import SimplicialComplex, closure


def element_key(x):
    """Stable sort key for mixed int/str element labels."""
    return (0, x, "") if isinstance(x, int) and not isinstance(x, bool) \
        else (1, 0, str(x))


def _toposort(elements, succ):
    """Topological order of elements under successor map, or a cycle."""
    order, state = [], {}
    # state: 1 = on stack, 2 = done
    for root in elements:
        if state.get(root):
            continue
        stack = [(root, iter(succ.get(root, ())))]
        state[root] = 1
        path = [root]
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if state.get(nxt) == 1:
                    i = path.index(nxt)
                    return None, path[i:] + [nxt]
                if not state.get(nxt):
                    state[nxt] = 1
                    path.append(nxt)
                    stack.append((nxt, iter(succ.get(nxt, ()))))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                path.pop()
                state[node] = 2
                order.append(node)
    order.reverse()
    return order, None


@dataclass(frozen=True)
class FinToposet:
    """Finite poset given by elements and covering pairs (lo, hi)."""
    elements: tuple
    covers: frozenset
    _up: dict = field(default_factory=dict, compare=False, repr=False)
    _height: dict = field(default_factory=dict, compare=False, repr=False)

    @staticmethod
    def from_covers(elements, covers):
        """Build from any acyclic relation; redundant (transitive) pairs
        are dropped so only true covers remain."""
        elements = tuple(sorted(set(elements), key=element_key))
        eset = set(elements)
        pairs = set()
        for lo, hi in covers:
            if lo not in eset or hi not in eset:
                raise ValidationError(f"cover ({lo!r}, {hi!r}) references "
                                      f"an unknown element")
            if lo == hi:
                raise ValidationError(f"reflexive cover at {lo!r}")
            pairs.add((lo, hi))
        succ = {}
        for lo, hi in pairs:
            succ.setdefault(lo, set()).add(hi)
        succ = {k: sorted(v, key=element_key) for k, v in succ.items()}
        order, cycle = _toposort(elements, succ)
        if cycle is not None:
            raise ValidationError(f"relation is cyclic: {' < '.join(map(repr, cycle))}")
        # strict up-sets via the topological order
        up = {x: set() for x in elements}
        for x in reversed(order):
            for y in succ.get(x, ()):
                up[x].add(y)
                up[x] |= up[y]
        # keep only covers: drop (lo, hi) reachable through an intermediate
        true_covers = frozenset(
            (lo, hi) for lo, hi in pairs
            if not any(hi in up[mid] for mid in up[lo] if mid != hi))
        height = {}
        for x in order:
            below = [height[lo] + 1 for lo, hi in true_covers if hi == x]
            height[x] = max(below, default=0)
        p = FinToposet(elements=elements, covers=true_covers)
        p._up.update(up)
        p._height.update(height)
        return p

    @staticmethod
    def from_dag(blocks, parents):
        """Poset of blocks ordered by ancestry (parents come below)."""
        covers = [(p, b) for b, ps in parents.items() for p in ps]
        return FinToposet.from_covers(blocks, covers)

    def leq(self, x, y):
        return x == y or y in self._up[x]

    def lt(self, x, y):
        return y in self._up[x]

    def up_set(self, x):
        """Elements >= x (including x), sorted."""
        return sorted(self._up[x] | {x}, key=element_key)

    def height(self, x):
        return self._height[x]

    def minimal_elements(self):
        tops = {hi for _, hi in self.covers}
        return [x for x in self.elements if x not in tops]

    def cover_successors(self, x):
        return sorted((hi for lo, hi in self.covers if lo == x),
                      key=element_key)

    def intervals(self):
        """All pairs (x, y) with x <= y, sorted."""
        out = []
        for x in self.elements:
            out.append((x, x))
            out.extend((x, y) for y in sorted(self._up[x], key=element_key))
        return sorted(out, key=lambda t: tuple(element_key(e) for e in t))

    def chains(self, length):
        """All strict chains x_0 < ... < x_{length-1}, each a sorted tuple
        in chain order, listed lexicographically."""
        if length == 0:
            return [()]
        result = [(x,) for x in self.elements]
        for _ in range(length - 1):
            result = [c + (y,)
                      for c in result
                      for y in sorted(self._up[c[-1]], key=element_key)]
        return sorted(result, key=lambda t: tuple(element_key(e) for e in t))

    def index_of(self):
        return {x: i for i, x in enumerate(self.elements)}

    def restrict(self, subset):
        """Induced sub-poset on a subset of elements.

        For up-closed subsets the induced covers are exactly the original
        covers inside the subset; the general case recomputes them.
        """
        subset = set(subset)
        pairs = [(lo, hi) for lo in subset for hi in self._up[lo] if hi in subset]
        return FinToposet.from_covers(subset, pairs)


def order_complex(p: FinToposet) -> SimplicialComplex:
    """Simplicial complex whose k-simplices are the (k+1)-element chains.

    Elements map to vertex ids by their sorted position.
    """
    idx = p.index_of()
    if not p.elements:
        return SimplicialComplex(frozenset())
    simplices = []
    # grow chains upward from every element; vertex ids are sorted since
    # the element order need not be linear
    stack = [(x,) for x in p.elements]
    while stack:
        c = stack.pop()
        simplices.append(tuple(sorted(idx[e] for e in c)))
        stack.extend(c + (y,) for y in p.up_set(c[-1]) if y != c[-1])
    return closure(simplices)


@dataclass(frozen=True)
class IncidenceProfile:
    """Dimensions and interval bases of the graded incidence algebra."""
    grades: tuple          # grades[i] = dim of the grade-i piece
    basis: tuple           # basis[i] = sorted tuple of intervals (x, y)

    def __post_init__(self):
        if tuple(len(b) for b in self.basis) != self.grades:
            raise ValueError("grade dimensions disagree with basis sizes")


def incidence_decomposition(p: FinToposet) -> IncidenceProfile:
    """Bucket the intervals of p by height difference of their endpoints."""
    buckets = {}
    for x, y in p.intervals():
        g = p.height(y) - p.height(x)
        buckets.setdefault(g, []).append((x, y))
    top = max(buckets, default=0)
    # intervals() already yields pairs in canonical order
    basis = tuple(tuple(buckets.get(g, ())) for g in range(top + 1))
    return IncidenceProfile(grades=tuple(len(b) for b in basis), basis=basis)


def incidence_product(p: FinToposet, u: dict, v: dict) -> dict:
    """Convolution in the incidence algebra of p.

    u and v are sparse functions on intervals, {(x, y): coefficient}.
    (u * v)(x, z) = sum over x <= y <= z of u(x, y) * v(y, z).
    """
    intervals = set(p.intervals())
    for w, name in ((u, "left"), (v, "right")):
        for key in w:
            if key not in intervals:
                raise ValueError(f"{name} factor supported outside the "
                                 f"intervals of the poset: {key!r}")
    out = {}
    for (x, y), a in u.items():
        if a == 0:
            continue
        for (y2, z), b in v.items():
            if y2 != y or b == 0:
                continue
            out[(x, z)] = out.get((x, z), Fraction(0)) + a * b
    return {k: val for k, val in out.items() if val != 0}
