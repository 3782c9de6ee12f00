"""Finite abstract simplicial complexes and their integer chain complexes.

Simplices are tuples of strictly increasing non-negative integers; the
orientation of every simplex is the one induced by sorted vertex order.
The empty tuple () is the internal marker for the empty simplex, used only
when augmenting for reduced homology.

Basis ordering everywhere is lexicographic over the sorted vertex tuples,
so two constructions of the same complex produce bit-identical boundary
matrices.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import InvariantViolation
from .exact import Matrix

EMPTY_SIMPLEX = ()


def make_simplex(vertices):
    """Validate and normalize a simplex given as an iterable of vertices."""
    s = tuple(vertices)
    if not s:
        raise ValueError("a simplex needs at least one vertex")
    for v in s:
        if not isinstance(v, int) or v < 0:
            raise ValueError(f"vertex {v!r} is not a non-negative integer")
    if any(a >= b for a, b in zip(s, s[1:])):
        raise ValueError(f"vertices must be strictly increasing: {s}")
    return s


def simplex_dim(s):
    return len(s) - 1


def face(s, i):
    """Delete the i-th vertex of s; the combinatorial i-th face.

    A 0-simplex has the empty simplex as its only face.
    """
    s = make_simplex(s)
    if not 0 <= i <= simplex_dim(s):
        raise ValueError(f"face index {i} out of range for {s}")
    return s[:i] + s[i + 1:]


def embed_vertex(q, j):
    """Barycentric coordinates of the j-th vertex of the standard q-simplex."""
    if q < 0:
        raise ValueError("dimension must be non-negative")
    if not 0 <= j <= q:
        raise ValueError(f"vertex index {j} out of range for dimension {q}")
    return tuple(Fraction(1) if k == j else Fraction(0) for k in range(q + 1))


@dataclass(frozen=True)
class SimplicialComplex:
    """A finite set of simplices closed under taking faces."""
    simplices: frozenset

    def __post_init__(self):
        for s in self.simplices:
            make_simplex(s)
            for sub_len in range(1, len(s)):
                for f in combinations(s, sub_len):
                    if f not in self.simplices:
                        raise InvariantViolation(
                            f"complex not closed under faces: {f} missing "
                            f"(face of {s})")

    @property
    def dimension(self):
        if not self.simplices:
            return -1
        return max(len(s) for s in self.simplices) - 1

    @property
    def vertices(self):
        return sorted(s[0] for s in self.simplices if len(s) == 1)

    def simplices_of_dim(self, k):
        """Sorted list of k-simplices; the chain-group basis in degree k."""
        return sorted(s for s in self.simplices if len(s) == k + 1)

    def counts(self):
        return tuple(len(self.simplices_of_dim(k))
                     for k in range(self.dimension + 1))

    def maximal_simplices(self):
        out = []
        for s in sorted(self.simplices):
            sv = set(s)
            if not any(s != t and sv <= set(t) for t in self.simplices):
                out.append(s)
        return out

    def __contains__(self, s):
        return tuple(s) in self.simplices

    def __len__(self):
        return len(self.simplices)


def closure(generators):
    """Smallest simplicial complex containing the given simplices."""
    simplices = set()
    for g in generators:
        s = make_simplex(g)
        for sub_len in range(1, len(s) + 1):
            simplices.update(combinations(s, sub_len))
    return SimplicialComplex(frozenset(simplices))


def standard_simplex(q):
    """The full q-simplex on vertices 0..q (2^{q+1} - 1 faces)."""
    if q < 0:
        raise ValueError("dimension must be non-negative")
    return closure([tuple(range(q + 1))])


def sphere(q):
    """Boundary of the (q+1)-simplex: a triangulated q-sphere."""
    if q < 0:
        raise ValueError("dimension must be non-negative")
    top = tuple(range(q + 2))
    return closure([face(top, i) for i in range(q + 2)])


def boundary_matrix(c: SimplicialComplex, k: int) -> Matrix:
    """Degree-k boundary matrix, columns indexed by sorted k-simplices.

    Column of s is sum_i (-1)^i e(face(s, i)). D_0 is the zero map into
    the trivial group (the non-reduced convention): a 0 x n_0 matrix.
    """
    if not 0 <= k <= c.dimension:
        raise ValueError(f"degree {k} out of range for dimension {c.dimension}")
    basis_k = c.simplices_of_dim(k)
    if k == 0:
        return Matrix.zeros(0, len(basis_k))
    basis_km1 = c.simplices_of_dim(k - 1)
    index = {s: i for i, s in enumerate(basis_km1)}
    grid = [[0] * len(basis_k) for _ in basis_km1]
    for j, s in enumerate(basis_k):
        for i in range(k + 1):
            grid[index[face(s, i)]][j] += (-1) ** i
    return Matrix.from_rows(grid, len(basis_k)) if basis_km1 \
        else Matrix.zeros(0, len(basis_k))


@dataclass(frozen=True)
class ChainComplexRep:
    """Graded integer chain complex of a simplicial complex.

    dims[k] counts the degree-k basis simplices; boundaries[k-1] is D_k
    for k = 1..n; basis[k] is the sorted simplex tuple list in degree k.
    """
    dims: tuple
    boundaries: tuple
    basis: tuple

    def __post_init__(self):
        for k, d in enumerate(self.boundaries, start=1):
            if d.shape != (self.dims[k - 1], self.dims[k]):
                raise InvariantViolation(
                    f"D_{k} has shape {d.shape}, expected "
                    f"({self.dims[k - 1]}, {self.dims[k]})")
        for k in range(len(self.boundaries) - 1):
            if not (self.boundaries[k] * self.boundaries[k + 1]).is_zero():
                raise InvariantViolation(
                    f"boundary squared nonzero between degrees "
                    f"{k + 2} and {k + 1}")

    @property
    def top_degree(self):
        return len(self.dims) - 1

    def boundary(self, k) -> Matrix:
        """D_k, with zero matrices of the right shape outside 1..n."""
        if 1 <= k <= self.top_degree:
            return self.boundaries[k - 1]
        if k == 0:
            return Matrix.zeros(0, self.dims[0])
        if k == self.top_degree + 1:
            return Matrix.zeros(self.dims[-1], 0)
        return Matrix.zeros(0, 0)


def chain_complex(c: SimplicialComplex) -> ChainComplexRep:
    """Assemble and validate all boundary matrices of a nonempty complex."""
    if not c.simplices:
        raise ValueError("chain complex of the empty complex is undefined")
    n = c.dimension
    basis = tuple(tuple(c.simplices_of_dim(k)) for k in range(n + 1))
    dims = tuple(len(b) for b in basis)
    boundaries = tuple(boundary_matrix(c, k) for k in range(1, n + 1))
    return ChainComplexRep(dims=dims, boundaries=boundaries, basis=basis)
