"""Cross-protocol state exchange: simplicial vertex maps, induced chain
maps, chain-homotopy verification and search, protocol topologies.

Homotopy search runs over the rationals (existence over Z is a lattice
problem nothing downstream needs) and returns the minimal-norm witness so
repeated runs agree bit for bit.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import ValidationError
from .exact import (Matrix, column_space_basis, column_space_complement,
                    from_columns, hstack, min_norm_solve, nullspace, solve,
                    solve_matrix)
from .homology import homology
from .simplicial import ChainComplexRep, SimplicialComplex, chain_complex


@dataclass(frozen=True)
class VertexMap:
    """A vertex-level map between complexes; simplicial when every source
    simplex lands on a simplex of the target (collapses allowed)."""
    source: SimplicialComplex
    target: SimplicialComplex
    mapping: dict

    def validate(self):
        for v in self.source.vertices:
            if v not in self.mapping:
                raise ValidationError(f"vertex {v} has no image")
        for s in sorted(self.source.simplices):
            img = tuple(sorted({self.mapping[v] for v in s}))
            if img not in self.target.simplices:
                raise ValidationError(
                    f"map is not simplicial: image {img} of {s} is not a "
                    f"simplex of the target")
        return self

    def compose(self, inner: "VertexMap") -> "VertexMap":
        """self after inner."""
        return VertexMap(source=inner.source, target=self.target,
                         mapping={v: self.mapping[w]
                                  for v, w in inner.mapping.items()})


@dataclass(frozen=True)
class ChainMap:
    """Per-degree matrices between the chain complexes of two complexes."""
    source: ChainComplexRep
    target: ChainComplexRep
    mats: tuple  # mats[k]: dims_target[k] x dims_source[k], k = 0..K

    def mat(self, k) -> Matrix:
        if 0 <= k < len(self.mats):
            return self.mats[k]
        rows = self.target.dims[k] if k <= self.target.top_degree else 0
        cols = self.source.dims[k] if k <= self.source.top_degree else 0
        return Matrix.zeros(rows, cols)

    @property
    def degrees(self):
        return max(self.source.top_degree, self.target.top_degree) + 1

    def compose(self, inner: "ChainMap") -> "ChainMap":
        """self after inner."""
        k = max(self.degrees, inner.degrees)
        return ChainMap(source=inner.source, target=self.target,
                        mats=tuple(self.mat(i) * inner.mat(i)
                                   for i in range(k)))


@dataclass(frozen=True)
class ChainHomotopy:
    """Degree +1 rational matrices L_k: C_k(source) -> C_{k+1}(target)."""
    source: ChainComplexRep
    target: ChainComplexRep
    mats: tuple

    def mat(self, k) -> Matrix:
        if 0 <= k < len(self.mats):
            return self.mats[k]
        rows = self.target.dims[k + 1] if 0 <= k + 1 <= self.target.top_degree else 0
        cols = self.source.dims[k] if 0 <= k <= self.source.top_degree else 0
        return Matrix.zeros(rows, cols)


def _sign_of_sort(seq):
    """Sign of the permutation sorting seq (distinct entries)."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def induced_chain_map(v: VertexMap) -> ChainMap:
    """Chain map of a simplicial vertex map.

    An oriented simplex goes to its image with the sign of the sorting
    permutation, or to zero when vertices collide.
    """
    v.validate()
    src = chain_complex(v.source)
    tgt = chain_complex(v.target)
    degrees = max(src.top_degree, tgt.top_degree) + 1
    mats = []
    for k in range(degrees):
        rows = tgt.dims[k] if k <= tgt.top_degree else 0
        cols = src.dims[k] if k <= src.top_degree else 0
        grid = [[0] * cols for _ in range(rows)]
        if rows and cols:
            tgt_index = {s: i for i, s in enumerate(tgt.basis[k])}
            for j, s in enumerate(src.basis[k]):
                img = [v.mapping[x] for x in s]
                if len(set(img)) != len(img):
                    continue  # degenerate: maps to zero
                grid[tgt_index[tuple(sorted(img))]][j] = _sign_of_sort(img)
        mats.append(Matrix.from_rows(grid, cols) if rows
                    else Matrix.zeros(0, cols))
    f = ChainMap(source=src, target=tgt, mats=tuple(mats))
    if not verify_chain_map(f):
        raise ValidationError("induced map fails the chain condition "
                              "(internal error)")
    return f


def identity_chain_map(c: SimplicialComplex) -> ChainMap:
    cc = chain_complex(c)
    return ChainMap(source=cc, target=cc,
                    mats=tuple(Matrix.identity(d) for d in cc.dims))


def verify_chain_map(f: ChainMap) -> bool:
    """D'_k F_k = F_{k-1} D_k in every degree, exactly."""
    for k in range(1, f.degrees + 1):
        lhs = f.target.boundary(k) * f.mat(k)
        rhs = f.mat(k - 1) * f.source.boundary(k)
        if lhs.shape != rhs.shape:
            raise ValueError(f"inconsistent shapes in degree {k}: "
                             f"{lhs.shape} vs {rhs.shape}")
        if not (lhs - rhs).is_zero():
            return False
    return True


def _check_same_endpoints(f: ChainMap, g: ChainMap):
    if f.source.dims != g.source.dims or f.target.dims != g.target.dims:
        raise ValueError("chain maps do not share source and target")


def verify_chain_homotopy(f: ChainMap, g: ChainMap,
                          l: ChainHomotopy) -> bool:
    """F_k - G_k = D'_{k+1} L_k + L_{k-1} D_k in every degree."""
    _check_same_endpoints(f, g)
    for k in range(f.degrees):
        want = f.mat(k) - g.mat(k)
        got = f.target.boundary(k + 1) * l.mat(k) \
            + l.mat(k - 1) * f.source.boundary(k)
        if want.shape != got.shape:
            raise ValueError(f"homotopy shape mismatch in degree {k}")
        if not (want - got).is_zero():
            return False
    return True


def solve_chain_homotopy(f: ChainMap, g: ChainMap):
    """Search for a homotopy witness between f and g over Q.

    Assembles the per-degree identities into one linear system and takes
    the minimal-norm solution; returns None when the system is infeasible
    (e.g. the two maps differ on homology).
    """
    _check_same_endpoints(f, g)
    src, tgt = f.source, f.target
    degrees = f.degrees
    # unknown layout: vec(L_k) row-major, k ascending
    shapes = []
    offsets = []
    total = 0
    for k in range(degrees):
        rows = tgt.dims[k + 1] if k + 1 <= tgt.top_degree else 0
        cols = src.dims[k] if k <= src.top_degree else 0
        shapes.append((rows, cols))
        offsets.append(total)
        total += rows * cols

    def l_index(k, i, j):
        return offsets[k] + i * shapes[k][1] + j

    eq_rows = []
    rhs = []
    for k in range(degrees):
        dk = src.boundary(k)          # dims_src[k-1] x dims_src[k]
        dk1 = tgt.boundary(k + 1)     # dims_tgt[k] x dims_tgt[k+1]
        diff = f.mat(k) - g.mat(k)
        for i in range(diff.rows):
            for j in range(diff.cols):
                row = [Fraction(0)] * total
                # (D'_{k+1} L_k)[i, j]
                for m in range(shapes[k][0]):
                    if dk1.cols and dk1[i, m]:
                        row[l_index(k, m, j)] += dk1[i, m]
                # (L_{k-1} D_k)[i, j]
                if k >= 1:
                    for m in range(shapes[k - 1][1]):
                        if dk[m, j]:
                            row[l_index(k - 1, i, m)] += dk[m, j]
                eq_rows.append(tuple(row))
                rhs.append(Fraction(diff[i, j]))
    a = Matrix.from_rows(eq_rows, total) if eq_rows else Matrix.zeros(0, total)
    x = min_norm_solve(a, tuple(rhs)) if eq_rows else tuple([Fraction(0)] * total)
    if x is None:
        return None
    mats = []
    for k in range(degrees):
        rows, cols = shapes[k]
        grid = [[x[l_index(k, i, j)] for j in range(cols)] for i in range(rows)]
        mats.append(Matrix.from_rows(grid, cols) if rows
                    else Matrix.zeros(0, cols))
    l = ChainHomotopy(source=src, target=tgt, mats=tuple(mats))
    if not verify_chain_homotopy(f, g, l):
        raise AssertionError("solver produced a rejected witness")
    return l


def _homology_basis(cc: ChainComplexRep, k):
    """Rational homology data in degree k.

    Returns (kernel_basis, image_basis_in_kernel_coords, free_indices):
    kernel_basis columns span ker D_k; free_indices pick the coordinates
    (w.r.t. the kernel basis) that descend to a homology basis.
    """
    if not 0 <= k <= cc.top_degree:
        return Matrix.zeros(0, 0), Matrix.zeros(0, 0), []
    kern = nullspace(cc.boundary(k))           # dims[k] x m
    img = cc.boundary(k + 1)                   # dims[k] x dims[k+1]
    coords = solve_matrix(kern, img)
    if coords is None:
        raise AssertionError("image not contained in kernel")
    free = column_space_complement(coords)
    return kern, coords, free


def induced_map_on_homology(f: ChainMap):
    """Matrices of H_k(f) over Q in deterministic cycle bases.

    The basis in degree k is the set of kernel-basis columns whose
    coordinates survive the quotient by the image; chain-homotopic maps
    give equal matrices.
    """
    if not verify_chain_map(f):
        raise ValidationError("not a chain map: boundary condition fails")
    out = []
    for k in range(f.degrees):
        ks, _, free_s = _homology_basis(f.source, k)
        kt, coords_t, free_t = _homology_basis(f.target, k)
        if not free_s or not free_t:
            out.append(Matrix.zeros(len(free_t), len(free_s)))
            continue
        # invertible change of basis on the target side: image basis
        # columns followed by the complementary standard vectors
        img_basis = column_space_basis(coords_t)
        e_free = from_columns(
            [tuple(Fraction(1) if i == idx else Fraction(0)
                   for i in range(kt.cols)) for idx in free_t], kt.cols)
        change = hstack([img_basis, e_free], rows=kt.cols)
        cols = []
        for idx in free_s:
            z = ks.column(idx)                      # a cycle in C_k(source)
            w = tuple(sum(f.mat(k).data[i][j] * z[j]
                          for j in range(len(z)))
                      for i in range(f.mat(k).rows))
            c = solve(kt, w)
            if c is None:
                raise AssertionError("image of a cycle is not a cycle")
            ab = solve(change, c)
            if ab is None:
                raise AssertionError("quotient decomposition failed")
            cols.append(tuple(ab[img_basis.cols:]))
        out.append(from_columns(cols, len(free_t)))
    return out


@dataclass(frozen=True)
class ProtocolTopology:
    """Stages P_0..P_pi with verified chain maps linking them."""
    stages: tuple
    links: tuple            # ChainMap per consecutive pair
    stage_profiles: tuple   # reduced HomologyProfile per stage
    composite_homology: tuple  # induced homology matrices of the composite

    def acyclic_up_to(self, stage_index):
        """Largest k with reduced homology of the stage trivial through k,
        or -1 when even degree 0 fails."""
        p = self.stage_profiles[stage_index]
        k = -1
        while k + 1 <= p.top_degree and p.is_trivial_through(k + 1):
            k += 1
        return k


def build_protocol_topology(stages, vertex_maps) -> ProtocolTopology:
    """Validate the stage sequence and its links, and report acyclicity."""
    stages = tuple(stages)
    vertex_maps = tuple(vertex_maps)
    if len(vertex_maps) != len(stages) - 1:
        raise ValueError("need exactly one vertex map per consecutive pair")
    links = []
    for i, vm in enumerate(vertex_maps):
        if vm.source != stages[i] or vm.target != stages[i + 1]:
            raise ValidationError(f"link {i} does not connect stages "
                                  f"{i} -> {i + 1}")
        try:
            links.append(induced_chain_map(vm))
        except ValidationError as e:
            raise ValidationError(f"stage {i}: {e}") from e
    profiles = tuple(homology(chain_complex(s), reduced=True) for s in stages)
    if links:
        composite = links[0]
        for lk in links[1:]:
            composite = lk.compose(composite)
        composite_h = tuple(induced_map_on_homology(composite))
    else:
        composite_h = tuple(induced_map_on_homology(
            identity_chain_map(stages[0])))
    return ProtocolTopology(stages=stages, links=tuple(links),
                            stage_profiles=profiles,
                            composite_homology=composite_h)
