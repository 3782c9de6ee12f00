"""Cellular sheaves on finite posets: global sections, cohomology,
pushforwards, differential tetrads, protocol manifolds.

Stalks are rational vector spaces given by their dimensions; restriction
maps live on covers and compose on demand. Cohomology comes from the
ordered-chain cochain complex: C^k is a direct sum over strict k-chains of
the stalk at the chain's top element.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import ValidationError
from .exact import (Matrix, block_diag, from_columns, nullspace, rank,
                    solve)
from .posets import (FinToposet, IncidenceProfile, element_key,
                     incidence_decomposition)


@dataclass(frozen=True)
class CellularSheaf:
    """Stalk dimensions per element plus restriction matrices per cover."""
    base: FinToposet
    stalks: dict          # element -> dimension
    restrictions: dict    # (lo, hi) cover -> Matrix, stalk(lo) -> stalk(hi)

    def validate(self):
        for x in self.base.elements:
            d = self.stalks.get(x)
            if d is None or d < 0:
                raise ValidationError(f"stalk at {x!r} missing or negative")
        for cover in self.base.covers:
            m = self.restrictions.get(cover)
            if m is None:
                raise ValidationError(f"restriction for cover {cover!r} missing")
            lo, hi = cover
            want = (self.stalks[hi], self.stalks[lo])
            if m.shape != want:
                raise ValidationError(
                    f"restriction for {cover!r} has shape {m.shape}, "
                    f"expected {want}")
        self._check_functorial()
        return self

    def _cover_paths(self, x, y):
        """All cover paths x = p_0 < ... < p_n = y, lexicographically."""
        paths = []
        stack = [(x,)]
        while stack:
            p = stack.pop()
            if p[-1] == y:
                paths.append(p)
                continue
            for nxt in self.base.cover_successors(p[-1]):
                if self.base.leq(nxt, y):
                    stack.append(p + (nxt,))
        return sorted(paths)

    def _compose_path(self, path):
        m = Matrix.identity(self.stalks[path[0]])
        for lo, hi in zip(path, path[1:]):
            m = self.restrictions[(lo, hi)] * m
        return m

    def _check_functorial(self):
        for x in self.base.elements:
            for y in self.base.up_set(x):
                if y == x:
                    continue
                paths = self._cover_paths(x, y)
                first = self._compose_path(paths[0])
                for p in paths[1:]:
                    if not (self._compose_path(p) - first).is_zero():
                        raise ValidationError(
                            f"restriction maps disagree along paths "
                            f"{paths[0]} and {p}")

    def restriction(self, x, y) -> Matrix:
        """Composed restriction along any cover path from x up to y."""
        if x == y:
            return Matrix.identity(self.stalks[x])
        if not self.base.lt(x, y):
            raise ValueError(f"{x!r} is not below {y!r}")
        return self._compose_path(self._cover_paths(x, y)[0])


def constant_sheaf(p: FinToposet, dim: int = 1) -> CellularSheaf:
    """Stalk Q^dim everywhere, identities on all covers."""
    return CellularSheaf(
        base=p,
        stalks={x: dim for x in p.elements},
        restrictions={c: Matrix.identity(dim) for c in p.covers},
    ).validate()


@dataclass(frozen=True)
class SheafCochainComplex:
    """Ordered-chain cochain complex of a cellular sheaf."""
    chains: tuple        # chains[k]: sorted tuple of strict (k+1)-chains
    dims: tuple          # dims[k] = sum of top-element stalk dims
    coboundaries: tuple  # d^k: C^k -> C^{k+1}

    def __post_init__(self):
        for k in range(len(self.coboundaries) - 1):
            if not (self.coboundaries[k + 1] * self.coboundaries[k]).is_zero():
                raise ValidationError(f"d^{k + 1} d^{k} nonzero")

    @property
    def top_degree(self):
        return len(self.dims) - 1

    def coboundary(self, k) -> Matrix:
        if 0 <= k < len(self.coboundaries):
            return self.coboundaries[k]
        rows = self.dims[k + 1] if k + 1 <= self.top_degree else 0
        cols = self.dims[k] if 0 <= k <= self.top_degree else 0
        return Matrix.zeros(rows, cols)

    def cohomology_dims(self):
        n = self.top_degree
        ranks = [rank(self.coboundary(k)) for k in range(n + 1)]
        out = []
        for k in range(n + 1):
            out.append(self.dims[k] - ranks[k] - (ranks[k - 1] if k else 0))
        return tuple(out)


def _chain_offsets(chains, stalk_of_top):
    offsets = {}
    total = 0
    for ch in chains:
        offsets[ch] = total
        total += stalk_of_top(ch)
    return offsets, total


def sheaf_cochain_complex(s: CellularSheaf) -> SheafCochainComplex:
    """Build C^* with d given by alternating chain faces.

    Dropping an inner element keeps the chain's top, so the identity block
    carries it; dropping the top element needs the restriction map from
    the new top.
    """
    s.validate()
    p = s.base

    def stalk_top(ch):
        return s.stalks[ch[-1]]

    all_chains = []
    k = 1
    while True:
        cs = tuple(p.chains(k))
        if not cs:
            break
        all_chains.append(cs)
        k += 1
    if not all_chains:
        return SheafCochainComplex(chains=(), dims=(), coboundaries=())
    dims = tuple(sum(stalk_top(ch) for ch in cs) for cs in all_chains)
    cobs = []
    for k in range(len(all_chains) - 1):
        src_off, src_total = _chain_offsets(all_chains[k], stalk_top)
        dst_off, dst_total = _chain_offsets(all_chains[k + 1], stalk_top)
        grid = [[Fraction(0)] * src_total for _ in range(dst_total)]
        for ch in all_chains[k + 1]:
            ro = dst_off[ch]
            d_out = s.stalks[ch[-1]]
            for i in range(len(ch)):
                sub = ch[:i] + ch[i + 1:]
                sign = (-1) ** i
                co = src_off[sub]
                if i < len(ch) - 1:
                    blk = Matrix.identity(d_out)
                else:
                    blk = s.restriction(sub[-1], ch[-1])
                for a in range(blk.rows):
                    for b in range(blk.cols):
                        if blk[a, b]:
                            grid[ro + a][co + b] += sign * Fraction(blk[a, b])
        cobs.append(Matrix.from_rows(grid, src_total) if dst_total
                    else Matrix.zeros(0, src_total))
    return SheafCochainComplex(chains=tuple(all_chains), dims=dims,
                               coboundaries=tuple(cobs))


def global_sections(s: CellularSheaf):
    """(dimension, basis matrix) of H^0: families of stalk vectors
    compatible under every restriction. Basis columns are coordinates in
    C^0 ordered by sorted elements.

    Built from the cover constraints v(hi) - R v(lo) = 0 directly, which
    equals the kernel of d^0 whenever the sheaf is functorial but is also
    defined for restriction data that disagrees across parallel paths
    (such data just has fewer sections).
    """
    p = s.base
    offsets = {}
    total = 0
    for x in p.elements:
        offsets[x] = total
        total += s.stalks[x]
    rows = []
    for lo, hi in sorted(p.covers,
                         key=lambda c: tuple(element_key(e) for e in c)):
        r = s.restrictions[(lo, hi)]
        if r.shape != (s.stalks[hi], s.stalks[lo]):
            raise ValidationError(
                f"restriction for ({lo!r}, {hi!r}) has shape {r.shape}, "
                f"expected {(s.stalks[hi], s.stalks[lo])}")
        for i in range(s.stalks[hi]):
            row = [Fraction(0)] * total
            row[offsets[hi] + i] += 1
            for j in range(s.stalks[lo]):
                if r[i, j]:
                    row[offsets[lo] + j] -= Fraction(r[i, j])
            rows.append(tuple(row))
    a = Matrix.from_rows(rows, total) if rows else Matrix.zeros(0, total)
    basis = nullspace(a)
    return basis.cols, basis


def sheaf_cohomology(s: CellularSheaf):
    """Per-degree dimensions of the sheaf cohomology over Q."""
    cx = sheaf_cochain_complex(s)
    if cx.top_degree < 0:
        return ()
    return cx.cohomology_dims()


@dataclass(frozen=True)
class DifferentialTetrad:
    """Poset, incidence grading, coboundary, and constant-sheaf de Rham
    complex, bundled and mutually validated."""
    base: FinToposet
    forms: IncidenceProfile
    differential: tuple
    derham: SheafCochainComplex


def build_tetrad(p: FinToposet) -> DifferentialTetrad:
    """Assemble the tetrad over p and check its internal consistency.

    The grade-0 piece of the incidence algebra must match the vertex count
    of the order complex, and the total interval count must equal vertices
    plus comparable pairs (the 1-skeleton chain counts).
    """
    forms = incidence_decomposition(p)
    derham = sheaf_cochain_complex(constant_sheaf(p))
    n_vertices = len(p.elements)
    n_edges = len(p.chains(2))
    if forms.grades and forms.grades[0] != n_vertices:
        raise ValidationError("grade-0 dimension differs from element count")
    if sum(forms.grades) != n_vertices + n_edges:
        raise ValidationError("interval count differs from 0- and 1-chain "
                              "counts of the order complex")
    return DifferentialTetrad(base=p, forms=forms,
                              differential=derham.coboundaries,
                              derham=derham)


def restrict_sheaf(s: CellularSheaf, subset) -> CellularSheaf:
    """Sheaf induced on an up-closed subset of the base."""
    sub = s.base.restrict(subset)
    return CellularSheaf(
        base=sub,
        stalks={x: s.stalks[x] for x in sub.elements},
        restrictions={c: s.restriction(*c) for c in sub.covers},
    ).validate()


def pushforward(s: CellularSheaf, f: dict, target: FinToposet) -> CellularSheaf:
    """Direct image along a monotone map f: base(s) -> target.

    The stalk at q is the space of sections of s over f^{-1}(up-set of q);
    restrictions are induced by inclusion of up-sets.
    """
    base = s.base
    for x in base.elements:
        if x not in f or f[x] not in set(target.elements):
            raise ValueError(f"map undefined or out of range at {x!r}")
    for lo, hi in base.covers:
        if not target.leq(f[lo], f[hi]):
            raise ValueError(f"map is not monotone on cover ({lo!r}, {hi!r})")

    # per target element: the up-closed preimage, its section basis, and
    # the coordinate layout of its C^0
    data = {}
    for q in target.elements:
        pre = [x for x in base.elements if target.leq(q, f[x])]
        if pre:
            sub_sheaf = restrict_sheaf(s, pre)
            dim, basis = global_sections(sub_sheaf)
            layout = []
            for x in sorted(pre):
                layout.extend((x, i) for i in range(s.stalks[x]))
        else:
            dim, basis, layout = 0, Matrix.zeros(0, 0), []
        data[q] = (dim, basis, layout)

    restrictions = {}
    for (q, q2) in target.covers:
        dim_q, basis_q, layout_q = data[q]
        dim_q2, basis_q2, layout_q2 = data[q2]
        pos_q = {key: i for i, key in enumerate(layout_q)}
        cols = []
        for j in range(dim_q):
            sec = basis_q.column(j)
            restricted = tuple(sec[pos_q[key]] for key in layout_q2)
            if dim_q2:
                c = solve(basis_q2, restricted)
                if c is None:
                    raise AssertionError("restricted section is not a section")
                cols.append(c)
            else:
                if any(v != 0 for v in restricted):
                    raise AssertionError("restricted section is not a section")
        restrictions[(q, q2)] = from_columns(cols, dim_q2) if cols \
            else Matrix.zeros(dim_q2, 0)

    return CellularSheaf(
        base=target,
        stalks={q: data[q][0] for q in target.elements},
        restrictions=restrictions,
    ).validate()


def direct_sum(sheaves, base: FinToposet) -> CellularSheaf:
    """Degree-wise direct sum of sheaves over a common base."""
    for s in sheaves:
        if s.base.elements != base.elements or s.base.covers != base.covers:
            raise ValueError("summand base differs from the common target")
    return CellularSheaf(
        base=base,
        stalks={x: sum(s.stalks[x] for s in sheaves) for x in base.elements},
        restrictions={c: block_diag([s.restrictions[c] for s in sheaves])
                      if sheaves else Matrix.zeros(0, 0)
                      for c in base.covers},
    ).validate()


@dataclass(frozen=True)
class ProtocolManifold:
    """Direct sum of pushforward sheaves over a shared target poset."""
    summands: tuple   # tuple of (map dict, CellularSheaf) pairs
    total: CellularSheaf

    def cohomology(self):
        return sheaf_cohomology(self.total)


def protocol_manifold(pairs, target: FinToposet) -> ProtocolManifold:
    """Push each sheaf forward along its map and sum over the target."""
    pushed = [pushforward(s, f, target) for f, s in pairs]
    if pushed:
        total = direct_sum(pushed, target)
    else:
        total = CellularSheaf(base=target,
                              stalks={x: 0 for x in target.elements},
                              restrictions={c: Matrix.zeros(0, 0)
                                            for c in target.covers}).validate()
    return ProtocolManifold(summands=tuple(pairs), total=total)
