"""Hylomorphic/metamorphic builders and the Poincaré validator.

hylo_build unfolds a seed into layers of simplices and folds them into a
chain complex without keeping the intermediate layer list; meta_build
folds a block stream into a poset and unfolds it into the constant-sheaf
cochain complex. Both satisfy a fusion law against their two-phase
pipelines, which the tests pin down bit-exactly.
"""

from dataclasses import dataclass

from .errors import StreamOrderError, TerminationError
from .homology import homology
from .posets import FinToposet
from .protocol import barycentric_subdivision
from .sheaves import SheafCochainComplex, constant_sheaf, sheaf_cochain_complex
from .simplicial import (ChainComplexRep, SimplicialComplex, chain_complex,
                         closure, standard_simplex)

DEFAULT_DEPTH_BOUND = 32


@dataclass(frozen=True)
class ComplexCoalgebra:
    """Unfold step: seed -> (layer of simplices, successor seeds).

    Must dry up within depth_bound expansions of any single seed line.
    """
    step: object
    depth_bound: int = DEFAULT_DEPTH_BOUND


@dataclass(frozen=True)
class ComplexAlgebra:
    """Fold: state x layer -> state, plus initial state and a finalizer.

    Layers are canonically sorted before folding, so the step may be
    order-sensitive internally without harming determinism.
    """
    step: object
    initial: object
    finalize: object


def simplex_accumulator() -> ComplexAlgebra:
    """Stock algebra: collect simplices, close, and build the chain complex."""
    return ComplexAlgebra(
        step=lambda acc, layer: acc | set(layer),
        initial=frozenset(),
        finalize=lambda acc: chain_complex(closure(acc)),
    )


def face_layers_coalgebra(depth_bound=DEFAULT_DEPTH_BOUND) -> ComplexCoalgebra:
    """Seed q: emit faces of the standard q-simplex one dimension at a time."""
    def step(seed):
        q, k = seed if isinstance(seed, tuple) else (seed, 0)
        layer = standard_simplex(q).simplices_of_dim(k)
        nxt = [(q, k + 1)] if k < q else []
        return layer, nxt
    return ComplexCoalgebra(step=step, depth_bound=depth_bound)


def subdivision_coalgebra(depth_bound=DEFAULT_DEPTH_BOUND) -> ComplexCoalgebra:
    """Seed (complex, k): subdivide k times, emitting only the final round."""
    def step(seed):
        c, k = seed
        if k == 0:
            return sorted(c.simplices), []
        return [], [(barycentric_subdivision(c)[0], k - 1)]
    return ComplexCoalgebra(step=step, depth_bound=depth_bound)


def materialize(co: ComplexCoalgebra, seed):
    """Run the coalgebra to exhaustion; the full layer list, each sorted."""
    layers = []
    frontier = [seed]
    depth = 0
    while frontier:
        if depth >= co.depth_bound:
            raise TerminationError(
                f"coalgebra exceeded depth bound {co.depth_bound}")
        layer = []
        nxt = []
        for s in frontier:
            emitted, succ = co.step(s)
            layer.extend(emitted)
            nxt.extend(succ)
        layers.append(tuple(sorted(layer)))
        frontier = nxt
        depth += 1
    return layers


def fold(alg: ComplexAlgebra, layers):
    state = alg.initial
    for layer in layers:
        state = alg.step(state, tuple(sorted(layer)))
    return alg.finalize(state)


def hylo_build(seed, co: ComplexCoalgebra,
               alg: ComplexAlgebra) -> ChainComplexRep:
    """Unfold-then-fold without materializing the layer list."""
    state = alg.initial
    frontier = [seed]
    depth = 0
    while frontier:
        if depth >= co.depth_bound:
            raise TerminationError(
                f"coalgebra exceeded depth bound {co.depth_bound}")
        layer = []
        nxt = []
        for s in frontier:
            emitted, succ = co.step(s)
            layer.extend(emitted)
            nxt.extend(succ)
        state = alg.step(state, tuple(sorted(layer)))
        frontier = nxt
        depth += 1
    return alg.finalize(state)


# ---------------------------------------------------------------------------
# Metamorphism: block stream -> poset -> cochain complex
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _PosetFoldState:
    blocks: tuple = ()
    parent_pairs: tuple = ()


def poset_folder() -> ComplexAlgebra:
    """Stock fold half of meta_build: grow the ancestry poset blockwise."""
    def step(state, item):
        block, parents = item
        known = set(state.blocks)
        if block in known:
            raise StreamOrderError(f"block {block!r} emitted twice")
        for p in parents:
            if p not in known:
                raise StreamOrderError(
                    f"block {block!r} arrived before its parent {p!r}")
        return _PosetFoldState(
            blocks=state.blocks + (block,),
            parent_pairs=state.parent_pairs
            + tuple((p, block) for p in sorted(parents)))

    def finalize(state):
        return FinToposet.from_covers(state.blocks, state.parent_pairs)

    return ComplexAlgebra(step=step, initial=_PosetFoldState(),
                          finalize=finalize)


def constant_cochain_unfolder():
    """Stock unfold half of meta_build: constant sheaf cochain complex."""
    return lambda poset: sheaf_cochain_complex(constant_sheaf(poset))


def meta_build(stream, alg: ComplexAlgebra = None,
               co=None) -> SheafCochainComplex:
    """Fold a topologically ordered block stream, then unfold the poset.

    stream yields (block_id, parents) pairs, parents before children.
    """
    alg = alg or poset_folder()
    co = co or constant_cochain_unfolder()
    state = alg.initial
    for item in stream:
        state = alg.step(state, item)
    return co(alg.finalize(state))


# ---------------------------------------------------------------------------
# Poincaré duality checks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PoincareReport:
    dimension: int
    betti: tuple
    dual_ok: bool
    pseudomanifold_ok: bool
    orientable: bool

    @property
    def verdict(self):
        return self.dual_ok and self.pseudomanifold_ok and self.orientable


def _pseudomanifold(c: SimplicialComplex, n: int) -> bool:
    """Pure, every (n-1)-simplex in exactly two n-simplices, and the
    n-simplices connected through shared (n-1)-faces."""
    if any(len(s) - 1 != n for s in c.maximal_simplices()):
        return False
    top = c.simplices_of_dim(n)
    if not top:
        return False
    if n == 0:
        return len(top) == 1
    ridges = {}
    for s in top:
        for i in range(n + 1):
            ridges.setdefault(s[:i] + s[i + 1:], []).append(s)
    if any(len(v) != 2 for v in ridges.values()):
        return False
    # dual-graph connectivity
    seen = {top[0]}
    frontier = [top[0]]
    while frontier:
        s = frontier.pop()
        for i in range(n + 1):
            for t in ridges[s[:i] + s[i + 1:]]:
                if t not in seen:
                    seen.add(t)
                    frontier.append(t)
    return len(seen) == len(top)


def poincare_check(c: SimplicialComplex) -> PoincareReport:
    """Rational Betti symmetry + orientable pseudomanifold structure."""
    if not c.simplices:
        raise ValueError("empty complex")
    n = c.dimension
    profile = homology(chain_complex(c))
    betti = profile.betti + (0,) * (n + 1 - len(profile.betti))
    dual_ok = all(betti[k] == betti[n - k] for k in range(n + 1))
    pm_ok = _pseudomanifold(c, n)
    orientable = betti[n] == 1 and not profile.torsion[n]
    return PoincareReport(dimension=n, betti=betti, dual_ok=dual_ok,
                          pseudomanifold_ok=pm_ok, orientable=orientable)


@dataclass(frozen=True)
class PoincareProtocolReport:
    stage_reports: tuple
    link_signatures: tuple  # per link: per-degree (target_dim, source_dim)

    @property
    def verdict(self):
        return all(r.verdict for r in self.stage_reports)

    def failing_stages(self):
        return [i for i, r in enumerate(self.stage_reports) if not r.verdict]


def is_poincare_protocol(t) -> PoincareProtocolReport:
    """Per-stage duality reports for a ProtocolTopology.

    Link signatures record the shapes of each chain map and so of its
    transpose, the bookkeeping of the fundamental-class pairing.
    """
    reports = tuple(poincare_check(stage) for stage in t.stages)
    sigs = tuple(tuple(f.mat(k).shape for k in range(f.degrees))
                 for f in t.links)
    return PoincareProtocolReport(stage_reports=reports, link_signatures=sigs)
