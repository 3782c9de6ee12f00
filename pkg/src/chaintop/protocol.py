"""Protocol evolution: consensus round operators as carrier maps, iterated
application, acyclic-carrier checking, and block-DAG fork analysis.

A carrier map sends every simplex of its domain to a nonempty subcomplex,
monotonely under faces. Barycentric subdivision and the identity ship as
stock round operators; user code can supply any assignment.
"""

from dataclasses import dataclass
from itertools import combinations

from .errors import ValidationError
from .homology import homology
from .posets import FinToposet, element_key, order_complex
from .simplicial import (SimplicialComplex, chain_complex, closure)


@dataclass(frozen=True)
class CarrierMap:
    """Simplex-to-subcomplex assignment implementing a round operator."""
    domain: SimplicialComplex
    assignment: dict  # simplex tuple -> SimplicialComplex

    def validate(self):
        for s in self.domain.simplices:
            img = self.assignment.get(s)
            if img is None or not img.simplices:
                raise ValidationError(f"carrier image of {s} missing or empty")
        for s in sorted(self.domain.simplices):
            img = self.assignment[s].simplices
            for t_len in range(1, len(s)):
                for t in combinations(s, t_len):
                    if not self.assignment[t].simplices <= img:
                        raise ValidationError(
                            f"carrier not monotone: image of face {t} is "
                            f"not contained in image of {s}")
        return self

    def image(self, s):
        return self.assignment[tuple(s)]


def identity_carrier(c: SimplicialComplex) -> CarrierMap:
    """s -> closure({s}); the do-nothing round operator."""
    return CarrierMap(domain=c,
                      assignment={s: closure([s]) for s in c.simplices})


def apply_operator(c: SimplicialComplex, m: CarrierMap) -> SimplicialComplex:
    """Union of the carrier images over all simplices of c."""
    if m.domain != c:
        raise ValidationError("carrier domain differs from the input complex")
    m.validate()
    out = set()
    for s in c.simplices:
        out |= m.assignment[s].simplices
    return SimplicialComplex(frozenset(out))


def _flags_of(simplices):
    """All chains of the face poset of the given simplices, as frozensets
    mapped later to subdivision vertices."""
    by_containment = {}
    for s in simplices:
        by_containment[s] = [t for t in simplices
                             if len(t) < len(s) and set(t) < set(s)]
    chains = []
    stack = [(s,) for s in simplices]
    while stack:
        ch = stack.pop()
        chains.append(ch)
        stack.extend(ch + (t,) for t in by_containment[ch[-1]])
    return chains


def barycentric_subdivision(c: SimplicialComplex):
    """Subdivide c; returns (subdivision, carrier).

    Each simplex of c becomes a vertex of the subdivision, numbered by the
    lexicographic position of its vertex tuple (deterministic across
    runs). Simplices of the subdivision are the flags (chains under strict
    face containment); the carrier sends s to the subdivision of its
    closure.
    """
    if not c.simplices:
        raise ValueError("cannot subdivide the empty complex")
    order = sorted(c.simplices)
    new_id = {s: i for i, s in enumerate(order)}

    def flag_to_simplex(ch):
        return tuple(sorted(new_id[s] for s in ch))

    all_simplices = sorted(c.simplices)
    sd = closure([flag_to_simplex(ch) for ch in _flags_of(all_simplices)])
    assignment = {}
    for s in c.simplices:
        faces = [t for t in c.simplices if set(t) <= set(s)]
        assignment[s] = closure(
            [flag_to_simplex(ch) for ch in _flags_of(faces)])
    return sd, CarrierMap(domain=c, assignment=assignment)


def barycentric_carrier(c: SimplicialComplex) -> CarrierMap:
    return barycentric_subdivision(c)[1]


@dataclass(frozen=True)
class ProtocolComplexSequence:
    """Rounds S_0..S_k with the carrier maps that connect them."""
    rounds: tuple
    operators: tuple

    def __post_init__(self):
        if len(self.operators) != len(self.rounds) - 1:
            raise ValueError("need exactly one operator per consecutive pair")


def iterate_protocol(initial: SimplicialComplex, rounds: int,
                     operator_factory) -> ProtocolComplexSequence:
    """Apply operator_factory(S_i) for `rounds` steps starting at S_0."""
    if rounds < 0:
        raise ValueError("round count must be non-negative")
    seq = [initial]
    ops = []
    for i in range(rounds):
        op = operator_factory(seq[-1])
        try:
            nxt = apply_operator(seq[-1], op)
        except ValidationError as e:
            raise ValidationError(f"round {i}: {e}") from e
        ops.append(op)
        seq.append(nxt)
    return ProtocolComplexSequence(rounds=tuple(seq), operators=tuple(ops))


@dataclass(frozen=True)
class CarrierReport:
    """Result of an acyclic-carrier check."""
    violations: tuple  # tuple of (simplex, HomologyProfile)

    @property
    def acyclic(self):
        return not self.violations


def check_acyclic_carrier(m: CarrierMap) -> CarrierReport:
    """Reduced homology of every carrier image; nonacyclic ones are listed."""
    m.validate()
    bad = []
    for s in sorted(m.domain.simplices):
        img = m.assignment[s]
        profile = homology(chain_complex(img), reduced=True)
        if not profile.is_trivial_through(profile.top_degree):
            bad.append((s, profile))
    return CarrierReport(violations=tuple(bad))


# ---------------------------------------------------------------------------
# Block DAGs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BlockDAG:
    """Blocks with parent links; genesis blocks have no parents.

    Multiple genesis blocks are tolerated (chains observed mid-sync);
    they surface as extra components in the fork report.
    """
    blocks: tuple
    parents: dict  # block -> frozenset of parent blocks

    @staticmethod
    def build(blocks, parents):
        blocks = tuple(sorted(set(blocks), key=element_key))
        known = set(blocks)
        norm = {}
        for b in blocks:
            ps = frozenset(parents.get(b, ()))
            for p in ps:
                if p not in known:
                    raise ValidationError(f"block {b!r} references unknown "
                                          f"parent {p!r}")
                if p == b:
                    raise ValidationError(f"block {b!r} is its own parent")
            norm[b] = ps
        dag = BlockDAG(blocks=blocks, parents=norm)
        dag.to_poset()  # raises on cycles, naming one
        return dag

    def genesis(self):
        return [b for b in self.blocks if not self.parents[b]]

    def tips(self):
        with_children = {p for ps in self.parents.values() for p in ps}
        return [b for b in self.blocks if b not in with_children]

    def edges(self):
        """Undirected parent edges as sorted pairs, deduplicated."""
        pairs = {tuple(sorted((b, p), key=element_key))
                 for b, ps in self.parents.items() for p in ps}
        return sorted(pairs, key=lambda t: tuple(element_key(e) for e in t))

    def to_poset(self) -> FinToposet:
        return FinToposet.from_dag(self.blocks, self.parents)


def dag_order_complex(d: BlockDAG) -> SimplicialComplex:
    """Order complex of the ancestry poset: chains become simplices."""
    return order_complex(d.to_poset())


@dataclass(frozen=True)
class ForkReport:
    """Tips, weak components, and the cycle rank of the parent graph.

    cycle_rank counts independent fork-and-merge diamonds; divergent but
    unmerged forks show up as extra tips instead.
    """
    tips: int
    components: int
    cycle_rank: int


def fork_report(d: BlockDAG) -> ForkReport:
    d.to_poset()  # validates acyclicity
    edges = d.edges()
    # weak components by union-find
    parent = {b: b for b in d.blocks}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    components = len({find(b) for b in d.blocks})
    rank_formula = len(edges) - len(d.blocks) + components
    # cross-check against betti_1 of the parent-edge complex
    idx = {b: i for i, b in enumerate(d.blocks)}
    simplices = [(idx[b],) for b in d.blocks]
    simplices += [tuple(sorted((idx[a], idx[b]))) for a, b in edges]
    if simplices:
        profile = homology(chain_complex(closure(simplices)))
        betti1 = profile.betti[1] if profile.top_degree >= 1 else 0
        if betti1 != rank_formula:
            raise AssertionError(
                f"cycle rank mismatch: graph formula {rank_formula}, "
                f"betti_1 {betti1}")
    return ForkReport(tips=len(d.tips()), components=components,
                      cycle_rank=rank_formula)
