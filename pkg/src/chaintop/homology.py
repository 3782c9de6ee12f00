"""Homology and cohomology of integer chain complexes via Smith normal form.

Coefficients are the integers: torsion such as the Z/2 of a projective
plane only exists over Z, and rational Betti numbers fall out for free.
Cohomology is defined operationally as homology of the transposed
differentials, indexed cohomologically.
"""

from dataclasses import dataclass

from .exact import Matrix, smith_normal_form
from .simplicial import ChainComplexRep, SimplicialComplex, chain_complex

# re-export: the decomposition type lives with its algorithm
from .exact import SmithDecomposition  # noqa: F401


@dataclass(frozen=True)
class HomologyProfile:
    """Per-degree Betti numbers and invariant-factor torsion lists."""
    betti: tuple
    torsion: tuple  # tuple of tuples of ints > 1

    def __post_init__(self):
        if len(self.betti) != len(self.torsion):
            raise ValueError("betti/torsion length mismatch")

    @property
    def top_degree(self):
        return len(self.betti) - 1

    def is_trivial_through(self, k):
        """True when betti and torsion vanish in all degrees <= k."""
        return all(self.betti[j] == 0 and not self.torsion[j]
                   for j in range(min(k, self.top_degree) + 1))


def _rank_and_divisors(m: Matrix):
    snf = smith_normal_form(m)
    return snf.rank, snf.divisors


def homology(cc: ChainComplexRep, reduced: bool = False) -> HomologyProfile:
    """H_k = ker D_k / im D_{k+1} for k = 0..n.

    With reduced=True the complex is augmented by the empty simplex
    (D_0 becomes the all-ones row), which lowers betti_0 by one on
    nonempty complexes and is what acyclicity checks need.
    """
    n = cc.top_degree
    ranks = [0] * (n + 2)  # ranks[k] = rank D_k
    torsion_src = [()] * (n + 2)
    if reduced and cc.dims[0] > 0:
        # the augmentation row (1 1 ... 1) always has rank exactly 1
        ranks[0] = 1
    for k in range(1, n + 1):
        r, div = _rank_and_divisors(cc.boundary(k))
        ranks[k] = r
        torsion_src[k] = tuple(d for d in div if d > 1)
    betti = tuple(cc.dims[k] - ranks[k] - ranks[k + 1] for k in range(n + 1))
    torsion = tuple(torsion_src[k + 1] for k in range(n + 1))
    return HomologyProfile(betti=betti, torsion=torsion)


def cohomology(cc: ChainComplexRep) -> HomologyProfile:
    """H^k from the transposed differentials delta^k = (D_{k+1})^T.

    Betti numbers agree with homology (rank equality over Q); torsion in
    H^k comes from the invariant factors of delta^{k-1} = (D_k)^T.
    """
    n = cc.top_degree
    ranks = [0] * (n + 2)   # ranks[k] = rank delta^k = rank D_{k+1}
    torsion_of_delta = [()] * (n + 2)
    for k in range(n + 1):
        r, div = _rank_and_divisors(cc.boundary(k + 1).transpose())
        ranks[k] = r
        torsion_of_delta[k] = tuple(d for d in div if d > 1)
    betti = tuple(cc.dims[k] - ranks[k] - (ranks[k - 1] if k else 0)
                  for k in range(n + 1))
    torsion = tuple(torsion_of_delta[k - 1] if k else () for k in range(n + 1))
    return HomologyProfile(betti=betti, torsion=torsion)


def is_k_acyclic(c: SimplicialComplex, k: int) -> bool:
    """True iff reduced homology vanishes in every degree <= k."""
    if not c.simplices:
        raise ValueError("acyclicity of the empty complex is undefined")
    profile = homology(chain_complex(c), reduced=True)
    return profile.is_trivial_through(k)


def euler_characteristic(c: SimplicialComplex) -> int:
    """Alternating sum of simplex counts; a cheap consistency oracle."""
    if not c.simplices:
        raise ValueError("empty complex")
    return sum((-1) ** k * n for k, n in enumerate(c.counts()))
