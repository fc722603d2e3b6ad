"""
Exact finite-dimensional representation theory of sl2.

Irreducible modules S_L are realized in the lowering basis v_j = Y^j v_0,
which keeps every matrix integer-valued:

    H v_j = (L - 2j) v_j,    Y v_j = v_{j+1},    X v_j = j(L - j + 1) v_{j-1}.

Tensor products act by the Leibniz rule. The su2 generators of the geometric
side are recovered through sigma_1 = iH, Y = (sigma_2 + i sigma_3)/2 and
X = (-sigma_2 + i sigma_3)/2, so no complex matrix is ever built.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple, Union

import sympy
from sympy import ImmutableSparseMatrix, Rational, kronecker_product

from config.error_messages import ErrorMessages
from exceptions import PairingMismatchError, RepresentationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WeightModule:
    """The irreducible module S_L with exact H, X, Y matrices."""

    L: int
    H: ImmutableSparseMatrix
    X: ImmutableSparseMatrix
    Y: ImmutableSparseMatrix

    @property
    def dim(self) -> int:
        return self.L + 1

    @property
    def factors(self) -> Tuple["WeightModule", ...]:
        return (self,)


@dataclass(frozen=True)
class TensorModule:
    """Ordered tensor product of irreducible modules."""

    factors: Tuple[WeightModule, ...]
    H: ImmutableSparseMatrix
    X: ImmutableSparseMatrix
    Y: ImmutableSparseMatrix

    @property
    def dim(self) -> int:
        return self.H.rows


Module = Union[WeightModule, TensorModule]


@dataclass(frozen=True)
class IsotypicPiece:
    """A highest-weight vector spanning one copy of S_mu inside a tensor module."""

    highest_weight: int
    hw_vector: ImmutableSparseMatrix
    multiplicity: int


@dataclass(frozen=True)
class PairingEigen:
    """Eigenvalue of the sigma-pairing on the S_nu piece of S1 (x) S_mu."""

    source_weight: int
    target_weight: int
    eigenvalue: Rational
    multiplicity: int
    hw_vector: ImmutableSparseMatrix


def _vanishes(m: sympy.MatrixBase) -> bool:
    return bool(m.is_zero_matrix)


def kron(a: sympy.MatrixBase, b: sympy.MatrixBase) -> ImmutableSparseMatrix:
    return ImmutableSparseMatrix(kronecker_product(a, b))


def identity_matrix(n: int) -> ImmutableSparseMatrix:
    return ImmutableSparseMatrix(n, n, {(i, i): 1 for i in range(n)})


def basis_vector(n: int, index: int) -> ImmutableSparseMatrix:
    """Column vector with a single 1 in position ``index``."""
    return ImmutableSparseMatrix(n, 1, {(index, 0): 1})


@lru_cache(maxsize=None)
def make_irrep(L: int) -> WeightModule:
    """Build S_L in the lowering basis. Matrices are integer-valued."""
    if L < 0 or int(L) != L:
        raise RepresentationError(ErrorMessages.NEGATIVE_WEIGHT.format(value=L))
    L = int(L)
    n = L + 1
    h = {(j, j): L - 2 * j for j in range(n) if L - 2 * j != 0}
    y = {(j + 1, j): 1 for j in range(L)}
    x = {(j - 1, j): j * (L - j + 1) for j in range(1, n)}
    return WeightModule(
        L=L,
        H=ImmutableSparseMatrix(n, n, h),
        X=ImmutableSparseMatrix(n, n, x),
        Y=ImmutableSparseMatrix(n, n, y),
    )


def tensor(m1: Module, m2: Module) -> TensorModule:
    """Tensor product with the Leibniz action A (x) 1 + 1 (x) A."""
    i1, i2 = identity_matrix(m1.dim), identity_matrix(m2.dim)

    def leibniz(a1: ImmutableSparseMatrix, a2: ImmutableSparseMatrix) -> ImmutableSparseMatrix:
        return ImmutableSparseMatrix(kron(a1, i2) + kron(i1, a2))

    return TensorModule(
        factors=m1.factors + m2.factors,
        H=leibniz(m1.H, m2.H),
        X=leibniz(m1.X, m2.X),
        Y=leibniz(m1.Y, m2.Y),
    )


def check_sl2_relations(m: Module) -> None:
    """Raise RepresentationError unless [H,X]=2X, [H,Y]=-2Y and [X,Y]=H hold."""
    relations = {
        "[H,X]=2X": m.H * m.X - m.X * m.H - 2 * m.X,
        "[H,Y]=-2Y": m.H * m.Y - m.Y * m.H + 2 * m.Y,
        "[X,Y]=H": m.X * m.Y - m.Y * m.X - m.H,
    }
    for name, defect in relations.items():
        if not _vanishes(defect):
            raise RepresentationError(
                ErrorMessages.SL2_RELATION_FAILED.format(relation=name, dim=m.dim)
            )


def casimir_matrix(m: Module) -> ImmutableSparseMatrix:
    """Matrix of -sum sigma_i^2, realized as H^2 + 2H + 4YX."""
    return ImmutableSparseMatrix(m.H * m.H + 2 * m.H + 4 * m.Y * m.X)


def casimir(m: WeightModule) -> Rational:
    """Scalar value of the Casimir on an irreducible module, L(L+2)."""
    c = casimir_matrix(m)
    value = c[0, 0]
    if not _vanishes(c - value * identity_matrix(m.dim)):
        raise RepresentationError(ErrorMessages.CASIMIR_NOT_SCALAR.format(dim=m.dim))
    return Rational(value)


def weight_indices(m: Module) -> Dict[int, List[int]]:
    """Group basis indices by H-weight. H is diagonal in every module built here."""
    groups: Dict[int, List[int]] = {}
    for i in range(m.dim):
        groups.setdefault(int(m.H[i, i]), []).append(i)
    return groups


def decompose(t: Module) -> List[IsotypicPiece]:
    """
    Clebsch-Gordan decomposition into highest-weight vectors.

    For every weight mu >= 0 the kernel of X on the weight-mu space is computed
    by exact row reduction (sympy nullspace, lexicographic coordinate order);
    each kernel vector spans one copy of S_mu. Pieces come in decreasing mu.
    """
    groups = weight_indices(t)
    pieces: List[IsotypicPiece] = []
    for mu in sorted((w for w in groups if w >= 0), reverse=True):
        cols = groups[mu]
        rows = groups.get(mu + 2, [])
        if rows:
            kernel = t.X.extract(rows, cols).nullspace()
        else:
            kernel = [sympy.eye(len(cols))[:, k] for k in range(len(cols))]
        for index, coords in enumerate(kernel):
            entries = {(cols[i], 0): coords[i] for i in range(len(cols)) if coords[i] != 0}
            vector = ImmutableSparseMatrix(t.dim, 1, entries)
            pieces.append(IsotypicPiece(highest_weight=mu, hw_vector=vector, multiplicity=index))
    logger.debug(
        "decomposed module of dimension %d into %s",
        t.dim,
        [p.highest_weight for p in pieces],
    )
    return pieces


def isotypic_projector(t: Module, mu: int) -> ImmutableSparseMatrix:
    """Projector onto the S_mu isotypic part, as a polynomial in the Casimir."""
    weights = sorted({p.highest_weight for p in decompose(t)}, reverse=True)
    if mu not in weights:
        return ImmutableSparseMatrix(t.dim, t.dim, {})
    c = casimir_matrix(t)
    identity = identity_matrix(t.dim)
    target = mu * (mu + 2)
    projector = sympy.SparseMatrix(identity)
    for nu in weights:
        if nu == mu:
            continue
        value = nu * (nu + 2)
        projector = projector * (c - value * identity) / (target - value)
    return ImmutableSparseMatrix(projector)


def pairing_op(m1: Module, m2: Module) -> ImmutableSparseMatrix:
    """
    Matrix of sum_i rho_1(sigma_i) rho_2(sigma_i) on m1 (x) m2.

    Realized as -(H(x)H + 2 X(x)Y + 2 Y(x)X) and checked against the Casimir
    difference (C_1 + C_2 - C_12)/2.
    """
    direct = -(kron(m1.H, m2.H) + 2 * kron(m1.X, m2.Y) + 2 * kron(m1.Y, m2.X))
    via_casimir = (
        kron(casimir_matrix(m1), identity_matrix(m2.dim))
        + kron(identity_matrix(m1.dim), casimir_matrix(m2))
        - casimir_matrix(tensor(m1, m2))
    ) / 2
    if not _vanishes(direct - via_casimir):
        raise PairingMismatchError(
            ErrorMessages.PAIRING_MISMATCH.format(l1=m1.dim - 1, dim=m2.dim)
        )
    return ImmutableSparseMatrix(direct)


def _pieces_of(m: Module) -> List[IsotypicPiece]:
    if isinstance(m, WeightModule):
        return [IsotypicPiece(highest_weight=m.L, hw_vector=basis_vector(m.dim, 0), multiplicity=0)]
    return decompose(m)


def _eigenvalue(matrix: sympy.MatrixBase, vector: sympy.MatrixBase, target: int) -> Rational:
    image = matrix * vector
    pivot = next(i for i in range(vector.rows) if vector[i, 0] != 0)
    value = Rational(image[pivot, 0], vector[pivot, 0])
    if not _vanishes(image - value * vector):
        raise PairingMismatchError(ErrorMessages.PAIRING_NOT_EIGEN.format(target=target))
    return value


def pairing_spectrum(m1: WeightModule, m2: Module) -> List[PairingEigen]:
    """
    Eigenvalues of the sigma-pairing on S1 (x) m2, piece by piece.

    Each piece S_mu of m2 splits as S_{mu+1} (+) S_{mu-1}; the highest-weight
    vectors e(x)u and e(x)Yu - mu Ye(x)u are checked to be exact eigenvectors.
    The eigenvalue is -mu on S_{mu+1} and mu+2 on S_{mu-1}.
    """
    if m1.L != 1:
        raise RepresentationError(ErrorMessages.PAIRING_NEEDS_S1.format(l1=m1.L))
    matrix = pairing_op(m1, m2)
    e, ye = basis_vector(2, 0), basis_vector(2, 1)
    spectrum: List[PairingEigen] = []
    for piece in _pieces_of(m2):
        mu, u = piece.highest_weight, piece.hw_vector
        candidates: List[Tuple[int, sympy.MatrixBase]] = [(mu + 1, kron(e, u))]
        if mu >= 1:
            candidates.append((mu - 1, kron(e, m2.Y * u) - mu * kron(ye, u)))
        for nu, vector in candidates:
            spectrum.append(
                PairingEigen(
                    source_weight=mu,
                    target_weight=nu,
                    eigenvalue=_eigenvalue(matrix, vector, nu),
                    multiplicity=nu + 1,
                    hw_vector=ImmutableSparseMatrix(vector),
                )
            )
    return spectrum


def eigenvalue_multiplicities(spectrum: Sequence[PairingEigen]) -> Dict[Rational, int]:
    """Collapse a pairing spectrum into eigenvalue -> total multiplicity."""
    counts: Dict[Rational, int] = {}
    for entry in spectrum:
        counts[entry.eigenvalue] = counts.get(entry.eigenvalue, 0) + entry.multiplicity
    return counts
