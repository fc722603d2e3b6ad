"""
S1-invariant bases of a Fourier block and the algebraic weight operators.

A block (K, L) is the representation C_K (x) S_L. Its invariant part inside
S1 (x) S3 (x) S_L is spanned by

    sigma_4 = s_4 Y^2 g,  sigma_2 = s_2 Y g,  sigma_0 = s_0 g,
    sigma_-2 = s_-2 X g,  sigma_-4 = s_-4 X^2 g,
    tau_2 = t_2 Y g,      tau_0 = t_0 g,      tau_-2 = t_-2 X g,

where s_4 = e f and t_2 = e (Yf) - 3 (Ye) f are highest-weight vectors of the
S4 and S2 pieces of S1 (x) S3, and g has H-weight K in S_L. Every present
vector has total H-weight K, so the present vectors span the weight-K space of
S1 (x) S3 (x) S_L and the operators OpA, OpB, OpC act on that span.
"""

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Dict, List, Optional, Tuple

import sympy
from sympy import ImmutableMatrix, ImmutableSparseMatrix, Rational
from typing_extensions import Literal

import rep_core
from config.error_messages import ErrorMessages
from config.solver_config import AlgebraConfig
from exceptions import BlockError, EmptyBlockError, RepresentationError

logger = logging.getLogger(__name__)

Target = Literal["S4", "S2", "C4", "C0"]

# Radial variable u = sinh(r)^2
U = sympy.Symbol("u", positive=True)

SIGMA_NAMES = ("sigma_4", "sigma_2", "sigma_0", "sigma_-2", "sigma_-4")
TAU_NAMES = ("tau_2", "tau_0", "tau_-2")


@dataclass(frozen=True)
class BlockLabel:
    """A Fourier block (K, L) indexing C_K (x) S_L."""

    K: int
    L: int

    def __post_init__(self) -> None:
        if self.L < 0:
            raise BlockError(ErrorMessages.NEGATIVE_WEIGHT.format(value=self.L))

    @property
    def parity_ok(self) -> bool:
        return (self.K - self.L) % 2 == 0

    @property
    def is_full(self) -> bool:
        """Full 5+3 invariant basis: |K| <= L-4 with matching parity."""
        return self.parity_ok and abs(self.K) <= self.L - 4

    @property
    def dim_v(self) -> int:
        return self.L + 1

    @property
    def sort_key(self) -> Tuple[int, int]:
        return (self.L, self.K)

    def __str__(self) -> str:
        return f"({self.K},{self.L})"


@dataclass(frozen=True)
class InvariantBasis:
    """Present sigma/tau vectors of a block; absent entries are None."""

    label: BlockLabel
    sigma: Tuple[Optional[ImmutableSparseMatrix], ...]
    tau: Tuple[Optional[ImmutableSparseMatrix], ...]
    parity_empty: bool = False

    @property
    def sigma_present(self) -> Tuple[bool, ...]:
        return tuple(v is not None for v in self.sigma)

    @property
    def tau_present(self) -> Tuple[bool, ...]:
        return tuple(v is not None for v in self.tau)

    def vectors(self) -> List[Tuple[str, ImmutableSparseMatrix]]:
        """Present vectors in the order sigma_4 .. sigma_-4, tau_2 .. tau_-2."""
        named = list(zip(SIGMA_NAMES, self.sigma)) + list(zip(TAU_NAMES, self.tau))
        return [(name, v) for name, v in named if v is not None]

    @property
    def is_empty(self) -> bool:
        return not self.vectors()


@dataclass(frozen=True)
class WeightOperators:
    """OpA, OpB, OpC in the coordinates of the present invariant vectors."""

    label: BlockLabel
    names: Tuple[str, ...]
    A: ImmutableMatrix
    B: ImmutableMatrix
    C: ImmutableMatrix

    @property
    def sigma_count(self) -> int:
        return sum(1 for name in self.names if name.startswith("sigma"))

    @cached_property
    def zeroth_order(self) -> ImmutableMatrix:
        """M(u) = -6 - (11/2)u + (u/2)OpA - OpB - 2 sqrt(1+u) OpC."""
        n = len(self.names)
        identity = sympy.eye(n)
        m = (
            -6 * identity
            - Rational(11, 2) * U * identity
            + U / 2 * self.A
            - self.B
            - 2 * sympy.sqrt(1 + U) * self.C
        )
        return ImmutableMatrix(m)

    @property
    def A_blk(self) -> ImmutableMatrix:
        ns = self.sigma_count
        return self.zeroth_order[:ns, :ns]

    @property
    def B_blk(self) -> ImmutableMatrix:
        ns = self.sigma_count
        return self.zeroth_order[ns:, :ns]

    @property
    def C_blk(self) -> ImmutableMatrix:
        ns = self.sigma_count
        return self.zeroth_order[:ns, ns:]

    @property
    def D_blk(self) -> ImmutableMatrix:
        ns = self.sigma_count
        return self.zeroth_order[ns:, ns:]

    def index(self, name: str) -> int:
        return self.names.index(name)


@dataclass(frozen=True)
class ClaimCheck:
    name: str
    holds: bool
    defect: Rational


@dataclass(frozen=True)
class SigmaPairingSpectrum:
    """Spectrum of -rho(sigma_1) rho_3(sigma_1) = H (x) H on S1 (x) S3."""

    matrix: ImmutableSparseMatrix
    max_eigenvalue: int
    min_eigenvalue: int
    eigenspace: Tuple[ImmutableSparseMatrix, ...]

    @property
    def eigenspace_dim(self) -> int:
        return len(self.eigenspace)


@lru_cache(maxsize=None)
def pair_module() -> rep_core.TensorModule:
    """S1 (x) S3."""
    return rep_core.tensor(rep_core.make_irrep(1), rep_core.make_irrep(3))


@lru_cache(maxsize=None)
def spinor_module(L: int) -> rep_core.TensorModule:
    """S1 (x) S3 (x) S_L."""
    return rep_core.tensor(pair_module(), rep_core.make_irrep(L))


@lru_cache(maxsize=None)
def _pair_vectors() -> Dict[int, Tuple[ImmutableSparseMatrix, Optional[ImmutableSparseMatrix]]]:
    """Map weight k to (s_k, t_k) in S1 (x) S3; t_k is None outside {2, 0, -2}."""
    pair = pair_module()
    s1, s3 = rep_core.make_irrep(1), rep_core.make_irrep(3)
    e, f = rep_core.basis_vector(2, 0), rep_core.basis_vector(4, 0)
    s = rep_core.kron(e, f)
    t = rep_core.kron(e, s3.Y * f) - 3 * rep_core.kron(s1.Y * e, f)
    vectors: Dict[int, Tuple[ImmutableSparseMatrix, Optional[ImmutableSparseMatrix]]] = {}
    for k in AlgebraConfig.S4_WEIGHTS:
        t_k = None
        if k in AlgebraConfig.S2_WEIGHTS:
            t_k = ImmutableSparseMatrix(t)
            t = pair.Y * t
        vectors[k] = (ImmutableSparseMatrix(s), t_k)
        s = pair.Y * s
    return vectors


def _factor(label: BlockLabel, k: int) -> Optional[ImmutableSparseMatrix]:
    """S_L factor of weight K-k paired with the S1 (x) S3 vector of weight k."""
    K, L = label.K, label.L
    sl = rep_core.make_irrep(L)
    if abs(K) <= L:
        g = rep_core.basis_vector(L + 1, (L - K) // 2)
        if k > 0:
            v = g
            for _ in range(k // 2):
                v = sl.Y * v
        else:
            v = g
            for _ in range(-k // 2):
                v = sl.X * v
        return None if v.is_zero_matrix else ImmutableSparseMatrix(v)
    j = (L - (K - k)) // 2
    if 0 <= j <= L:
        return rep_core.basis_vector(L + 1, j)
    return None


def invariant_basis(label: BlockLabel) -> InvariantBasis:
    """Invariant sigma/tau vectors of a block, absent where the S_L factor vanishes."""
    if not label.parity_ok:
        return InvariantBasis(
            label=label, sigma=(None,) * 5, tau=(None,) * 3, parity_empty=True
        )
    pair = _pair_vectors()
    sigma: List[Optional[ImmutableSparseMatrix]] = []
    tau: List[Optional[ImmutableSparseMatrix]] = []
    for k in AlgebraConfig.S4_WEIGHTS:
        factor = _factor(label, k)
        s_k, t_k = pair[k]
        sigma.append(None if factor is None else rep_core.kron(s_k, factor))
        if t_k is not None:
            tau.append(None if factor is None else rep_core.kron(t_k, factor))
    return InvariantBasis(label=label, sigma=tuple(sigma), tau=tuple(tau))


def invariant_dim(label: BlockLabel, target: Target) -> int:
    """Count k2 in the target weight set with |K+k2| <= L and K+k2 = L mod 2."""
    if target not in AlgebraConfig.TARGET_WEIGHTS:
        raise BlockError(
            ErrorMessages.UNKNOWN_TARGET.format(
                target=target, choices=", ".join(AlgebraConfig.TARGET_WEIGHTS)
            )
        )
    K, L = label.K, label.L
    return sum(
        1
        for k2 in AlgebraConfig.TARGET_WEIGHTS[target]
        if abs(K + k2) <= L and (K + k2 - L) % 2 == 0
    )


@lru_cache(maxsize=None)
def _operator_matrices(L: int) -> Tuple[ImmutableSparseMatrix, ...]:
    s1, s3, sl = rep_core.make_irrep(1), rep_core.make_irrep(3), rep_core.make_irrep(L)
    i3, il = rep_core.identity_matrix(4), rep_core.identity_matrix(L + 1)
    kron = rep_core.kron
    op_a = kron(kron(s1.H, s3.H), il)
    op_b = kron(kron(s1.H, i3), sl.H)
    op_c = kron(kron(s1.X, i3), sl.Y) + kron(kron(s1.Y, i3), sl.X)
    return op_a, op_b, ImmutableSparseMatrix(op_c)


def weight_operators(label: BlockLabel) -> WeightOperators:
    """Exact matrices of OpA, OpB, OpC on the span of the present invariant vectors."""
    basis = invariant_basis(label)
    if basis.is_empty:
        raise EmptyBlockError(ErrorMessages.EMPTY_BLOCK.format(K=label.K, L=label.L))
    module = spinor_module(label.L)
    rows = rep_core.weight_indices(module)[label.K]
    named = basis.vectors()
    if len(rows) != len(named):
        raise RepresentationError(
            ErrorMessages.BASIS_NOT_INVARIANT.format(name="span", K=label.K, L=label.L)
        )
    full = sympy.Matrix.hstack(*[v for _, v in named])
    inverse = full.extract(rows, list(range(len(named)))).inv()

    def in_basis(name: str, op: ImmutableSparseMatrix) -> ImmutableMatrix:
        columns = []
        for _, v in named:
            image = op * v
            coords = inverse * image.extract(rows, [0])
            if not (full * coords - image).is_zero_matrix:
                raise RepresentationError(
                    ErrorMessages.BASIS_NOT_INVARIANT.format(name=name, K=label.K, L=label.L)
                )
            columns.append(coords)
        return ImmutableMatrix(sympy.Matrix.hstack(*columns))

    op_a, op_b, op_c = _operator_matrices(label.L)
    logger.debug("weight operators for block %s on %d vectors", label, len(named))
    return WeightOperators(
        label=label,
        names=tuple(name for name, _ in named),
        A=in_basis("OpA", op_a),
        B=in_basis("OpB", op_b),
        C=in_basis("OpC", op_c),
    )


def claim_identities(label: BlockLabel, ops: Optional[WeightOperators] = None) -> List[ClaimCheck]:
    """The nine closed-form actions of OpA, OpB, OpC on sigma_4, sigma_2, sigma_0."""
    if ops is None:
        ops = weight_operators(label)
    K, L = label.K, label.L
    c4 = Rational(L * (L + 2) - (K - 2) * (K - 4), 16)
    c2 = Rational(L * (L + 2) - K * (K - 2), 16)
    half, quarter = Rational(1, 2), Rational(1, 4)
    expected = [
        ("A sigma_4", ops.A, "sigma_4", {"sigma_4": 3}),
        ("A sigma_2", ops.A, "sigma_2", {"tau_2": 1}),
        ("A sigma_0", ops.A, "sigma_0", {"sigma_0": -1}),
        ("B sigma_4", ops.B, "sigma_4", {"sigma_4": K - 4}),
        ("B sigma_2", ops.B, "sigma_2", {"sigma_2": Rational(K - 2, 2), "tau_2": Rational(K - 2, 2)}),
        ("B sigma_0", ops.B, "sigma_0", {"tau_0": K}),
        ("C sigma_4", ops.C, "sigma_4", {"sigma_2": c4, "tau_2": -c4}),
        ("C sigma_2", ops.C, "sigma_2", {"sigma_4": 1, "sigma_0": c2, "tau_0": -c2}),
        (
            "C sigma_0",
            ops.C,
            "sigma_0",
            {"sigma_2": 3 * half, "tau_2": half, "sigma_-2": quarter, "tau_-2": -quarter},
        ),
    ]
    checks = []
    for name, matrix, source, image in expected:
        column = matrix[:, ops.index(source)]
        target = sympy.Matrix([image.get(n, 0) for n in ops.names])
        defect = max((abs(x) for x in column - target), default=Rational(0))
        checks.append(ClaimCheck(name=name, holds=defect == 0, defect=Rational(defect)))
    return checks


def sigma1_pairing_spectrum() -> SigmaPairingSpectrum:
    """Spectrum of H (x) H on S1 (x) S3; the top eigenspace sits inside S4."""
    s1, s3 = rep_core.make_irrep(1), rep_core.make_irrep(3)
    matrix = rep_core.kron(s1.H, s3.H)
    diagonal = [int(matrix[i, i]) for i in range(matrix.rows)]
    top, bottom = max(diagonal), min(diagonal)
    eigenspace = tuple(
        rep_core.basis_vector(matrix.rows, i) for i, value in enumerate(diagonal) if value == top
    )
    projector = rep_core.isotypic_projector(pair_module(), 4)
    for v in eigenspace:
        if not (projector * v - v).is_zero_matrix:
            raise RepresentationError(
                ErrorMessages.BASIS_NOT_INVARIANT.format(name="sigma_1 pairing", K=top, L=3)
            )
    return SigmaPairingSpectrum(
        matrix=matrix, max_eigenvalue=top, min_eigenvalue=bottom, eigenspace=eigenspace
    )
