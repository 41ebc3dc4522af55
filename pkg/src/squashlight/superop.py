"""Vectorization and elementary superoperators over small dense matrices.

Density operators are plain complex ndarrays.  The fixed convention is
column stacking, vec(rho)[i + d*j] = rho[i, j], under which a two-sided
product maps as  X rho Y  ->  (Y^T kron X) vec(rho).  Every module in the
package shares this convention, so generator matrices from different
builders are directly comparable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

STATE_ATOL = 1e-12
EIGENVALUE_FLOOR = -1e-10


def vectorize(rho: np.ndarray) -> np.ndarray:
    """Column-stack a d x d matrix into a length d^2 vector."""
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {rho.shape}")
    return rho.reshape(-1, order="F")


def devectorize(vec: np.ndarray, dim: int) -> np.ndarray:
    """Inverse of :func:`vectorize` for a given dimension."""
    vec = np.asarray(vec)
    if vec.size != dim * dim:
        raise ValueError(f"vector of length {vec.size} does not match dim {dim}")
    return vec.reshape(dim, dim, order="F")


def left_mult(a: np.ndarray) -> np.ndarray:
    """Matrix of rho -> a rho (plumbing; not trace preserving on its own)."""
    a = np.asarray(a, dtype=complex)
    return np.kron(np.eye(a.shape[0]), a)


def right_mult(b: np.ndarray) -> np.ndarray:
    """Matrix of rho -> rho b."""
    b = np.asarray(b, dtype=complex)
    return np.kron(b.T, np.eye(b.shape[0]))


def two_sided(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix of rho -> a rho b."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    return np.kron(b.T, a)


@dataclass(frozen=True)
class Generator:
    """A d^2 x d^2 superoperator matrix acting on column-stacked states.

    ``provenance`` records which builder produced it and with what
    parameters, so assembled Liouvillians stay auditable.
    """

    dim: int
    matrix: np.ndarray
    provenance: str

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (self.dim**2, self.dim**2):
            raise ValueError(
                f"generator matrix shape {m.shape} does not match dim {self.dim}"
            )
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    def apply(self, rho: np.ndarray) -> np.ndarray:
        """Evaluate the generator on a density matrix."""
        return devectorize(self.matrix @ vectorize(rho), self.dim)


def _square(a) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def dissipator(a: np.ndarray) -> Generator:
    """Lindblad dissipator rho -> A rho A^dag - (1/2){A^dag A, rho}."""
    a = _square(a)
    ad = a.conj().T
    ada = ad @ a
    mat = two_sided(a, ad) - 0.5 * (left_mult(ada) + right_mult(ada))
    return Generator(a.shape[0], mat, f"dissipator of {a.shape[0]}x{a.shape[0]} operator")


def double_commutator(a: np.ndarray, b: np.ndarray) -> Generator:
    """Nested commutator rho -> [A, [B, rho]]."""
    a = _square(a)
    b = _square(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    mat = left_mult(a @ b) - two_sided(a, b) - two_sided(b, a) + right_mult(b @ a)
    return Generator(a.shape[0], mat, "double commutator [A,[B,.]]")


def sandwich_sum(a: np.ndarray, b: np.ndarray) -> Generator:
    """Hermiticity-preserving pair rho -> A rho B + B^dag rho A^dag."""
    a = _square(a)
    b = _square(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    mat = two_sided(a, b) + two_sided(b.conj().T, a.conj().T)
    return Generator(a.shape[0], mat, "sandwich pair A.B + B^dag.A^dag")


@dataclass(frozen=True)
class AtomOps:
    """Lowering operators and quadrature combinations for one atom.

    ``lowering`` holds one operator per transition, ordered from the ground
    transition up (a single entry for the two-level atom, two for the
    cascade).  ``x_ops``/``y_ops`` are the matching s + s^dag and
    i s - i s^dag combinations.  ``z_op`` is the two-level inversion
    operator; it is None for the cascade.
    """

    dim: int
    lowering: tuple
    x_ops: tuple
    y_ops: tuple
    z_op: np.ndarray | None

    @property
    def sigma(self) -> np.ndarray:
        return self.lowering[0]

    @property
    def sigma_x(self) -> np.ndarray:
        return self.x_ops[0]

    @property
    def sigma_y(self) -> np.ndarray:
        return self.y_ops[0]

    @property
    def sigma_z(self) -> np.ndarray:
        if self.z_op is None:
            raise ValueError("inversion operator is defined for the two-level atom only")
        return self.z_op


def _freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def atom_ops(dim: int) -> AtomOps:
    """Operator set for a 2-level atom or a 3-level cascade.

    Basis ordering is ground first: index 0 is the ground state and, for
    the cascade, index 2 the upper state.  The lowering operators are
    |g><e| (two-level) and |1><2|, |2><3| (cascade).
    """
    if dim not in (2, 3):
        raise ValueError(f"only dimensions 2 and 3 are supported, got {dim}")
    lowering = []
    for k in range(dim - 1):
        s = np.zeros((dim, dim), dtype=complex)
        s[k, k + 1] = 1.0
        lowering.append(_freeze(s))
    x_ops = tuple(_freeze(s + s.conj().T) for s in lowering)
    y_ops = tuple(_freeze(1j * s - 1j * s.conj().T) for s in lowering)
    z_op = None
    if dim == 2:
        s = lowering[0]
        z_op = _freeze(s.conj().T @ s - s @ s.conj().T)
    return AtomOps(dim, tuple(lowering), x_ops, y_ops, z_op)


def is_hermitian(rho: np.ndarray, atol: float = STATE_ATOL) -> bool:
    return bool(np.abs(rho - np.asarray(rho).conj().T).max() <= atol)


def validate_state(rho: np.ndarray, atol: float = STATE_ATOL,
                   eig_floor: float = EIGENVALUE_FLOOR) -> np.ndarray:
    """Check the density-matrix invariants of a state and return it.

    Hermitian within ``atol``, unit trace within ``atol``, eigenvalues no
    lower than ``eig_floor``.  Intermediate (unnormalized) matrices should
    not be passed through this.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {rho.shape}")
    if not is_hermitian(rho, atol):
        raise ValueError("state is not Hermitian")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > atol:
        raise ValueError(f"state trace {tr} is not 1")
    lo = np.linalg.eigvalsh(rho).min()
    if lo < eig_floor:
        raise ValueError(f"state has negative eigenvalue {lo}")
    return rho


def basis_state(dim: int, index: int) -> np.ndarray:
    """Projector |index><index| as a density matrix (0-based index)."""
    if not 0 <= index < dim:
        raise ValueError(f"index {index} out of range for dimension {dim}")
    rho = np.zeros((dim, dim), dtype=complex)
    rho[index, index] = 1.0
    return rho


def maximally_mixed(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=complex) / dim
