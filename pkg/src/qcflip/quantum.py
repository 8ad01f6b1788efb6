"""Minimal finite-dimensional quantum mechanics on dense complex matrices.

Density operators, channels in Kraus or environment-dilation form, POVM
measurement, and the channel error-rate functional the protocol elements are
built on. Everything is a small dense ``complex128`` numpy array (system
dimension 2-4, composite dimension up to 12) and immutable after
construction, so all operations are pure functions safe to share across
threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Tolerance for exact algebraic identities (unitarity, completeness, trace).
ATOL = 1e-10
# Looser floor for eigenvalues of channel outputs.
EIGEN_FLOOR = -1e-8


def _as_matrix(value, what: str) -> np.ndarray:
    mat = np.array(value, dtype=np.complex128)
    if mat.ndim != 2:
        raise ValueError(f"{what} must be a 2-D matrix, got shape {mat.shape}")
    return mat

def _as_square(value, what: str) -> np.ndarray:
    mat = _as_matrix(value, what)
    if mat.shape[0] != mat.shape[1]:
        raise ValueError(f"{what} must be square, got shape {mat.shape}")
    return mat

def _freeze(mat: np.ndarray) -> np.ndarray:
    mat = np.ascontiguousarray(mat)
    mat.flags.writeable = False
    return mat


@dataclass(frozen=True)
class DensityOperator:
    """A ``dim x dim`` density matrix: Hermitian, unit trace, PSD.

    The constructor validates all three invariants (within ``ATOL`` for the
    algebraic ones, smallest eigenvalue >= -1e-10) and stores a read-only
    copy of the matrix.
    """

    matrix: np.ndarray

    def __post_init__(self) -> None:
        mat = _as_square(self.matrix, "density matrix")
        if np.abs(mat - mat.conj().T).max() > ATOL:
            raise ValueError("density matrix is not Hermitian")
        if abs(mat.trace() - 1.0) > ATOL:
            raise ValueError(f"density matrix trace {mat.trace():.12g} != 1")
        # eigvalsh is the deterministic symmetric eigenvalue routine.
        if np.linalg.eigvalsh(mat).min() < -ATOL:
            raise ValueError("density matrix is not positive semidefinite")
        object.__setattr__(self, "matrix", _freeze(mat))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def basis_state(dim: int, index: int) -> DensityOperator:
    """Pure computational-basis state ``|index><index|`` in ``dim`` levels."""
    if not 0 <= index < dim:
        raise ValueError(f"basis index {index} out of range for dim {dim}")
    mat = np.zeros((dim, dim), dtype=np.complex128)
    mat[index, index] = 1.0
    return DensityOperator(mat)


def plus_state() -> DensityOperator:
    """The qubit ``|+><+|`` state."""
    return DensityOperator(np.full((2, 2), 0.5, dtype=np.complex128))


def maximally_mixed(dim: int) -> DensityOperator:
    return DensityOperator(np.eye(dim, dtype=np.complex128) / dim)


@dataclass(frozen=True)
class KrausChannel:
    """Operator-sum channel ``rho -> sum_k K_k rho K_k^dagger``.

    All operators share one ``dim_out x dim_in`` shape and must satisfy the
    completeness relation ``sum_k K_k^dagger K_k = I`` within ``ATOL``.
    """

    operators: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        ops = tuple(_as_matrix(op, "Kraus operator") for op in self.operators)
        if not ops:
            raise ValueError("a Kraus channel needs at least one operator")
        shape = ops[0].shape
        if any(op.shape != shape for op in ops):
            raise ValueError("all Kraus operators must share one shape")
        total = sum(op.conj().T @ op for op in ops)
        if np.abs(total - np.eye(shape[1])).max() > ATOL:
            raise ValueError("Kraus operators do not sum to the identity")
        object.__setattr__(self, "operators", tuple(_freeze(op) for op in ops))

    @property
    def dim_in(self) -> int:
        return self.operators[0].shape[1]

    @property
    def dim_out(self) -> int:
        return self.operators[0].shape[0]


@dataclass(frozen=True)
class DilationChannel:
    """Channel given as a unitary on system (x) environment plus an
    environment state; applying it traces the environment back out.

    ``unitary`` acts on the composite space ordered system-major, i.e.
    basis index ``i * env_dim + k`` is system level ``i`` with environment
    level ``k``.
    """

    unitary: np.ndarray
    env_dim: int
    env_state: DensityOperator

    def __post_init__(self) -> None:
        uni = _as_square(self.unitary, "dilation unitary")
        if self.env_dim < 2:
            raise ValueError(f"env_dim must be >= 2, got {self.env_dim}")
        if uni.shape[0] % self.env_dim != 0:
            raise ValueError(
                f"unitary dim {uni.shape[0]} not divisible by env_dim {self.env_dim}"
            )
        if self.env_state.dim != self.env_dim:
            raise ValueError("environment state dimension != env_dim")
        if np.abs(uni.conj().T @ uni - np.eye(uni.shape[0])).max() > ATOL:
            raise ValueError("dilation operator is not unitary")
        object.__setattr__(self, "unitary", _freeze(uni))

    @property
    def dim_in(self) -> int:
        return self.unitary.shape[0] // self.env_dim

    @property
    def dim_out(self) -> int:
        return self.dim_in


QuantumChannel = KrausChannel | DilationChannel


def _apply_kraus(operators, mat: np.ndarray) -> np.ndarray:
    return sum(op @ mat @ op.conj().T for op in operators)


def _apply_dilation(
    unitary: np.ndarray, env_dim: int, env_mat: np.ndarray, mat: np.ndarray
) -> np.ndarray:
    composite = np.kron(mat, env_mat)
    evolved = unitary @ composite @ unitary.conj().T
    dim = mat.shape[0]
    # Partial trace over the environment register.
    return np.einsum(
        "ikjk->ij", evolved.reshape(dim, env_dim, dim, env_dim)
    )


def apply_channel(channel: QuantumChannel, rho: DensityOperator) -> DensityOperator:
    """Send ``rho`` through ``channel`` and return the output state.

    Raises ValueError on a dimension mismatch. The result re-validates the
    density-operator invariants, so trace preservation and positivity are
    enforced, not assumed.
    """
    if channel.dim_in != rho.dim:
        raise ValueError(
            f"channel input dim {channel.dim_in} != state dim {rho.dim}"
        )
    if isinstance(channel, KrausChannel):
        out = _apply_kraus(channel.operators, rho.matrix)
    else:
        out = _apply_dilation(
            channel.unitary, channel.env_dim, channel.env_state.matrix, rho.matrix
        )
    return DensityOperator(out)


@dataclass(frozen=True)
class Povm:
    """A positive operator-valued measure: PSD elements summing to identity."""

    elements: tuple[np.ndarray, ...]
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        elems = tuple(_as_square(e, "POVM element") for e in self.elements)
        if not elems:
            raise ValueError("a POVM needs at least one element")
        if len(elems) != len(self.labels):
            raise ValueError("POVM element and label counts differ")
        dim = elems[0].shape[0]
        if any(e.shape[0] != dim for e in elems):
            raise ValueError("all POVM elements must share one dimension")
        for label, elem in zip(self.labels, elems):
            if np.abs(elem - elem.conj().T).max() > ATOL:
                raise ValueError(f"POVM element {label!r} is not Hermitian")
            if np.linalg.eigvalsh(elem).min() < -ATOL:
                raise ValueError(f"POVM element {label!r} is not PSD")
        total = sum(elems)
        if np.abs(total - np.eye(dim)).max() > ATOL:
            raise ValueError("POVM elements do not sum to the identity")
        object.__setattr__(self, "elements", tuple(_freeze(e) for e in elems))
        object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def dim(self) -> int:
        return self.elements[0].shape[0]


def computational_povm(dim: int = 2) -> Povm:
    """Projective measurement onto the computational basis."""
    elems = tuple(basis_state(dim, i).matrix for i in range(dim))
    return Povm(elements=elems, labels=tuple(str(i) for i in range(dim)))


def measure_probability(povm: Povm, outcome_index: int, rho: DensityOperator) -> float:
    """Born-rule probability ``Tr[Pi_i rho]``, clamped to [0, 1]."""
    if not 0 <= outcome_index < len(povm.elements):
        raise ValueError(
            f"outcome index {outcome_index} out of range for {len(povm.elements)} outcomes"
        )
    if povm.dim != rho.dim:
        raise ValueError(f"POVM dim {povm.dim} != state dim {rho.dim}")
    prob = float(np.trace(povm.elements[outcome_index] @ rho.matrix).real)
    return min(1.0, max(0.0, prob))


def error_rate(
    channel: QuantumChannel,
    rho_x: DensityOperator,
    povm: Povm,
    wrong_outcome_index: int,
) -> float:
    """Probability that the receiver measures the wrong outcome after the
    channel: ``Tr[Pi_wrong channel(rho_x)]``."""
    return measure_probability(povm, wrong_outcome_index, apply_channel(channel, rho_x))


_PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128)
_PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=np.complex128)
_PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=np.complex128)


def make_standard_channel(kind: str, param: float | None = None) -> KrausChannel:
    """Build one of the stock single-qubit channels in Kraus form.

    kind:
        "identity"                 no noise
        "bit_flip"    (param = f)  flips the qubit with probability f
        "depolarizing" (param = l) mixes toward I/2: (1-l) rho + l I/2
    """
    eye = np.eye(2, dtype=np.complex128)
    if kind == "identity":
        if param is not None:
            raise ValueError("identity channel takes no parameter")
        return KrausChannel(operators=(eye,))
    if param is None:
        raise ValueError(f"channel kind {kind!r} needs a parameter")
    if not 0.0 <= param <= 1.0:
        raise ValueError(f"channel parameter must be in [0, 1], got {param}")
    if kind == "bit_flip":
        return KrausChannel(
            operators=(np.sqrt(1.0 - param) * eye, np.sqrt(param) * _PAULI_X)
        )
    if kind == "depolarizing":
        return KrausChannel(
            operators=(
                np.sqrt(1.0 - 0.75 * param) * eye,
                np.sqrt(0.25 * param) * _PAULI_X,
                np.sqrt(0.25 * param) * _PAULI_Y,
                np.sqrt(0.25 * param) * _PAULI_Z,
            )
        )
    raise ValueError(f"unknown channel kind {kind!r}")


def dilate(channel: KrausChannel, env_dim: int | None = None) -> DilationChannel:
    """Lift a Kraus channel to an equivalent environment dilation.

    The environment starts in its ground state and its dimension must be at
    least the number of Kraus operators (and at least 2); the default is the
    smallest admissible value. Requires dim_out == dim_in.
    """
    if channel.dim_in != channel.dim_out:
        raise ValueError("only square channels can be dilated here")
    n_ops = len(channel.operators)
    if env_dim is None:
        env_dim = max(n_ops, 2)
    if env_dim < max(n_ops, 2):
        raise ValueError(
            f"env_dim {env_dim} too small for {n_ops} Kraus operators"
        )
    dim = channel.dim_in
    total = dim * env_dim
    # Isometry columns: |i>|0> -> sum_k (K_k|i>)|k>, composite index j*env_dim+k.
    iso = np.zeros((total, dim), dtype=np.complex128)
    for k, op in enumerate(channel.operators):
        iso[k::env_dim, :] += op
    unitary = _complete_unitary(iso, [i * env_dim for i in range(dim)], total)
    return DilationChannel(
        unitary=unitary, env_dim=env_dim, env_state=basis_state(env_dim, 0)
    )


def _complete_unitary(cols: np.ndarray, positions: list[int], total: int) -> np.ndarray:
    """Place orthonormal columns at the given positions of a ``total x total``
    unitary and fill the rest with an orthonormal complement (Householder QR,
    deterministic)."""
    q_full, _ = np.linalg.qr(np.concatenate([cols, np.eye(total)], axis=1))
    complement = iter(q_full[:, cols.shape[1]:].T)
    unitary = np.zeros((total, total), dtype=np.complex128)
    fixed = set(positions)
    for pos, col in zip(positions, cols.T):
        unitary[:, pos] = col
    for pos in range(total):
        if pos not in fixed:
            unitary[:, pos] = next(complement)
    return unitary
