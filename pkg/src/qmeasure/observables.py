"""Discrete observables in spectral form, pure and mixed states.

An observable is stored as its spectral family: an ordered list of
(eigenvalue, projector) pairs with distinct eigenvalues, mutually
orthogonal projectors and a complete resolution of the identity.
Constructors produced by this module order terms by ascending eigenvalue.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from collections.abc import Sequence

import numpy as np

from . import tolerances as tol
from .errors import (
    DimensionMismatch,
    NotDensityOperator,
    NotNormalized,
    ValidationError,
)
from .linalg import basis_vector, dag, frob, frozen_array, hermitian_eig, is_hermitian, kron


@dataclass(frozen=True)
class Observable:
    """Spectral family {(a_k, P_k)} of a discrete Hermitian observable."""

    terms: tuple[tuple[float, np.ndarray], ...]
    dim: int

    def __post_init__(self) -> None:
        frozen_terms = tuple((float(a), frozen_array(p)) for a, p in self.terms)
        object.__setattr__(self, "terms", frozen_terms)
        object.__setattr__(self, "dim", int(self.dim))
        validate_observable(self)

    @property
    def eigenvalues(self) -> tuple[float, ...]:
        return tuple(a for a, _ in self.terms)

    @property
    def projectors(self) -> tuple[np.ndarray, ...]:
        return tuple(p for _, p in self.terms)

    @property
    def n_outcomes(self) -> int:
        return len(self.terms)

    def matrix(self) -> np.ndarray:
        """Reconstruct the Hermitian matrix sum_k a_k P_k."""
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for a, p in self.terms:
            out += a * p
        return out


def validate_observable(obs: Observable) -> None:
    """Check every spectral-family invariant, raising ValidationError."""
    if obs.n_outcomes == 0:
        raise ValidationError("observable has no spectral terms")
    for a, p in obs.terms:
        if p.shape != (obs.dim, obs.dim):
            raise DimensionMismatch(f"projector shape {p.shape} does not match dim {obs.dim}")
    values = sorted(obs.eigenvalues)
    for lo, hi in zip(values, values[1:]):
        if hi - lo <= tol.DEGENERACY_GAP:
            raise ValidationError(f"eigenvalues {lo} and {hi} are not separated beyond {tol.DEGENERACY_GAP}")
    for i, (_, p) in enumerate(obs.terms):
        if not is_hermitian(p, tol.ORTHONORMALITY):
            raise ValidationError(f"projector {i} violates hermiticity within {tol.ORTHONORMALITY}")
        if frob(p @ p - p) > tol.ORTHONORMALITY:
            raise ValidationError(f"projector {i} violates idempotence within {tol.ORTHONORMALITY}")
        for j in range(i):
            if frob(obs.terms[j][1] @ p) > tol.ORTHONORMALITY:
                raise ValidationError(f"projectors {j} and {i} violate orthogonality within {tol.ORTHONORMALITY}")
    total = sum(p for _, p in obs.terms)
    if frob(total - np.eye(obs.dim)) > tol.ORTHONORMALITY:
        raise ValidationError(f"spectral family violates completeness within {tol.ORTHONORMALITY}")


@dataclass(frozen=True)
class PureState:
    """Unit vector in C^dim."""

    vector: np.ndarray

    def __post_init__(self) -> None:
        v = np.asarray(self.vector, dtype=complex).reshape(-1)
        norm = np.linalg.norm(v)
        if abs(norm - 1.0) > tol.NORMALIZATION:
            raise NotNormalized(f"state vector norm {norm} is not 1 within {tol.NORMALIZATION}")
        object.__setattr__(self, "vector", frozen_array(v))

    @property
    def dim(self) -> int:
        return self.vector.size

    def projector(self) -> np.ndarray:
        return np.outer(self.vector, np.conj(self.vector))


@dataclass(frozen=True)
class DensityOperator:
    """Hermitian, positive semidefinite, unit-trace matrix."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise NotDensityOperator(f"expected a square matrix, got shape {m.shape}")
        if not is_hermitian(m, tol.HERMITICITY):
            raise NotDensityOperator(f"matrix violates hermiticity within {tol.HERMITICITY}")
        trace = complex(np.trace(m))
        if abs(trace - 1.0) > tol.HERMITICITY:
            raise NotDensityOperator(f"trace {trace} is not 1 within {tol.HERMITICITY}")
        smallest = float(np.linalg.eigvalsh((m + dag(m)) / 2.0)[0])
        if smallest < tol.ENTROPY_NEG_FLOOR:
            raise NotDensityOperator(f"smallest eigenvalue {smallest} is below {tol.ENTROPY_NEG_FLOOR}")
        object.__setattr__(self, "matrix", frozen_array(m))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)

    @classmethod
    def from_pure(cls, state: PureState) -> "DensityOperator":
        return cls(state.projector())


State = PureState | DensityOperator


def density_matrix(state: State) -> np.ndarray:
    """Density matrix of a pure or mixed state."""
    if isinstance(state, PureState):
        return state.projector()
    return state.matrix


def state_dim(state: State) -> int:
    return state.dim


def observable_from_matrix(h: np.ndarray) -> Observable:
    """Spectral form of a Hermitian matrix.

    Eigenvalues closer than the degeneracy gap are merged into one
    (degenerate) spectral term whose eigenvalue is the cluster mean and
    whose projector spans the clustered eigenvectors. Terms come out in
    ascending eigenvalue order.
    """
    h = np.asarray(h, dtype=complex)
    w, v = hermitian_eig(h)  # raises NotHermitian

    clusters: list[list[int]] = [[0]]
    for i in range(1, w.size):
        if w[i] - w[clusters[-1][-1]] <= tol.DEGENERACY_GAP:
            clusters[-1].append(i)
        else:
            clusters.append([i])

    terms = []
    for cluster in clusters:
        eigenvalue = float(np.mean(w[cluster]))
        block = v[:, cluster]
        projector = block @ dag(block)
        terms.append((eigenvalue, (projector + dag(projector)) / 2.0))
    return Observable(tuple(terms), h.shape[0])


def embed_observable(obs: Observable, structure: Sequence[int], factor: int) -> Observable:
    """Lift an observable acting on one tensor factor to the product space."""
    dims = tuple(int(d) for d in structure)
    if factor < 0 or factor >= len(dims) or dims[factor] != obs.dim:
        raise DimensionMismatch(f"observable of dim {obs.dim} does not sit at factor {factor} of {dims}")
    terms = []
    for a, p in obs.terms:
        factors = [np.eye(d, dtype=complex) for d in dims]
        factors[factor] = p
        terms.append((a, reduce(kron, factors)))
    return Observable(tuple(terms), int(np.prod(dims)))


def _check_dims(obs: Observable, state: State) -> None:
    if obs.dim != state_dim(state):
        raise DimensionMismatch(f"observable dim {obs.dim} != state dim {state_dim(state)}")


def probabilities(obs: Observable, state: State) -> np.ndarray:
    """Outcome probabilities <P_k> in term order."""
    _check_dims(obs, state)
    if isinstance(state, PureState):
        v = state.vector
        return np.array([float(np.real(np.vdot(v, p @ v))) for _, p in obs.terms])
    rho = state.matrix
    return np.array([float(np.real(np.trace(p @ rho))) for _, p in obs.terms])


def classify_outcomes(obs: Observable, state: State) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Split term indices into detectable (positive probability) and null."""
    p = probabilities(obs, state)
    detectable = tuple(int(k) for k in range(p.size) if p[k] > tol.DETECTABILITY)
    null = tuple(int(k) for k in range(p.size) if p[k] <= tol.DETECTABILITY)
    return detectable, null


def luders_update(obs: Observable, state: State) -> DensityOperator:
    """Projective (Lüders) state update sum_k P_k rho P_k over all terms."""
    _check_dims(obs, state)
    rho = density_matrix(state)
    out = np.zeros_like(rho)
    for _, p in obs.terms:
        out += p @ rho @ p
    return DensityOperator((out + dag(out)) / 2.0)


def purify(rho: DensityOperator | np.ndarray) -> tuple[np.ndarray, tuple[int, int]]:
    """Pure bipartite vector whose first marginal is the given state.

    Built as sum_i sqrt(l_i) v_i ⊗ e_i over the eigenpairs of rho with
    eigenvalue at least the detectability cutoff; the ancilla keeps the
    full dimension of rho.
    """
    if not isinstance(rho, DensityOperator):
        rho = DensityOperator(np.asarray(rho, dtype=complex))  # raises NotDensityOperator
    d = rho.dim
    w, v = hermitian_eig(rho.matrix)
    vec = np.zeros(d * d, dtype=complex)
    ancilla = 0
    for i in range(d):
        if w[i] < tol.DETECTABILITY:
            continue
        vec += np.sqrt(w[i]) * kron(v[:, i], basis_vector(d, ancilla))
        ancilla += 1
    return vec, (d, d)


def uniform_superposition(dim: int) -> PureState:
    """Equal-weight superposition of all basis vectors."""
    return PureState(np.full(dim, 1.0 / np.sqrt(dim), dtype=complex))


__all__ = [
    "Observable",
    "PureState",
    "DensityOperator",
    "State",
    "validate_observable",
    "observable_from_matrix",
    "embed_observable",
    "probabilities",
    "classify_outcomes",
    "luders_update",
    "purify",
    "density_matrix",
    "uniform_superposition",
]
