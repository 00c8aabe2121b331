"""Dense state vectors and operator embedding for three four-level SQUIDs plus a cavity mode.

The composite Hilbert space is SQUID1 x SQUID2 x SQUID3 x cavity, with each
SQUID carrying four physical levels |0>..|3> and the cavity truncated at
``n_max`` photons.  Basis ordering is SQUID1-major, cavity-minor: flat index
``((s1*4 + s2)*4 + s3)*(n_max + 1) + n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

N_LEVELS = 4

#: Subsystem identifiers accepted by :func:`embed_operator`.
SQUID1, SQUID2, SQUID3, CAVITY = 0, 1, 2, 3

_NORM_SQ_CEILING = 1.0 + 1e-9


class HilbertError(ValueError):
    """Raised for out-of-range labels, dimension mismatches, or invalid amplitudes."""


@dataclass(frozen=True)
class BasisLabel:
    """Physical basis label: SQUID levels ``s1, s2, s3`` in 0..3 and photon number ``n``."""

    s1: int
    s2: int
    s3: int
    n: int


def photon_dim(n_max: int) -> int:
    if n_max < 0:
        raise HilbertError(f"n_max must be >= 0, got {n_max}")
    return n_max + 1


def space_dim(n_max: int) -> int:
    """Total dimension 64 * (n_max + 1)."""
    return N_LEVELS**3 * photon_dim(n_max)


def subsystem_dims(n_max: int) -> tuple[int, int, int, int]:
    return (N_LEVELS, N_LEVELS, N_LEVELS, photon_dim(n_max))


def basis_index(label: BasisLabel, n_max: int) -> int:
    """Flat index of a basis label under the declared SQUID1-major ordering."""
    for name, level in (("s1", label.s1), ("s2", label.s2), ("s3", label.s3)):
        if not 0 <= level < N_LEVELS:
            raise HilbertError(f"{name}={level} outside 0..{N_LEVELS - 1}")
    if not 0 <= label.n <= n_max:
        raise HilbertError(f"photon number n={label.n} outside 0..{n_max}")
    return ((label.s1 * N_LEVELS + label.s2) * N_LEVELS + label.s3) * photon_dim(n_max) + label.n


def label_of(index: int, n_max: int) -> BasisLabel:
    """Inverse of :func:`basis_index`."""
    dim = space_dim(n_max)
    if not 0 <= index < dim:
        raise HilbertError(f"index {index} outside 0..{dim - 1}")
    nph = photon_dim(n_max)
    index, n = divmod(index, nph)
    index, s3 = divmod(index, N_LEVELS)
    s1, s2 = divmod(index, N_LEVELS)
    return BasisLabel(s1, s2, s3, n)


@dataclass(frozen=True)
class StateVector:
    """Immutable complex amplitude vector over the composite space.

    ``amplitudes`` is flat with length ``64 * (n_max + 1)``; the array is
    copied on construction and frozen, so states can be shared freely across
    concurrent sweeps.
    """

    amplitudes: np.ndarray
    n_max: int

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.ndim != 1 or amps.size != space_dim(self.n_max):
            raise HilbertError(
                f"amplitude vector has size {amps.size}, expected {space_dim(self.n_max)}"
            )
        norm_sq = float(np.vdot(amps, amps).real)
        if norm_sq > _NORM_SQ_CEILING:
            raise HilbertError(f"norm^2 = {norm_sq} exceeds 1 (decay may only shrink states)")
        amps = amps.copy()
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def basis(cls, label: BasisLabel, n_max: int) -> "StateVector":
        amps = np.zeros(space_dim(n_max), dtype=np.complex128)
        amps[basis_index(label, n_max)] = 1.0
        return cls(amps, n_max)

    @property
    def tensor(self) -> np.ndarray:
        """Read-only view shaped (4, 4, 4, n_max + 1)."""
        return self.amplitudes.reshape(subsystem_dims(self.n_max))

    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def norm(self) -> float:
        return float(np.sqrt(self.norm_squared()))

    def amplitude(self, label: BasisLabel) -> complex:
        return complex(self.amplitudes[basis_index(label, self.n_max)])


def overlap(a: StateVector, b: StateVector) -> complex:
    """Inner product <a|b>, conjugate-linear in the first argument."""
    if a.n_max != b.n_max:
        raise HilbertError(f"photon truncations differ: {a.n_max} vs {b.n_max}")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def embed_operator(block: np.ndarray, subsystems: Sequence[int], n_max: int) -> np.ndarray:
    """Embed a dense operator acting on ``subsystems`` into the full space.

    ``subsystems`` lists distinct axes from {SQUID1, SQUID2, SQUID3, CAVITY};
    the block's row/column index runs major-to-minor over the axes in the
    order given.  Untouched factors receive the identity.  Returns the full
    ``space_dim x space_dim`` matrix, consistent with :func:`basis_index`.
    """
    axes = tuple(subsystems)
    if len(set(axes)) != len(axes) or any(ax not in (0, 1, 2, 3) for ax in axes):
        raise HilbertError(f"subsystems must be distinct axes in 0..3, got {axes}")
    dims = subsystem_dims(n_max)
    sub_dims = [dims[ax] for ax in axes]
    d_sub = int(np.prod(sub_dims))
    block = np.asarray(block, dtype=np.complex128)
    if block.shape != (d_sub, d_sub):
        raise HilbertError(f"block shape {block.shape} does not match subsystem dim {d_sub}")

    rest = [ax for ax in range(4) if ax not in axes]
    rest_dims = [dims[ax] for ax in rest]
    d_rest = int(np.prod(rest_dims)) if rest else 1

    # Outer product of the block with the identity on the remaining factors,
    # then permute axes back into SQUID1-major, cavity-minor order.
    block_t = block.reshape(sub_dims + sub_dims)
    eye_t = np.eye(d_rest).reshape(rest_dims + rest_dims)
    full = np.multiply.outer(block_t, eye_t)

    n_sub, n_rest = len(axes), len(rest)
    out_pos = {ax: i for i, ax in enumerate(axes)}
    out_pos.update({ax: 2 * n_sub + i for i, ax in enumerate(rest)})
    in_pos = {ax: n_sub + i for i, ax in enumerate(axes)}
    in_pos.update({ax: 2 * n_sub + n_rest + i for i, ax in enumerate(rest)})
    order = [out_pos[ax] for ax in range(4)] + [in_pos[ax] for ax in range(4)]
    dim = space_dim(n_max)
    return full.transpose(order).reshape(dim, dim)


def apply_one_site(state: StateVector, u: np.ndarray, axis: int) -> StateVector:
    """Apply a single-subsystem operator along ``axis`` of the state tensor."""
    dims = subsystem_dims(state.n_max)
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (dims[axis], dims[axis]):
        raise HilbertError(f"operator shape {u.shape} does not match axis dim {dims[axis]}")
    out = np.moveaxis(np.tensordot(u, state.tensor, axes=([1], [axis])), 0, axis)
    return StateVector(out.reshape(-1), state.n_max)


def apply_two_site(state: StateVector, u: np.ndarray, axis_a: int, axis_b: int) -> StateVector:
    """Apply an operator on the pair (axis_a, axis_b), axis_a-major indexing."""
    dims = subsystem_dims(state.n_max)
    d = dims[axis_a] * dims[axis_b]
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (d, d):
        raise HilbertError(f"operator shape {u.shape} does not match pair dim {d}")
    moved = np.moveaxis(state.tensor, (axis_a, axis_b), (0, 1))
    shape = moved.shape
    out = (u @ moved.reshape(d, -1)).reshape(shape)
    out = np.moveaxis(out, (0, 1), (axis_a, axis_b))
    return StateVector(out.reshape(-1), state.n_max)
