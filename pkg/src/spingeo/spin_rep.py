"""Gamma-matrix representation of the Clifford algebra and spinor bilinears.

The representation is built by recursive Pauli-block doubling and is
Hermitian in every generator (Riemannian convention, positive-definite
spinor inner product).  For odd dimensions the volume element acts as a
scalar, so the representation is faithful only on the even subalgebra;
bilinear extraction follows the conventions documented per function.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .clifford import Multivector, QuadraticSpace, _tables
from .dual import value

_SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
_SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


@lru_cache(maxsize=None)
def _gamma_matrices(n: int) -> tuple:
    if n == 2:
        return (_SIGMA_X, _SIGMA_Y)
    if n == 3:
        return (_SIGMA_X, _SIGMA_Y, _SIGMA_Z)
    if n % 2 == 0:
        base = _gamma_matrices(n - 2)
        eye = np.eye(base[0].shape[0], dtype=complex)
        gammas = tuple(np.kron(g, _SIGMA_Z) for g in base)
        return gammas + (np.kron(eye, _SIGMA_X), np.kron(eye, _SIGMA_Y))
    # odd n >= 5: append the (phase-fixed) product of the even-dimensional set
    base = _gamma_matrices(n - 1)
    prod = base[0]
    for g in base[1:]:
        prod = prod @ g
    m = n - 1
    if (m * (m - 1) // 2) % 2 == 0:   # product squares to +1 and is Hermitian
        extra = prod
    else:
        extra = -1j * prod
    return base + (extra,)


@dataclass(frozen=True, eq=False)
class GammaRep:
    """Irreducible gamma-matrix representation over ``space``.

    ``blades[mask]`` is the matrix of the ascending-ordered basis blade:
    the product of the participating generators, lowest index leftmost.
    """

    space: QuadraticSpace
    gammas: tuple
    blades: np.ndarray

    @property
    def matrix_dim(self) -> int:
        return self.gammas[0].shape[0]


@lru_cache(maxsize=None)
def build_gamma_rep(space: QuadraticSpace) -> GammaRep:
    """Deterministic Hermitian representation for 2 <= dim <= 6."""
    n = space.dim
    gammas = _gamma_matrices(n)
    size = gammas[0].shape[0]
    blades = np.zeros((space.blade_count, size, size), dtype=complex)
    blades[0] = np.eye(size, dtype=complex)
    for mask in range(1, space.blade_count):
        low = mask & -mask
        blades[mask] = gammas[low.bit_length() - 1] @ blades[mask ^ low]
    return GammaRep(space, gammas, blades)


def rep(gamma: GammaRep, u: Multivector) -> np.ndarray:
    """Algebra homomorphism: matrix of the multivector ``u``."""
    if u.space != gamma.space:
        raise ValueError("multivector and representation live on different spaces")
    if u.coeffs.dtype != object:
        return np.tensordot(u.coeffs, gamma.blades, axes=1)
    size = gamma.matrix_dim
    out = np.zeros((size, size), dtype=object)
    for mask, c in enumerate(u.coeffs):
        if isinstance(c, (int, float, complex)) and c == 0:
            continue
        out = out + c * gamma.blades[mask]
    return out


def _mat_vec(mat: np.ndarray, vec: np.ndarray) -> np.ndarray:
    if mat.dtype != object and vec.dtype != object:
        return mat @ vec
    size = mat.shape[0]
    out = np.empty(size, dtype=object)
    for i in range(size):
        acc = 0.0
        for j in range(size):
            acc = acc + mat[i, j] * vec[j]
        out[i] = acc
    return out


def clifford_action(gamma: GammaRep, u: Multivector, psi: np.ndarray) -> np.ndarray:
    """``u.psi``: the multivector acting on a spinor through the representation."""
    return _mat_vec(rep(gamma, u), np.asarray(psi))


def as_spinor(gamma: GammaRep, components) -> np.ndarray:
    arr = np.asarray(components)
    if arr.shape != (gamma.matrix_dim,):
        raise ValueError(f"expected {gamma.matrix_dim} spinor components, got {arr.shape}")
    if arr.dtype == object:
        return arr.copy()
    return arr.astype(complex)


def spinor_inner(psi, phi):
    """Positive-definite inner product (psi, phi) = psi† phi."""
    psi = np.asarray(psi)
    phi = np.asarray(phi)
    if psi.shape != phi.shape:
        raise ValueError(f"spinor size mismatch: {psi.shape} vs {phi.shape}")
    if psi.dtype != object and phi.dtype != object:
        return complex(np.vdot(psi, phi))
    acc = 0.0
    for p, q in zip(psi, phi):
        acc = acc + p.conjugate() * q
    return acc


def spinor_max_abs(psi) -> float:
    return max(abs(value(c)) for c in np.asarray(psi))


def _extraction_masks(space: QuadraticSpace):
    """Blade masks with unambiguous trace extraction (even grades for odd dim)."""
    t = _tables(space.dim)
    if space.dim % 2 == 0:
        return range(space.blade_count)
    return [m for m in range(space.blade_count) if t.grades[m] % 2 == 0]


def fierz_decompose(gamma: GammaRep, psi, phi) -> Multivector:
    """Multivector whose representation equals the endomorphism ``psi ⊗ phi†``.

    Coefficients are extracted by trace pairing against the reversed basis
    blades.  For odd dimensions the representation identifies complementary
    blades (the volume element acts as a scalar); the returned canonical
    representative is supported on even grades only.
    """
    psi = np.asarray(psi)
    phi = np.asarray(phi)
    if psi.shape != phi.shape or psi.shape != (gamma.matrix_dim,):
        raise ValueError("spinor size mismatch")
    space = gamma.space
    t = _tables(space.dim)
    size = gamma.matrix_dim
    has_dual = psi.dtype == object or phi.dtype == object
    out = np.zeros(space.blade_count, dtype=object if has_dual else complex)
    for mask in _extraction_masks(space):
        # (1/N) tr(rep(reversal(e_A)) psi phi†) = (1/N) (phi, reversal(e_A).psi)
        coeff = spinor_inner(phi, _mat_vec(gamma.blades[mask], psi))
        out[mask] = (t.reversal_sign[mask] / size) * coeff
    return Multivector(space, out)


def p_form_dirac_current(gamma: GammaRep, psi, phi, p: int) -> Multivector:
    """Degree-``p`` Dirac current: sum over blades of (psi, e_{ap..a1}.phi) e^{a1..ap}."""
    space = gamma.space
    if not 0 <= p <= space.dim:
        raise ValueError(f"degree {p} outside 0..{space.dim}")
    psi = np.asarray(psi)
    phi = np.asarray(phi)
    t = _tables(space.dim)
    has_dual = psi.dtype == object or phi.dtype == object
    out = np.zeros(space.blade_count, dtype=object if has_dual else complex)
    for mask in range(space.blade_count):
        if t.grades[mask] != p:
            continue
        out[mask] = t.reversal_sign[mask] * spinor_inner(psi, _mat_vec(gamma.blades[mask], phi))
    return Multivector(space, out)


def volume_scalar(gamma: GammaRep) -> complex:
    """Scalar by which the volume element acts in odd dimensions."""
    if gamma.space.dim % 2 == 0:
        raise ValueError("the volume element is not a scalar in even dimensions")
    return complex(gamma.blades[-1][0, 0])


def random_spinor(gamma: GammaRep, rng: np.random.Generator) -> np.ndarray:
    size = gamma.matrix_dim
    return (rng.standard_normal(size) + 1j * rng.standard_normal(size)) / np.sqrt(2.0)
