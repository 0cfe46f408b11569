"""Multivector algebra over small Euclidean quadratic spaces.

Basis blades are indexed by bitmasks over the generators: bit ``a-1`` set
means the orthonormal coframe element ``e^a`` participates, stored in
ascending index order.  Products are evaluated through precomputed sign
tables; the result blade of a geometric product is always the symmetric
difference of the operand masks.

Convention: generators obey ``e^a.e^b + e^b.e^a = +2 g^{ab}`` with the
all-plus diagonal metric (see :data:`ANTICOMMUTATOR_SIGN`).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .dual import Dual, value

#: Sign convention of the generator anticommutator, +2 g^{ab}.
ANTICOMMUTATOR_SIGN = +1

MIN_DIM = 2
MAX_DIM = 6


@dataclass(frozen=True)
class QuadraticSpace:
    """Euclidean quadratic space of dimension ``dim`` (all metric entries +1)."""

    dim: int

    def __post_init__(self):
        if not MIN_DIM <= self.dim <= MAX_DIM:
            raise ValueError(f"dimension must be in [{MIN_DIM}, {MAX_DIM}], got {self.dim}")

    @property
    def metric(self):
        return (1.0,) * self.dim

    @property
    def blade_count(self):
        return 1 << self.dim


def _reorder_sign(a: int, b: int) -> float:
    """Permutation sign for merging blade masks ``a`` and ``b``."""
    swaps = 0
    a >>= 1
    while a:
        swaps += (a & b).bit_count()
        a >>= 1
    return -1.0 if swaps & 1 else 1.0


class _Tables:
    """Cached sign/index tables for one algebra dimension."""

    def __init__(self, n: int):
        dim = 1 << n
        idx = np.arange(dim)
        self.n = n
        self.dim = dim
        self.grades = np.array([b.bit_count() for b in range(dim)], dtype=np.int64)
        sign = np.empty((dim, dim))
        for a in range(dim):
            for b in range(dim):
                sign[a, b] = _reorder_sign(a, b)
        self.sign = sign
        self.xor_rows = idx[:, None] ^ idx[None, :]
        self.wedge_sign = np.where((idx[:, None] & idx[None, :]) == 0, sign, 0.0)
        self.reversal_sign = np.array(
            [(-1.0) ** (g * (g - 1) // 2) for g in self.grades])
        full = dim - 1
        self.hodge_dst = idx ^ full
        self.hodge_sign = np.array([_reorder_sign(b, b ^ full) for b in range(dim)])
        self.grade_masks = [
            (self.grades == p).astype(float) for p in range(n + 1)]
        contract_src = []
        contract_sign = []
        for a in range(n):
            bit = 1 << a
            src = np.array([b for b in range(dim) if b & bit], dtype=np.int64)
            sgn = np.array([(-1.0) ** int((b & (bit - 1)).bit_count()) for b in src])
            contract_src.append(src)
            contract_sign.append(sgn)
        self.contract_src = contract_src
        self.contract_sign = contract_sign


@lru_cache(maxsize=None)
def _tables(n: int) -> _Tables:
    return _Tables(n)


def _is_exact_zero(c) -> bool:
    return isinstance(c, (int, float, complex)) and c == 0


def _coerce(coeffs, dim):
    arr = np.asarray(coeffs)
    if arr.shape != (dim,):
        raise ValueError(f"expected {dim} coefficients, got shape {arr.shape}")
    if arr.dtype == object:
        return arr.copy()
    return arr.astype(complex)


@dataclass(frozen=True, eq=False)
class Multivector:
    """Graded element of the Clifford/exterior algebra.

    ``coeffs[mask]`` is the coefficient of the ascending-ordered basis blade
    selected by ``mask``.  Coefficients are complex scalars or duals; the
    value is immutable.
    """

    space: QuadraticSpace
    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _coerce(self.coeffs, self.space.blade_count))

    # construction -------------------------------------------------------

    @staticmethod
    def zero(space: QuadraticSpace) -> "Multivector":
        return Multivector(space, np.zeros(space.blade_count, dtype=complex))

    @staticmethod
    def scalar(space: QuadraticSpace, c) -> "Multivector":
        out = np.zeros(space.blade_count, dtype=object if isinstance(c, Dual) else complex)
        out[0] = c
        return Multivector(space, out)

    @staticmethod
    def blade(space: QuadraticSpace, indices, coeff=1.0) -> "Multivector":
        """Basis blade for 1-based generator ``indices`` (must be strictly increasing)."""
        mask = 0
        prev = 0
        for a in indices:
            if not 1 <= a <= space.dim:
                raise ValueError(f"index {a} outside 1..{space.dim}")
            if a <= prev:
                raise ValueError("blade indices must be strictly increasing")
            mask |= 1 << (a - 1)
            prev = a
        out = np.zeros(space.blade_count, dtype=object if isinstance(coeff, Dual) else complex)
        out[mask] = coeff
        return Multivector(space, out)

    @staticmethod
    def from_coeffs(space: QuadraticSpace, pairs) -> "Multivector":
        """Multivector from ``(mask, coefficient)`` pairs."""
        has_dual = any(isinstance(c, Dual) for _, c in pairs)
        out = np.zeros(space.blade_count, dtype=object if has_dual else complex)
        for mask, c in pairs:
            out[mask] = out[mask] + c
        return Multivector(space, out)

    # inspection ---------------------------------------------------------

    def component(self, indices):
        mask = 0
        for a in indices:
            mask |= 1 << (a - 1)
        return self.coeffs[mask]

    def max_abs(self) -> float:
        return max(abs(value(c)) for c in self.coeffs)

    def grades_present(self, cutoff: float = 0.0):
        t = _tables(self.space.dim)
        return sorted({int(t.grades[m]) for m, c in enumerate(self.coeffs)
                       if abs(value(c)) > cutoff})

    def as_complex(self) -> np.ndarray:
        return np.array([complex(value(c)) for c in self.coeffs])

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Multivector):
            _require_same_space(self, other)
            return Multivector(self.space, self.coeffs + other.coeffs)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, Multivector):
            _require_same_space(self, other)
            return Multivector(self.space, self.coeffs - other.coeffs)
        return NotImplemented

    def __neg__(self):
        return Multivector(self.space, -self.coeffs)

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return clifford_product(self, other)
        return Multivector(self.space, self.coeffs * other)

    def __rmul__(self, other):
        return Multivector(self.space, other * self.coeffs)

    def __truediv__(self, other):
        return Multivector(self.space, self.coeffs * (1.0 / other))

    def __xor__(self, other):
        return wedge(self, other)

    def __repr__(self):
        t = _tables(self.space.dim)
        parts = []
        for mask, c in enumerate(self.coeffs):
            if abs(value(c)) == 0:
                continue
            label = "1" if mask == 0 else "e" + "".join(
                str(a + 1) for a in range(self.space.dim) if mask & (1 << a))
            parts.append(f"({c})*{label}")
        return " + ".join(parts) if parts else "0"


def _require_same_space(u: Multivector, v: Multivector) -> QuadraticSpace:
    if u.space != v.space:
        raise ValueError(f"dimension mismatch: {u.space.dim} vs {v.space.dim}")
    return u.space


def _result_dtype(a: np.ndarray, b: np.ndarray):
    return object if (a.dtype == object or b.dtype == object) else complex


def clifford_product(u: Multivector, v: Multivector) -> Multivector:
    """Geometric product ``u.v``; associative, e^a.e^b + e^b.e^a = 2 g^{ab}."""
    space = _require_same_space(u, v)
    t = _tables(space.dim)
    cu, cv = u.coeffs, v.coeffs
    out = np.zeros(space.blade_count, dtype=_result_dtype(cu, cv))
    for a, ca in enumerate(cu):
        if _is_exact_zero(ca):
            continue
        out[t.xor_rows[a]] += (t.sign[a] * ca) * cv
    return Multivector(space, out)


def wedge(u: Multivector, v: Multivector) -> Multivector:
    """Exterior product; graded-antisymmetric, grade-additive."""
    space = _require_same_space(u, v)
    t = _tables(space.dim)
    cu, cv = u.coeffs, v.coeffs
    out = np.zeros(space.blade_count, dtype=_result_dtype(cu, cv))
    for a, ca in enumerate(cu):
        if _is_exact_zero(ca):
            continue
        out[t.xor_rows[a]] += (t.wedge_sign[a] * ca) * cv
    return Multivector(space, out)


def contract(a: int, u: Multivector) -> Multivector:
    """Interior derivative i_{X_a} against frame direction ``a`` (1-based)."""
    space = u.space
    if not 1 <= a <= space.dim:
        raise ValueError(f"frame index {a} outside 1..{space.dim}")
    t = _tables(space.dim)
    src = t.contract_src[a - 1]
    out = np.zeros(space.blade_count, dtype=u.coeffs.dtype)
    out[src ^ (1 << (a - 1))] = t.contract_sign[a - 1] * u.coeffs[src]
    return Multivector(space, out)


def contract_with(x: Multivector, u: Multivector) -> Multivector:
    """Contraction i_{x̃} u with the vector dual to the 1-form ``x``."""
    space = _require_same_space(x, u)
    out = Multivector.zero(space)
    for a in range(1, space.dim + 1):
        c = x.coeffs[1 << (a - 1)]
        if not _is_exact_zero(c):
            out = out + c * contract(a, u)
    return out


def grade_project(u: Multivector, p: int) -> Multivector:
    """Degree-``p`` part of ``u``."""
    if not 0 <= p <= u.space.dim:
        raise ValueError(f"grade {p} outside 0..{u.space.dim}")
    t = _tables(u.space.dim)
    return Multivector(u.space, u.coeffs * t.grade_masks[p])


def grades(u: Multivector) -> np.ndarray:
    return _tables(u.space.dim).grades


def reversal(u: Multivector) -> Multivector:
    """Clifford reversal: e^{a1...ap} -> e^{ap...a1}."""
    t = _tables(u.space.dim)
    return Multivector(u.space, u.coeffs * t.reversal_sign)


def hodge(u: Multivector) -> Multivector:
    """Hodge dual with e_A ∧ hodge(e_A) = z; maps z -> 1 and 1 -> z."""
    t = _tables(u.space.dim)
    out = np.zeros(u.space.blade_count, dtype=u.coeffs.dtype)
    out[t.hodge_dst] = t.hodge_sign * u.coeffs
    return Multivector(u.space, out)


def volume_form(space: QuadraticSpace) -> Multivector:
    return Multivector.blade(space, tuple(range(1, space.dim + 1)))


def basis_vector(space: QuadraticSpace, a: int) -> Multivector:
    return Multivector.blade(space, (a,))


def coderivative_sign(n: int, p: int) -> float:
    """Sign s with δ = s · hodge∘d∘hodge on p-forms (Riemannian, all-plus)."""
    return (-1.0) ** (n * (p + 1) + 1)


def random_multivector(space: QuadraticSpace, rng: np.random.Generator,
                       grade: int | None = None) -> Multivector:
    """Unit-scale random multivector, optionally pure grade."""
    coeffs = rng.standard_normal(space.blade_count) + 1j * rng.standard_normal(space.blade_count)
    mv = Multivector(space, coeffs / np.sqrt(2.0))
    if grade is not None:
        mv = grade_project(mv, grade)
    return mv
