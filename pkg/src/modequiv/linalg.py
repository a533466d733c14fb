"""Exact dense linear algebra over prime fields F_p.

Matrices are immutable numpy int64 arrays with entries reduced to [0, p).
All elimination is plain field arithmetic; there is no pivoting tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    InvalidModulus,
    ModulusMismatch,
    NotInvertible,
    NotSquare,
)

MAX_MODULUS = 2**31


@lru_cache(maxsize=None)
def check_prime(p: int) -> int:
    """Validate a field modulus; returns p for chaining."""
    if not isinstance(p, int) or p < 2 or p > MAX_MODULUS:
        raise InvalidModulus(f"modulus must be a prime in [2, 2^31], got {p!r}")
    if p in (2, 3):
        return p
    if p % 2 == 0 or p % 3 == 0:
        raise InvalidModulus(f"{p} is not prime")
    f = 5
    while f * f <= p:
        if p % f == 0 or p % (f + 2) == 0:
            raise InvalidModulus(f"{p} is not prime")
        f += 6
    return p


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise NotInvertible(f"0 has no inverse mod {p}")
    return pow(a, p - 2, p)


@dataclass(frozen=True)
class Fp:
    """A canonical representative of F_p; arithmetic stays in [0, p)."""

    p: int
    value: int

    def __post_init__(self):
        check_prime(self.p)
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other) -> "Fp":
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ModulusMismatch(f"mixed moduli {self.p} and {other.p}")
            return other
        return Fp(self.p, int(other))

    def __add__(self, other):
        o = self._coerce(other)
        return Fp(self.p, self.value + o.value)

    __radd__ = __add__

    def __neg__(self):
        return Fp(self.p, -self.value)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        o = self._coerce(other)
        return Fp(self.p, self.value * o.value)

    __rmul__ = __mul__

    def inverse(self) -> "Fp":
        return Fp(self.p, inv_mod(self.value, self.p))

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0


def _as_array(data, p: int) -> np.ndarray:
    a = np.array(data, dtype=np.int64)
    if a.ndim != 2:
        raise DimensionMismatch(f"matrix data must be 2-dimensional, got shape {a.shape}")
    return a % p


def _mul_arrays(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    # int64 is safe while inner_dim * (p-1)^2 stays below 2^63
    inner = a.shape[1]
    if inner and (p - 1) * (p - 1) > (2**62) // max(inner, 1):
        return (a.astype(object) @ b.astype(object) % p).astype(np.int64)
    return (a @ b) % p


class Mat:
    """Immutable dense matrix over F_p."""

    __slots__ = ("p", "a")

    def __init__(self, p: int, data):
        check_prime(p)
        arr = data if isinstance(data, np.ndarray) and data.dtype == np.int64 else None
        if arr is None:
            arr = _as_array(data, p)
        else:
            arr = arr % p
        arr.setflags(write=False)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "a", arr)

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    # -- constructors ----------------------------------------------------
    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> "Mat":
        return cls(p, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, n: int, p: int) -> "Mat":
        return cls(p, np.eye(n, dtype=np.int64))

    @classmethod
    def basis(cls, n: int, i: int, j: int, p: int, value: int = 1) -> "Mat":
        """e_{ij}: the n x n matrix with a single entry at 1-based (i, j)."""
        if not (1 <= i <= n and 1 <= j <= n):
            raise DimensionMismatch(f"basis position ({i},{j}) outside {n}x{n}")
        a = np.zeros((n, n), dtype=np.int64)
        a[i - 1, j - 1] = value % p
        return cls(p, a)

    @classmethod
    def from_flat(cls, rows: int, cols: int, entries: Sequence[int], p: int) -> "Mat":
        if len(entries) != rows * cols:
            raise DimensionMismatch(
                f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}"
            )
        return cls(p, np.array(entries, dtype=np.int64).reshape(rows, cols))

    @classmethod
    def block_diag(cls, blocks: Sequence["Mat"]) -> "Mat":
        if not blocks:
            raise DimensionMismatch("block_diag needs at least one block")
        p = blocks[0].p
        for b in blocks:
            if b.p != p:
                raise ModulusMismatch("blocks over different moduli")
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        out = np.zeros((n, m), dtype=np.int64)
        r = c = 0
        for b in blocks:
            out[r : r + b.rows, c : c + b.cols] = b.a
            r += b.rows
            c += b.cols
        return cls(p, out)

    # -- shape -----------------------------------------------------------
    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    def entry(self, i: int, j: int) -> Fp:
        """Entry at 1-based (i, j) as a field element."""
        return Fp(self.p, int(self.a[i - 1, j - 1]))

    def entries(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self.a.ravel())

    def to_lists(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self.a]

    # -- arithmetic --------------------------------------------------------
    def _check_same_field(self, other: "Mat"):
        if not isinstance(other, Mat):
            raise TypeError(f"expected Mat, got {type(other).__name__}")
        if other.p != self.p:
            raise ModulusMismatch(f"mixed moduli {self.p} and {other.p}")

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check_same_field(other)
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        return Mat(self.p, _mul_arrays(self.a, other.a, self.p))

    def __add__(self, other: "Mat") -> "Mat":
        self._check_same_field(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return Mat(self.p, (self.a + other.a) % self.p)

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_same_field(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot subtract {self.shape} and {other.shape}")
        return Mat(self.p, (self.a - other.a) % self.p)

    def __neg__(self) -> "Mat":
        return Mat(self.p, (-self.a) % self.p)

    def __mul__(self, scalar: int) -> "Mat":
        return Mat(self.p, (self.a * (int(scalar) % self.p)) % self.p)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mat)
            and other.p == self.p
            and other.shape == self.shape
            and bool(np.array_equal(other.a, self.a))
        )

    def __hash__(self):
        return hash((self.p, self.shape, self.a.tobytes()))

    def __repr__(self):
        return f"Mat(p={self.p}, {self.to_lists()})"

    def is_zero(self) -> bool:
        return not self.a.any()

    def transpose(self) -> "Mat":
        return Mat(self.p, self.a.T.copy())

    def power(self, k: int) -> "Mat":
        if self.rows != self.cols:
            raise NotSquare("power of a non-square matrix")
        out = np.eye(self.rows, dtype=np.int64)
        base = self.a.copy()
        while k > 0:
            if k & 1:
                out = _mul_arrays(out, base, self.p)
            base = _mul_arrays(base, base, self.p)
            k >>= 1
        return Mat(self.p, out)

    # -- elimination-backed queries ---------------------------------------
    def rank(self) -> int:
        return _rank(self.a, self.p)

    def is_invertible(self) -> bool:
        if self.rows != self.cols:
            raise NotSquare(f"invertibility of a {self.rows}x{self.cols} matrix")
        return _is_invertible(self.a, self.p)

    def inverse(self) -> "Mat":
        if self.rows != self.cols:
            raise NotSquare("inverse of a non-square matrix")
        inv = _inverse(self.a, self.p)
        if inv is None:
            raise NotInvertible("matrix is singular")
        return Mat(self.p, inv)

    def kernel_basis(self) -> list["Mat"]:
        """Basis of the right null space, as column vectors."""
        ns = _nullspace(self.a, self.p)
        return [Mat(self.p, v.reshape(-1, 1)) for v in ns]


# -- spec-named operation wrappers ----------------------------------------


def mat_mul(a: Mat, b: Mat) -> Mat:
    return a @ b


def kernel_basis(a: Mat) -> list[Mat]:
    return a.kernel_basis()


def is_invertible(a: Mat) -> bool:
    return a.is_invertible()


# -- elimination internals (plain int64 arrays) -----------------------------


def _rref(arr: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = arr.copy() % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        a[r] = (a[r] * inv_mod(int(a[r, c]), p)) % p
        factors = a[:, c].copy()
        factors[r] = 0
        a -= np.outer(factors, a[r])
        a %= p
        pivots.append(c)
        r += 1
    return a, pivots


def _rank(arr: np.ndarray, p: int) -> int:
    if arr.size == 0:
        return 0
    return len(_rref(arr, p)[1])


def _is_invertible(arr: np.ndarray, p: int) -> bool:
    n = arr.shape[0]
    if n == 0:
        return True
    a = arr.copy() % p
    for c in range(n):
        nz = np.nonzero(a[c:, c])[0]
        if nz.size == 0:
            return False
        pr = c + int(nz[0])
        if pr != c:
            a[[c, pr]] = a[[pr, c]]
        inv = inv_mod(int(a[c, c]), p)
        a[c, c:] = (a[c, c:] * inv) % p
        below = a[c + 1 :, c].copy()
        if below.any():
            a[c + 1 :, c:] = (a[c + 1 :, c:] - np.outer(below, a[c, c:])) % p
    return True


def _inverse(arr: np.ndarray, p: int) -> np.ndarray | None:
    n = arr.shape[0]
    aug = np.concatenate([arr.copy() % p, np.eye(n, dtype=np.int64)], axis=1)
    aug, pivots = _rref(aug, p)
    if pivots != list(range(n)):
        return None
    return aug[:, n:]


def _nullspace(arr: np.ndarray, p: int) -> list[np.ndarray]:
    """Basis vectors of {v : arr v = 0}, echelon-normalized."""
    rows, cols = arr.shape
    if cols == 0:
        return []
    if rows == 0:
        return [np.eye(cols, dtype=np.int64)[i] for i in range(cols)]
    red, pivots = _rref(arr, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = np.zeros(cols, dtype=np.int64)
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-red[r, fc]) % p
        basis.append(v)
    return basis


def _solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution x of a x = b (b may be a matrix), or None."""
    rows, cols = a.shape
    b = b.reshape(rows, -1) % p
    aug = np.concatenate([a % p, b], axis=1)
    red, pivots = _rref(aug, p)
    if any(pc >= cols for pc in pivots):
        return None
    x = np.zeros((cols, b.shape[1]), dtype=np.int64)
    for r, pc in enumerate(pivots):
        x[pc] = red[r, cols:]
    return x


def solve(a: Mat, b: Mat) -> Mat | None:
    """Solve a @ x = b exactly; None when inconsistent."""
    a._check_same_field(b)
    if a.rows != b.rows:
        raise DimensionMismatch(f"solve with {a.shape} and {b.shape}")
    x = _solve(a.a, b.a, a.p)
    return None if x is None else Mat(a.p, x)


def column_space_basis(a: Mat) -> list[Mat]:
    """Basis of the column space, as column vectors."""
    red, pivots = _rref(a.a.T % a.p, a.p)
    return [Mat(a.p, red[r].reshape(-1, 1)) for r in range(len(pivots))]


def tensor_combine(coeffs: np.ndarray, stack: np.ndarray, p: int) -> np.ndarray:
    """(..., d) coefficients times a (d, n, m) stack, reduced mod p; falls
    back to exact object arithmetic when int64 accumulation could overflow."""
    d = stack.shape[0]
    if d and (p - 1) * (p - 1) > (2**62) // max(d, 1):
        out = np.tensordot(coeffs.astype(object), stack.astype(object), axes=1) % p
        return out.astype(np.int64)
    return np.tensordot(coeffs, stack, axes=1) % p


def combine(coeffs: Sequence[int], mats: Sequence[Mat]) -> Mat:
    """Linear combination sum(c_i * m_i) over the shared field."""
    if not mats:
        raise DimensionMismatch("combination of no matrices")
    p = mats[0].p
    stack = np.stack([m.a for m in mats])
    c = np.asarray(coeffs, dtype=np.int64) % p
    return Mat(p, tensor_combine(c, stack, p))


def _batch_invertible(batch: np.ndarray, p: int, inv_table: np.ndarray) -> np.ndarray:
    """Vectorized invertibility over a (B, n, n) batch; returns a bool mask."""
    b, n, _ = batch.shape
    if n == 0:
        return np.ones(b, dtype=bool)
    a = batch.copy()
    alive = np.ones(b, dtype=bool)
    for c in range(n):
        col = a[:, c:, c] != 0
        has = col.any(axis=1)
        alive &= has
        if not alive.any():
            return alive
        piv = c + np.argmax(col, axis=1)
        idx = np.arange(b)
        rows_c = a[idx, c, :].copy()
        a[idx, c, :] = a[idx, piv, :]
        a[idx, piv, :] = rows_c
        pv = a[:, c, c]
        inv = inv_table[pv % p]
        a[:, c, :] = (a[:, c, :] * inv[:, None]) % p
        if c + 1 < n:
            f = a[:, c + 1 :, c]
            a[:, c + 1 :, :] = (a[:, c + 1 :, :] - f[:, :, None] * a[:, None, c, :]) % p
    return alive


def inverse_table(p: int) -> np.ndarray:
    """inv_table[v] = v^{-1} mod p for v in [1, p); inv_table[0] = 0."""
    t = np.zeros(p, dtype=np.int64)
    for v in range(1, p):
        t[v] = inv_mod(v, p)
    return t


def rand_mat(rows: int, cols: int, p: int, rng) -> Mat:
    return Mat(p, rng.integers(0, p, size=(rows, cols), dtype=np.int64))


def rand_invertible(n: int, p: int, rng) -> Mat:
    while True:
        m = rand_mat(n, n, p, rng)
        if m.is_invertible():
            return m


def stack_rows(mats: Iterable[Mat]) -> Mat:
    mats = list(mats)
    p = mats[0].p
    return Mat(p, np.concatenate([m.a for m in mats], axis=0))
