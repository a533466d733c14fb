"""Modules as validated action-matrix tuples and the core decision procedures.

A module over a presented algebra is one n x n action matrix per generator,
subject to the defining relations.  Hom spaces are intertwiner kernels;
isomorphism testing searches the Hom space exhaustively within a budget
(sound No by exhaustion) and falls back to seeded random sampling that can
only answer Yes or Undecided.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .algebra import (
    DEFAULT_BUDGET,
    DIHEDRAL,
    RSZ,
    TABLE,
    Algebra,
    Automorphism,
    Subalgebra,
    evaluate_poly,
)
from .errors import (
    AlgebraMismatch,
    DimensionMismatch,
    ModulusMismatch,
    RelationViolated,
    UndecidedError,
    UnsupportedAlgebraKind,
)
from .linalg import (
    Mat,
    _batch_invertible,
    _nullspace,
    _solve,
    inverse_table,
    stack_rows,
    tensor_combine,
)

RANDOM_TRIALS = 10**4
_QUICK_RANDOM = 256


class Verdict(Enum):
    YES = "yes"
    NO = "no"
    UNDECIDED = "undecided"

    @property
    def is_yes(self):
        return self is Verdict.YES

    @property
    def is_no(self):
        return self is Verdict.NO

    @property
    def is_undecided(self):
        return self is Verdict.UNDECIDED


class Module:
    """An algebra together with one action matrix per generator."""

    __slots__ = ("algebra", "dim", "action", "name")

    def __init__(self, algebra: Algebra, action: Sequence[Mat], name: str = ""):
        action = tuple(action)
        if len(action) != algebra.num_generators:
            raise DimensionMismatch(
                f"{algebra.num_generators} generators need {algebra.num_generators} "
                f"action matrices, got {len(action)}"
            )
        if action:
            n = action[0].rows
            for m in action:
                if m.rows != n or m.cols != n:
                    raise DimensionMismatch("action matrices must be square of equal size")
                if m.p != algebra.p:
                    raise ModulusMismatch("action matrices over a different modulus")
        else:
            n = 0
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "dim", n if action else None)
        object.__setattr__(self, "action", action)
        object.__setattr__(self, "name", name)
        _check_relations(algebra, action)

    def __setattr__(self, key, value):
        raise AttributeError("Module is immutable")

    def with_dim(self, n: int) -> "Module":
        """Pin the dimension of a generator-free module."""
        if self.action:
            raise DimensionMismatch("dimension is determined by the action matrices")
        m = Module.__new__(Module)
        object.__setattr__(m, "algebra", self.algebra)
        object.__setattr__(m, "dim", n)
        object.__setattr__(m, "action", ())
        object.__setattr__(m, "name", self.name)
        return m

    def __eq__(self, other):
        return (
            isinstance(other, Module)
            and other.algebra == self.algebra
            and other.dim == self.dim
            and other.action == self.action
        )

    def __hash__(self):
        return hash((self.algebra, self.dim, self.action))

    def __repr__(self):
        tag = f" {self.name!r}" if self.name else ""
        return f"Module(dim={self.dim},{tag} over {self.algebra!r})"


def _check_relations(a: Algebra, action: tuple[Mat, ...]):
    for rel in a.relations:
        value = evaluate_poly(rel, action)
        if not value.is_zero():
            raise RelationViolated(f"relation {rel!r} does not vanish", relation=rel)


def module_validate(a: Algebra, action: Sequence[Mat], name: str = "") -> Module:
    """Build a module, checking every relation of the algebra."""
    return Module(a, action, name=name)


def _module_trusted(a: Algebra, action: Sequence[Mat], dim: int, name: str = "") -> Module:
    m = Module.__new__(Module)
    object.__setattr__(m, "algebra", a)
    object.__setattr__(m, "dim", dim)
    object.__setattr__(m, "action", tuple(action))
    object.__setattr__(m, "name", name)
    return m


def trivial_module(a: Algebra, d: int, name: str = "") -> Module:
    """Every generator acts as zero on dimension d."""
    if d < 0:
        raise DimensionMismatch(f"dimension must be >= 0, got {d}")
    action = tuple(Mat.zeros(d, d, a.p) for _ in a.generators)
    m = Module(a, action, name=name)
    return m if m.dim is not None else m.with_dim(d)


def direct_sum(m1: Module, m2: Module) -> Module:
    if m1.algebra != m2.algebra:
        raise AlgebraMismatch("direct sum of modules over different algebras")
    action = tuple(
        Mat.block_diag([a1, a2]) for a1, a2 in zip(m1.action, m2.action)
    )
    out = _module_trusted(m1.algebra, action, (m1.dim or 0) + (m2.dim or 0))
    return out


def conjugate(m: Module, p_mat: Mat) -> Module:
    """Base change: each action matrix becomes P A P^{-1}."""
    pinv = p_mat.inverse()
    action = tuple(p_mat @ a @ pinv for a in m.action)
    return _module_trusted(m.algebra, action, m.dim)


@dataclass(frozen=True)
class HomBasis:
    """Basis of the intertwiner space {phi : B_g phi = phi A_g for all g}."""

    source: Module
    target: Module
    basis: tuple[Mat, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def hom_space(m1: Module, m2: Module) -> HomBasis:
    """Intertwiners m1 -> m2, computed as the kernel of the stacked
    linear system on dim(m2) x dim(m1) unknowns."""
    if m1.algebra != m2.algebra:
        raise AlgebraMismatch("hom space of modules over different algebras")
    n1, n2 = m1.dim, m2.dim
    p = m1.algebra.p
    if n1 == 0 or n2 == 0:
        return HomBasis(m1, m2, ())
    blocks = []
    eye1 = np.eye(n1, dtype=np.int64)
    eye2 = np.eye(n2, dtype=np.int64)
    for a_g, b_g in zip(m1.action, m2.action):
        blocks.append((np.kron(b_g.a, eye1) - np.kron(eye2, a_g.a.T)) % p)
    if not blocks:
        system = np.zeros((0, n1 * n2), dtype=np.int64)
    else:
        system = np.concatenate(blocks, axis=0)
    basis = tuple(Mat(p, v.reshape(n2, n1)) for v in _nullspace(system, p))
    return HomBasis(m1, m2, basis)


@dataclass(frozen=True)
class IsoResult:
    """Isomorphism verdict with a verifying witness or a certificate note."""

    verdict: Verdict
    witness: Mat | None = None
    note: str = ""
    hom_dim: int | None = None
    searched: int = 0


# -- invertible element search in a matrix span -----------------------------


def _chunked_combos(basis: np.ndarray, p: int, chunk: int = 4096):
    """Yield (prefix_tuple, suffix_count, batch) covering all coefficient
    vectors in lexicographic order; batch[k] is the combination for suffix k.
    The suffix table is kept at or below `chunk` combinations."""
    d = basis.shape[0]
    lo = 0
    while lo < d and p ** (lo + 1) <= chunk:
        lo += 1
    hi = d - lo
    suffixes = np.array(
        list(itertools.product(range(p), repeat=lo)), dtype=np.int64
    )
    suffix_combos = tensor_combine(suffixes, basis[hi:], p)
    for prefix in itertools.product(range(p), repeat=hi):
        if hi:
            base = tensor_combine(np.array(prefix, dtype=np.int64), basis[:hi], p)
            yield prefix, suffix_combos.shape[0], (base + suffix_combos) % p
        else:
            yield prefix, suffix_combos.shape[0], suffix_combos


def _find_invertible(
    basis: Sequence[Mat], p: int, budget: int, seed: int
) -> tuple[str, Mat | None, int]:
    """Search span(basis) for an invertible matrix.

    Returns ("yes", witness, searched), ("no", None, searched) with the span
    fully enumerated, or ("undecided", None, searched).
    """
    d = len(basis)
    if d == 0:
        return "no", None, 1
    n = basis[0].rows
    if n != basis[0].cols:
        return "no", None, 0
    stack = np.stack([b.a for b in basis])
    inv_t = inverse_table(p)

    # identity in the span is the common fast witness
    flat = stack.reshape(d, n * n)
    sol = _solve(flat.T, np.eye(n, dtype=np.int64).reshape(n * n, 1), p)
    if sol is not None:
        return "yes", Mat.identity(n, p), 0

    for b in basis:
        if b.is_invertible():
            return "yes", b, 0

    searched = 0
    total = p**d

    def exhaustive() -> tuple[str, Mat | None, int]:
        nonlocal searched
        for _, _, batch in _chunked_combos(stack, p):
            ok = _batch_invertible(batch, p, inv_t)
            searched += batch.shape[0]
            hit = np.nonzero(ok)[0]
            if hit.size:
                return "yes", Mat(p, batch[int(hit[0])]), searched
        return "no", None, total

    if total <= min(4096, budget):
        return exhaustive()

    rng = np.random.default_rng(seed)

    def random_burst(trials: int) -> Mat | None:
        nonlocal searched
        done = 0
        while done < trials:
            take = min(1024, trials - done)
            coeffs = rng.integers(0, p, size=(take, d), dtype=np.int64)
            batch = tensor_combine(coeffs, stack, p)
            ok = _batch_invertible(batch, p, inv_t)
            done += take
            searched += take
            hit = np.nonzero(ok)[0]
            if hit.size:
                return Mat(p, batch[int(hit[0])])
        return None

    witness = random_burst(_QUICK_RANDOM)
    if witness is not None:
        return "yes", witness, searched

    if total <= budget:
        return exhaustive()

    witness = random_burst(RANDOM_TRIALS)
    if witness is not None:
        return "yes", witness, searched
    return "undecided", None, searched


def _iso_from_hom(
    m1: Module, m2: Module, hom: HomBasis, budget: int, seed: int
) -> IsoResult:
    status, witness, searched = _find_invertible(hom.basis, m1.algebra.p, budget, seed)
    if status == "yes":
        _verify_intertwiner(m1, m2, witness)
        return IsoResult(Verdict.YES, witness=witness, hom_dim=hom.dim, searched=searched)
    if status == "no":
        return IsoResult(
            Verdict.NO, note="exhausted intertwiner space", hom_dim=hom.dim, searched=searched
        )
    return IsoResult(
        Verdict.UNDECIDED,
        note=f"hom space of dim {hom.dim} exceeds budget {budget}",
        hom_dim=hom.dim,
        searched=searched,
    )


def is_isomorphic(
    m1: Module, m2: Module, budget: int = DEFAULT_BUDGET, seed: int = 0
) -> IsoResult:
    """Decide module isomorphism.

    No is certain: either the dimensions differ or the whole intertwiner
    space was enumerated without finding an invertible element.  When the
    space exceeds the budget, seeded random sampling can still find a
    witness; otherwise the verdict is Undecided.
    """
    if m1.algebra != m2.algebra:
        raise AlgebraMismatch("isomorphism test for modules over different algebras")
    if m1.dim != m2.dim:
        return IsoResult(Verdict.NO, note="dimension mismatch")
    if m1.dim == 0:
        return IsoResult(Verdict.YES, witness=Mat.zeros(0, 0, m1.algebra.p), note="empty module")
    return _iso_from_hom(m1, m2, hom_space(m1, m2), budget, seed)


def _verify_intertwiner(m1: Module, m2: Module, phi: Mat):
    if not phi.is_invertible():
        raise RelationViolated("witness is not invertible")
    for a_g, b_g in zip(m1.action, m2.action):
        if b_g @ phi != phi @ a_g:
            raise RelationViolated("witness does not intertwine the actions")


@dataclass(frozen=True)
class IndecResult:
    verdict: Verdict
    idempotent: Mat | None = None
    note: str = ""


def _fitting_split(e: Mat, n: int) -> tuple[Mat, Mat] | None:
    """Kernel/image bases of e^n when both are proper, else None."""
    power = e.power(n)
    ker = power.kernel_basis()
    k = len(ker)
    if k == 0 or k == n:
        return None
    p = e.p
    ker_mat = np.concatenate([v.a for v in ker], axis=1)
    im_cols, _ = _rref_cols(power.a, p)
    return Mat(p, ker_mat), Mat(p, im_cols)


def _rref_cols(arr: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Column-space basis as the columns of the returned array."""
    from .linalg import _rref

    red, pivots = _rref(arr.T % p, p)
    return red[: len(pivots)].T.copy(), pivots


def _projection_idempotent(ker: Mat, im: Mat) -> Mat:
    """Projection onto the image along the kernel (Fitting splitting map)."""
    p = ker.p
    n = ker.rows
    basis = np.concatenate([ker.a, im.a], axis=1)
    u = Mat(p, basis)
    uinv = u.inverse()
    diag = np.zeros((n, n), dtype=np.int64)
    for i in range(ker.cols, n):
        diag[i, i] = 1
    return u @ Mat(p, diag) @ uinv


def _in_end(m: Module, e: Mat) -> bool:
    return all(a @ e == e @ a for a in m.action)


def is_indecomposable(m: Module, budget: int = DEFAULT_BUDGET) -> IndecResult:
    """Decide indecomposability via idempotents of the endomorphism algebra.

    A Fitting pre-pass on the End basis cheaply certifies decomposability;
    otherwise the End space is enumerated for nontrivial idempotents within
    the budget (exhaustion proves indecomposability).
    """
    n = m.dim
    if n is None or n < 1:
        raise DimensionMismatch("indecomposability needs dim >= 1")
    if n == 1:
        return IndecResult(Verdict.YES, note="dimension 1")
    p = m.algebra.p
    end = hom_space(m, m)
    for e in end.basis:
        split = _fitting_split(e, n)
        if split is not None:
            idem = _projection_idempotent(*split)
            if idem @ idem == idem and _in_end(m, idem) and not idem.is_zero():
                return IndecResult(Verdict.NO, idempotent=idem, note="fitting split")
    d = end.dim
    if p**d > budget:
        return IndecResult(
            Verdict.UNDECIDED, note=f"End space of dim {d} exceeds budget {budget}"
        )
    if d == 0:
        return IndecResult(Verdict.YES, note="trivial endomorphism algebra")
    stack = np.stack([b.a for b in end.basis])
    eye = np.eye(n, dtype=np.int64)
    for _, _, batch in _chunked_combos(stack, p):
        sq = np.matmul(batch, batch) % p
        idem_mask = (sq == batch).all(axis=(1, 2))
        for idx in np.nonzero(idem_mask)[0]:
            cand = batch[int(idx)]
            if not cand.any() or np.array_equal(cand, eye):
                continue
            return IndecResult(Verdict.NO, idempotent=Mat(p, cand), note="idempotent search")
    return IndecResult(Verdict.YES, note=f"no nontrivial idempotent among {p ** d}")


def _restrict_to_invariant(m: Module, cols: Mat) -> Module:
    """Actions on an invariant column-span, in the given basis."""
    p = m.algebra.p
    action = []
    for a in m.action:
        img = a @ cols
        sol = _solve(cols.a, img.a, p)
        if sol is None:
            raise RelationViolated("subspace is not invariant")
        action.append(Mat(p, sol))
    return _module_trusted(m.algebra, action, cols.cols)


def _decompose_with_basis(m: Module, budget: int) -> tuple[list[Module], Mat]:
    res = is_indecomposable(m, budget)
    if res.verdict.is_undecided:
        raise UndecidedError(res.note)
    if res.verdict.is_yes:
        return [m], Mat.identity(m.dim, m.algebra.p)
    idem = res.idempotent
    p = m.algebra.p
    ker = idem.kernel_basis()
    im = (idem - Mat.identity(m.dim, p)).kernel_basis()
    parts: list[Module] = []
    columns: list[np.ndarray] = []
    for vecs in (ker, im):
        basis = Mat(p, np.concatenate([v.a for v in vecs], axis=1))
        sub = _restrict_to_invariant(m, basis)
        sub_parts, sub_basis = _decompose_with_basis(sub, budget)
        parts.extend(sub_parts)
        lifted = basis @ sub_basis
        offset = 0
        for sp in sub_parts:
            columns.append(lifted.a[:, offset : offset + sp.dim])
            offset += sp.dim
    return parts, Mat(p, np.concatenate(columns, axis=1))


def decompose(m: Module, budget: int = DEFAULT_BUDGET) -> list[Module]:
    """Indecomposable summands, found by splitting along idempotents.

    The reassembly is verified: the collected part bases form an invertible
    base change carrying m onto the direct sum of the parts.
    """
    if m.dim == 0:
        return []
    parts, basis = _decompose_with_basis(m, budget)
    total = direct_sum(parts[0], parts[1]) if len(parts) > 1 else parts[0]
    for extra in parts[2:]:
        total = direct_sum(total, extra)
    if sum(part.dim for part in parts) != m.dim or not basis.is_invertible():
        raise RelationViolated("decomposition does not reassemble")
    for a, b in zip(m.action, total.action):
        if a @ basis != basis @ b:
            raise RelationViolated("decomposition does not reassemble")
    for part in parts:
        if not is_indecomposable(part, budget).verdict.is_yes:
            raise RelationViolated("decomposition produced a decomposable part")
    return parts


def socle_dim(m: Module) -> int:
    """Dimension of the joint kernel of the radical-generator actions."""
    if m.algebra.kind not in (RSZ, TABLE, DIHEDRAL):
        raise UnsupportedAlgebraKind(
            f"socle needs known radical generators, not available for {m.algebra.kind}"
        )
    if not m.action:
        return m.dim
    stacked = stack_rows(m.action)
    return m.dim - stacked.rank()


def restrict(m: Module, s: Subalgebra) -> Module:
    """View m over a subalgebra: the i-th restricted generator acts by the
    w_basis[i]-combination of the original action matrices."""
    if s.parent != m.algebra:
        raise AlgebraMismatch("subalgebra of a different algebra")
    p = m.algebra.p
    action = []
    for row in s.w_basis.a:
        acc = Mat.zeros(m.dim, m.dim, p)
        for c, a in zip(row, m.action):
            acc = acc + int(c) * a
        action.append(acc)
    out = Module(s.as_algebra, action, name=f"{m.name}|{s.label()}" if m.name else "")
    return out if out.dim is not None else out.with_dim(m.dim)


def twist(m: Module, f: Automorphism) -> Module:
    """The module with generator g acting by f's image of g evaluated on the
    original action; the result is re-validated against the relations.

    For square-zero algebras the twisted actions are linear combinations of
    the originals, so every product of two of them vanishes automatically and
    the relation check is skipped.
    """
    if f.algebra != m.algebra:
        raise AlgebraMismatch("automorphism of a different algebra")
    if m.algebra.kind == RSZ and m.action:
        stack = np.stack([a.a for a in m.action])
        g = len(m.action)
        rows = np.array([row for row in f.payload], dtype=np.int64)
        mixed = tensor_combine(rows, stack, m.algebra.p)
        action = tuple(Mat(m.algebra.p, mixed[i]) for i in range(g))
        return _module_trusted(m.algebra, action, m.dim, name=m.name)
    action = tuple(evaluate_poly(img, m.action) for img in f.images)
    return Module(m.algebra, action, name=m.name)
