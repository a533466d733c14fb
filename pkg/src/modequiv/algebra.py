"""Presented algebras, their subalgebras and automorphism groups.

Four kinds are supported: radical-square-zero algebras on g generators,
the free algebra on one generator, dihedral-type presentations
k<X,Y>/(X^2, Y^2, (XY)^k X^e1, (YX)^k Y^e2), and explicit multiplication
tables (used for the 7-dimensional semidihedral algebra).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    AlgebraMismatch,
    BudgetExceeded,
    DimensionMismatch,
    InvalidModulus,
    ModulusMismatch,
    TableInconsistent,
    UnsupportedAlgebraKind,
)
from .linalg import Mat, _batch_invertible, _rank, check_prime, inv_mod, inverse_table

RSZ = "rsz"
FREE_UNIVARIATE = "free_univariate"
DIHEDRAL = "dihedral"
TABLE = "table"

DEFAULT_BUDGET = 2**20


class NcPoly:
    """Noncommutative polynomial: a sum of (coefficient, word) terms.

    Words are tuples of generator indices; the empty word is the unit.
    Terms are normalized (coefficients reduced mod p, duplicate words merged,
    zero terms dropped) and stored sorted by (length, word).
    """

    __slots__ = ("p", "terms")

    def __init__(self, p: int, terms: Sequence[tuple[int, Sequence[int]]]):
        check_prime(p)
        acc: dict[tuple[int, ...], int] = {}
        for coeff, word in terms:
            w = tuple(int(i) for i in word)
            acc[w] = (acc.get(w, 0) + int(coeff)) % p
        object.__setattr__(self, "p", p)
        object.__setattr__(
            self,
            "terms",
            tuple(
                (c, w)
                for w, c in sorted(acc.items(), key=lambda kv: (len(kv[0]), kv[0]))
                if c
            ),
        )

    def __setattr__(self, name, value):
        raise AttributeError("NcPoly is immutable")

    @classmethod
    def zero(cls, p: int) -> "NcPoly":
        return cls(p, [])

    @classmethod
    def one(cls, p: int, coeff: int = 1) -> "NcPoly":
        return cls(p, [(coeff, ())])

    @classmethod
    def gen(cls, p: int, i: int, coeff: int = 1) -> "NcPoly":
        return cls(p, [(coeff, (i,))])

    @classmethod
    def word(cls, p: int, letters: Sequence[int], coeff: int = 1) -> "NcPoly":
        return cls(p, [(coeff, tuple(letters))])

    def _check(self, other: "NcPoly"):
        if self.p != other.p:
            raise ModulusMismatch(f"mixed moduli {self.p} and {other.p}")

    def __add__(self, other: "NcPoly") -> "NcPoly":
        self._check(other)
        return NcPoly(self.p, list(self.terms) + list(other.terms))

    def __neg__(self) -> "NcPoly":
        return NcPoly(self.p, [(-c, w) for c, w in self.terms])

    def __sub__(self, other: "NcPoly") -> "NcPoly":
        return self + (-other)

    def __mul__(self, other) -> "NcPoly":
        if isinstance(other, int):
            return NcPoly(self.p, [(c * other, w) for c, w in self.terms])
        self._check(other)
        return NcPoly(
            self.p,
            [(c1 * c2, w1 + w2) for c1, w1 in self.terms for c2, w2 in other.terms],
        )

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, NcPoly) and other.p == self.p and other.terms == self.terms

    def __hash__(self):
        return hash((self.p, self.terms))

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def max_generator(self) -> int:
        """Largest generator index appearing, or -1 for constants."""
        return max((max(w) for _, w in self.terms if w), default=-1)

    def substitute(self, images: Sequence["NcPoly"]) -> "NcPoly":
        """Replace generator i by images[i] everywhere."""
        out = NcPoly.zero(self.p)
        for c, w in self.terms:
            term = NcPoly.one(self.p, c)
            for letter in w:
                term = term * images[letter]
            out = out + term
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for c, w in self.terms:
            word = "*".join(f"g{i}" for i in w) if w else "1"
            bits.append(f"{c}*{word}" if c != 1 or not w else word)
        return " + ".join(bits)


def evaluate_poly(poly: NcPoly, assignment: Sequence[Mat]) -> Mat:
    """Evaluate at one square matrix per generator; the empty word is the identity."""
    if poly.max_generator >= len(assignment):
        raise DimensionMismatch(
            f"poly uses generator {poly.max_generator}, only {len(assignment)} matrices given"
        )
    if assignment:
        n, p = assignment[0].rows, assignment[0].p
        for m in assignment:
            if m.rows != n or m.cols != n:
                raise DimensionMismatch("assignment matrices must be square of equal size")
            if m.p != p:
                raise ModulusMismatch("assignment matrices over different moduli")
    else:
        if poly.max_generator >= 0:
            raise DimensionMismatch("no matrices supplied")
        n, p = 0, poly.p
    out = Mat.zeros(n, n, p)
    eye = Mat.identity(n, p)
    for c, w in poly.terms:
        term = eye
        for letter in w:
            term = term @ assignment[letter]
        out = out + c * term
    return out


class Algebra:
    """A presented associative unital algebra over F_p, tagged by kind."""

    __slots__ = (
        "p",
        "kind",
        "generators",
        "relations",
        "dihedral_k",
        "dihedral_eps",
        "basis_labels",
        "basis_words",
        "unit_index",
        "radical_basis",
        "table",
    )

    def __init__(
        self,
        p: int,
        kind: str,
        generators: tuple[str, ...],
        relations: tuple[NcPoly, ...],
        dihedral_k: int | None = None,
        dihedral_eps: tuple[int, int] | None = None,
        basis_labels: tuple[str, ...] | None = None,
        basis_words: tuple[tuple[int, ...], ...] | None = None,
        unit_index: int | None = None,
        radical_basis: tuple[int, ...] | None = None,
        table: np.ndarray | None = None,
    ):
        check_prime(p)
        for slot, value in (
            ("p", p),
            ("kind", kind),
            ("generators", tuple(generators)),
            ("relations", tuple(relations)),
            ("dihedral_k", dihedral_k),
            ("dihedral_eps", dihedral_eps),
            ("basis_labels", basis_labels),
            ("basis_words", basis_words),
            ("unit_index", unit_index),
            ("radical_basis", radical_basis),
            ("table", table),
        ):
            object.__setattr__(self, slot, value)
        if table is not None:
            table.setflags(write=False)

    def __setattr__(self, name, value):
        raise AttributeError("Algebra is immutable")

    @property
    def num_generators(self) -> int:
        return len(self.generators)

    def dim(self) -> int | None:
        """Vector space dimension where it is materialized."""
        if self.kind == RSZ:
            return self.num_generators + 1
        if self.kind == TABLE:
            return len(self.basis_labels)
        return None

    def key(self):
        table_key = self.table.tobytes() if self.table is not None else None
        return (
            self.p,
            self.kind,
            self.generators,
            self.relations,
            self.dihedral_k,
            self.dihedral_eps,
            self.basis_words,
            self.unit_index,
            self.radical_basis,
            table_key,
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, Algebra) and other.key() == self.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if self.kind == RSZ:
            return f"Algebra(rsz, g={self.num_generators}, p={self.p})"
        if self.kind == DIHEDRAL:
            k, (e1, e2) = self.dihedral_k, self.dihedral_eps
            return f"Algebra(dihedral, k={k}, eps=({e1},{e2}), p={self.p})"
        return f"Algebra({self.kind}, p={self.p})"

    # -- element arithmetic for table algebras ---------------------------
    def table_mul(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        """Product of two elements given as basis coefficient vectors."""
        d = len(self.basis_labels)
        u, v = u % self.p, v % self.p
        if (self.p - 1) ** 3 * d * d >= 2**63:
            out = np.einsum(
                "i,j,ijk->k", u.astype(object), v.astype(object), self.table.astype(object)
            )
            return (out % self.p).astype(np.int64)
        return np.einsum("i,j,ijk->k", u, v, self.table) % self.p

    def element_of_poly(self, poly: NcPoly, gen_elements: Sequence[np.ndarray]) -> np.ndarray:
        """Evaluate a poly with each generator mapped to an element vector."""
        d = len(self.basis_labels)
        out = np.zeros(d, dtype=np.int64)
        unit = np.zeros(d, dtype=np.int64)
        unit[self.unit_index] = 1
        for c, w in poly.terms:
            term = unit
            for letter in w:
                term = self.table_mul(term, gen_elements[letter])
            out = (out + c * term) % self.p
        return out


def _rsz_relations(g: int, p: int) -> tuple[NcPoly, ...]:
    return tuple(NcPoly.word(p, (i, j)) for i in range(g) for j in range(g))


_RSZ_NAMES = ("X", "Y", "Z")


def _rsz_generator_names(g: int) -> tuple[str, ...]:
    if g <= len(_RSZ_NAMES):
        return _RSZ_NAMES[:g]
    return tuple(f"X{i + 1}" for i in range(g))


def _make_rsz(g: int, p: int) -> Algebra:
    return Algebra(p, RSZ, _rsz_generator_names(g), _rsz_relations(g, p))


def make_rsz_algebra(g: int, p: int) -> Algebra:
    """k<X_1..X_g> with every degree-2 word zero; dimension g + 1."""
    check_prime(p)
    if g < 1:
        raise InvalidModulus(f"generator count must be >= 1, got {g}")
    return _make_rsz(g, p)


def make_free_univariate(p: int) -> Algebra:
    """k[X]: one generator, no relations; any square matrix is a module."""
    return Algebra(p, FREE_UNIVARIATE, ("X",), ())


def make_dihedral_algebra(k: int, eps1: int, eps2: int, p: int) -> Algebra:
    """k<X,Y>/(X^2, Y^2, (XY)^k X^e1, (YX)^k Y^e2), presentation only."""
    check_prime(p)
    if k < 1 or eps1 not in (0, 1) or eps2 not in (0, 1):
        raise InvalidModulus(f"need k >= 1 and eps in {{0,1}}, got k={k}, eps=({eps1},{eps2})")
    xy = (0, 1) * k
    yx = (1, 0) * k
    relations = (
        NcPoly.word(p, (0, 0)),
        NcPoly.word(p, (1, 1)),
        NcPoly.word(p, xy + (0,) * eps1),
        NcPoly.word(p, yx + (1,) * eps2),
    )
    return Algebra(
        p, DIHEDRAL, ("X", "Y"), relations, dihedral_k=k, dihedral_eps=(eps1, eps2)
    )


# -- semidihedral table ------------------------------------------------------

_SD_BASIS_WORDS: tuple[tuple[int, ...], ...] = (
    (),
    (0,),
    (1,),
    (0, 1),
    (1, 0),
    (0, 1, 0),
    (1, 0, 1),
)
_SD_LABELS = ("1", "x", "y", "xy", "yx", "xyx", "yxy")


def _sd_reduce(word: tuple[int, ...]) -> tuple[int, ...] | None:
    """Normal form of a word under xx -> 0, yy -> xyx, xyxy -> 0, yxyx -> 0.

    Returns the reduced word or None when it rewrites to zero.  The yy rule
    strictly decreases the y-count, so this terminates; the two length-4
    kill rules complete the system (the survivors are the 7 basis words).
    """
    w = list(word)
    while True:
        changed = False
        for i in range(len(w) - 1):
            if w[i] == 0 and w[i + 1] == 0:
                return None
            if w[i] == 1 and w[i + 1] == 1:
                w[i : i + 2] = [0, 1, 0]
                changed = True
                break
        if changed:
            continue
        for i in range(len(w) - 3):
            if tuple(w[i : i + 4]) in ((0, 1, 0, 1), (1, 0, 1, 0)):
                return None
        break
    return tuple(w)


def make_semidihedral_algebra(p: int) -> Algebra:
    """The 7-dimensional table algebra with relations x^2, y^3, y^2 - xyx."""
    check_prime(p)
    d = len(_SD_BASIS_WORDS)
    index = {w: i for i, w in enumerate(_SD_BASIS_WORDS)}
    table = np.zeros((d, d, d), dtype=np.int64)
    for i, wi in enumerate(_SD_BASIS_WORDS):
        for j, wj in enumerate(_SD_BASIS_WORDS):
            red = _sd_reduce(wi + wj)
            if red is None:
                continue
            if red not in index:
                raise TableInconsistent(f"word {wi + wj} reduced to non-basis word {red}")
            table[i, j, index[red]] = 1
    relations = (
        NcPoly.word(p, (0, 0)),
        NcPoly.word(p, (1, 1, 1)),
        NcPoly.word(p, (1, 1)) - NcPoly.word(p, (0, 1, 0)),
    )
    alg = Algebra(
        p,
        TABLE,
        ("x", "y"),
        relations,
        basis_labels=_SD_LABELS,
        basis_words=_SD_BASIS_WORDS,
        unit_index=0,
        radical_basis=tuple(range(1, d)),
        table=table,
    )
    algebra_validate(alg)
    return alg


def rsz_as_table(a: Algebra) -> Algebra:
    """Materialize a radical-square-zero algebra as an explicit table."""
    if a.kind != RSZ:
        raise UnsupportedAlgebraKind(f"expected rsz, got {a.kind}")
    g = a.num_generators
    d = g + 1
    table = np.zeros((d, d, d), dtype=np.int64)
    for j in range(d):
        table[0, j, j] = 1
        table[j, 0, j] = 1
    table[0, 0, 0] = 1
    alg = Algebra(
        a.p,
        TABLE,
        a.generators,
        a.relations,
        basis_labels=("1",) + a.generators,
        basis_words=((),) + tuple((i,) for i in range(g)),
        unit_index=0,
        radical_basis=tuple(range(1, d)),
        table=table,
    )
    algebra_validate(alg)
    return alg


def algebra_validate(a: Algebra) -> Algebra:
    """Certify a table algebra: two-sided unit, associativity on all basis
    triples, and the listed relations evaluating to zero."""
    if a.kind != TABLE:
        raise UnsupportedAlgebraKind(f"algebra_validate needs a table algebra, got {a.kind}")
    d = len(a.basis_labels)
    t = a.table
    u = a.unit_index
    eye = np.eye(d, dtype=np.int64)
    if not np.array_equal(t[u] % a.p, eye) or not np.array_equal(t[:, u, :] % a.p, eye):
        raise TableInconsistent("unit is not two-sided")
    left = np.einsum("ijm,mkl->ijkl", t, t) % a.p
    right = np.einsum("jkm,iml->ijkl", t, t) % a.p
    if not np.array_equal(left, right):
        bad = np.argwhere((left != right).any(axis=3))[0]
        raise TableInconsistent(
            f"associativity fails on basis triple {tuple(int(x) for x in bad)}"
        )
    gens = []
    for i in range(len(a.generators)):
        word = (i,)
        try:
            gi = a.basis_words.index(word)
        except ValueError:
            raise TableInconsistent(f"generator {i} is not a basis word")
        v = np.zeros(d, dtype=np.int64)
        v[gi] = 1
        gens.append(v)
    for rel in a.relations:
        if a.element_of_poly(rel, gens).any():
            raise TableInconsistent(f"relation {rel!r} does not vanish in the table")
    return a


# -- subalgebras of radical-square-zero algebras -----------------------------


@dataclass(frozen=True)
class Subalgebra:
    """A unital subalgebra k*1 + W of an rsz algebra, W a radical subspace.

    w_basis rows express the subalgebra generators in the parent generators;
    enumeration produces reduced-echelon bases, but any independent basis is
    accepted (restriction verdicts must not depend on the choice).
    """

    parent: Algebra
    w_basis: Mat
    as_algebra: Algebra = field(compare=False)

    @property
    def dim_w(self) -> int:
        return self.w_basis.rows

    @classmethod
    def from_basis(cls, parent: Algebra, vectors: Mat) -> "Subalgebra":
        if parent.kind != RSZ:
            raise UnsupportedAlgebraKind("subalgebras are only materialized for rsz algebras")
        if vectors.p != parent.p:
            raise ModulusMismatch("basis over a different modulus")
        if vectors.cols != parent.num_generators:
            raise DimensionMismatch(
                f"basis vectors have length {vectors.cols}, parent has "
                f"{parent.num_generators} generators"
            )
        if _rank(vectors.a, vectors.p) != vectors.rows:
            raise DimensionMismatch("basis vectors are dependent")
        return cls(parent, vectors, _make_rsz(vectors.rows, parent.p))

    def label(self) -> str:
        rows = self.w_basis.to_lists()
        return "W<" + "; ".join(",".join(str(x) for x in r) for r in rows) + ">"


def _echelon_bases(g: int, k: int, p: int) -> Iterator[Mat]:
    """All k-dimensional subspaces of F_p^g as reduced-echelon bases, in
    lexicographic order of (pivot columns, free entries)."""
    if k == 0:
        yield Mat.zeros(0, g, p)
        return
    for pivots in itertools.combinations(range(g), k):
        free_cells = [
            (r, c)
            for r in range(k)
            for c in range(pivots[r] + 1, g)
            if c not in pivots
        ]
        for values in itertools.product(range(p), repeat=len(free_cells)):
            m = np.zeros((k, g), dtype=np.int64)
            for r, c in zip(range(k), pivots):
                m[r, c] = 1
            for (r, c), v in zip(free_cells, values):
                m[r, c] = v
            yield Mat(p, m)


def enumerate_proper_subalgebras(a: Algebra, scope: str = "all") -> list[Subalgebra]:
    """Proper unital subalgebras of an rsz algebra: one per subspace W < rad.

    scope="all" yields every proper subspace including W = 0; scope="maximal"
    only the hyperplanes of the radical.  Order is deterministic: dimension
    ascending, then lexicographic echelon form.
    """
    if a.kind != RSZ:
        raise UnsupportedAlgebraKind(
            f"subalgebra enumeration is only supported for rsz algebras, got {a.kind}"
        )
    if scope not in ("all", "maximal"):
        raise ValueError(f"scope must be 'all' or 'maximal', got {scope!r}")
    g = a.num_generators
    dims = range(g) if scope == "all" else [g - 1]
    out = []
    for k in dims:
        for basis in _echelon_bases(g, k, a.p):
            out.append(Subalgebra(a, basis, _make_rsz(k, a.p)))
    return out


# -- automorphisms -----------------------------------------------------------


@dataclass(frozen=True)
class Automorphism:
    """An algebra automorphism with per-generator image polynomials.

    payload is the kind-specific canonical form: the generator-mixing matrix
    for rsz, (a, b) for X -> aX + b, (swap, a) for dihedral scalings, and the
    tuple of generator-image coefficient vectors for table algebras.  induced
    is the basis-to-basis linear map (table algebras only).
    """

    algebra: Algebra
    images: tuple[NcPoly, ...]
    payload: tuple
    induced: Mat | None = None

    def describe(self) -> str:
        kind = self.algebra.kind
        if kind == RSZ:
            return f"gen-matrix {list(self.payload)}"
        if kind == FREE_UNIVARIATE:
            a, b = self.payload
            return f"X -> {a}X + {b}"
        if kind == DIHEDRAL:
            swap, a = self.payload
            return ("swap, " if swap else "") + f"Y -> {a}Y"
        return f"gen-images {list(self.payload)}"

    @property
    def matrix(self) -> Mat:
        """Generator-mixing matrix (rsz only); row i holds the image of gen i."""
        if self.algebra.kind != RSZ:
            raise UnsupportedAlgebraKind("matrix form only exists for rsz automorphisms")
        g = self.algebra.num_generators
        return Mat.from_flat(g, g, [x for row in self.payload for x in row], self.algebra.p)


def _rsz_automorphism(a: Algebra, m: Mat) -> Automorphism:
    g = a.num_generators
    images = tuple(
        NcPoly(a.p, [(int(m.a[i, j]), (j,)) for j in range(g)]) for i in range(g)
    )
    payload = tuple(tuple(int(x) for x in row) for row in m.a)
    return Automorphism(a, images, payload)


def _free_automorphism(a: Algebra, coeff: int, shift: int) -> Automorphism:
    img = NcPoly(a.p, [(coeff, (0,)), (shift, ())])
    return Automorphism(a, (img,), (coeff % a.p, shift % a.p))


def _dihedral_automorphism(a: Algebra, swap: bool, scale: int) -> Automorphism:
    if swap:
        images = (NcPoly.gen(a.p, 1), NcPoly.gen(a.p, 0, scale))
    else:
        images = (NcPoly.gen(a.p, 0), NcPoly.gen(a.p, 1, scale))
    return Automorphism(a, images, (swap, scale % a.p))


def _table_images_to_polys(a: Algebra, gen_vecs: Sequence[np.ndarray]) -> tuple[NcPoly, ...]:
    polys = []
    for v in gen_vecs:
        polys.append(
            NcPoly(a.p, [(int(c), a.basis_words[i]) for i, c in enumerate(v) if c])
        )
    return tuple(polys)


def _table_automorphism(a: Algebra, gen_vecs: Sequence[np.ndarray]) -> Automorphism | None:
    """Build and check a table automorphism from generator image vectors."""
    gen_vecs = [np.asarray(v, dtype=np.int64) % a.p for v in gen_vecs]
    for rel in a.relations:
        if a.element_of_poly(rel, gen_vecs).any():
            return None
    d = len(a.basis_labels)
    cols = np.zeros((d, d), dtype=np.int64)
    unit = np.zeros(d, dtype=np.int64)
    unit[a.unit_index] = 1
    for j, word in enumerate(a.basis_words):
        img = unit
        for letter in word:
            img = a.table_mul(img, gen_vecs[letter])
        cols[:, j] = img
    induced = Mat(a.p, cols)
    if not induced.is_invertible():
        return None
    payload = tuple(tuple(int(x) for x in v) for v in gen_vecs)
    return Automorphism(a, _table_images_to_polys(a, gen_vecs), payload, induced=induced)


def identity_automorphism(a: Algebra) -> Automorphism:
    if a.kind == RSZ:
        return _rsz_automorphism(a, Mat.identity(a.num_generators, a.p))
    if a.kind == FREE_UNIVARIATE:
        return _free_automorphism(a, 1, 0)
    if a.kind == DIHEDRAL:
        return _dihedral_automorphism(a, False, 1)
    if a.kind == TABLE:
        d = len(a.basis_labels)
        vecs = []
        for i in range(len(a.generators)):
            v = np.zeros(d, dtype=np.int64)
            v[a.basis_words.index((i,))] = 1
            vecs.append(v)
        f = _table_automorphism(a, vecs)
        assert f is not None
        return f
    raise UnsupportedAlgebraKind(a.kind)


@lru_cache(maxsize=128)
def enumerate_automorphisms(a: Algebra, budget: int = DEFAULT_BUDGET) -> tuple[Automorphism, ...]:
    """The automorphisms used by the decision procedures, in deterministic order.

    rsz: all of GL(g, p) (every invertible generator-mixing matrix).
    free univariate: all X -> aX + b with a != 0.
    dihedral: the scalings f_a plus, when eps1 = eps2, the X<->Y swap composed
    with each scaling (the structurally verified families; not the full group).
    table: all generator images in the radical span that satisfy the relations
    and induce an invertible basis map.  Results are cached per (algebra, budget).
    """
    p = a.p
    if a.kind == RSZ:
        g = a.num_generators
        if g == 0:
            return (identity_automorphism(a),)
        total = p ** (g * g)
        if total > budget:
            raise BudgetExceeded(
                f"GL({g},{p}) candidate space {total} exceeds budget {budget}"
            )
        inv_t = inverse_table(p)
        powers = p ** np.arange(g * g - 1, -1, -1, dtype=np.int64)
        out = []
        for start in range(0, total, 65536):
            idx = np.arange(start, min(start + 65536, total), dtype=np.int64)
            digits = (idx[:, None] // powers[None, :]) % p  # big-endian = lex order
            batch = digits.reshape(-1, g, g)
            ok = _batch_invertible(batch, p, inv_t)
            for k in np.nonzero(ok)[0]:
                out.append(_rsz_automorphism(a, Mat(p, batch[int(k)])))
        return tuple(out)
    if a.kind == FREE_UNIVARIATE:
        return tuple(
            _free_automorphism(a, c, s) for c in range(1, p) for s in range(p)
        )
    if a.kind == DIHEDRAL:
        out = [_dihedral_automorphism(a, False, s) for s in range(1, p)]
        e1, e2 = a.dihedral_eps
        if e1 == e2:
            out.extend(_dihedral_automorphism(a, True, s) for s in range(1, p))
        return tuple(out)
    if a.kind == TABLE:
        n_rad = len(a.radical_basis)
        n_gens = len(a.generators)
        space = p ** (n_rad * n_gens)
        if space > budget:
            raise BudgetExceeded(
                f"table automorphism candidate space {space} exceeds budget {budget}"
            )
        d = len(a.basis_labels)
        out = []
        for coeffs in itertools.product(range(p), repeat=n_rad * n_gens):
            vecs = []
            for gi in range(n_gens):
                v = np.zeros(d, dtype=np.int64)
                for ri, bi in enumerate(a.radical_basis):
                    v[bi] = coeffs[gi * n_rad + ri]
                vecs.append(v)
            f = _table_automorphism(a, vecs)
            if f is not None:
                out.append(f)
        return tuple(out)
    raise UnsupportedAlgebraKind(a.kind)


def compose(f: Automorphism, g: Automorphism) -> Automorphism:
    """The automorphism whose twist equals twisting by f and then by g.

    Its image of generator i is g's image polynomial with every generator
    replaced by f's image, i.e. twist(twist(m, f), g) == twist(m, compose(f, g)).
    """
    if f.algebra != g.algebra:
        raise AlgebraMismatch("automorphisms over different algebras")
    a = f.algebra
    if a.kind == RSZ:
        return _rsz_automorphism(a, g.matrix @ f.matrix)
    if a.kind == FREE_UNIVARIATE:
        (af, bf), (ag, bg) = f.payload, g.payload
        return _free_automorphism(a, af * ag, ag * bf + bg)
    if a.kind == DIHEDRAL:
        (sf, af), (sg, ag) = f.payload, g.payload
        if not sg:
            return _dihedral_automorphism(a, sf, af * ag)
        if af % a.p == 1:
            return _dihedral_automorphism(a, not sf, ag)
        raise UnsupportedAlgebraKind(
            "composite leaves the implemented dihedral automorphism families"
        )
    if a.kind == TABLE:
        f_vecs = [np.array(v, dtype=np.int64) for v in f.payload]
        new_vecs = [a.element_of_poly(img, f_vecs) for img in g.images]
        h = _table_automorphism(a, new_vecs)
        if h is None:
            raise TableInconsistent("composite of table automorphisms failed validation")
        return h
    raise UnsupportedAlgebraKind(a.kind)


def inverse(f: Automorphism) -> Automorphism:
    a = f.algebra
    if a.kind == RSZ:
        return _rsz_automorphism(a, f.matrix.inverse())
    if a.kind == FREE_UNIVARIATE:
        coeff, shift = f.payload
        ci = inv_mod(coeff, a.p)
        return _free_automorphism(a, ci, -ci * shift)
    if a.kind == DIHEDRAL:
        swap, scale = f.payload
        if not swap:
            return _dihedral_automorphism(a, False, inv_mod(scale, a.p))
        if scale % a.p == 1:
            return f
        raise UnsupportedAlgebraKind(
            "inverse leaves the implemented dihedral automorphism families"
        )
    if a.kind == TABLE:
        inv_map = f.induced.inverse()
        vecs = []
        for i in range(len(a.generators)):
            gi = a.basis_words.index((i,))
            vecs.append(inv_map.a[:, gi].copy())
        h = _table_automorphism(a, vecs)
        if h is None:
            raise TableInconsistent("inverse of table automorphism failed validation")
        return h
    raise UnsupportedAlgebraKind(a.kind)
