"""The symplectic lattice H1 of a genus-g surface and its exterior powers.

Everything is exact integer (or Fraction) arithmetic over the ordered basis
(a1, b1, ..., ag, bg).  Basis index 2i-2 carries a_i, index 2i-1 carries b_i
(0-based), and the intersection pairing is a_i . b_i = +1.

H1 classes are plain integer tuples of length 2g.  Degree-2 and degree-3
exterior classes get small wrapper types because their coefficient vectors
are indexed by sorted pairs / triples and are easy to mix up otherwise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import GenusMismatch, InvalidWord, NotInImage

H1 = tuple  # integer tuple of length 2g


def basis_name(i: int) -> str:
    return ("a" if i % 2 == 0 else "b") + str(i // 2 + 1)


def basis_index(name: str) -> int:
    kind, num = name[0], int(name[1:])
    if kind not in "ab" or num < 1:
        raise InvalidWord(f"bad basis name {name!r}")
    return 2 * (num - 1) + (0 if kind == "a" else 1)


def genus_of(vec) -> int:
    n = len(vec)
    if n == 0 or n % 2:
        raise GenusMismatch(f"H1 vector length {n} is not twice a genus")
    return n // 2


def zero_h1(genus: int) -> H1:
    return (0,) * (2 * genus)


def basis_h1(genus: int, i: int) -> H1:
    return tuple(1 if k == i else 0 for k in range(2 * genus))


@lru_cache(maxsize=None)
def pairing_matrix(genus: int):
    """Intersection pairing J with a_i . b_i = +1."""
    n = 2 * genus
    J = [[0] * n for _ in range(n)]
    for i in range(genus):
        J[2 * i][2 * i + 1] = 1
        J[2 * i + 1][2 * i] = -1
    return tuple(tuple(row) for row in J)


def intersection(u: H1, v: H1) -> int:
    if len(u) != len(v):
        raise GenusMismatch("intersection of vectors of different genus")
    g = genus_of(u)
    total = 0
    for i in range(g):
        total += u[2 * i] * v[2 * i + 1] - u[2 * i + 1] * v[2 * i]
    return total


def transvection(c: H1):
    """Matrix of x -> x + (x . c) c, acting on column vectors."""
    g = genus_of(c)
    n = 2 * g
    cols = []
    for j in range(n):
        e = basis_h1(g, j)
        coef = intersection(e, c)
        cols.append(tuple(e[r] + coef * c[r] for r in range(n)))
    # stored row-major
    return tuple(tuple(cols[j][r] for j in range(n)) for r in range(n))


def mat_mul(A, B):
    n, m, p = len(A), len(B), len(B[0])
    assert len(A[0]) == m
    return tuple(
        tuple(sum(A[i][k] * B[k][j] for k in range(m)) for j in range(p))
        for i in range(n)
    )


def mat_vec(A, v):
    return tuple(sum(A[i][k] * v[k] for k in range(len(v))) for i in range(len(A)))


def is_symplectic(M, genus: int, modulus: int | None = None) -> bool:
    """M^T J M == J, optionally mod n."""
    n = 2 * genus
    if len(M) != n or any(len(row) != n for row in M):
        return False
    J = pairing_matrix(genus)
    MT = tuple(tuple(M[r][c] for r in range(n)) for c in range(n))
    P = mat_mul(mat_mul(MT, J), M)
    if modulus is None:
        return P == J
    return all((P[i][j] - J[i][j]) % modulus == 0 for i in range(n) for j in range(n))


@lru_cache(maxsize=None)
def pair_basis(genus: int):
    return tuple(itertools.combinations(range(2 * genus), 2))


@lru_cache(maxsize=None)
def triple_basis(genus: int):
    return tuple(itertools.combinations(range(2 * genus), 3))


@lru_cache(maxsize=None)
def pair_index_map(genus: int):
    return {p: i for i, p in enumerate(pair_basis(genus))}


@lru_cache(maxsize=None)
def triple_index_map(genus: int):
    return {t: i for i, t in enumerate(triple_basis(genus))}


def sort_with_sign(indices):
    """Sort indices, returning (sorted tuple, permutation sign); sign 0 on repeats."""
    idx = list(indices)
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    for i in range(len(idx) - 1):
        if idx[i] == idx[i + 1]:
            return tuple(idx), 0
    return tuple(idx), sign


@dataclass(frozen=True)
class Wedge2:
    genus: int
    coeffs: tuple

    def __post_init__(self):
        expect = len(pair_basis(self.genus))
        if len(self.coeffs) != expect:
            raise GenusMismatch(
                f"Wedge2 at genus {self.genus} needs {expect} coefficients"
            )

    @staticmethod
    def zero(genus: int) -> "Wedge2":
        return Wedge2(genus, (0,) * len(pair_basis(genus)))

    def __add__(self, other: "Wedge2") -> "Wedge2":
        self._check(other)
        return Wedge2(self.genus, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Wedge2") -> "Wedge2":
        self._check(other)
        return Wedge2(self.genus, tuple(x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Wedge2":
        return Wedge2(self.genus, tuple(-x for x in self.coeffs))

    def scale(self, k) -> "Wedge2":
        return Wedge2(self.genus, tuple(k * x for x in self.coeffs))

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.coeffs)

    def _check(self, other):
        if self.genus != other.genus:
            raise GenusMismatch("Wedge2 genus mismatch")

    def __str__(self) -> str:
        return format_sparse(self.coeffs, pair_basis(self.genus))


@dataclass(frozen=True)
class Wedge3:
    genus: int
    coeffs: tuple

    def __post_init__(self):
        expect = len(triple_basis(self.genus))
        if len(self.coeffs) != expect:
            raise GenusMismatch(
                f"Wedge3 at genus {self.genus} needs {expect} coefficients"
            )

    @staticmethod
    def zero(genus: int) -> "Wedge3":
        return Wedge3(genus, (0,) * len(triple_basis(genus)))

    def __add__(self, other: "Wedge3") -> "Wedge3":
        self._check(other)
        return Wedge3(self.genus, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Wedge3") -> "Wedge3":
        self._check(other)
        return Wedge3(self.genus, tuple(x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Wedge3":
        return Wedge3(self.genus, tuple(-x for x in self.coeffs))

    def scale(self, k) -> "Wedge3":
        return Wedge3(self.genus, tuple(k * x for x in self.coeffs))

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.coeffs)

    def is_integral(self) -> bool:
        return all(
            isinstance(x, int) or (isinstance(x, Fraction) and x.denominator == 1)
            for x in self.coeffs
        )

    def _check(self, other):
        if self.genus != other.genus:
            raise GenusMismatch("Wedge3 genus mismatch")

    def __str__(self) -> str:
        return format_sparse(self.coeffs, triple_basis(self.genus))


def wedge2_of(u: H1, v: H1) -> Wedge2:
    """u wedge v."""
    if len(u) != len(v):
        raise GenusMismatch("wedge of vectors of different genus")
    g = genus_of(u)
    coeffs = [0] * len(pair_basis(g))
    pidx = pair_index_map(g)
    for i in range(2 * g):
        if u[i] == 0:
            continue
        for j in range(2 * g):
            if i == j or v[j] == 0:
                continue
            pair, sign = sort_with_sign((i, j))
            coeffs[pidx[pair]] += sign * u[i] * v[j]
    return Wedge2(g, tuple(coeffs))


def wedge3_term(genus: int, i: int, j: int, k: int, coef=1) -> Wedge3:
    triple, sign = sort_with_sign((i, j, k))
    if sign == 0 or coef == 0:
        return Wedge3.zero(genus)
    coeffs = [0] * len(triple_basis(genus))
    coeffs[triple_index_map(genus)[triple]] = sign * coef
    return Wedge3(genus, tuple(coeffs))


def symplectic_form_w2(genus: int) -> Wedge2:
    """The intersection form as an element: sum of a_i ^ b_i."""
    coeffs = [0] * len(pair_basis(genus))
    pidx = pair_index_map(genus)
    for i in range(genus):
        coeffs[pidx[(2 * i, 2 * i + 1)]] = 1
    return Wedge2(genus, tuple(coeffs))


def wedge_q(h: H1) -> Wedge3:
    """Wedge the symplectic form class with h; the embedding H1 -> Wedge3."""
    g = genus_of(h)
    out = [0] * len(triple_basis(g))
    tidx = triple_index_map(g)
    for i in range(g):
        for k in range(2 * g):
            if h[k] == 0 or k in (2 * i, 2 * i + 1):
                continue
            triple, sign = sort_with_sign((2 * i, 2 * i + 1, k))
            out[tidx[triple]] += sign * h[k]
    return Wedge3(g, tuple(out))


def contract_p(w: Wedge3) -> H1:
    """x^y^z -> (x.y) z + (y.z) x + (z.x) y, extended linearly."""
    g = w.genus
    J = pairing_matrix(g)
    out = [0] * (2 * g)
    for (i, j, k), c in zip(triple_basis(g), w.coeffs):
        if c == 0:
            continue
        out[k] += c * J[i][j]
        out[i] += c * J[j][k]
        out[j] += c * J[k][i]
    return tuple(out)


@dataclass(frozen=True)
class TensorHW2:
    """Integer matrix, rows over the H1 basis, columns over the Wedge2 basis."""

    genus: int
    rows: tuple

    def __post_init__(self):
        n, m = 2 * self.genus, len(pair_basis(self.genus))
        if len(self.rows) != n or any(len(r) != m for r in self.rows):
            raise GenusMismatch("TensorHW2 shape does not match genus")

    @staticmethod
    def zero(genus: int) -> "TensorHW2":
        return TensorHW2(
            genus, tuple((0,) * len(pair_basis(genus)) for _ in range(2 * genus))
        )

    def __add__(self, other: "TensorHW2") -> "TensorHW2":
        if self.genus != other.genus:
            raise GenusMismatch("TensorHW2 genus mismatch")
        return TensorHW2(
            self.genus,
            tuple(
                tuple(x + y for x, y in zip(r, s))
                for r, s in zip(self.rows, other.rows)
            ),
        )

    def __neg__(self) -> "TensorHW2":
        return TensorHW2(self.genus, tuple(tuple(-x for x in r) for r in self.rows))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)


def embed_iota(w: Wedge3) -> TensorHW2:
    """a^b^c -> a⊗(b^c) + b⊗(c^a) + c⊗(a^b), extended linearly."""
    g = w.genus
    pidx = pair_index_map(g)
    rows = [[0] * len(pair_basis(g)) for _ in range(2 * g)]
    for (i, j, k), c in zip(triple_basis(g), w.coeffs):
        if c == 0:
            continue
        rows[i][pidx[(j, k)]] += c
        rows[j][pidx[(i, k)]] -= c  # k^i reordered
        rows[k][pidx[(i, j)]] += c
    return TensorHW2(g, tuple(tuple(r) for r in rows))


def extract_iota_preimage(t: TensorHW2) -> Wedge3:
    """Unique Wedge3 with embed_iota(result) == t, else NotInImage.

    For a triple i<j<k the only contribution to entry (i, (j,k)) comes from
    that triple itself, so the candidate preimage can be read off directly;
    a final exact comparison decides membership.  Any rational solution of
    iota(v) = t for integral t is forced to equal this integral candidate,
    so no separate rational solve is needed.
    """
    g = t.genus
    pidx = pair_index_map(g)
    cand = tuple(t.rows[i][pidx[(j, k)]] for (i, j, k) in triple_basis(g))
    w = Wedge3(g, cand)
    if embed_iota(w).rows != t.rows:
        raise NotInImage(
            "tensor fails the cyclic symmetry of the canonical embedding"
        )
    return w


def iota_matrix(genus: int):
    """Matrix of embed_iota: rows flatten (H1 index, pair index), one column per triple."""
    cols = []
    for tr in range(len(triple_basis(genus))):
        coeffs = [0] * len(triple_basis(genus))
        coeffs[tr] = 1
        img = embed_iota(Wedge3(genus, tuple(coeffs)))
        cols.append([x for row in img.rows for x in row])
    nrows = len(cols[0])
    return tuple(tuple(col[r] for col in cols) for r in range(nrows))


def decompose_lambda3(w: Wedge3):
    """Split into the q^H1 part and the contraction-free part (rational coefficients)."""
    g = w.genus
    if g < 2:
        raise GenusMismatch("decomposition needs genus >= 2")
    p = contract_p(w)
    part1 = wedge_q(p).scale(Fraction(1, g - 1))
    part1 = Wedge3(g, tuple(Fraction(x) for x in part1.coeffs))
    part3 = Wedge3(g, tuple(Fraction(x) - y for x, y in zip(w.coeffs, part1.coeffs)))
    return part1, part3


@lru_cache(maxsize=None)
def _coset_reduction_rows(genus: int):
    """Row-style Hermite form of the sublattice wedge_q(H1), for canonical reps."""
    rows = [list(wedge_q(basis_h1(genus, i)).coeffs) for i in range(2 * genus)]
    ncols = len(triple_basis(genus))
    hnf = []
    work = [r[:] for r in rows]
    col = 0
    while work and col < ncols:
        pivot_rows = [r for r in work if r[col] != 0]
        if not pivot_rows:
            col += 1
            continue
        # gcd-reduce column entries into a single pivot row
        while True:
            pivot_rows.sort(key=lambda r: abs(r[col]))
            piv = pivot_rows[0]
            done = True
            for r in pivot_rows[1:]:
                q = r[col] // piv[col]
                if q:
                    for c in range(ncols):
                        r[c] -= q * piv[c]
                if r[col] != 0:
                    done = False
            pivot_rows = [piv] + [r for r in pivot_rows[1:] if any(r)]
            if done or len(pivot_rows) == 1:
                break
        if piv[col] < 0:
            for c in range(ncols):
                piv[c] = -piv[c]
        hnf.append(piv)
        work = [r for r in work if r is not piv and any(r)]
        col += 1
    # reduce entries above each pivot
    hnf.sort(key=lambda r: next(c for c in range(ncols) if r[c]))
    for i, row in enumerate(hnf):
        pc = next(c for c in range(ncols) if row[c])
        for j in range(i):
            q = hnf[j][pc] // row[pc]
            if q:
                for c in range(ncols):
                    hnf[j][c] -= q * row[c]
    return tuple((next(c for c in range(ncols) if r[c]), tuple(r)) for r in hnf)


def coset_normal_form(w: Wedge3) -> Wedge3:
    """Canonical representative of w modulo wedge_q(H1)."""
    g = w.genus
    if g < 2:
        raise GenusMismatch("coset normal form needs genus >= 2")
    out = list(w.coeffs)
    for pivot_col, row in _coset_reduction_rows(g):
        q = out[pivot_col] // row[pivot_col]
        if q:
            for c in range(len(out)):
                out[c] -= q * row[c]
    return Wedge3(g, tuple(out))


def wedge3_push(M, w: Wedge3) -> Wedge3:
    """Induced action of a matrix M on the third exterior power."""
    g = w.genus
    n = 2 * g
    cols = [tuple(M[r][c] for r in range(n)) for c in range(n)]
    tidx = triple_index_map(g)
    out = [0] * len(triple_basis(g))
    for (i, j, k), c in zip(triple_basis(g), w.coeffs):
        if c == 0:
            continue
        for p in range(n):
            if cols[i][p] == 0:
                continue
            for q in range(n):
                if q == p or cols[j][q] == 0:
                    continue
                for r in range(n):
                    if r == p or r == q or cols[k][r] == 0:
                        continue
                    triple, sign = sort_with_sign((p, q, r))
                    out[tidx[triple]] += sign * c * cols[i][p] * cols[j][q] * cols[k][r]
    return Wedge3(g, tuple(out))


def rank_of(matrix) -> int:
    """Exact rank over the rationals."""
    rows = [[Fraction(x) for x in row] for row in matrix]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    row_at = 0
    for col in range(ncols):
        piv = None
        for r in range(row_at, len(rows)):
            if rows[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        rows[row_at], rows[piv] = rows[piv], rows[row_at]
        pv = rows[row_at][col]
        for r in range(len(rows)):
            if r != row_at and rows[r][col] != 0:
                factor = rows[r][col] / pv
                for c in range(col, ncols):
                    rows[r][c] -= factor * rows[row_at][c]
        row_at += 1
        rank += 1
    return rank


def format_sparse(coeffs, basis) -> str:
    """Sparse term list like '2*a1^b1 - a2^b3'; '0' when empty."""
    parts = []
    for c, idxs in zip(coeffs, basis):
        if c == 0:
            continue
        mono = "^".join(basis_name(i) for i in idxs)
        mag = abs(c)
        body = mono if mag == 1 else f"{mag}*{mono}"
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts) if parts else "0"


def parse_sparse(text: str, genus: int, degree: int):
    """Inverse of format_sparse for integer coefficients."""
    basis = pair_basis(genus) if degree == 2 else triple_basis(genus)
    idx_map = pair_index_map(genus) if degree == 2 else triple_index_map(genus)
    coeffs = [0] * len(basis)
    text = text.strip()
    if text in ("", "0"):
        return (Wedge2 if degree == 2 else Wedge3)(genus, tuple(coeffs))
    tokens = text.replace("- ", "-").replace("+ ", "+").split()
    for tok in tokens:
        sign = 1
        if tok.startswith("+"):
            tok = tok[1:]
        elif tok.startswith("-"):
            sign = -1
            tok = tok[1:]
        if "*" in tok:
            mag, mono = tok.split("*", 1)
            coef = sign * int(mag)
        else:
            mono = tok
            coef = sign
        names = mono.split("^")
        if len(names) != degree:
            raise InvalidWord(f"term {tok!r} is not degree {degree}")
        idxs, s2 = sort_with_sign(tuple(basis_index(n) for n in names))
        if s2 == 0:
            raise InvalidWord(f"repeated basis vector in {tok!r}")
        coeffs[idx_map[idxs]] += coef * s2
    return (Wedge2 if degree == 2 else Wedge3)(genus, tuple(coeffs))


def format_h1(vec: H1) -> str:
    return format_sparse(vec, tuple((i,) for i in range(len(vec))))


def parse_h1(text: str, genus: int) -> H1:
    coeffs = [0] * (2 * genus)
    text = text.strip()
    if text in ("", "0"):
        return tuple(coeffs)
    tokens = text.replace("- ", "-").replace("+ ", "+").split()
    for tok in tokens:
        sign = 1
        if tok.startswith("+"):
            tok = tok[1:]
        elif tok.startswith("-"):
            sign = -1
            tok = tok[1:]
        if "*" in tok:
            mag, name = tok.split("*", 1)
            coef = sign * int(mag)
        else:
            name = tok
            coef = sign
        idx = basis_index(name)
        if idx >= 2 * genus:
            raise InvalidWord(f"basis vector {name!r} exceeds genus {genus}")
        coeffs[idx] += coef
    return tuple(coeffs)
