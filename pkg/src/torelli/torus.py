"""Cup-product ring of the mapping torus of a Torelli element.

The ring is built algebraically from a Johnson value rather than from
cochains: degree one is spanned by the surface classes e_1..e_2g plus the
circle class theta, degree two by the dual of the section plus theta^e_j,
degree three by the volume class.  The only interesting products are

    e_i . e_j = <e_i, e_j> PDsigma - theta ^ f(e_i ^ e_j)

where f is the dualization of the embedded Johnson tensor, and

    e_i . (theta ^ e_j) = -<e_i, e_j> vol.

Associativity of the result is equivalent to the cyclic symmetry of the
defining tensor, which is exactly membership in the image of the canonical
embedding; verify_ring checks this together with graded commutativity and
unimodularity of the Poincare pairing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import GenusMismatch
from .symplectic import (
    TensorHW2,
    Wedge3,
    embed_iota,
    extract_iota_preimage,
    pair_basis,
    pair_index_map,
    pairing_matrix,
)


@lru_cache(maxsize=None)
def _wedge2_pairing_matrix(genus: int):
    """Matrix of the induced pairing map on sorted-pair coordinates; an
    involution, and the dualization used between f and the embedded tensor."""
    J = pairing_matrix(genus)
    pb = pair_basis(genus)
    W = []
    for (p, q) in pb:
        row = []
        for (j, k) in pb:
            row.append(J[p][j] * J[q][k] - J[p][k] * J[q][j])
        W.append(tuple(row))
    return tuple(W)


def degree_labels(genus: int):
    e = [f"e{i+1}" for i in range(2 * genus)]
    return {
        0: ("1",),
        1: tuple(e + ["theta"]),
        2: tuple(["PDsigma"] + [f"theta^{n}" for n in e]),
        3: ("vol",),
    }


@dataclass(frozen=True)
class TorusRing:
    genus: int
    f: tuple  # rows over H1 basis, columns over sorted pairs
    products: dict  # (deg_a, idx_a, deg_b, idx_b) -> coefficient tuple

    def basis_size(self, degree: int) -> int:
        if degree in (0, 3):
            return 1
        if degree in (1, 2):
            return 2 * self.genus + 1
        return 0

    def product(self, deg_a: int, idx_a: int, deg_b: int, idx_b: int):
        out_deg = deg_a + deg_b
        if out_deg > 3:
            return ()
        return self.products[(deg_a, idx_a, deg_b, idx_b)]


def tensor_to_f(t: TensorHW2):
    """Dualize an embedded tensor into the product-defining table."""
    W = _wedge2_pairing_matrix(t.genus)
    ncols = len(pair_basis(t.genus))
    return tuple(
        tuple(sum(row[p] * W[p][c] for p in range(ncols)) for c in range(ncols))
        for row in t.rows
    )


def f_to_tensor(genus: int, f) -> TensorHW2:
    W = _wedge2_pairing_matrix(genus)
    ncols = len(pair_basis(genus))
    return TensorHW2(
        genus,
        tuple(
            tuple(sum(row[p] * W[p][c] for p in range(ncols)) for c in range(ncols))
            for row in f
        ),
    )


def ring_from_f(genus: int, f) -> TorusRing:
    """Assemble all structure constants from a product-defining table.

    Exposed separately from build_ring so tests can feed perturbed tables.
    """
    n = 2 * genus
    J = pairing_matrix(genus)
    pidx = pair_index_map(genus)
    d1 = n + 1  # e_0..e_{n-1}, theta
    d2 = n + 1  # PDsigma, theta^e_0..theta^e_{n-1}
    products = {}

    def fval(r, i, j):
        if i == j:
            return 0
        if i < j:
            return f[r][pidx[(i, j)]]
        return -f[r][pidx[(j, i)]]

    # degree 0 times anything
    for deg, size in ((0, 1), (1, d1), (2, d2), (3, 1)):
        for i in range(size):
            unit = tuple(1 if k == i else 0 for k in range(size))
            products[(0, 0, deg, i)] = unit
            products[(deg, i, 0, 0)] = unit

    # degree 1 x degree 1 -> degree 2
    for i in range(d1):
        for j in range(d1):
            out = [0] * d2
            if i < n and j < n:
                out[0] = J[i][j]
                for r in range(n):
                    out[r + 1] = -fval(r, i, j)
            elif i == n and j < n:
                out[j + 1] = 1
            elif i < n and j == n:
                out[i + 1] = -1
            products[(1, i, 1, j)] = tuple(out)

    # degree 1 x degree 2 -> degree 3, and the graded-commuted mirror
    for i in range(d1):
        for j in range(d2):
            coeff = 0
            if i == n and j == 0:
                coeff = 1
            elif i < n and j > 0:
                coeff = -J[i][j - 1]
            products[(1, i, 2, j)] = (coeff,)
            products[(2, j, 1, i)] = (coeff,)

    # everything landing above degree 3 vanishes
    for i in range(d2):
        for j in range(d2):
            products[(2, i, 2, j)] = ()
    for deg, size in ((1, d1), (2, d2), (3, 1)):
        for i in range(size):
            products[(3, 0, deg, i)] = ()
            products[(deg, i, 3, 0)] = ()

    return TorusRing(genus, tuple(tuple(row) for row in f), products)


def build_ring(tau: Wedge3, genus: int) -> TorusRing:
    """Mapping-torus cohomology ring of a mapping class with Johnson value tau."""
    if genus < 2:
        raise GenusMismatch("mapping-torus ring needs genus >= 2")
    if tau.genus != genus:
        raise GenusMismatch("tau genus does not match")
    if not tau.is_integral():
        raise GenusMismatch("ring construction needs an integral class")
    return ring_from_f(genus, tensor_to_f(embed_iota(tau)))


def _det_exact(M) -> int:
    rows = [[Fraction(x) for x in row] for row in M]
    size = len(rows)
    det = Fraction(1)
    for col in range(size):
        piv = None
        for r in range(col, size):
            if rows[r][col] != 0:
                piv = r
                break
        if piv is None:
            return 0
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        pv = rows[col][col]
        det *= pv
        for r in range(col + 1, size):
            if rows[r][col] != 0:
                factor = rows[r][col] / pv
                for c in range(col, size):
                    rows[r][c] -= factor * rows[col][c]
    assert det.denominator == 1
    return int(det)


def verify_ring(ring: TorusRing):
    """Report of violated ring identities; empty iff the ring is a
    graded-commutative associative algebra with unimodular degree pairing."""
    report = []
    labels = degree_labels(ring.genus)

    def mul(deg_a, vec_a, deg_b, vec_b):
        out_deg = deg_a + deg_b
        size = ring.basis_size(out_deg)
        out = [0] * size
        if size == 0:
            return tuple(out)
        for i, ca in enumerate(vec_a):
            if ca == 0:
                continue
            for j, cb in enumerate(vec_b):
                if cb == 0:
                    continue
                prod = ring.product(deg_a, i, deg_b, j)
                for k, cp in enumerate(prod):
                    out[k] += ca * cb * cp
        return tuple(out)

    def unit(deg, i):
        return tuple(1 if k == i else 0 for k in range(ring.basis_size(deg)))

    degs = [0, 1, 2, 3]
    # graded commutativity
    for da in degs:
        for db in degs:
            if da + db > 3:
                continue
            sign = -1 if (da % 2) and (db % 2) else 1
            for i in range(ring.basis_size(da)):
                for j in range(ring.basis_size(db)):
                    ab = ring.product(da, i, db, j)
                    ba = ring.product(db, j, da, i)
                    if tuple(sign * c for c in ba) != tuple(ab):
                        report.append(
                            f"graded commutativity fails on "
                            f"({labels[da][i]}, {labels[db][j]})"
                        )
    # associativity on all basis triples
    for da in degs:
        for db in degs:
            for dc in degs:
                if da + db + dc > 3:
                    continue
                for i in range(ring.basis_size(da)):
                    for j in range(ring.basis_size(db)):
                        for k in range(ring.basis_size(dc)):
                            left = mul(da + db, ring.product(da, i, db, j), dc, unit(dc, k))
                            right = mul(da, unit(da, i), db + dc, ring.product(db, j, dc, k))
                            if left != right:
                                report.append(
                                    "associativity fails on "
                                    f"({labels[da][i]}, {labels[db][j]}, {labels[dc][k]})"
                                )
    # unimodular pairing H^1 x H^2 -> H^3
    size = ring.basis_size(1)
    P = [
        [ring.product(1, i, 2, j)[0] if ring.product(1, i, 2, j) else 0
         for j in range(ring.basis_size(2))]
        for i in range(size)
    ]
    if abs(_det_exact(P)) != 1:
        report.append("degree (1,2) pairing is not unimodular")
    return report


def extract_F(ring: TorusRing) -> TensorHW2:
    """Recover the embedded Johnson tensor from the degree-1 products.

    Raises NotInImage when the ring's defining tensor is not cyclically
    symmetric (a hand-built invalid ring).
    """
    n = 2 * ring.genus
    pidx = pair_index_map(ring.genus)
    f = [[0] * len(pair_basis(ring.genus)) for _ in range(n)]
    for (i, j), col in pidx.items():
        prod = ring.product(1, i, 1, j)
        for r in range(n):
            f[r][col] = -prod[r + 1]
    tensor = f_to_tensor(ring.genus, tuple(tuple(row) for row in f))
    extract_iota_preimage(tensor)  # membership check
    return tensor


def serialize_ring(ring: TorusRing) -> dict:
    labels = degree_labels(ring.genus)
    consts = []
    for (da, ia, db, ib), coeffs in sorted(ring.products.items()):
        for k, c in enumerate(coeffs):
            if c != 0:
                consts.append(
                    {
                        "left": [da, ia],
                        "right": [db, ib],
                        "out": [da + db, k],
                        "coeff": c,
                    }
                )
    return {
        "genus": ring.genus,
        "basis": {str(d): list(labels[d]) for d in (0, 1, 2, 3)},
        "structure_constants": consts,
    }
