"""Action of Torelli elements on the n-th roots of the canonical bundle.

Roots correspond to splittings of a mod-n extension of H1, forming a
torsor under H1(mod n).  A Torelli element acts by an even translation:
double the psi invariant, lift from modulus g-1 to modulus n (legitimate
whenever n divides 2g-2), and apply the fixed duality map between H1 and
its dual basis coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GenusMismatch, InvalidModulus, TorelliError
from .freegroup import SurfaceAutomorphism
from .johnson import psi
from .symplectic import is_symplectic, mat_mul, mat_vec, pairing_matrix


def _check_modulus(genus: int, n: int):
    if n < 1 or (2 * genus - 2) % n != 0:
        raise InvalidModulus(f"n = {n} does not divide 2g - 2 = {2 * genus - 2}")


def poincare_dual(vec, genus: int):
    """Coordinates of the functional v . ( ) in the dual basis."""
    J = pairing_matrix(genus)
    n = 2 * genus
    return tuple(sum(J[r][i] * vec[r] for r in range(n)) for i in range(n))


def is_even_translation(translation, n: int) -> bool:
    """Membership in twice the mod-n lattice; everything is even for odd n."""
    if n % 2 == 1:
        return True
    return all(t % 2 == 0 for t in translation)


@dataclass(frozen=True)
class RootTorsorPoint:
    """An n-th root of the canonical bundle, as an offset from an unnamed
    base splitting."""

    genus: int
    n: int
    offset: tuple

    def __post_init__(self):
        _check_modulus(self.genus, self.n)
        if len(self.offset) != 2 * self.genus:
            raise GenusMismatch("offset length must be 2g")
        object.__setattr__(self, "offset", tuple(c % self.n for c in self.offset))


@dataclass(frozen=True)
class KnElement:
    """Automorphism of the root torsor lying over a mod-n symplectic matrix."""

    genus: int
    n: int
    sp_part: tuple
    translation: tuple

    def __post_init__(self):
        size = 2 * self.genus
        if len(self.translation) != size:
            raise GenusMismatch("translation length must be 2g")
        sp = tuple(tuple(v % self.n for v in row) for row in self.sp_part)
        if not is_symplectic(sp, self.genus, modulus=self.n):
            raise TorelliError("sp_part is not symplectic mod n")
        object.__setattr__(self, "sp_part", sp)
        object.__setattr__(
            self, "translation", tuple(t % self.n for t in self.translation)
        )

    @property
    def even_flag(self) -> bool:
        return is_even_translation(self.translation, self.n)

    @staticmethod
    def identity(genus: int, n: int) -> "KnElement":
        size = 2 * genus
        eye = tuple(tuple(1 if r == c else 0 for c in range(size)) for r in range(size))
        return KnElement(genus, n, eye, (0,) * size)


def kn_compose(p: KnElement, q: KnElement) -> KnElement:
    """Composite affine map, p after q."""
    if (p.genus, p.n) != (q.genus, q.n):
        raise GenusMismatch("composing elements over different genus or modulus")
    sp = tuple(
        tuple(v % p.n for v in row) for row in mat_mul(p.sp_part, q.sp_part)
    )
    moved = mat_vec(p.sp_part, q.translation)
    translation = tuple((a + b) % p.n for a, b in zip(p.translation, moved))
    return KnElement(p.genus, p.n, sp, translation)


def kn_inverse(p: KnElement) -> KnElement:
    """Exact inverse mod n via the integer adjugate."""
    size = 2 * p.genus
    M = [list(row) for row in p.sp_part]
    det, adj = _det_and_adjugate(M)
    det_mod = det % p.n
    inv_det = pow(det_mod, -1, p.n) if p.n > 1 else 0
    sp_inv = tuple(
        tuple((inv_det * adj[r][c]) % p.n for c in range(size)) for r in range(size)
    )
    translation = tuple(
        (-t) % p.n for t in mat_vec(sp_inv, p.translation)
    )
    return KnElement(p.genus, p.n, sp_inv, translation)


def _det_and_adjugate(M):
    size = len(M)
    from fractions import Fraction

    def minor_det(rows, cols):
        sub = [[Fraction(M[r][c]) for c in cols] for r in rows]
        det = Fraction(1)
        m = len(sub)
        for col in range(m):
            piv = None
            for r in range(col, m):
                if sub[r][col] != 0:
                    piv = r
                    break
            if piv is None:
                return Fraction(0)
            if piv != col:
                sub[col], sub[piv] = sub[piv], sub[col]
                det = -det
            pv = sub[col][col]
            det *= pv
            for r in range(col + 1, m):
                if sub[r][col] != 0:
                    fac = sub[r][col] / pv
                    for c in range(col, m):
                        sub[r][c] -= fac * sub[col][c]
        return det

    full = minor_det(range(size), range(size))
    adj = [[0] * size for _ in range(size)]
    for r in range(size):
        for c in range(size):
            rows = [i for i in range(size) if i != c]
            cols = [j for j in range(size) if j != r]
            sign = -1 if (r + c) % 2 else 1
            val = sign * minor_det(rows, cols)
            assert val.denominator == 1
            adj[r][c] = int(val)
    assert full.denominator == 1
    return int(full), adj


def act_on_root(k: KnElement, r: RootTorsorPoint) -> RootTorsorPoint:
    if (k.genus, k.n) != (r.genus, r.n):
        raise GenusMismatch("element and point over different genus or modulus")
    moved = mat_vec(k.sp_part, r.offset)
    return RootTorsorPoint(
        r.genus, r.n, tuple((a + b) % k.n for a, b in zip(moved, k.translation))
    )


def theta_translation(aut: SurfaceAutomorphism, n: int):
    """Translation part of the action of a Torelli element on n-th roots.

    Doubles psi, lifts to modulus n, and dualizes; the result is always an
    even translation, and vanishes identically when n divides 2.
    """
    g = aut.genus
    _check_modulus(g, n)
    value = psi(aut)  # raises NotTorelli on bad input
    doubled = tuple((2 * c) % n for c in value.coords)
    dual = poincare_dual(doubled, g)
    out = tuple(v % n for v in dual)
    if not is_even_translation(out, n):
        raise TorelliError("translation unexpectedly odd; convention breakage")
    return out


def serialize_kn_element(k: KnElement) -> dict:
    return {
        "genus": k.genus,
        "n": k.n,
        "sp_part": [list(row) for row in k.sp_part],
        "translation": list(k.translation),
        "even": k.even_flag,
    }


def parse_kn_element(data: dict) -> KnElement:
    return KnElement(
        int(data["genus"]),
        int(data["n"]),
        tuple(tuple(int(v) for v in row) for row in data["sp_part"]),
        tuple(int(v) for v in data["translation"]),
    )


def serialize_root_point(r: RootTorsorPoint) -> dict:
    return {"genus": r.genus, "n": r.n, "offset": list(r.offset)}


def parse_root_point(data: dict) -> RootTorsorPoint:
    return RootTorsorPoint(
        int(data["genus"]), int(data["n"]), tuple(int(v) for v in data["offset"])
    )


def torelli_action_trivial(n: int, genus: int, pool=None) -> bool:
    """Whether the Torelli group acts trivially on n-th roots: exactly when
    n divides 2.  With a pool supplied, cross-checks the translations."""
    if genus < 3:
        raise GenusMismatch("the triviality criterion is stated for genus >= 3")
    _check_modulus(genus, n)
    trivial = n <= 2
    if pool is not None:
        translations = [theta_translation(aut, n) for aut in pool]
        all_zero = all(all(c == 0 for c in t) for t in translations)
        if trivial and not all_zero:
            raise TorelliError("nonzero translation found although n divides 2")
        if not trivial and all_zero:
            raise TorelliError(
                "pool translations all vanish although n does not divide 2"
            )
    return trivial
