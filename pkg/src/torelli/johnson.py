"""The Johnson homomorphism in its lower-central-series form.

For a Torelli automorphism of the once-bounded surface group, each
generator gamma yields the depth-2 class of phi(gamma) gamma^-1; assembling
these over the homology basis and dualizing gives an integer tensor that
the canonical embedding pulls back to a degree-3 exterior class.  The
closed-surface value is the canonical coset representative modulo q^H1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotTorelli
from .freegroup import FIXES, SurfaceAutomorphism, apply, generator, lcs_class2
from .symplectic import (
    TensorHW2,
    Wedge3,
    contract_p,
    coset_normal_form,
    extract_iota_preimage,
    pair_basis,
    pairing_matrix,
)


@dataclass(frozen=True)
class JohnsonValue:
    bounded: Wedge3
    closed: Wedge3

    def __post_init__(self):
        if self.closed.coeffs != coset_normal_form(self.bounded).coeffs:
            raise ValueError("closed part is not the coset normal form")


@dataclass(frozen=True)
class PsiValue:
    """Vector of length 2g with entries mod g-1."""

    genus: int
    coords: tuple

    def __post_init__(self):
        if self.genus < 2:
            raise ValueError("psi needs genus >= 2")
        m = self.genus - 1
        if len(self.coords) != 2 * self.genus or any(
            not 0 <= c < max(m, 1) for c in self.coords
        ):
            raise ValueError("psi coordinates out of range")


def is_torelli(aut: SurfaceAutomorphism) -> bool:
    """True when the induced matrix on H1 is the identity."""
    n = 2 * aut.genus
    M = aut.h1_matrix()
    return all(M[r][c] == (1 if r == c else 0) for r in range(n) for c in range(n))


def johnson_tensor(aut: SurfaceAutomorphism) -> TensorHW2:
    """The dualized generator-by-generator depth-2 data of a Torelli element.

    Row r of the result is sum_s J[r][s] * class(phi(gamma_s) gamma_s^-1),
    the Poincare-duality pairing u -> (v -> u.v) applied to the assembled
    map from H1 to the second exterior power.
    """
    if aut.boundary_mode != FIXES:
        raise NotTorelli("johnson values need the fixes-relator model")
    if not is_torelli(aut):
        raise NotTorelli("automorphism acts nontrivially on H1")
    g = aut.genus
    n = 2 * g
    classes = []
    for k in range(1, n + 1):
        moved = apply(aut, generator(k)) * generator(k).inverse()
        classes.append(lcs_class2(moved, g).coeffs)
    J = pairing_matrix(g)
    ncols = len(pair_basis(g))
    rows = []
    for r in range(n):
        row = [0] * ncols
        for s in range(n):
            if J[r][s]:
                for c in range(ncols):
                    row[c] += J[r][s] * classes[s][c]
        rows.append(tuple(row))
    return TensorHW2(g, tuple(rows))


def tau1(aut: SurfaceAutomorphism) -> JohnsonValue:
    """Johnson homomorphism of a Torelli element of the bounded surface."""
    bounded = extract_iota_preimage(johnson_tensor(aut))
    return JohnsonValue(bounded, coset_normal_form(bounded))


def tau_closed(aut: SurfaceAutomorphism) -> Wedge3:
    """Closed-surface Johnson value: the coset representative mod q^H1."""
    return tau1(aut).closed


def psi(aut: SurfaceAutomorphism) -> PsiValue:
    """Contraction of the Johnson value, reduced mod g-1.

    Well defined on the closed coset because contracting q^h gives (g-1) h.
    """
    g = aut.genus
    if g < 2:
        raise NotTorelli("psi needs genus >= 2")
    vec = contract_p(tau1(aut).bounded)
    m = g - 1
    return PsiValue(g, tuple(c % m for c in vec))


def rank_h1(lam: str, r: int, n: int) -> int:
    """First-cohomology rank table for level subgroups, by highest weight.

    Valid for genus at least 3; callers surface that caveat as metadata.
    """
    if r < 0 or n < 0:
        raise ValueError("r and n must be nonnegative")
    if lam == "lambda1":
        return r + n
    if lam == "lambda3":
        return 1
    if lam == "other":
        return 0
    raise ValueError(f"unknown weight {lam!r}")
