"""Exact computation of Johnson homomorphisms of the Torelli group, the
mapping-torus cup-product ring, and the induced action on roots of the
canonical bundle.  Integer arithmetic throughout."""

from .errors import (
    CorruptCatalogue,
    GenusMismatch,
    InvalidAutomorphism,
    InvalidModulus,
    InvalidWord,
    NotInImage,
    NotTorelli,
    TorelliError,
    UnsupportedGenus,
)
from .freegroup import (
    SurfaceAutomorphism,
    Word,
    abelianize,
    apply,
    commutator,
    compose,
    conjugate_automorphism,
    format_word,
    identity_automorphism,
    lcs_class2,
    parse_word,
    preserves_relator,
    reduce,
    relator,
)
from .johnson import JohnsonValue, PsiValue, is_torelli, psi, rank_h1, tau1, tau_closed
from .symplectic import (
    TensorHW2,
    Wedge2,
    Wedge3,
    contract_p,
    coset_normal_form,
    decompose_lambda3,
    embed_iota,
    extract_iota_preimage,
    intersection,
    symplectic_form_w2,
    transvection,
    wedge_q,
)

__version__ = "0.1.0"
