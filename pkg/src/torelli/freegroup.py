"""Exact word arithmetic in the free surface group F_2g.

Letters are nonzero integers: +k is generator k, -k its inverse, with
generators numbered 1..2g.  Generator 2i-1 is x_i and generator 2i is y_i,
so the abelianization of generator k lands on H1 basis index k-1.

The boundary word of the once-bounded genus-g surface is the fixed relator
[x1,y1][x2,y2]...[xg,yg]; automorphisms in this module either fix it
letter-for-letter or preserve it up to conjugacy.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import GenusMismatch, InvalidAutomorphism, InvalidWord
from .symplectic import Wedge2, pair_basis, pair_index_map

FIXES = "fixes-relator"
CONJUGATES = "preserves-relator-conjugacy"


def reduce_letters(letters) -> tuple:
    out = []
    for letter in letters:
        if letter == 0:
            raise InvalidWord("0 is not a letter")
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """A freely reduced word; construction reduces its letters."""

    letters: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "letters", reduce_letters(self.letters))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple(-l for l in reversed(self.letters)))

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        out = Word()
        for _ in range(n):
            out = out * self
        return out

    def conjugate_by(self, u: "Word") -> "Word":
        return u * self * u.inverse()

    def is_identity(self) -> bool:
        return not self.letters

    def __len__(self) -> int:
        return len(self.letters)

    def max_generator(self) -> int:
        return max((abs(l) for l in self.letters), default=0)

    def cyclic_reduction(self) -> "Word":
        ls = list(self.letters)
        while len(ls) >= 2 and ls[0] == -ls[-1]:
            ls = ls[1:-1]
        return Word(tuple(ls))

    def __str__(self) -> str:
        return format_word(self)


def commutator(u: Word, v: Word) -> Word:
    return u * v * u.inverse() * v.inverse()


def reduce(word) -> Word:
    """Free reduction; accepts a Word or a raw letter sequence."""
    if isinstance(word, Word):
        return word
    return Word(tuple(word))


def generator(k: int) -> Word:
    return Word((k,))


def x(i: int) -> Word:
    return generator(2 * i - 1)


def y(i: int) -> Word:
    return generator(2 * i)


def relator(genus: int) -> Word:
    w = Word()
    for i in range(1, genus + 1):
        w = w * commutator(x(i), y(i))
    return w


def format_word(word: Word) -> str:
    if word.is_identity():
        return "1"
    parts = []
    for l in word.letters:
        k = abs(l)
        name = ("x" if k % 2 else "y") + str((k + 1) // 2)
        parts.append(name if l > 0 else name + "^-1")
    return "*".join(parts)


def parse_word(text: str) -> Word:
    text = text.strip()
    if text in ("", "1"):
        return Word()
    letters = []
    for tok in text.split("*"):
        tok = tok.strip()
        exp = 1
        if "^" in tok:
            tok, etext = tok.split("^", 1)
            try:
                exp = int(etext)
            except ValueError:
                raise InvalidWord(f"bad exponent in {tok!r}^{etext!r}")
        if not tok or tok[0] not in "xy":
            raise InvalidWord(f"bad generator token {tok!r}")
        try:
            i = int(tok[1:])
        except ValueError:
            raise InvalidWord(f"bad generator token {tok!r}")
        if i < 1:
            raise InvalidWord(f"bad generator index in {tok!r}")
        k = 2 * i - 1 if tok[0] == "x" else 2 * i
        if exp == 0:
            continue
        step = k if exp > 0 else -k
        letters.extend([step] * abs(exp))
    return Word(tuple(letters))


def abelianize(word: Word, genus: int) -> tuple:
    """Exponent-sum vector over the 2g generators."""
    out = [0] * (2 * genus)
    for l in word.letters:
        k = abs(l)
        if k > 2 * genus:
            raise GenusMismatch(f"letter {k} exceeds genus {genus}")
        out[k - 1] += 1 if l > 0 else -1
    return tuple(out)


def magnus_degree2(word: Word, genus: int):
    """Magnus expansion truncated at total degree 2.

    Returns (linear, quadratic): the linear part is the abelianization and
    the quadratic part is a 2g x 2g integer matrix.  Each generator maps to
    1 + X, each inverse letter to 1 - X + X^2.
    """
    n = 2 * genus
    lin = [0] * n
    quad = [[0] * n for _ in range(n)]
    for l in word.letters:
        k = abs(l) - 1
        if k >= n:
            raise GenusMismatch(f"letter {abs(l)} exceeds genus {genus}")
        if l > 0:
            for i in range(n):
                if lin[i]:
                    quad[i][k] += lin[i]
            lin[k] += 1
        else:
            quad[k][k] += 1
            for i in range(n):
                if lin[i]:
                    quad[i][k] -= lin[i]
            lin[k] -= 1
    return tuple(lin), tuple(tuple(r) for r in quad)


def lcs_class2(word: Word, genus: int) -> Wedge2:
    """Class of a commutator-subgroup word in depth 2 of the lower central
    series, as an exterior degree-2 class via the Magnus expansion."""
    lin, quad = magnus_degree2(word, genus)
    if any(lin):
        raise InvalidWord("word has nonzero abelianization, not in F^(2)")
    n = 2 * genus
    for i in range(n):
        for j in range(i, n):
            if quad[i][j] != -quad[j][i]:
                raise InvalidWord("degree-2 Magnus matrix is not antisymmetric")
    pidx = pair_index_map(genus)
    coeffs = [0] * len(pair_basis(genus))
    for (i, j), at in pidx.items():
        coeffs[at] = quad[i][j]
    return Wedge2(genus, tuple(coeffs))


@dataclass(frozen=True)
class SurfaceAutomorphism:
    """Images of the 2g generators plus supplied inverse images.

    Validation enforces the generatorwise round trip and the declared
    boundary behavior.  Negative controls in the test suite construct
    deliberately broken instances with validate=False.
    """

    genus: int
    images: tuple
    inverse_images: tuple
    boundary_mode: str = FIXES
    validate: bool = True

    def __post_init__(self):
        n = 2 * self.genus
        if len(self.images) != n or len(self.inverse_images) != n:
            raise InvalidAutomorphism(f"need {n} images and {n} inverse images")
        if self.boundary_mode not in (FIXES, CONJUGATES):
            raise InvalidAutomorphism(f"unknown boundary mode {self.boundary_mode!r}")
        if not self.validate:
            return
        for w in list(self.images) + list(self.inverse_images):
            if w.max_generator() > n:
                raise GenusMismatch("image word uses a generator beyond 2g")
        for k in range(1, n + 1):
            roundtrip = apply(self, self.inverse_images[k - 1])
            if roundtrip.letters != (k,):
                raise InvalidAutomorphism(
                    f"inverse image of generator {k} fails the round trip"
                )
            back = substitute(self.inverse_images, self.images[k - 1])
            if back.letters != (k,):
                raise InvalidAutomorphism(
                    f"image of generator {k} fails the reverse round trip"
                )
        verdict = preserves_relator(self)
        if self.boundary_mode == FIXES and verdict != "fixed":
            raise InvalidAutomorphism("declared fixes-relator but relator moves")
        if self.boundary_mode == CONJUGATES and verdict == "no":
            raise InvalidAutomorphism("relator image is not conjugate to the relator")

    def inverse(self) -> "SurfaceAutomorphism":
        return SurfaceAutomorphism(
            self.genus, self.inverse_images, self.images, self.boundary_mode,
            validate=False,
        )

    def h1_matrix(self):
        """Induced matrix on H1; column k-1 is the abelianized image of generator k."""
        n = 2 * self.genus
        cols = [abelianize(w, self.genus) for w in self.images]
        return tuple(tuple(cols[c][r] for c in range(n)) for r in range(n))


def identity_automorphism(genus: int) -> SurfaceAutomorphism:
    gens = tuple(generator(k) for k in range(1, 2 * genus + 1))
    return SurfaceAutomorphism(genus, gens, gens, FIXES, validate=False)


def substitute(images, word: Word) -> Word:
    """Replace generator k by images[k-1] (inverses by inverted images)."""
    letters = []
    for l in word.letters:
        target = images[abs(l) - 1]
        letters.extend(target.letters if l > 0 else target.inverse().letters)
    return Word(tuple(letters))


def apply(aut: SurfaceAutomorphism, word: Word) -> Word:
    if word.max_generator() > 2 * aut.genus:
        raise GenusMismatch("word uses a generator beyond the automorphism's genus")
    return substitute(aut.images, word)


def compose(a: SurfaceAutomorphism, b: SurfaceAutomorphism) -> SurfaceAutomorphism:
    """The automorphism acting as a after b."""
    if a.genus != b.genus:
        raise GenusMismatch("cannot compose automorphisms of different genus")
    images = tuple(apply(a, w) for w in b.images)
    b_inv = b.inverse()
    inverse_images = tuple(apply(b_inv, w) for w in a.inverse_images)
    mode = FIXES if a.boundary_mode == b.boundary_mode == FIXES else CONJUGATES
    return SurfaceAutomorphism(a.genus, images, inverse_images, mode, validate=False)


def conjugate_automorphism(
    g: SurfaceAutomorphism, phi: SurfaceAutomorphism
) -> SurfaceAutomorphism:
    """g phi g^-1."""
    return compose(compose(g, phi), g.inverse())


def automorphisms_equal(a: SurfaceAutomorphism, b: SurfaceAutomorphism) -> bool:
    return a.genus == b.genus and all(
        u.letters == v.letters for u, v in zip(a.images, b.images)
    )


def is_inner_quotient(a: SurfaceAutomorphism, b: SurfaceAutomorphism) -> bool:
    """True when a and b differ by an inner automorphism."""
    if a.genus != b.genus:
        return False
    diff = compose(a, b.inverse())
    first = apply(diff, generator(1))
    # solve first == u * g1 * u^-1 by stripping the conjugating prefix
    core = first.cyclic_reduction()
    if core.letters != (1,):
        return False
    strip = 0
    ls = first.letters
    while strip < len(ls) // 2 and ls[strip] == -ls[len(ls) - 1 - strip]:
        strip += 1
    u = Word(ls[:strip])
    for k in range(1, 2 * a.genus + 1):
        expect = generator(k).conjugate_by(u)
        if apply(diff, generator(k)).letters != expect.letters:
            return False
    return True


def generator_names(genus: int):
    names = []
    for i in range(1, genus + 1):
        names.extend([f"x{i}", f"y{i}"])
    return names


def format_automorphism(aut: SurfaceAutomorphism) -> str:
    lines = [f"genus = {aut.genus}", f"boundary_mode = {aut.boundary_mode}"]
    names = generator_names(aut.genus)
    for name, img in zip(names, aut.images):
        lines.append(f"image {name} = {format_word(img)}")
    for name, inv in zip(names, aut.inverse_images):
        lines.append(f"inverse {name} = {format_word(inv)}")
    return "\n".join(lines) + "\n"


def parse_automorphism(text: str) -> SurfaceAutomorphism:
    genus = None
    mode = FIXES
    images = {}
    inverses = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise InvalidWord(f"unparseable automorphism line {raw!r}")
        key, val = (s.strip() for s in line.split("=", 1))
        if key == "genus":
            genus = int(val)
        elif key == "boundary_mode":
            mode = val
        elif key.startswith("image "):
            images[key.split()[1]] = parse_word(val)
        elif key.startswith("inverse "):
            inverses[key.split()[1]] = parse_word(val)
        else:
            raise InvalidWord(f"unknown automorphism key {key!r}")
    if genus is None:
        raise InvalidWord("automorphism record is missing its genus")
    names = generator_names(genus)
    missing = [n for n in names if n not in images or n not in inverses]
    if missing:
        raise InvalidWord(f"missing image/inverse lines for {', '.join(missing)}")
    return SurfaceAutomorphism(
        genus,
        tuple(images[n] for n in names),
        tuple(inverses[n] for n in names),
        mode,
    )


def preserves_relator(aut, images=None) -> str:
    """Classify the image of the relator: 'fixed', 'conjugate', or 'no'.

    Accepts a SurfaceAutomorphism, or (genus, images) for raw image lists
    that need not define an automorphism.
    """
    if isinstance(aut, SurfaceAutomorphism):
        genus, images = aut.genus, aut.images
    else:
        genus = aut
        if images is None:
            raise InvalidWord("raw form needs (genus, images)")
    w = relator(genus)
    img = substitute(tuple(images), w)
    if img.letters == w.letters:
        return "fixed"
    a = img.cyclic_reduction().letters
    b = w.cyclic_reduction().letters
    if len(a) == len(b) and len(b) > 0:
        doubled = b + b
        for shift in range(len(b)):
            if doubled[shift : shift + len(b)] == a:
                return "conjugate"
    return "no"
