"""Shipped twist data: validated automorphisms for standard Dehn twists,
bounding pairs, and separating twists on the once-bounded surfaces of
genus 2 and 3, plus deterministic Torelli test pools.

The data files were authored by the derivation script in scripts/ and are
trusted only through validate(): relator fixed letter-for-letter, homology
action equal to the transvection along the declared curve class, and the
braid/commutation identities for every declared pair of curves.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from importlib import resources

from .errors import CorruptCatalogue, UnsupportedGenus
from .freegroup import (
    SurfaceAutomorphism,
    automorphisms_equal,
    compose,
    conjugate_automorphism,
    parse_word,
    preserves_relator,
)
from .johnson import is_torelli
from .symplectic import parse_h1, transvection

SUPPORTED = (2, 3)

KINDS = ("nonseparating-twist", "separating-twist", "bounding-pair", "conjugator")


@dataclass(frozen=True)
class CatalogueEntry:
    name: str
    genus: int
    curve_h1: tuple
    kind: str
    automorphism: SurfaceAutomorphism
    metadata: dict = field(default_factory=dict)

    @property
    def gprime(self):
        return self.metadata.get("gprime")

    @property
    def aclass(self):
        return self.metadata.get("aclass")

    @property
    def intersections(self):
        return self.metadata.get("intersections", {})


def _generator_order(genus):
    names = []
    for i in range(1, genus + 1):
        names.extend([f"x{i}", f"y{i}"])
    return names


def _parse_entries(text, genus):
    entries = []
    block = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line == "[entry]":
            if block is not None:
                entries.append(block)
            block = {}
            continue
        m = re.match(r"^(image|inverse)\s+([xy]\d+)\s*=\s*(.*)$", line)
        if m:
            if block is None:
                raise CorruptCatalogue("image line outside an entry")
            block[f"{m.group(1)}:{m.group(2)}"] = m.group(3).strip()
            continue
        if "=" in line:
            key, val = line.split("=", 1)
            key, val = key.strip(), val.strip()
            if block is None:
                if key == "genus" and int(val) != genus:
                    raise CorruptCatalogue("file genus does not match its name")
                continue
            block[key] = val
            continue
        raise CorruptCatalogue(f"unparseable catalogue line: {raw!r}")
    if block is not None:
        entries.append(block)

    order = _generator_order(genus)
    out = []
    for block in entries:
        try:
            name = block["name"]
            kind = block["kind"]
            if kind not in KINDS:
                raise CorruptCatalogue(f"{name}: unknown kind {kind!r}")
            curve = parse_h1(block["curve"], genus)
            images = tuple(parse_word(block[f"image:{g}"]) for g in order)
            invs = tuple(parse_word(block[f"inverse:{g}"]) for g in order)
            aut = SurfaceAutomorphism(genus, images, invs)
        except CorruptCatalogue:
            raise
        except Exception as exc:
            raise CorruptCatalogue(f"entry {block.get('name', '?')}: {exc}") from exc
        metadata = {}
        if "gprime" in block:
            metadata["gprime"] = int(block["gprime"])
        if "aclass" in block:
            metadata["aclass"] = block["aclass"]
        if "intersections" in block:
            inter = {}
            for tok in block["intersections"].split():
                other, num = tok.rsplit(":", 1)
                inter[other] = int(num)
            metadata["intersections"] = inter
        out.append(CatalogueEntry(name, genus, curve, kind, aut, metadata))
    return out


def load(genus: int):
    """All shipped entries for the genus, validated; raises on any failure."""
    if genus not in SUPPORTED:
        raise UnsupportedGenus(f"no catalogue for genus {genus}")
    path = resources.files("torelli").joinpath("data", f"genus{genus}.cat")
    entries = _parse_entries(path.read_text(), genus)
    by_name = {e.name: e for e in entries}
    for entry in entries:
        report = validate(entry, by_name)
        if report:
            raise CorruptCatalogue(f"{entry.name}: " + "; ".join(report))
    return entries


def _braid_holds(a, b):
    lhs = compose(compose(a, b), a)
    rhs = compose(compose(b, a), b)
    if automorphisms_equal(lhs, rhs):
        return True
    from .freegroup import is_inner_quotient

    return is_inner_quotient(lhs, rhs)


def validate(entry: CatalogueEntry, others=None):
    """Run all entry invariants; returns a report of violations (empty when
    valid).  `others` maps names to entries for declared-intersection checks.
    """
    report = []
    aut = entry.automorphism
    if entry.genus != aut.genus:
        report.append("genus of automorphism does not match entry")
    if preserves_relator(aut) != "fixed":
        report.append("relator is not fixed letter-for-letter")
    M = aut.h1_matrix()
    if entry.kind == "nonseparating-twist":
        if not any(entry.curve_h1):
            report.append("nonseparating twist with zero curve class")
        elif M != transvection(entry.curve_h1):
            report.append("homology action differs from the declared transvection")
    elif entry.kind in ("separating-twist", "bounding-pair"):
        if not is_torelli(aut):
            report.append("homology action is not the identity")
        if entry.kind == "separating-twist" and any(entry.curve_h1):
            report.append("separating twist must declare the zero class")
        if entry.kind == "bounding-pair":
            if entry.gprime is None or entry.aclass is None:
                report.append("bounding pair needs gprime and aclass metadata")
            elif not 1 <= entry.gprime <= entry.genus - 1:
                report.append("gprime out of range")
    if others:
        for other_name, count in entry.intersections.items():
            other = others.get(other_name)
            if other is None:
                report.append(f"declared intersection with unknown {other_name}")
                continue
            if count == 0:
                if not automorphisms_equal(
                    compose(aut, other.automorphism),
                    compose(other.automorphism, aut),
                ):
                    report.append(f"disjoint-curve commutation fails with {other_name}")
            elif count == 1:
                if not _braid_holds(aut, other.automorphism):
                    report.append(f"braid relation fails with {other_name}")
    return report


def torelli_pool(genus: int, size: int):
    """Deterministic list of Torelli elements built from the catalogue:
    bounding pairs, separating twists, their products, and conjugates by
    non-Torelli twists.  The first element is the canonical genus-one-side
    bounding pair."""
    if genus not in SUPPORTED:
        raise UnsupportedGenus(f"no catalogue for genus {genus}")
    if size < 1:
        raise ValueError("pool size must be at least 1")
    entries = load(genus)
    base = [e.automorphism for e in entries if e.kind == "bounding-pair"]
    base += [e.automorphism for e in entries if e.kind == "separating-twist"]
    conjugators = [
        e.automorphism
        for e in entries
        if e.kind in ("nonseparating-twist", "conjugator")
    ]
    bps = [e.automorphism for e in entries if e.kind == "bounding-pair"]
    rng = random.Random(7000 + genus)
    pool = []
    while len(pool) < size:
        i = len(pool)
        if i < len(base):
            aut = base[i]
        elif i % 3 == 0:
            # conjugated bounding pairs carry moved johnson values
            target = bps[i % len(bps)]
            g = conjugators[rng.randrange(len(conjugators))]
            aut = conjugate_automorphism(g, target)
        elif i % 3 == 1:
            a = pool[rng.randrange(len(pool))]
            b = pool[rng.randrange(len(pool))]
            aut = compose(a, b)
        else:
            target = pool[rng.randrange(len(pool))]
            g = conjugators[rng.randrange(len(conjugators))]
            aut = conjugate_automorphism(g, target)
        pool.append(aut)
    for aut in pool:
        if not is_torelli(aut):
            raise CorruptCatalogue("pool construction produced a non-Torelli element")
    return pool
