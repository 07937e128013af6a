"""Algebra presentations and their plain-text serialization.

Text format, one item per line (``#`` starts a comment)::

    presentation osp12
    generators: A0 Ap Am P
    involutions: P
    centrals:
    relation anti_pm: {Ap,Am} = 2*A0

``involutions`` lists symbols audited for ``g*g = 1``; ``centrals`` are
extra symbols audited to commute with every generator. A line
``display <tag>: lhs = rhs`` supplies the literal form of relation ``<tag>``
as printed in the source literature when it differs from the verified one;
it is only used when loading with ``variant="display"``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources

from dualhahn.presentations.parser import (
    ParseError,
    format_expression,
    parse_expression,
    polynomial_difference,
    symbols,
)

RESERVED = {"i"}


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class Relation:
    tag: str
    lhs: object
    rhs: object

    @classmethod
    def parse(cls, tag: str, text: str) -> "Relation":
        if text.count("=") != 1:
            raise ParseError(f"relation {tag!r} must contain exactly one '=': {text!r}")
        left, right = text.split("=")
        return cls(tag, parse_expression(left), parse_expression(right))

    @property
    def text(self) -> str:
        return f"{format_expression(self.lhs)} = {format_expression(self.rhs)}"

    @cached_property
    def polynomial(self) -> dict:
        """``lhs - rhs`` expanded into words."""
        return polynomial_difference(self.lhs, self.rhs)

    @property
    def symbols(self) -> set[str]:
        return symbols(self.lhs) | symbols(self.rhs)


@dataclass(frozen=True)
class Presentation:
    name: str
    generators: tuple[str, ...]
    relations: tuple[Relation, ...]
    centrals: tuple[str, ...] = ()
    involutions: tuple[str, ...] = ()
    display: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        declared = set(self.generators) | set(self.centrals)
        if len(declared) != len(self.generators) + len(self.centrals):
            raise PresentationError(f"{self.name}: duplicate symbol declaration")
        if declared & RESERVED:
            raise PresentationError(f"{self.name}: 'i' is reserved for the imaginary unit")
        if not set(self.involutions) <= declared:
            raise PresentationError(f"{self.name}: involutions must be declared symbols")
        tags = [r.tag for r in self.relations]
        if len(set(tags)) != len(tags):
            raise PresentationError(f"{self.name}: duplicate relation tag")
        for rel in list(self.relations) + list(self.display.values()):
            unknown = rel.symbols - declared
            if unknown:
                raise PresentationError(f"{self.name}/{rel.tag}: undeclared symbols {sorted(unknown)}")

    @property
    def symbols(self) -> tuple[str, ...]:
        return self.generators + self.centrals

    @property
    def max_word_length(self) -> int:
        return max((len(w) for r in self.relations for w in r.polynomial), default=0)

    def relation(self, tag: str) -> Relation:
        for r in self.relations:
            if r.tag == tag:
                return r
        raise KeyError(tag)

    def display_variant(self) -> "Presentation":
        """Same presentation with relations replaced by their literal display forms."""
        rels = tuple(self.display.get(r.tag, r) for r in self.relations)
        return Presentation(self.name, self.generators, rels, self.centrals, self.involutions)

    def to_text(self) -> str:
        lines = [
            f"presentation {self.name}",
            "generators: " + " ".join(self.generators),
            "involutions: " + " ".join(self.involutions),
            "centrals: " + " ".join(self.centrals),
        ]
        lines += [f"relation {r.tag}: {r.text}" for r in self.relations]
        lines += [f"display {tag}: {r.text}" for tag, r in self.display.items()]
        return "\n".join(line.rstrip() for line in lines) + "\n"


def parse_presentation(text: str, variant: str = "verified") -> Presentation:
    """Parse the text format. ``variant="display"`` substitutes display lines."""
    if variant not in ("verified", "display"):
        raise ValueError(f"unknown variant {variant!r}")
    name = None
    header: dict[str, tuple[str, ...]] = {}
    relations: list[Relation] = []
    display: dict[str, Relation] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        if keyword == "presentation":
            name = rest.strip()
        elif keyword in ("generators:", "involutions:", "centrals:"):
            key, _, values = line.partition(":")
            header[key.strip()] = tuple(values.split())
        elif keyword in ("relation", "display"):
            tag, sep, body = rest.partition(":")
            if not sep or not tag.strip():
                raise ParseError(f"line {lineno}: expected '{keyword} <tag>: lhs = rhs'")
            rel = Relation.parse(tag.strip(), body.strip())
            if keyword == "relation":
                relations.append(rel)
            else:
                display[rel.tag] = rel
        else:
            raise ParseError(f"line {lineno}: unrecognized line {raw!r}")
    if name is None:
        raise ParseError("missing 'presentation <name>' line")
    tags = {r.tag for r in relations}
    if set(display) - tags:
        raise ParseError(f"display lines for unknown relations {sorted(set(display) - tags)}")
    pres = Presentation(
        name,
        header.get("generators", ()),
        tuple(relations),
        header.get("centrals", ()),
        header.get("involutions", ()),
        display,
    )
    return pres.display_variant() if variant == "display" else pres


def adhoc_presentation(name: str, generators, relations, centrals=(), involutions=()) -> Presentation:
    """Presentation from ``(tag, "lhs = rhs")`` pairs."""
    rels = tuple(Relation.parse(tag, text) for tag, text in relations)
    return Presentation(name, tuple(generators), rels, tuple(centrals), tuple(involutions))


BUILTIN = ("dual_m1_hahn", "sd2", "osp12", "commutant_closure", "cg_kappa")


def o_n_presentation(n: int) -> Presentation:
    """Relations ``[l_mn, l_rs] = -i(d_nr l_ms - d_ns l_mr - d_mr l_ns + d_ms l_nr)``.

    Generators are ``l<m>_<n>`` for ``1 <= m < n``; one relation per unordered
    pair of distinct generators.
    """
    if n < 2:
        raise ValueError("o(n) needs n >= 2")
    pairs = [(m, k) for m in range(1, n + 1) for k in range(m + 1, n + 1)]

    def gen(a, b):
        if a == b:
            return None
        return (1, f"l{a}_{b}") if a < b else (-1, f"l{b}_{a}")

    relations = []
    for x in range(len(pairs)):
        for y in range(x + 1, len(pairs)):
            (m, k), (r, s) = pairs[x], pairs[y]
            terms: dict[str, int] = {}
            for delta, sign, (p, q) in (
                (k == r, 1, (m, s)),
                (k == s, -1, (m, r)),
                (m == r, -1, (k, s)),
                (m == s, 1, (k, r)),
            ):
                g = gen(p, q) if delta else None
                if g is not None:
                    terms[g[1]] = terms.get(g[1], 0) + sign * g[0]
            # overall factor -i: a +1 term prints as "-i*l", a -1 term as "i*l"
            rhs = ""
            for sym, c in terms.items():
                if c == 0:
                    continue
                if abs(c) != 1:
                    raise AssertionError("o(n) structure constants are 0 or +-1")
                if not rhs:
                    rhs = f"-i*{sym}" if c > 0 else f"i*{sym}"
                else:
                    rhs += f" - i*{sym}" if c > 0 else f" + i*{sym}"
            rhs = rhs or "0"
            relations.append((f"l{m}_{k}.l{r}_{s}", f"[l{m}_{k},l{r}_{s}] = {rhs}"))
    return adhoc_presentation(f"o_{n}", [f"l{m}_{k}" for m, k in pairs], relations)


def builtin_presentation(name: str, variant: str = "verified") -> Presentation:
    """Load a shipped presentation; ``o_n(4)`` style names build o(n)."""
    if name.startswith("o_n(") and name.endswith(")"):
        return o_n_presentation(int(name[4:-1]))
    if name not in BUILTIN:
        raise KeyError(f"unknown presentation {name!r}; known: {', '.join(BUILTIN)}, o_n(<n>)")
    text = resources.files("dualhahn.presentations").joinpath("data").joinpath(f"{name}.pres").read_text()
    return parse_presentation(text, variant)
