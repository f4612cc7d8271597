"""Virtual braid words and Gauss codes.

Word convention: letters act top to bottom, so in the word ``"a b"`` the
letter ``a`` is applied to the incoming tuple first.  In ``s<i>`` the strand
entering at position ``i`` passes under and leaves at ``i+1``; in ``S<i>`` it
passes over.  Virtual crossings ``v<i>`` leave no trace in a Gauss code.
"""
from __future__ import annotations

import enum
import random
import re
from dataclasses import dataclass

from .errors import ParseError, StructureError


class Kind(enum.Enum):
    SIGMA = "s"
    SIGMA_INV = "S"
    RHO = "v"


@dataclass(frozen=True)
class Generator:
    kind: Kind
    index: int  # 1-based: acts on positions index, index+1

    def inverse(self) -> "Generator":
        if self.kind is Kind.SIGMA:
            return Generator(Kind.SIGMA_INV, self.index)
        if self.kind is Kind.SIGMA_INV:
            return Generator(Kind.SIGMA, self.index)
        return self

    @property
    def classical(self) -> bool:
        return self.kind is not Kind.RHO

    def __str__(self) -> str:
        return f"{self.kind.value}{self.index}"


def Sigma(i: int) -> Generator:
    return Generator(Kind.SIGMA, i)


def SigmaInv(i: int) -> Generator:
    return Generator(Kind.SIGMA_INV, i)


def Rho(i: int) -> Generator:
    return Generator(Kind.RHO, i)


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[Generator, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise StructureError("a braid needs at least one strand")
        object.__setattr__(self, "letters", tuple(self.letters))
        for g in self.letters:
            if not 1 <= g.index <= self.strands - 1:
                raise StructureError(
                    f"generator {g} out of range for {self.strands} strands"
                )

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return " ".join(map(str, self.letters))

    def then(self, other: "BraidWord") -> "BraidWord":
        """The word applying ``self`` first and ``other`` second."""
        if other.strands != self.strands:
            raise StructureError("strand counts differ")
        return BraidWord(self.strands, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(g.inverse() for g in reversed(self.letters)))


_TOKEN = re.compile(r"([sSv])(\d+)")


def parse_braid(text: str, strands: int | None = None) -> BraidWord:
    letters = []
    for tok in text.split():
        m = _TOKEN.fullmatch(tok)
        if m is None:
            raise ParseError(f"unknown braid token {tok!r}")
        i = int(m.group(2))
        if i == 0:
            raise ParseError(f"generator index must be at least 1: {tok!r}")
        letters.append(Generator(Kind(m.group(1)), i))
    top = max((g.index for g in letters), default=0)
    if strands is None:
        strands = max(top + 1, 1)
    elif top >= strands:
        raise ParseError(f"generator index {top} out of range for {strands} strands")
    if strands < 1:
        raise ParseError("strand count must be positive")
    return BraidWord(strands, tuple(letters))


def closure_permutation(b: BraidWord) -> tuple[tuple[int, ...], int]:
    """``(perm, components)``: ``perm[p-1]`` is the bottom position reached by
    the strand starting at top position ``p`` (1-based); components is the
    number of cycles, i.e. of link components of the closure."""
    where = list(range(b.strands))  # where[pos] = starting strand now at pos
    for g in b.letters:
        i = g.index - 1
        where[i], where[i + 1] = where[i + 1], where[i]
    perm = [0] * b.strands
    for pos, start in enumerate(where):
        perm[start] = pos + 1
    seen = [False] * b.strands
    cycles = 0
    for p in range(b.strands):
        if not seen[p]:
            cycles += 1
            while not seen[p]:
                seen[p] = True
                p = perm[p] - 1
    return tuple(perm), cycles


def conjugate(b: BraidWord, g: Generator) -> BraidWord:
    """g . b . g^-1 (applied left to right); same closure as b."""
    return BraidWord(b.strands, (g,) + b.letters + (g.inverse(),))


class Stab(enum.Enum):
    POS = "pos"
    NEG = "neg"
    VIRT = "virt"


def stabilize(b: BraidWord, kind: Stab | str) -> BraidWord:
    """Add a strand and append sigma_n, sigma_n^-1 or rho_n on the last two strands."""
    kind = Stab(kind)
    n = b.strands
    g = {Stab.POS: Sigma(n), Stab.NEG: SigmaInv(n), Stab.VIRT: Rho(n)}[kind]
    return BraidWord(n + 1, b.letters + (g,))


def all_generators(strands: int) -> list[Generator]:
    return [Generator(k, i) for i in range(1, strands) for k in Kind]


def random_braid(strands: int, length: int, seed: int) -> BraidWord:
    if strands < 2:
        raise StructureError("random braids need at least two strands")
    rng = random.Random(seed)
    gens = all_generators(strands)
    return BraidWord(strands, tuple(rng.choice(gens) for _ in range(length)))


# ---------------------------------------------------------------------------
# Gauss codes

@dataclass(frozen=True)
class Token:
    over: bool
    crossing: int
    sign: int  # +1 or -1

    def __str__(self) -> str:
        return f"{'O' if self.over else 'U'}{self.crossing}{'+' if self.sign > 0 else '-'}"


@dataclass(frozen=True)
class GaussCode:
    components: tuple[tuple[Token, ...], ...]

    def __post_init__(self):
        comps = tuple(tuple(c) for c in self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise StructureError("a Gauss code needs at least one component")
        seen: dict[int, list[Token]] = {}
        for comp in comps:
            for t in comp:
                if t.crossing < 1:
                    raise StructureError(f"crossing ids must be positive: {t}")
                if t.sign not in (1, -1):
                    raise StructureError(f"bad sign in {t}")
                seen.setdefault(t.crossing, []).append(t)
        for cid, toks in seen.items():
            if len(toks) != 2:
                raise StructureError(f"crossing {cid} occurs {len(toks)} times, expected 2")
            if toks[0].over == toks[1].over:
                which = "Over" if toks[0].over else "Under"
                raise StructureError(f"crossing {cid} has two {which} passages")
            if toks[0].sign != toks[1].sign:
                raise StructureError(f"crossing {cid} has mismatched signs")

    @property
    def crossings(self) -> list[int]:
        return sorted({t.crossing for comp in self.components for t in comp})

    def __str__(self) -> str:
        return "|".join("".join(map(str, comp)) for comp in self.components)


def braid_to_gauss(b: BraidWord) -> GaussCode:
    """Gauss code of the closure of ``b``.

    Each classical letter gets crossing id equal to its rank among classical
    letters.  Components are listed by smallest starting position, each read
    from the top of that position.
    """
    ids = {}
    for k, g in enumerate(b.letters):
        if g.classical:
            ids[k] = len(ids) + 1
    done = [False] * b.strands
    comps = []
    for start in range(b.strands):
        if done[start]:
            continue
        tokens = []
        pos = start
        while True:
            done[pos] = True
            for k, g in enumerate(b.letters):
                i = g.index - 1
                if pos not in (i, i + 1):
                    continue
                left = pos == i
                if g.kind is Kind.SIGMA:
                    tokens.append(Token(not left, ids[k], 1))
                elif g.kind is Kind.SIGMA_INV:
                    tokens.append(Token(left, ids[k], -1))
                pos = i + 1 if left else i
            if pos == start:
                break
        comps.append(tuple(tokens))
    return GaussCode(tuple(comps))

