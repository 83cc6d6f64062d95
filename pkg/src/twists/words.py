"""
Twist words: products of spherical twists, inverse twists and shifts
Syntax: whitespace-separated tokens `Tk` (twist at vertex k, 1-based),
`Tk'` (inverse twist) and `S[m]` (shift by m). The word `T1 T2` is the
composite Phi_1 o Phi_2, so generators act from right to left.
"""
import re
from dataclasses import dataclass
from typing import Iterator, Optional, Tuple

from src.utils.errors import WordSyntaxError

TWIST = "twist"
INVERSE = "inverse"
SHIFT = "shift"

_TOKEN = re.compile(r"^(?:T(?P<vertex>[1-9][0-9]*)(?P<inverse>')?|S\[(?P<shift>[+-]?[0-9]+)\])$")


@dataclass(frozen=True)
class Generator:
    kind: str
    value: int  # 0-based vertex for twists, shift amount for shifts

    def __str__(self) -> str:
        if self.kind == SHIFT:
            return f"S[{self.value}]"
        return f"T{self.value + 1}" + ("'" if self.kind == INVERSE else "")

    def inverse(self) -> 'Generator':
        if self.kind == SHIFT:
            return Generator(SHIFT, -self.value)
        return Generator(INVERSE if self.kind == TWIST else TWIST, self.value)


@dataclass(frozen=True)
class TwistWord:
    generators: Tuple[Generator, ...] = ()

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self) -> Iterator[Generator]:
        return iter(self.generators)

    def acting_order(self) -> Tuple[Generator, ...]:
        """Generators in the order they are applied to an object"""
        return tuple(reversed(self.generators))

    def inverse(self) -> 'TwistWord':
        return TwistWord(tuple(g.inverse() for g in reversed(self.generators)))

    def power(self, k: int) -> 'TwistWord':
        if k < 0:
            return self.inverse().power(-k)
        return TwistWord(self.generators * k)

    def validate(self, n: int) -> 'TwistWord':
        for g in self.generators:
            if g.kind != SHIFT and not 0 <= g.value < n:
                raise WordSyntaxError(f"vertex {g.value + 1} out of range 1..{n} in word '{format_word(self)}'")
        return self

    def single_generator(self) -> Optional[Generator]:
        """The generator if the word is one twist or one shift, else None"""
        return self.generators[0] if len(self.generators) == 1 else None

    def __str__(self) -> str:
        return format_word(self)


def twist(i: int) -> Generator:
    return Generator(TWIST, i)


def inverse_twist(i: int) -> Generator:
    return Generator(INVERSE, i)


def shift(m: int) -> Generator:
    return Generator(SHIFT, m)


def parse_word(text: str, n: Optional[int] = None) -> TwistWord:
    """Parse `T1 T2' S[-3]`; with n given, vertex ranges are checked too"""
    generators = []
    for position, token in enumerate(text.split(), start=1):
        match = _TOKEN.match(token)
        if match is None:
            raise WordSyntaxError(f"token {position} '{token}' is not Tk, Tk' or S[m]")
        if match.group('shift') is not None:
            generators.append(shift(int(match.group('shift'))))
        else:
            vertex = int(match.group('vertex')) - 1
            generators.append(inverse_twist(vertex) if match.group('inverse') else twist(vertex))
    word = TwistWord(tuple(generators))
    return word.validate(n) if n is not None else word


def format_word(word: TwistWord) -> str:
    return " ".join(str(g) for g in word.generators)
