"""Words over the DNA alphabet and secondary structures on them.

A word is a plain ``str`` over ``{A, C, G, T}``, read 5'-to-3'; the empty
string is the monoid unit.  A secondary structure on a word is a set of
base pairs ``(i, j)`` with ``i < j``, written with 1-based positions, such
that every position sits in at most one pair, no two pairs cross
(``i < k < j < l`` is forbidden), and paired letters are Watson-Crick
complements.  Positions stay 1-based everywhere in the public API and in
the serialized formats; only raw string indexing is 0-based.

The module also owns the dot-bracket text encoding: two lines, the
sequence and then a balanced bracket string of the same length, with
``.`` marking unpaired positions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

ALPHABET = "ACGT"

_COMPLEMENT = {"A": "T", "T": "A", "C": "G", "G": "C"}


class AlphabetError(ValueError):
    """A letter outside {A, C, G, T} appeared in a word."""


class DotBracketError(ValueError):
    """Malformed dot-bracket text (length mismatch, unbalanced brackets, ...)."""


@dataclass(frozen=True)
class Violation:
    """One broken invariant, with enough detail to point at the offender."""

    rule: str
    detail: str

    def __str__(self) -> str:
        return f"{self.rule}: {self.detail}"


class StructureError(ValueError):
    """A secondary structure failed validation; carries every violation."""

    def __init__(self, violations: list[Violation]):
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations))


def canonical_word(text: str) -> str:
    """Uppercase ``text`` and check it against the four-letter alphabet.

    >>> canonical_word("acGT")
    'ACGT'
    """
    word = text.upper()
    bad = [ch for ch in word if ch not in _COMPLEMENT]
    if bad:
        raise AlphabetError(f"invalid letters {bad!r}; words use only A, C, G, T")
    return word


def complement(base: str) -> str:
    """Watson-Crick partner of one base: A<->T, C<->G.

    >>> complement("A")
    'T'
    """
    try:
        return _COMPLEMENT[base]
    except KeyError:
        raise AlphabetError(f"invalid base {base!r}") from None


def reverse_complement(word: str) -> str:
    """Letterwise complement of ``word`` read in reverse.

    This is the dual of a word: the strand that pairs with it in
    antiparallel orientation.

    >>> reverse_complement("ACG")
    'CGT'
    >>> reverse_complement("")
    ''
    """
    return "".join(_COMPLEMENT[b] for b in reversed(canonical_word(word)))


def is_complementary(a: str, b: str) -> bool:
    return _COMPLEMENT.get(a) == b


def pair_class(a: str, b: str) -> str:
    """Classify a complementary pair as ``"AT"`` or ``"CG"``."""
    if not is_complementary(a, b):
        raise ValueError(f"{a!r}-{b!r} is not a Watson-Crick pair")
    return "AT" if a in "AT" else "CG"


def structure_violations(word: str, arcs: Iterable[tuple[int, int]]) -> list[Violation]:
    """Check the secondary-structure invariants, returning every failure.

    ``word`` must already be canonical.  Checks, in order: index ranges and
    ``i < j``, one pair per position, complementarity, and the no-crossing
    rule.
    """
    n = len(word)
    violations = []
    arcs = sorted(set(arcs))
    for i, j in arcs:
        if not (1 <= i <= n and 1 <= j <= n):
            violations.append(Violation("index-range", f"arc ({i},{j}) outside 1..{n}"))
        elif i >= j:
            violations.append(Violation("arc-order", f"arc ({i},{j}) needs i < j"))
    checkable = [(i, j) for i, j in arcs if 1 <= i < j <= n]
    seen: dict[int, tuple[int, int]] = {}
    for i, j in checkable:
        for p in (i, j):
            if p in seen and seen[p] != (i, j):
                violations.append(
                    Violation("uniqueness", f"position {p} in both {seen[p]} and ({i},{j})")
                )
            seen.setdefault(p, (i, j))
    for i, j in checkable:
        if not is_complementary(word[i - 1], word[j - 1]):
            violations.append(
                Violation(
                    "complementarity",
                    f"arc ({i},{j}) pairs {word[i - 1]} with {word[j - 1]}",
                )
            )
    for a, (i, j) in enumerate(checkable):
        for k, l in checkable[a + 1 :]:
            if i < k < j < l:
                violations.append(
                    Violation("crossing", f"arcs ({i},{j}) and ({k},{l}) cross")
                )
    return violations


@dataclass(frozen=True)
class SecondaryStructure:
    """A noncrossing Watson-Crick matching on one word.

    Instances are immutable and validated at construction; use
    :meth:`unchecked` to build a possibly-invalid value for later
    validation (the CLI does this to report all problems in a file at
    once).
    """

    word: str
    arcs: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "word", canonical_word(self.word))
        object.__setattr__(
            self, "arcs", frozenset((int(i), int(j)) for i, j in self.arcs)
        )
        violations = structure_violations(self.word, self.arcs)
        if violations:
            raise StructureError(violations)

    @classmethod
    def unchecked(cls, word: str, arcs: Iterable[tuple[int, int]]) -> "SecondaryStructure":
        self = object.__new__(cls)
        object.__setattr__(self, "word", word)
        object.__setattr__(self, "arcs", frozenset(tuple(a) for a in arcs))
        return self

    def violations(self) -> list[Violation]:
        return structure_violations(self.word, self.arcs)

    def sorted_arcs(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.arcs))

    def __len__(self) -> int:
        return len(self.word)


def structure_from_brackets(word: str, brackets: str) -> SecondaryStructure:
    """Build a structure from a sequence line and a bracket line.

    >>> structure_from_brackets("AT", "()").sorted_arcs()
    ((1, 2),)
    """
    word = canonical_word(word)
    if len(word) != len(brackets):
        raise DotBracketError(
            f"sequence length {len(word)} != bracket length {len(brackets)}"
        )
    stack: list[int] = []
    arcs = []
    for pos, ch in enumerate(brackets, start=1):
        if ch == "(":
            stack.append(pos)
        elif ch == ")":
            if not stack:
                raise DotBracketError(f"unmatched ')' at position {pos}")
            arcs.append((stack.pop(), pos))
        elif ch != ".":
            raise DotBracketError(f"invalid character {ch!r} at position {pos}")
    if stack:
        raise DotBracketError(f"unmatched '(' at position {stack[-1]}")
    return SecondaryStructure(word, frozenset(arcs))


def parse_dotbracket(text: str) -> SecondaryStructure:
    """Parse the two-line dot-bracket format (sequence, then brackets)."""
    lines = text.splitlines()
    while len(lines) < 2:
        lines.append("")
    if any(line.strip() for line in lines[2:]):
        raise DotBracketError("dot-bracket input has more than two lines")
    return structure_from_brackets(lines[0].strip(), lines[1].strip())


def brackets_of(structure: SecondaryStructure) -> str:
    """The bracket line of a structure."""
    chars = ["."] * len(structure.word)
    for i, j in structure.arcs:
        chars[i - 1] = "("
        chars[j - 1] = ")"
    return "".join(chars)


def emit_dotbracket(structure: SecondaryStructure) -> str:
    """Serialize to the two-line dot-bracket format, LF-terminated.

    Round-trips bit-exactly through :func:`parse_dotbracket`.
    """
    return f"{structure.word}\n{brackets_of(structure)}\n"
