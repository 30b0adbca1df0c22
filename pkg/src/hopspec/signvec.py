"""Hopping sign patterns over {-1,+1} and their symmetry actions.

A pattern of length n indexes both the n x n finite section (subdiagonal
signs) and the period-n operator.  The palindromic patterns ending in
(-1, +1) are the ones whose Floquet discriminants act as polynomial
symmetries of the periodic spectrum; see :mod:`hopspec.charpoly`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


@dataclass(frozen=True, order=True)
class SignVector:
    """A +-1 pattern packed into a bit mask.

    Entry i (0-based) lives in bit n-1-i, set for +1 and clear for -1, so
    for a fixed length the integer order of ``bits`` is the lexicographic
    order of the entries with -1 < +1.  Enumerating all patterns of length
    n is then just ``range(2**n)``.
    """

    n: int
    bits: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"sign vector needs length >= 1, got n={self.n}")
        if not 0 <= self.bits < (1 << self.n):
            raise ValueError(f"bit mask {self.bits} out of range for n={self.n}")

    @classmethod
    def from_entries(cls, entries: Iterable[int]) -> "SignVector":
        ents = tuple(int(e) for e in entries)
        if any(e not in (-1, 1) for e in ents):
            raise ValueError(f"entries must be -1 or +1, got {ents}")
        bits = 0
        for e in ents:
            bits = (bits << 1) | (e > 0)
        return cls(len(ents), bits)

    @classmethod
    def from_string(cls, text: str) -> "SignVector":
        """Parse either "+-+" sign notation or comma-separated "1,-1,1"."""
        text = text.strip()
        if "," in text or text.lstrip("+-").startswith("1"):
            return cls.from_entries(int(tok) for tok in text.split(","))
        if not text or set(text) - {"+", "-"}:
            raise ValueError(f"not a sign pattern: {text!r}")
        return cls.from_entries(1 if ch == "+" else -1 for ch in text)

    @property
    def entries(self) -> tuple[int, ...]:
        n, bits = self.n, self.bits
        return tuple(1 if (bits >> (n - 1 - i)) & 1 else -1 for i in range(n))

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(i)
        return 1 if (self.bits >> (self.n - 1 - i)) & 1 else -1

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __str__(self) -> str:
        return "".join("+" if e > 0 else "-" for e in self.entries)


def reverse(k: SignVector) -> SignVector:
    """The pattern read back to front."""
    return SignVector.from_entries(k.entries[::-1])


def negate(k: SignVector) -> SignVector:
    """Entrywise sign flip."""
    return SignVector(k.n, k.bits ^ ((1 << k.n) - 1))


def cyclic_shift(k: SignVector, s: int) -> SignVector:
    """Rotate entries left by s positions (s may be negative)."""
    s %= k.n
    ents = k.entries
    return SignVector.from_entries(ents[s:] + ents[:s])


def parity(k: SignVector) -> int:
    """+1 if the entry product is +1 ("even" pattern), -1 otherwise."""
    minus = k.n - bin(k.bits).count("1")
    return -1 if minus % 2 else 1


def is_symmetry_vector(k: SignVector) -> bool:
    """True iff the pattern ends (-1, +1) and its remaining prefix is a palindrome.

    These are exactly the patterns whose discriminants map the periodic
    spectrum into itself under preimages; length 2 needs no prefix check.
    """
    n = k.n
    if n < 2 or k[n - 2] != -1 or k[n - 1] != 1:
        return False
    ents = k.entries
    return all(ents[j] == ents[n - 3 - j] for j in range((n - 2) // 2))


def symmetry_vectors(n: int) -> list[SignVector]:
    """All symmetry patterns of length n, in lexicographic order (-1 < +1).

    There are exactly 2**(ceil(n/2) - 1) of them: the palindromic prefix of
    length n-2 is determined by its first half.
    """
    if n < 2:
        raise ValueError(f"symmetry vectors need length >= 2, got {n}")
    plen = n - 2
    free = (plen + 1) // 2
    out = []
    for m in range(1 << free):
        half = tuple(1 if (m >> (free - 1 - i)) & 1 else -1 for i in range(free))
        prefix = half + half[: plen - free][::-1]
        out.append(SignVector.from_entries(prefix + (-1, 1)))
    return out


def all_sign_vectors(n: int) -> Iterator[SignVector]:
    """Every pattern of length n in lexicographic order."""
    if n < 1:
        raise ValueError(f"need length >= 1, got {n}")
    for bits in range(1 << n):
        yield SignVector(n, bits)
