"""Exact integer polynomials attached to sign patterns.

Two recurrences produce everything here: the characteristic polynomial of a
finite tridiagonal section (unit superdiagonal, +-1 subdiagonal), and the
Floquet discriminant of the period-n operator, whose preimages of [-2,2]
(respectively i[-2,2]) trace the periodic spectrum.  The discriminants of
the palindromic patterns form the polynomial-symmetry family; the all-plus
and alternating patterns give two closed-form Chebyshev-type subfamilies.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .signvec import SignVector, is_symmetry_vector, symmetry_vectors

Signs = Union[SignVector, Sequence[int]]


class ParityError(ValueError):
    """Quarter-turn conjugation produced a non-real coefficient."""


@dataclass(frozen=True)
class IntPoly:
    """Dense integer-coefficient polynomial; ``coeffs[j]`` multiplies x**j.

    Coefficients are exact Python integers (no overflow possible) and the
    stored tuple never has a trailing zero, so equality of polynomials is
    equality of tuples.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        cs = tuple(int(c) for c in self.coeffs)
        while cs and cs[-1] == 0:
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs)

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __add__(self, other: Union["IntPoly", int]) -> "IntPoly":
        if isinstance(other, int):
            other = IntPoly((other,))
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPoly(tuple(x + y for x, y in zip(a, b)) + a[len(b):])

    __radd__ = __add__

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: Union["IntPoly", int]) -> "IntPoly":
        if isinstance(other, int):
            other = IntPoly((other,))
        return self + (-other)

    def __mul__(self, other: Union["IntPoly", int]) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(tuple(c * other for c in self.coeffs))
        out = [0] * (len(self.coeffs) + len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def evaluate(self, z):
        """Horner evaluation; exact for int/Fraction arguments, floating otherwise.

        Also accepts numpy arrays.
        """
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    __call__ = evaluate

    def derivative(self) -> "IntPoly":
        return IntPoly(tuple(j * c for j, c in enumerate(self.coeffs) if j))

    def compose(self, inner: "IntPoly") -> "IntPoly":
        """Exact composition self(inner(x))."""
        acc = IntPoly(())
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def __str__(self) -> str:
        return format_poly(self)


X = IntPoly((0, 1))
ONE = IntPoly((1,))


def _entries(signs: Signs) -> tuple[int, ...]:
    if isinstance(signs, SignVector):
        return signs.entries
    ents = tuple(int(s) for s in signs)
    if any(s not in (-1, 1) for s in ents):
        raise ValueError(f"signs must be +-1, got {ents}")
    return ents


def jacobi_charpoly(signs: Signs) -> IntPoly:
    """det(xI - T) for the tridiagonal matrix with unit superdiagonal and the
    given subdiagonal signs; the matrix has order len(signs)+1.

    Built by the expansion along the first row:
    q(s) = x*q(s[1:]) - s[0]*q(s[2:]), with q(()) = x and q of a "length -1"
    segment equal to 1.  Monic of degree len(signs)+1; even with constant
    term +-1 when len(signs) is odd, odd with constant term 0 when even.
    """
    s = _entries(signs)
    hi = ONE           # segment one shorter than empty
    lo = X             # empty segment
    for j in range(len(s) - 1, -1, -1):
        lo, hi = X * lo - s[j] * hi, lo
    return lo


def section_charpoly(signs: Signs) -> IntPoly:
    """Same polynomial as :func:`jacobi_charpoly`, grown section by section.

    Uses the last-row expansion d_j = x*d_{j-1} - s[j-1]*d_{j-2}; kept as a
    separate code path so the two expansions can cross-check each other.
    """
    s = _entries(signs)
    prev = ONE
    cur = X
    for sj in s:
        prev, cur = cur, X * cur - sj * prev
    return cur


def floquet_discriminant(k: SignVector) -> IntPoly:
    """The monic degree-n discriminant of the period-n operator.

    The period-n spectrum is the preimage of [-2,2] under this polynomial
    when the pattern has entry product +1, of i[-2,2] otherwise.  Odd as a
    function when n is odd, even when n is even.
    """
    n = k.n
    if n < 2:
        raise ValueError(f"discriminant needs length >= 2, got {n}")
    ents = k.entries
    head = jacobi_charpoly(ents[: n - 1])
    inner = ONE if n == 2 else jacobi_charpoly(ents[1 : n - 2])
    return head - ents[n - 1] * inner


def palindromic_discriminant(k: SignVector) -> IntPoly:
    """Shortcut x*q(prefix) valid exactly for the symmetry patterns.

    Agrees with :func:`floquet_discriminant` on every symmetry pattern and is
    used as a cross-check of that identity.
    """
    if not is_symmetry_vector(k):
        raise ValueError(f"{k} is not a symmetry pattern")
    return X * jacobi_charpoly(k.entries[: k.n - 2])


def all_plus_poly(m: int) -> IntPoly:
    """Discriminant of the all-plus pattern with (-1,+1) tail: x*U_{m-1}(x/2)
    in terms of the Chebyshev polynomial of the second kind."""
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    u_prev, u = IntPoly(()), ONE           # U_{-1}, U_0 rescaled
    for _ in range(m - 1):
        u_prev, u = u, X * u - u_prev
    return X * u


def alternating_poly(m: int) -> IntPoly:
    """Discriminant of the alternating pattern of length 2m-1 (entries (-1)^j).

    Satisfies the recurrence p_{m+1} = x^2 * p_m + p_{m-1} with p_1 = x and
    p_2 = x^3 + x; always an odd function.
    """
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    prev, cur = X, IntPoly((0, 1, 0, 1))
    if m == 1:
        return prev
    x2 = X * X
    for _ in range(m - 2):
        prev, cur = cur, x2 * cur + prev
    return cur


def quarter_turn(p: IntPoly) -> IntPoly:
    """Conjugate by a quarter turn of the plane: p(x) -> i^(-deg) * p(i*x).

    For a discriminant this is the discriminant of the negated pattern.  The
    result has integer coefficients exactly when p has the parity of its
    degree (only every other coefficient nonzero); otherwise raises
    :class:`ParityError`.
    """
    n = p.degree
    if n < 0:
        return p
    out = []
    for j, c in enumerate(p.coeffs):
        r = (j - n) % 4
        if c and r % 2:
            raise ParityError(f"coefficient of x^{j} would become non-real")
        out.append(c if r == 0 else -c)
    return IntPoly(tuple(out))


def symmetry_polynomials(max_degree: int) -> list[tuple[IntPoly, SignVector]]:
    """All distinct symmetry polynomials of degree 2..max_degree.

    Several patterns induce the same polynomial; duplicates are collapsed by
    exact coefficient equality and the lexicographically first witness
    pattern is kept.  Ordered by (degree, first witness).
    """
    if max_degree < 2:
        raise ValueError(f"need max_degree >= 2, got {max_degree}")
    seen: dict[tuple[int, ...], tuple[IntPoly, SignVector]] = {}
    for n in range(2, max_degree + 1):
        for k in symmetry_vectors(n):
            p = floquet_discriminant(k)
            if p.coeffs not in seen:
                seen[p.coeffs] = (p, k)
    return list(seen.values())


def format_poly(p: IntPoly, var: str = "x") -> str:
    """Render "c_n x^n + ... + c_0" with zero terms dropped."""
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for j in range(p.degree, -1, -1):
        c = p.coeffs[j]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if j == 0:
            body = str(mag)
        else:
            pow_ = var if j == 1 else f"{var}^{j}"
            body = pow_ if mag == 1 else f"{mag}{pow_}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def coeffs_csv(p: IntPoly) -> str:
    """Coefficient export, one "degree,coefficient" line per degree."""
    lines = ["degree,coefficient"]
    lines += [f"{j},{c}" for j, c in enumerate(p.coeffs)]
    return "\n".join(lines) + "\n"
