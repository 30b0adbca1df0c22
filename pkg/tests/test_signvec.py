import pytest

from hopspec.signvec import (
    SignVector,
    all_sign_vectors,
    cyclic_shift,
    is_symmetry_vector,
    negate,
    parity,
    reverse,
    symmetry_vectors,
)


def sv(*entries):
    return SignVector.from_entries(entries)


def test_reverse_examples():
    assert reverse(sv(1, -1, 1)) == sv(1, -1, 1)  # palindrome fixed point
    assert reverse(sv(-1, 1)) == sv(1, -1)
    assert reverse(sv(1, 1, -1, 1)) == sv(1, -1, 1, 1)


def test_negate_examples():
    assert negate(sv(-1, 1)) == sv(1, -1)
    assert negate(sv(1, 1)) == sv(-1, -1)


def test_involutions_exhaustive():
    for n in (1, 2, 3, 4, 7):
        for k in all_sign_vectors(n):
            assert negate(negate(k)) == k
            assert reverse(reverse(k)) == k


def test_cyclic_shift():
    import math

    assert cyclic_shift(sv(1, -1, 1), 1) == sv(-1, 1, 1)
    assert cyclic_shift(sv(-1, 1), 1) == sv(1, -1)
    for n in (1, 2, 5):
        for k in all_sign_vectors(n):
            assert cyclic_shift(k, n) == k
            assert cyclic_shift(k, -1) == cyclic_shift(k, n - 1)
    # the shift by s has order n/gcd(n, s)
    for n, s in ((6, 4), (6, 3), (8, 6), (9, 3)):
        for k in (sv(*([1] * (n - 1) + [-1])), sv(*([-1, 1] * (n // 2) + [1] * (n % 2)))):
            out = k
            for _ in range(n // math.gcd(n, s)):
                out = cyclic_shift(out, s)
            assert out == k


def test_parity():
    assert parity(sv(-1, 1)) == -1
    assert parity(sv(1, 1)) == 1
    # product of entries, multiplied out by hand
    assert parity(sv(1, -1, -1, 1, -1, 1)) == -1


def test_membership_examples():
    assert is_symmetry_vector(sv(-1, 1))
    assert is_symmetry_vector(sv(1, -1, -1, 1, -1, 1))
    assert not is_symmetry_vector(sv(1, -1, 1, 1))  # wrong tail
    assert not is_symmetry_vector(sv(1))
    assert not is_symmetry_vector(sv(1, -1, 1, -1, 1, 1, -1, 1))  # prefix not a palindrome


def test_enumeration_counts_and_brute_force():
    assert symmetry_vectors(2) == [sv(-1, 1)]
    assert len(symmetry_vectors(6)) == 4
    for n in range(2, 13):
        enum = symmetry_vectors(n)
        assert len(enum) == 2 ** ((n + 1) // 2 - 1)
        assert enum == [k for k in all_sign_vectors(n) if is_symmetry_vector(k)]
        assert enum == sorted(enum)  # lexicographic


def test_enumeration_structure_n5():
    got = [k.entries for k in symmetry_vectors(5)]
    assert len(got) == 4
    for e in got:
        assert e[-2:] == (-1, 1)
        assert e[0] == e[2]  # palindromic prefix of length 3


def test_lex_order_uses_minus_first():
    ks = list(all_sign_vectors(2))
    assert [k.entries for k in ks] == [(-1, -1), (-1, 1), (1, -1), (1, 1)]


def test_string_round_trip():
    k = sv(1, -1, -1, 1)
    assert SignVector.from_string(str(k)) == k
    assert SignVector.from_string("1,-1,-1,1") == k
    with pytest.raises(ValueError):
        SignVector.from_string("+0-")


def test_validation():
    with pytest.raises(ValueError):
        SignVector.from_entries(())
    with pytest.raises(ValueError):
        SignVector.from_entries((0, 1))
    with pytest.raises(ValueError):
        symmetry_vectors(1)
    with pytest.raises(IndexError):
        sv(1, 1)[2]
