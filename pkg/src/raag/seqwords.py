"""Periodicity and quasi-roots of plain words over ``X^{+-1}``.

Nothing here knows about graphs.  A letter is a pair ``(symbol, sign)``;
strings are accepted anywhere a word is and read as positive letters, one per
character.  :class:`raag.words.Letter` is such a pair, so normal-form words
can be passed in directly.
"""

from __future__ import annotations

from fractions import Fraction
from math import floor, gcd
from typing import Sequence

__all__ = [
    "ConclusionFailed",
    "InconsistentPeriods",
    "SeqPreconditionError",
    "common_root_check",
    "free_reduce",
    "match_word_quasiroots",
    "merge_periods",
    "rotate",
    "seq_is_primitive",
    "symbol_word",
]


class InconsistentPeriods(ValueError):
    pass


class SeqPreconditionError(ValueError):
    """A hypothesis failed.  ``failed`` names each failing hypothesis."""

    def __init__(self, failed: list[str]):
        self.failed = failed
        super().__init__("; ".join(failed))


class ConclusionFailed(AssertionError):
    """All hypotheses held but the conclusion did not."""


def symbol_word(w) -> tuple:
    if isinstance(w, str):
        return tuple((ch, 1) for ch in w)
    if type(w) is tuple:
        return w
    return tuple(x if isinstance(x, tuple) else tuple(x) for x in w)


def rotate(w: Sequence, r: int) -> tuple:
    w = tuple(w)
    if not w:
        return w
    r %= len(w)
    return w[r:] + w[:r]


def merge_periods(p: int, q: int, prefix: Sequence) -> int:
    """Return ``gcd(p, q)`` for a window carrying both periods.

    The first ``p + q`` terms of ``prefix`` must be consistent with period
    ``p`` and with period ``q``.  The periodic extensions of ``prefix[:p]``
    and ``prefix[:q]`` are then checked to agree and to have period
    ``gcd(p, q)`` over one full common period.
    """
    if p < 1 or q < 1:
        raise ValueError("periods must be positive")
    prefix = tuple(prefix)
    if len(prefix) < p + q:
        raise ValueError(f"window of length {len(prefix)} is shorter than p+q = {p + q}")
    window = prefix[: p + q]
    for period in (p, q):
        for i in range(p + q - period):
            if window[i] != window[i + period]:
                raise InconsistentPeriods(f"window breaks period {period} at position {i}")
    d = gcd(p, q)
    span = p * q // d + d
    x = [prefix[i % p] for i in range(span)]
    y = [prefix[i % q] for i in range(span)]
    if x != y or any(x[i] != x[i + d] for i in range(span - d)):
        raise AssertionError("periodic extensions disagree")  # cannot happen
    return d


def seq_is_primitive(w: Sequence) -> bool:
    w = tuple(w)
    if not w:
        raise ValueError("the empty word is not primitive by definition")
    n = len(w)
    for d in range(1, n):
        if n % d == 0 and w[:d] * (n // d) == w:
            return False
    return True


def _is_prefix_of_power(u: tuple, w: tuple) -> bool:
    # u is a prefix of some power of w
    return bool(w) and u == (w * (len(u) // len(w) + 1))[: len(u)]


def common_root_check(w1: Sequence, w2: Sequence) -> bool:
    """For primitive ``w1``, ``w2`` whose squares prefix each other's powers, ``w1 == w2``."""
    w1, w2 = symbol_word(w1), symbol_word(w2)
    failed = []
    if not w1 or not seq_is_primitive(w1):
        failed.append("w1 primitive")
    if not w2 or not seq_is_primitive(w2):
        failed.append("w2 primitive")
    if not _is_prefix_of_power(w1 + w1, w2):
        failed.append("w1^2 prefix of a power of w2")
    if not _is_prefix_of_power(w2 + w2, w1):
        failed.append("w2^2 prefix of a power of w1")
    if failed:
        raise SeqPreconditionError(failed)
    return w1 == w2


def free_reduce(w: Sequence) -> tuple:
    """Free cancellation of adjacent ``x x^-1`` pairs."""
    out: list = []
    for x in w:
        if out and out[-1][0] == x[0] and out[-1][1] == -x[1]:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def _free_inverse(w: Sequence) -> tuple:
    return tuple([(x[0], -x[1]) for x in reversed(w)])


def match_word_quasiroots(w, first, second, A, B) -> tuple[int, bool]:
    """Match two decompositions ``w = a1 w1^m1 b1 = a2 w2^m2 b2``.

    ``first`` and ``second`` are ``(a, root, m, b)`` tuples.  Returns the
    rotation ``r`` with ``w1 == rotate(w2, r)`` together with ``True``; the
    conjugator identities ``a1 w1 a1^-1 = a2 w2 a2^-1`` and
    ``b1^-1 w1 b1 = b2^-1 w2 b2`` are checked in the free group.  A failed
    conclusion raises :class:`ConclusionFailed`.
    """
    w = symbol_word(w)
    A, B = (x if isinstance(x, int) else Fraction(x) for x in (A, B))
    decs = []
    failed = []
    if A < 0 or B < 0:
        failed.append("A, B >= 0")
    for i, (a, root, m, b) in enumerate((first, second), start=1):
        a, root, b = symbol_word(a), symbol_word(root), symbol_word(b)
        decs.append((a, root, m, b))
        if a + root * m + b != w:
            failed.append(f"w = a{i} w{i}^m{i} b{i}")
        if m < 2:
            failed.append(f"m{i} >= 2")
        if not root or not seq_is_primitive(root):
            failed.append(f"w{i} primitive")
        if len(a) > A:
            failed.append(f"|a{i}| <= A")
        if len(b) > B:
            failed.append(f"|b{i}| <= B")
        if len(w) - (A + B) < 2 * len(root):
            failed.append(f"|w| - (A+B) >= 2|w{i}|")
    if failed:
        raise SeqPreconditionError(failed)
    (a1, w1, m1, b1), (a2, w2, m2, b2) = decs

    # Line both decompositions up on the window after the longer a-part; the
    # window has length at least 2|w_i| and is periodic for both roots.
    swapped = len(a1) < len(a2)
    if swapped:
        (a1, w1, m1, b1), (a2, w2, m2, b2) = (a2, w2, m2, b2), (a1, w1, m1, b1)
    shift = (len(a1) - len(a2)) % len(w2)
    rotated = rotate(w2, shift)
    z = w[len(a1): len(w) - floor(B)]
    if not (_is_prefix_of_power(z, w1) and _is_prefix_of_power(z, rotated)):
        raise ConclusionFailed("window is not periodic for both roots")
    try:
        same = common_root_check(w1, rotated)
    except SeqPreconditionError as exc:
        raise ConclusionFailed(f"common root hypotheses failed: {exc}") from exc
    if not same:
        raise ConclusionFailed("roots are not cyclic conjugates")
    r = shift if not swapped else (-shift) % len(w1)
    if swapped:
        (a1, w1, m1, b1), (a2, w2, m2, b2) = (a2, w2, m2, b2), (a1, w1, m1, b1)

    left1 = free_reduce(a1 + w1 + _free_inverse(a1))
    left2 = free_reduce(a2 + w2 + _free_inverse(a2))
    right1 = free_reduce(_free_inverse(b1) + w1 + b1)
    right2 = free_reduce(_free_inverse(b2) + w2 + b2)
    if left1 != left2:
        raise ConclusionFailed("a1 w1 a1^-1 != a2 w2 a2^-1")
    if right1 != right2:
        raise ConclusionFailed("b1^-1 w1 b1 != b2^-1 w2 b2")
    if rotate(w2, r) != w1:
        raise ConclusionFailed("rotation bookkeeping failed")
    return r, True
