"""
Periods of plain words
======================

The word-level facts the uniqueness argument rests on: two periods that
share a long enough window collapse to their gcd, and two root
decompositions of one word line up by a rotation.
"""

# %%
# A window of length ``p + q`` carrying periods 4 and 6 has period 2.
from raag.seqwords import InconsistentPeriods, merge_periods, symbol_word

print(merge_periods(4, 6, symbol_word("ababababab")))

# %%
# A window that breaks one of the periods is rejected.
try:
    merge_periods(2, 3, symbol_word("ababa"))
except InconsistentPeriods as exc:
    print("rejected:", exc)

# %%
# ``abababab`` is both ``(ab)^4`` and ``a (ba)^3 b``.  The roots differ by a
# rotation by one letter, and the conjugators agree in the free group.
from raag.seqwords import match_word_quasiroots

print(match_word_quasiroots("abababab", ("", "ab", 4, ""), ("a", "ba", 3, "b"), 1, 1))
