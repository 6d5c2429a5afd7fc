"""Verification-oracle games, solved exactly by game-tree evaluation.

Offline: the opponent may probe the verifier up to i times, but an accepted
probe ends the experiment early; only an all-rejected run reaches the final
spoof.  Probing therefore only burns probability, and the value stays at
max_m |keys accepting m| / b no matter how many probes are allowed.

Online: i+1 submissions, first acceptance wins; each rejection eliminates
keys, so the value climbs toward 1 as submissions are added.
"""

from fractions import Fraction

from authdesigns import (
    DifferenceFamily,
    EncodingMatrix,
    SecrecySystem,
    develop_matrix,
    offline_bound,
    online_bound,
    oracle_equivalence_check,
    voracle_offline_value,
    voracle_online_value,
)
from authdesigns.catalog import load_payload


def fmt(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x)


fano = SecrecySystem(develop_matrix(DifferenceFamily(7, 1, ((1, 2, 4),))))

print("Fano system (v=7, k=3, b=7)")
print(f"  offline floor k/v = {fmt(offline_bound(7, 3))}")
for i in range(4):
    print(f"  offline value, {i} probes allowed: "
          f"{fmt(voracle_offline_value(fano, i))}")
print()
for i in range(5):
    value = voracle_online_value(fano, i)
    bound = online_bound(7, 3, i)
    print(f"  online value, {i + 1} submissions: {fmt(value):>5}   "
          f"floor {fmt(bound):>5}   {'tight' if value == bound else 'loose'}")
print()

# the two tightness notions agree system by system
print("offline tight <=> online tight, across bundled families:")
for name in ("fano-cdf", "cdf-13-3-1", "biplane-cdf-11-5-2", "netto-13"):
    system = SecrecySystem(develop_matrix(load_payload(name)))
    agree = all(oracle_equivalence_check(system, i) for i in range(2))
    print(f"  {name:<20} i=0,1: {'agree' if agree else 'DISAGREE'}")
print()

# a corrupted matrix: both notions go loose together
rows = list(fano.matrix.rows)
rows[3] = (rows[3][0], rows[3][1], (rows[3][2] + 1) % 7)
corrupt = SecrecySystem(EncodingMatrix(7, 3, tuple(rows)))
off = voracle_offline_value(corrupt, 1)
on = voracle_online_value(corrupt, 1)
print("after corrupting one cell of the Fano matrix:")
print(f"  offline: {fmt(off)} vs floor {fmt(offline_bound(7, 3))}")
print(f"  online:  {fmt(on)} vs floor {fmt(online_bound(7, 3, 1))}")
print(f"  equivalence check still passes: {oracle_equivalence_check(corrupt, 1)}")
