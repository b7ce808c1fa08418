"""Long homology sequence of 0 -> Z --x2--> Z -> Z/2 -> 0, two ways.

One sequence comes from the homotopy kernel of F(g) in sequentiable
families; the other is pasted together from textbook snake lemmas.
"""

from snailhom import modules as ml
from snailhom.classical import classical_les, compare_with_snail, sigma_quasi_iso
from snailhom.genrand import times_two_extension

e = times_two_extension()
r = compare_with_snail(e)

print("from F(g):")
for lab, obj in zip(r.snail.labels, r.snail.objects):
    if not ml.is_zero_module(obj):
        print(f"  {lab:<14} {ml.describe(obj)}")
print("classical:")
for lab, obj in zip(r.classical.labels, r.classical.objects):
    if not ml.is_zero_module(obj):
        print(f"  {lab:<14} {ml.describe(obj)}")

print("\nboth exact:", r.snail.is_exact(), r.classical.is_exact())
print("degree-wise isomorphic:", r.ok)
print("sigma quasi-iso:", sigma_quasi_iso(e))
