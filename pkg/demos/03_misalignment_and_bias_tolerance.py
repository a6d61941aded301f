#!/usr/bin/env python3
"""Where does the error rate breach the 11% security threshold?

Two views of the same protection mechanism:

* Absolute misalignment: sweep the relative rotation angle about the
  worst-case Y axis.  The twirl suppresses the error rate by a constant
  2/3, stretching the tolerable angle from about 38.7 to about 47.9
  degrees.
* Axis-specific bias with jitter: sweep a discrete bias about Y and about
  Z with small Gaussian jitter on every pulse.  Unprotected, the link is
  hypersensitive to Y-bias yet almost immune to Z-bias; protected, both
  axes respond identically and the Y tolerance stretches from about 0.68
  to about 0.84 radians.

Writes misalignment-tolerance.csv and axis-bias.csv.
"""

from twirlqkd.reporting import write_csv
from twirlqkd.sweeps import sweep_alpha, sweep_bias

alpha = sweep_alpha(steps=91, samples=5000, seed=3)
write_csv("misalignment-tolerance.csv", alpha.meta, alpha.columns, alpha.rows)
print("wrote misalignment-tolerance.csv")
print(f"  0.11-crossing, unprotected: {alpha.crossings['unprotected_deg']:.2f} deg")
print(f"  0.11-crossing, protected:   {alpha.crossings['protected_deg']:.2f} deg")

bias = sweep_bias(steps=51, samples=5000, seed=3)
write_csv("axis-bias.csv", bias.meta, bias.columns, bias.rows)
print("\nwrote axis-bias.csv")
print(f"  Y-bias 0.11-crossing, unprotected: {bias.crossings['y_unprotected_rad']:.4f} rad")
print(f"  Y-bias 0.11-crossing, protected:   {bias.crossings['y_protected_rad']:.4f} rad")
print(f"  Z-bias unprotected error never exceeds {bias.meta['z_unprotected_max_qber']:.2e}")
print("\nThe protected link trades the accidental Z-axis immunity for uniform")
print("behaviour on every axis, which is what rescues the worst case.")
