"""Resonance and bandwidth extraction from a reflection sweep.

Builds a synthetic S11 trace with three matched dips, writes it through
the Touchstone format and back, and extracts each band's resonance,
minimum and -10 dB fractional bandwidth.  Also validates the built-in
patch dimension record the trace is modeled after.
"""

import tempfile
from pathlib import Path

import numpy as np

from rangekit.antenna_metrics import (
    SParamTrace,
    find_bands,
    load_touchstone,
    write_touchstone,
)
from rangekit.geometry import reference_dimensions, validate

# three parabolic dips on a 1-11 GHz sweep; (center Hz, min dB, fractional bw)
DIPS = ((1.88e9, -24.7, 0.0106), (9.56e9, -12.26, 0.0397), (10.49e9, -24.67, 0.0171))

f = np.arange(1e9, 11e9 + 1, 2e6)
s11 = np.full(f.size, -1.5)
for fc, s_min, fbw in DIPS:
    half_width = fbw * fc / 2.0
    dip = s_min + (-10.0 - s_min) * ((f - fc) / half_width) ** 2
    s11 = np.minimum(s11, dip)
trace = SParamTrace(frequency_hz=f, s11_db=s11)

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "sweep.s1p"
    write_touchstone(trace, path)
    trace = load_touchstone(path)
    print(f"round-tripped {len(trace.frequency_hz)} points through {path.name}")

print()
print(f"{'f_res (GHz)':>11} {'S11 min (dB)':>13} {'band (GHz)':>19} {'FBW (%)':>8}")
for band in find_bands(trace, threshold_db=-10.0):
    span = f"{band.f_low_hz / 1e9:.3f} - {band.f_high_hz / 1e9:.3f}"
    print(f"{band.f_resonance_hz / 1e9:>11.2f} {band.s11_min_db:>13.2f} "
          f"{span:>19} {band.fractional_bw * 100:>8.2f}")

print()
dims = reference_dimensions()
problems = validate(dims)
print(f"reference patch record: {len(dims.lengths_mm)} lengths, "
      f"largest {max(dims.lengths_mm, key=dims.lengths_mm.get)} = {dims['A']} mm, "
      f"{len(problems)} violations")
