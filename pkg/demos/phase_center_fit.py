"""Phase-center fitting on synthetic far-field cuts.

A point source displaced from the coordinate origin produces a far-field
phase that varies with angle as k*(x0*sin(theta) + z0*cos(theta)).  The
least-squares fit inverts that model.  This script recovers a known
displacement noiselessly, shows the fit degrading gracefully under phase
noise, and runs the sliding-window displacement comparison between two
frequency bands.
"""

import numpy as np

from rangekit.phase_center import (
    FarFieldCut,
    displacement_series,
    displacement_stats,
    fit_phase_center,
    point_source_cut,
    wavelength_fraction,
)

THETA = np.arange(-60.0, 61.0)
X0, Z0 = 0.002, 0.0141  # true phase-center offset, meters
rng = np.random.default_rng(0)


def add_phase_noise(cut, rms_deg):
    return FarFieldCut(
        phi_cut_deg=cut.phi_cut_deg,
        frequency_hz=cut.frequency_hz,
        theta_deg=cut.theta_deg,
        magnitude_db=cut.magnitude_db,
        phase_deg=cut.phase_deg + rng.normal(0.0, rms_deg, cut.theta_deg.size),
    )


print("== noiseless recovery, fit over the +/-30 deg beam region ==")
for f in (1.88e9, 9.56e9, 10.49e9):
    fit = fit_phase_center(point_source_cut(X0, Z0, f, THETA))
    print(f"{f / 1e9:5.2f} GHz: x0 = {fit.x0_m * 1e3:7.4f} mm, z0 = {fit.z0_m * 1e3:7.4f} mm"
          f"  (truth {X0 * 1e3:.1f}, {Z0 * 1e3:.1f})")

print()
print("== 5 deg RMS phase noise, single cuts ==")
for f in (1.88e9, 9.56e9, 10.49e9):
    fit = fit_phase_center(add_phase_noise(point_source_cut(X0, Z0, f, THETA), 5.0))
    print(f"{f / 1e9:5.2f} GHz: x0 = {fit.x0_m * 1e3:7.3f} mm, z0 = {fit.z0_m * 1e3:7.3f} mm,"
          f" residual {np.degrees(fit.rms_residual_rad):.2f} deg")
print("lower frequencies lever the same phase noise into more millimeters")

print()
print("== displacement between bands, 10 deg sliding window ==")
# band A sits 5 mm further out along boresight than band B
cut_a = add_phase_noise(point_source_cut(X0, Z0 + 0.005, 9.56e9, THETA), 0.5)
cut_b = add_phase_noise(point_source_cut(X0, Z0, 10.49e9, THETA), 0.5)
series = displacement_series(cut_a, cut_b)
stats = displacement_stats(series)
print(f"{len(series)} window centers across the beam region, 0.5 deg RMS noise")
print(f"dx0 = {stats.mean_x0_m * 1e3:6.3f} mm +/- {stats.sd_x0_m * 1e3:.3f} mm")
print(f"dz0 = {stats.mean_z0_m * 1e3:6.3f} mm +/- {stats.sd_z0_m * 1e3:.3f} mm  (truth 5.000)")
print("narrow windows leave the boresight term poorly conditioned, hence the")
print("large per-window spread; the mean across the beam still lands on the offset")
print(f"as a fraction of the 1.88 GHz wavelength: "
      f"{wavelength_fraction(abs(stats.mean_z0_m), 1.88e9):.4f}")
