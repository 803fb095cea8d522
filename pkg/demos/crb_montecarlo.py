#!/usr/bin/env python3
"""Does the moment-inversion ML estimator actually reach the Cramer-Rao bound?

Seeded counting experiments at a few separations straddling the operating
window.  Inside it var/CRB sits near 1 with no clipping; below d_half the
estimator piles up on the d=0 boundary and the bound stops being attainable.
"""

import numpy as np

from spaderes import Experiment, NoiseModel, SourceScene, gaussian_psf, run_crb_experiment

tf = gaussian_psf(1.0)
n_s, snr = 100.0, 1e4
noise = NoiseModel.from_snr(snr, n_s)
frames, trials, seed = 200, 1000, 42

print(f"n_s={n_s:g}  SNR={snr:g}  frames={frames}  trials={trials}  seed={seed}")
print(f"window low (d_half) = {2.0 / np.sqrt(snr):.3f} sigma")
print()
print(f"{'d/sigma':>8} {'var/CRB':>9} {'mse/CRB':>9} {'clipped':>9} {'mean(d_hat)':>12}")
for d in (0.005, 0.02, 0.05, 0.15, 0.3, 0.6):
    exp = Experiment(
        SourceScene(tf, d, n_s), noise, "counting",
        frames=frames, trials=trials, seed=seed,
    )
    rep = run_crb_experiment(exp)
    est = np.array(rep.estimates)
    print(
        f"{d:8.3f} {rep.empirical_variance / rep.crb:9.3f}"
        f" {rep.empirical_mse / rep.crb:9.3f} {rep.clip_fraction:9.3f}"
        f" {est.mean():12.4f}"
    )

print()
print("rows at or below the window edge show clipping and variance collapse;")
print("their MSE exceeds the unclipped bound even as the variance dips under it")
