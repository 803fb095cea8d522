"""Homodyne and heterodyne readout of the derivative-mode channel.

The v1 channel carries a thermal state of mean photon number n_s tau1(d), so
any measured quadrature is a zero-mean Gaussian whose variance carries all
the separation information.  In units where vacuum (shot) noise has variance
1/2:

    homodyne    V(d) = 1/2 + n_s tau1(d)        (one quadrature)
    heterodyne  V(d) = 1/2 + n_s tau1(d) / 2    (per quadrature, two of them)

Fisher information of a zero-mean Gaussian of variance V is (dV/dd)^2 / 2V^2
per variate; heterodyne adds the two quadratures.  Both peak at n_s / 4 sigma^2,
a quarter of the counting ceiling.  The shot-noise SNR conventions are 2 n_s
for homodyne and n_s for heterodyne.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, ValidationError
from .overlap import tau1_exact
from .psf import TransferFunction, sigma_of

HOMODYNE = "homodyne"
HETERODYNE = "heterodyne"
QUADRATURE_KINDS = (HOMODYNE, HETERODYNE)

VACUUM_VARIANCE = 0.5


@dataclass(frozen=True, eq=False)
class QuadratureModel:
    """Outcome-variance model of one quadrature measurement.

    variance_fn maps the separation d to the variance of each measured
    quadrature; dvariance_fn is its derivative in d.
    """

    kind: str
    variance_fn: Callable[[float], float]
    dvariance_fn: Callable[[float], float]

    def __post_init__(self):
        if self.kind not in QUADRATURE_KINDS:
            raise ValidationError(
                f"kind must be one of {QUADRATURE_KINDS}, got {self.kind!r}"
            )

    def variance(self, d: float) -> float:
        return float(self.variance_fn(d))

    def dvariance(self, d: float) -> float:
        return float(self.dvariance_fn(d))


def quadrature_model(tf: TransferFunction, n_s: float, kind: str) -> QuadratureModel:
    """Variance model for measuring the v1 channel of a two-source scene."""
    if n_s <= 0:
        raise ValidationError(f"n_s must be positive, got {n_s}")
    share = 1.0 if kind == HOMODYNE else 0.5

    def variance_fn(d: float) -> float:
        return VACUUM_VARIANCE + share * n_s * tau1_exact(tf, d).tau1

    def dvariance_fn(d: float) -> float:
        return share * n_s * tau1_exact(tf, d).dtau1_dd

    return QuadratureModel(kind=kind, variance_fn=variance_fn, dvariance_fn=dvariance_fn)


def density_homodyne(model: QuadratureModel, d: float, q) -> float | np.ndarray:
    """Probability density of the homodyne outcome q at separation d."""
    if model.kind != HOMODYNE:
        raise ValidationError("density_homodyne requires a homodyne model")
    v = model.variance(d)
    qarr = np.asarray(q, dtype=float)
    out = np.exp(-(qarr**2) / (2.0 * v)) / np.sqrt(2.0 * np.pi * v)
    return float(out) if qarr.ndim == 0 else out


def fi_gaussian_1d(v: float, dv: float) -> float:
    """Fisher information of a zero-mean Gaussian variate, (dV)^2 / 2V^2."""
    if v <= 0:
        raise DomainError(f"variance must be positive, got {v}")
    return dv**2 / (2.0 * v**2)


def fi_gaussian_2d(v: float, dv: float) -> float:
    """Two i.i.d. Gaussian variates: information is additive."""
    return 2.0 * fi_gaussian_1d(v, dv)


def fi_homodyne(scene) -> float:
    """Homodyne information 2 n_s^2 (dtau1/dd)^2 / (1 + 2 n_s tau1)^2."""
    tr = tau1_exact(scene.tf, scene.d)
    v = VACUUM_VARIANCE + scene.n_s * tr.tau1
    dv = scene.n_s * tr.dtau1_dd
    return fi_gaussian_1d(v, dv)


def fi_heterodyne(scene) -> float:
    """Heterodyne information n_s^2 (dtau1/dd)^2 / (1 + n_s tau1)^2.

    Half the signal reaches each quadrature, but both are read out.
    """
    tr = tau1_exact(scene.tf, scene.d)
    v = VACUUM_VARIANCE + 0.5 * scene.n_s * tr.tau1
    dv = 0.5 * scene.n_s * tr.dtau1_dd
    return fi_gaussian_2d(v, dv)


def fi_homodyne_small_d(scene) -> float:
    """Small-separation homodyne law 2 n_s^2 d^2 / (n_s d^2 + 2 sigma^2)^2.

    Maximum n_s / 4 sigma^2 at d = sigma sqrt(2 / n_s).
    """
    sigma = sigma_of(scene.tf)
    n_s = scene.n_s
    d2 = scene.d**2
    return 2.0 * n_s**2 * d2 / (n_s * d2 + 2.0 * sigma**2) ** 2


def fi_heterodyne_small_d(scene) -> float:
    """Small-separation heterodyne law 4 n_s^2 d^2 / (n_s d^2 + 4 sigma^2)^2.

    Maximum n_s / 4 sigma^2 at d = 2 sigma / sqrt(n_s).
    """
    sigma = sigma_of(scene.tf)
    n_s = scene.n_s
    d2 = scene.d**2
    return 4.0 * n_s**2 * d2 / (n_s * d2 + 4.0 * sigma**2) ** 2


def shot_noise_snr(kind: str, n_s: float) -> float:
    """Signal-to-shot-noise ratio: 2 n_s for homodyne, n_s for heterodyne.

    Homodyne concentrates the full signal variance n_s tau1 against a noise
    floor of 1/2; heterodyne splits the signal over two quadratures whose
    combined floor is 1.
    """
    if kind == HOMODYNE:
        return 2.0 * n_s
    if kind == HETERODYNE:
        return float(n_s)
    raise ValidationError(f"kind must be one of {QUADRATURE_KINDS}, got {kind!r}")


def sample_quadrature(model: QuadratureModel, d: float, count: int, seed) -> np.ndarray:
    """i.i.d. quadrature outcomes at separation d.

    Homodyne returns shape (count,); heterodyne returns (count, 2) pairs,
    each component with variance V(d).  ``seed`` may be anything accepted by
    numpy's default_rng, so spawned SeedSequences work for parallel streams.
    """
    if count < 1:
        raise ValidationError(f"count must be at least 1, got {count}")
    rng = np.random.default_rng(seed)
    scale = np.sqrt(model.variance(d))
    shape = (count,) if model.kind == HOMODYNE else (count, 2)
    return rng.normal(0.0, scale, size=shape)
