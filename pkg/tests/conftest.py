"""Shared fixtures: canonical operating point and random-config generator."""

from __future__ import annotations

import numpy as np
import pytest

from weakdelay import (AtomicConfig, PostSelection, ProbeConfig, calibrate,
                       run_point)


@pytest.fixture(scope="session")
def fig1_atomic() -> AtomicConfig:
    return AtomicConfig()


@pytest.fixture(scope="session")
def fig1_probe() -> ProbeConfig:
    return ProbeConfig()


@pytest.fixture(scope="session")
def fig1_ps() -> PostSelection:
    return PostSelection()


@pytest.fixture(scope="session")
def calibration(fig1_atomic, fig1_probe) -> float:
    """Scalar matching the peak-to-peak delay to 305/gamma at fig1."""
    return calibrate(fig1_atomic, fig1_probe)


@pytest.fixture(scope="session")
def fig1_report(fig1_atomic, fig1_probe, fig1_ps, calibration):
    return run_point(fig1_atomic, fig1_probe, fig1_ps,
                     calibration=calibration)


def random_config(rng: np.random.Generator, min_dephasing: float = 0.0,
                  min_G: float = 0.0) -> AtomicConfig:
    """Random valid medium; dephasings derived from the channel rates.

    ``min_dephasing`` floors the collisional rate so every dephasing
    (including the ground coherence one) stays comfortably positive;
    ``min_G`` floors the drive so the probe-off steady state is unique,
    which the dense-solve oracles require.
    """
    return AtomicConfig(
        gamma_13=rng.uniform(0.1, 3.0),
        gamma_14=rng.uniform(0.1, 3.0),
        gamma_23=rng.uniform(0.1, 3.0),
        gamma_24=rng.uniform(0.1, 3.0),
        gamma_coll=rng.uniform(min_dephasing, min_dephasing + 0.5),
        B=rng.uniform(0.0, 10.0),
        B_prime=rng.uniform(0.0, 30.0),
        Delta=rng.uniform(-5.0, 5.0),
        G=rng.uniform(min_G, 1.0),
    )
