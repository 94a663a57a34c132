"""Audit of the published silicon-register estimates.

Every quantitative claim the package models is recomputed from the
registered constants and compared against the published number.  Verdicts
are a fixed function of the computed/published ratio:

    match           within 15%
    approx          within a factor of 2
    typo-suspected  within 15% of a nonzero power of ten (decade slip)
    discrepant      anything else

The audit never fails; disagreement is its product, not an error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import (
    CONSTANTS,
    ELECTRON,
    SILICON,
    SILICON_29,
    boltzmann_ratio,
    spin_half_variance,
    spin_half_variance_full_arg,
)
from .dephasing import ExponentialCorrelation, decoherence_time
from .mechanisms import (
    HyperfineElectronChannel,
    ParamagneticImpurityChannel,
    PhononRamanChannel,
    hyperfine_variance,
    max_nuclear_impurity_concentration,
    max_paramagnetic_concentration,
    paramagnetic_variance,
    phonon_rate,
    required_field_temperature_ratio,
)

__all__ = ["AuditEntry", "build_audit", "render_table", "classify_ratio"]

_REFERENCE_RATIO = 20.0  # T/K operating point quoted with most estimates
_REFERENCE_FIELD = 2.0  # T
_REFERENCE_TEMPERATURE = 0.1  # K


@dataclass(frozen=True)
class AuditEntry:
    claim_id: str
    description: str
    published_value: float
    computed_value: float
    units: str
    ratio: float
    verdict: str


def classify_ratio(ratio: float) -> str:
    """Verdict from the computed/published ratio alone."""
    if ratio <= 0.0 or not math.isfinite(ratio):
        return "discrepant"
    if 1.0 / 1.15 <= ratio <= 1.15:
        return "match"
    if 0.5 <= ratio <= 2.0:
        return "approx"
    exponent = math.log10(ratio)
    nearest = round(exponent)
    if nearest != 0 and abs(exponent - nearest) <= math.log10(1.15):
        return "typo-suspected"
    return "discrepant"


def _entry(
    claim_id: str,
    description: str,
    published: float,
    computed: float,
    units: str,
) -> AuditEntry:
    ratio = computed / published
    return AuditEntry(
        claim_id=claim_id,
        description=description,
        published_value=published,
        computed_value=computed,
        units=units,
        ratio=ratio,
        verdict=classify_ratio(ratio),
    )


def build_audit() -> list[AuditEntry]:
    """Recompute every published estimate and classify the agreement."""
    entries = []

    x_ref = boltzmann_ratio(ELECTRON.gamma, _REFERENCE_FIELD, _REFERENCE_TEMPERATURE)
    entries.append(
        _entry(
            "polarization-ratio",
            "electron Zeeman-to-thermal ratio at B = 2 T, T = 0.1 K",
            27.0,
            x_ref,
            "dimensionless",
        )
    )

    entries.append(
        _entry(
            "hyperfine-threshold-ratio",
            "B/T needed for a 1 s static hyperfine dephasing time",
            30.0,
            required_field_temperature_ratio(SILICON.hyperfine_constant, 1.0),
            "T/K",
        )
    )

    hyperfine = HyperfineElectronChannel(
        field=_REFERENCE_FIELD, temperature=_REFERENCE_TEMPERATURE
    )
    td_static = decoherence_time(
        ExponentialCorrelation(hyperfine_variance(hyperfine), hyperfine.tau1),
        "static",
    )
    entries.append(
        _entry(
            "hyperfine-dephasing-time",
            "static hyperfine dephasing time at B/T = 20 T/K",
            1e-3,
            td_static,
            "s",
        )
    )

    phonon = PhononRamanChannel()
    approx_prefactor = phonon_rate(phonon, "factorial-approx") / (
        phonon.t_over_theta ** 7
    )
    entries.append(
        _entry(
            "phonon-rate-prefactor",
            "Raman rate coefficient of (T/Theta)^7 (factorial form)",
            0.75e4,
            approx_prefactor,
            "1/s",
        )
    )

    # Dipolar variance per (concentration * cutoff volume), before thermal
    # suppression; the published number appears to have a flipped decade
    # exponent, which the ratio exposes.
    cutoff = SILICON.min_distance
    paramagnetic_ref = ParamagneticImpurityChannel(
        concentration=1.0,
        field=_REFERENCE_FIELD,
        temperature=_REFERENCE_TEMPERATURE,
    )
    per_site_fraction = paramagnetic_variance(paramagnetic_ref) / (
        spin_half_variance(paramagnetic_ref.x) * cutoff ** 3
    )
    entries.append(
        _entry(
            "paramagnetic-prefactor-full",
            "dipolar variance per site fraction, no thermal factor",
            33.4e-13,
            per_site_fraction,
            "1/s^2",
        )
    )

    suppressed = per_site_fraction * spin_half_variance(x_ref)
    entries.append(
        _entry(
            "paramagnetic-prefactor-suppressed",
            "dipolar variance per site fraction at B/T = 20 T/K",
            0.74e3,
            suppressed,
            "1/s^2",
        )
    )

    bound = max_paramagnetic_concentration(1.0, _REFERENCE_RATIO)
    entries.append(
        _entry(
            "paramagnetic-concentration-bound",
            "paramagnetic impurity bound for a 1 s dephasing time",
            0.7e20,
            bound * 1e-6,
            "1/cm^3",
        )
    )

    temperature_threshold = (
        abs(SILICON_29.gamma) * CONSTANTS.hbar * _REFERENCE_FIELD / CONSTANTS.k_boltzmann
    )
    entries.append(
        _entry(
            "impurity-polarization-temperature",
            "spin temperature where the host nuclear Zeeman ratio reaches 1",
            0.8e-3,
            temperature_threshold,
            "K",
        )
    )

    nuclear_bound = max_nuclear_impurity_concentration(
        1.0, _REFERENCE_FIELD, 0.8e-3
    )
    entries.append(
        _entry(
            "impurity-concentration-bound",
            "host nuclear-spin fraction bound for a 1 s time "
            "(literal thermal factor; large disagreement is the finding)",
            4.5e-2,
            nuclear_bound.percent_of_sites,
            "% of sites",
        )
    )

    entries.append(
        _entry(
            "thermal-variance-forms",
            "full-argument variance form vs the exponential approximation "
            "the thresholds rely on, at the B/T = 20 operating point",
            math.exp(-x_ref),
            spin_half_variance_full_arg(x_ref),
            "dimensionless",
        )
    )

    entries.append(
        _entry(
            "site-density-vs-lattice-cube",
            "quoted site density vs the literal inverse lattice-constant "
            "cube (the quoted value matches 8 atoms per cubic cell)",
            SILICON.site_density * 1e-6,
            SILICON.lattice_constant ** -3 * 1e-6,
            "1/cm^3",
        )
    )

    return entries


def render_table(entries: list[AuditEntry]) -> str:
    """Fixed-width text table, one line per claim."""
    header = (
        f"{'claim':34} {'published':>13} {'computed':>13} "
        f"{'ratio':>11} verdict"
    )
    lines = [header, "-" * len(header)]
    for e in entries:
        lines.append(
            f"{e.claim_id:34} {e.published_value:>13.4g} "
            f"{e.computed_value:>13.4g} {e.ratio:>11.4g} {e.verdict}"
        )
    return "\n".join(lines)
