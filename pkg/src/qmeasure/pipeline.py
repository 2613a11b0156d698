"""End-to-end verification pipeline and report emission.

``run_pipeline`` drives a scenario through: observable/state validation,
transformer construction, repeatability check, dilation, evolution, and
the full stack of numeric identity checks. Every check lands in the
report as a verdict carrying its deviation and tolerance, so failures are
diagnosable from the report alone. Checks that only make sense for
repeatable instruments are listed as not applicable when the instrument
is not repeatable, rather than counted as failures.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from typing import Any

import numpy as np

from . import tolerances as tol
from .errors import QMeasureError
from .information import (
    EntropyReport,
    Verdict,
    commutator_norm,
    incompatibility_entropy,
    mutual_information,
    post_reading_state,
    read_pointer_tripartite,
    shannon_entropy,
    verify_entanglement_as_incompatibility,
    verify_incompatibility_transfer,
    von_neumann_entropy,
)
from .instruments import (
    dilate,
    evolve,
    is_repeatable,
    repeat_measurement_check,
    verify_conditional_states,
    verify_probability_reproducibility,
)
from .linalg import partial_trace
from .observables import PureState, embed_observable, probabilities
from .scenario import Scenario
from .schmidt import reconstruct, reduced_states, schmidt_decompose, twin_observables, verify_definite_values

# Checks that presume a repeatable instrument, in report order.
_REPEATABLE_ONLY = (
    "repeat_certainty",
    "definite_values",
    "schmidt_probability_match",
    "twin_diagonality",
    "compatibility_migration",
    "entropy_ledger",
    "entanglement_incompatibility_final",
    "entanglement_incompatibility_initial",
    "pointer_reading_marginals",
    "pointer_reading_commutators",
    "pointer_reading_incompatibility",
)


@dataclass(frozen=True)
class VerificationReport:
    """Everything one pipeline run produced."""

    scenario: dict[str, Any]
    probabilities: tuple[float, ...] | None
    schmidt_coefficients: tuple[float, ...] | None
    initial_commutator_norm: float | None
    entropies: EntropyReport | None
    verdicts: tuple[Verdict, ...]
    not_applicable: tuple[str, ...]
    error: str | None
    overall_pass: bool
    duration_seconds: float


def _verdict(label: str, lhs: float, rhs: float, deviation: float, tolerance: float, override: float | None) -> Verdict:
    applied = tolerance if override is None else override
    return Verdict.from_deviation(label, lhs, rhs, deviation, applied)


def run_pipeline(scenario: Scenario) -> VerificationReport:
    """Run every check the scenario supports and collect the verdicts."""
    started = time.perf_counter()
    override = scenario.tolerance
    verdicts: list[Verdict] = []
    not_applicable: list[str] = []
    error: str | None = None
    born: np.ndarray | None = None
    coefficients: tuple[float, ...] | None = None
    initial_commutator: float | None = None
    entropies: EntropyReport | None = None

    stage = "transformers"
    try:
        obs = scenario.observable
        psi = scenario.initial_state
        ts = scenario.build_transformers()

        stage = "repeatability"
        repeatable, violation = is_repeatable(ts)
        verdicts.append(_verdict("repeatability_condition", violation, 0.0, violation, tol.REPEATABILITY, override))

        stage = "dilation"
        model = dilate(ts)
        dims = model.composite_dims

        stage = "evolution"
        final = evolve(model, psi)
        born = probabilities(obs, psi)
        initial_commutator = commutator_norm(obs, psi)

        stage = "probability_reproducibility"
        prc = verify_probability_reproducibility(model, psi)
        verdicts.append(_verdict("probability_reproducibility", prc, 0.0, prc, tol.PRC, override))

        stage = "conditional_states"
        kraus = verify_conditional_states(model, ts, psi)
        verdicts.append(_verdict("conditional_states", kraus, 0.0, kraus, tol.KRAUS_CONSISTENCY, override))

        stage = "schmidt"
        sf = schmidt_decompose(final, dims)
        coefficients = tuple(float(c) for c in sf.coefficients)
        overlap = abs(complex(np.vdot(final, reconstruct(sf))))
        verdicts.append(
            _verdict("schmidt_reconstruction", overlap, 1.0, 1.0 - overlap, tol.RECONSTRUCTION, override)
        )

        stage = "entropies"
        entropies = mutual_information(final, dims)

        if not repeatable:
            not_applicable.extend(_REPEATABLE_ONLY)
        else:
            stage = "repeat_certainty"
            smallest = repeat_measurement_check(model, ts, psi)
            verdicts.append(
                _verdict("repeat_certainty", smallest, 1.0, 1.0 - smallest, tol.REPEAT_CERTAINTY, override)
            )

            stage = "definite_values"
            definite = verify_definite_values(sf, obs, model.pointer_observable)
            canonical = definite.schmidt_form
            worst = max(definite.max_left_violation, definite.max_right_violation)
            verdicts.append(
                _verdict(
                    "definite_values",
                    definite.max_left_violation,
                    definite.max_right_violation,
                    worst,
                    tol.RECONSTRUCTION,
                    override,
                )
            )

            stage = "schmidt_probability_match"
            match = max(
                abs(float(c) ** 2 - float(born[pairing.term_index]))
                for c, pairing in zip(canonical.coefficients, definite.assignment)
            )
            verdicts.append(_verdict("schmidt_probability_match", match, 0.0, match, tol.THEOREM, override))

            stage = "twins"
            twins = twin_observables(canonical, definite.assignment)
            object_matrix = twins.object_matrix()
            pointer_matrix = twins.pointer_matrix()
            twin_object = max(
                float(np.linalg.norm(object_matrix @ l - pairing.object_eigenvalue * l))
                for l, pairing in zip(canonical.left_vectors, definite.assignment)
            )
            twin_pointer = max(
                float(np.linalg.norm(pointer_matrix @ r - pairing.pointer_eigenvalue * r))
                for r, pairing in zip(canonical.right_vectors, definite.assignment)
            )
            verdicts.append(
                _verdict(
                    "twin_diagonality",
                    twin_object,
                    twin_pointer,
                    max(twin_object, twin_pointer),
                    tol.RECONSTRUCTION,
                    override,
                )
            )

            stage = "compatibility_migration"
            rho1, rho2 = reduced_states(final, dims)
            object_comm = commutator_norm(obs, rho1)
            pointer_comm = commutator_norm(model.pointer_observable, rho2)
            verdicts.append(
                _verdict(
                    "compatibility_migration",
                    object_comm,
                    pointer_comm,
                    max(object_comm, pointer_comm),
                    tol.COMMUTATOR,
                    override,
                )
            )

            stage = "entropy_ledger"
            h_born = shannon_entropy(np.clip(born, 0.0, None))
            ledger = max(
                abs(entropies.s1 - entropies.s2),
                entropies.s12,
                abs(entropies.mutual_information - 2.0 * h_born),
            )
            verdicts.append(
                _verdict("entropy_ledger", entropies.mutual_information, 2.0 * h_born, ledger, tol.THEOREM, override)
            )

            stage = "entanglement_incompatibility_final"
            final_identity = verify_entanglement_as_incompatibility(model, ts, psi)
            verdicts.append(
                _verdict(
                    final_identity.label,
                    final_identity.lhs,
                    final_identity.rhs,
                    final_identity.deviation,
                    final_identity.tolerance,
                    override,
                )
            )

            stage = "entanglement_incompatibility_initial"
            transfer = verify_incompatibility_transfer(ts, psi, model)
            verdicts.append(
                _verdict(transfer.label, transfer.lhs, transfer.rhs, transfer.deviation, transfer.tolerance, override)
            )

            stage = "pointer_reading"
            tri, dims3 = read_pointer_tripartite(final, model)
            rho_tri = np.outer(tri, np.conj(tri))
            marginal_entropies = [
                von_neumann_entropy(_sym(partial_trace(rho_tri, dims3, keep=m))) for m in range(3)
            ]
            marginal_dev = max(abs(s - h_born) for s in marginal_entropies)
            verdicts.append(
                _verdict(
                    "pointer_reading_marginals", min(marginal_entropies), h_born, marginal_dev, tol.THEOREM, override
                )
            )

            rho12 = post_reading_state(tri, dims3)
            pair_dims = (dims3[0], dims3[1])
            obj_after = commutator_norm(embed_observable(obs, pair_dims, 0), rho12)
            ptr_after = commutator_norm(embed_observable(model.pointer_observable, pair_dims, 1), rho12)
            verdicts.append(
                _verdict(
                    "pointer_reading_commutators",
                    obj_after,
                    ptr_after,
                    max(obj_after, ptr_after),
                    tol.COMMUTATOR,
                    override,
                )
            )

            lifted = embed_observable(obs, dims3, 0)
            reappeared = incompatibility_entropy(lifted, PureState(tri))
            verdicts.append(
                _verdict(
                    "pointer_reading_incompatibility",
                    reappeared,
                    h_born,
                    abs(reappeared - h_born),
                    tol.THEOREM,
                    override,
                )
            )
    except QMeasureError as exc:
        error = f"{stage}: {type(exc).__name__}: {exc}"
    except (np.linalg.LinAlgError, FloatingPointError) as exc:
        error = f"{stage}: numerical failure: {exc}"

    overall = error is None and all(v.passed for v in verdicts)
    return VerificationReport(
        scenario=scenario.to_dict(),
        probabilities=None if born is None else tuple(float(p) for p in born),
        schmidt_coefficients=coefficients,
        initial_commutator_norm=initial_commutator,
        entropies=entropies,
        verdicts=tuple(verdicts),
        not_applicable=tuple(not_applicable),
        error=error,
        overall_pass=overall,
        duration_seconds=time.perf_counter() - started,
    )


def _sym(m: np.ndarray) -> np.ndarray:
    return (m + np.conj(m).T) / 2.0


def report_to_dict(report: VerificationReport, include_timing: bool = False) -> dict[str, Any]:
    """Structured form of a report; timing is off by default so the output is byte-stable."""
    doc: dict[str, Any] = {
        "scenario": report.scenario,
        "probabilities": None if report.probabilities is None else list(report.probabilities),
        "schmidt_coefficients": None
        if report.schmidt_coefficients is None
        else list(report.schmidt_coefficients),
        "initial_commutator_norm": report.initial_commutator_norm,
        "entropies": None
        if report.entropies is None
        else {
            "s1": report.entropies.s1,
            "s2": report.entropies.s2,
            "s12": report.entropies.s12,
            "mutual_information": report.entropies.mutual_information,
            "entanglement": report.entropies.entanglement,
            "quasi_classical": report.entropies.quasi_classical,
            "shannon_pk": report.entropies.shannon_pk,
        },
        "verdicts": [
            {
                "label": v.label,
                "lhs": v.lhs,
                "rhs": v.rhs,
                "deviation": v.deviation,
                "tolerance": v.tolerance,
                "passed": v.passed,
            }
            for v in report.verdicts
        ],
        "not_applicable": list(report.not_applicable),
        "error": report.error,
        "overall_pass": report.overall_pass,
    }
    if include_timing:
        doc["duration_seconds"] = report.duration_seconds
    return doc


def report_to_json(report: VerificationReport, include_timing: bool = False) -> str:
    return json.dumps(report_to_dict(report, include_timing), indent=2, sort_keys=True) + "\n"


def report_to_text(report: VerificationReport, verbosity: str = "normal") -> str:
    """Human-readable rendering with one line per verdict."""
    lines = ["verification report", "==================="]
    if report.probabilities is not None:
        lines.append("outcome probabilities: " + ", ".join(f"{p:.10f}" for p in report.probabilities))
    if report.schmidt_coefficients is not None:
        lines.append("schmidt coefficients:  " + ", ".join(f"{c:.10f}" for c in report.schmidt_coefficients))
    if report.initial_commutator_norm is not None:
        lines.append(f"initial [A, rho] norm: {report.initial_commutator_norm:.3e}")
    if report.entropies is not None:
        e = report.entropies
        lines.append(
            f"entropies (bits): S1={e.s1:.10f} S2={e.s2:.10f} S12={e.s12:.3e} I12={e.mutual_information:.10f}"
        )
        if e.entanglement is not None:
            lines.append(
                f"entanglement={e.entanglement:.10f} quasi_classical={e.quasi_classical:.10f} "
                f"H(p)={e.shannon_pk:.10f}"
            )
    lines.append("")
    width = max((len(v.label) for v in report.verdicts), default=10)
    for v in report.verdicts:
        status = "PASS" if v.passed else "FAIL"
        lines.append(f"{v.label:<{width}}  deviation={v.deviation:.3e}  tolerance={v.tolerance:.1e}  {status}")
        if verbosity == "verbose":
            lines.append(f"{'':<{width}}  lhs={v.lhs:.12g}  rhs={v.rhs:.12g}")
    for label in report.not_applicable:
        lines.append(f"{label:<{width}}  not applicable (instrument is not repeatable)")
    if report.error is not None:
        lines.append(f"error: {report.error}")
    lines.append("")
    lines.append(f"overall: {'PASS' if report.overall_pass else 'FAIL'}")
    lines.append(f"duration: {report.duration_seconds:.3f}s")
    return "\n".join(lines) + "\n"


__all__ = [
    "VerificationReport",
    "run_pipeline",
    "report_to_dict",
    "report_to_json",
    "report_to_text",
]
