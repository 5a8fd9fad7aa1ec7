"""The full identity suite, run per parameter point.

Each of the eleven named checks folds several realization-level reports
into one pass/fail entry; the parts stay visible in ``metadata["parts"]``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable

from .report import FAIL, VerificationReport, combine, stopwatch
from .reps import (
    check_matrix_representation,
    leonard_triple_certificate,
    overlap_agreement,
    racah_overlaps_hypergeometric,
    recurrence_check,
    NotLeonard,
    SpectrumMismatch,
)
from .su11 import (
    RacahParams,
    casimir_sum_identity,
    check_casimir_commutation,
    check_racah_relations,
    check_su11_relations,
    check_z3_cyclic,
    check_z3_relations,
    racah_casimir_check,
    racah_generators_1var,
    racah_generators_3var,
    reduction_identity,
    s_sum_identity,
)
from .su2 import g_sum_identity, racah_generators_su2, verify_identification


def _realizations(params: RacahParams):
    return (
        racah_generators_3var(params),
        racah_generators_1var(params),
        racah_generators_su2(params),
    )


def _over_realizations(name: str, check) -> Callable[[RacahParams], VerificationReport]:
    def run(params: RacahParams) -> VerificationReport:
        parts = [check(g) for g in _realizations(params)]
        return combine(name, params, parts)

    return run


def _z3(params: RacahParams) -> VerificationReport:
    parts = []
    for g in _realizations(params):
        parts.append(check_z3_relations(g))
        parts.append(check_z3_cyclic(g))
    return combine("z3_relations", params, parts)


def _casimir_decomposition(params: RacahParams) -> VerificationReport:
    return combine(
        "casimir_decomposition",
        params,
        [casimir_sum_identity(params), check_casimir_commutation(params)],
    )


def _matrix_racah(params: RacahParams) -> VerificationReport:
    parts = [check_matrix_representation(params, b) for b in ("monomial", "udld", "orthonormal")]
    return combine("matrix_racah", params, parts)


def _leonard_triple(params: RacahParams) -> VerificationReport:
    with stopwatch() as t:
        try:
            cert = leonard_triple_certificate(params)
            triple = VerificationReport("leonard_triple_certificate", params, "pass", metadata=cert.metadata)
        except (NotLeonard, SpectrumMismatch) as exc:
            triple = VerificationReport("leonard_triple_certificate", params, FAIL, metadata={"error": str(exc)})
    triple.elapsed_ms = t[0]
    parts = [
        triple,
        overlap_agreement(params),
        recurrence_check(racah_overlaps_hypergeometric(params)),
    ]
    return combine("leonard_triple", params, parts)


def _named(name: str, fn) -> Callable[[RacahParams], VerificationReport]:
    def run(params: RacahParams) -> VerificationReport:
        report = fn(params)
        report.check_name = name
        report.params = params
        return report

    return run


CHECKS: dict[str, Callable[[RacahParams], VerificationReport]] = {
    "su11_relations": _named("su11_relations", check_su11_relations),
    "casimir_decomposition": _casimir_decomposition,
    "racah_relations": _over_realizations("racah_relations", check_racah_relations),
    "casimir_value": _over_realizations("casimir_value", racah_casimir_check),
    "z3_relations": _z3,
    "hyper_reduction": _named("hyper_reduction", reduction_identity),
    "s_sum": _named("s_sum", s_sum_identity),
    "g_sum": _named("g_sum", g_sum_identity),
    "identification": _named("identification", verify_identification),
    "matrix_racah": _matrix_racah,
    "leonard_triple": _leonard_triple,
}


def run_suite(params: RacahParams, checks=None) -> list[VerificationReport]:
    """Run the named checks (all by default) at one parameter point, in suite order."""
    names = list(CHECKS) if checks is None else list(checks)
    return [CHECKS[name](params) for name in names]


def random_triples(count: int, seed: int = 0, bound: int = 12) -> list[tuple[Fraction, Fraction, Fraction]]:
    """Reproducible positive rational triples with numerators and denominators in 1..bound."""
    rng = random.Random(seed)
    return [
        tuple(Fraction(rng.randint(1, bound), rng.randint(1, bound)) for _ in range(3))
        for _ in range(count)
    ]
