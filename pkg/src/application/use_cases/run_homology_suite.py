from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from src.core.exceptions import NotAComplexException
from src.core.logger import app_logger
from src.domain.entities.finite_complex import FiniteComplex, HomologyResult
from src.domain.entities.report import SuiteOutcome, Verdict
from src.infrastructure.frameworks.homology_service import HomologyService
from src.infrastructure.mappers.complex_mapper import ComplexMapper


class RunHomologySuiteUseCase:
    """Use case pour l'homologie de complexes finis par rang numérique"""

    suite = "homology"
    description = "Betti numbers of finite complexes by SVD rank, stable under conjugation by random bases"
    reference = (
        "Homology of a finite-dimensional chain complex: dim H_k = dim C_k − rank ∂_k − rank ∂_{k+1}, "
        "invariant under chain isomorphisms"
    )
    columns = ["complex", "reduced", "degree", "dim", "rank", "betti", "expected", "spectral_gap"]

    def __init__(self, homology: HomologyService):
        self.homology = homology

    def execute(
        self,
        n: int = 4,
        top_degree: int = 6,
        n_conjugations: int = 5,
        complexes: Optional[List[Dict[str, Any]]] = None,
        seed: int = 0,
    ) -> SuiteOutcome:
        """
        Calcule les nombres de Betti des complexes de référence

        Workflow :
        1. Complexe alterné (identités en degré pair) et ses conjugués
        2. Cercle simplicial, réduit et non réduit
        3. Complexe nul et complexes du scénario
        4. Rejet d'un complexe avec ∂∂ ≠ 0
        """
        app_logger.info(f"Suite {self.suite}: n={n} top_degree={top_degree}")
        rng = np.random.default_rng(seed)
        outcome = SuiteOutcome(self.suite, list(self.columns))

        alternating = FiniteComplex.alternating_identity(n, top_degree)
        expected = (n,) + (0,) * top_degree
        self._case(outcome, alternating, expected)
        for j in range(n_conjugations):
            conjugated = self.homology.random_conjugation(alternating, rng)
            self._case(outcome, conjugated, expected, label=f"{alternating.name} conjugated[{j}]")
        self._case(outcome, alternating, (n - 1,) + (0,) * top_degree, reduced=True)

        circle = FiniteComplex.simplicial_circle()
        self._case(outcome, circle, (1, 1))
        self._case(outcome, circle, (0, 1), reduced=True)
        for j in range(n_conjugations):
            self._case(outcome, self.homology.random_conjugation(circle, rng), (1, 1), label=f"{circle.name} conjugated[{j}]")

        zero = FiniteComplex.zero((2, 3, 1))
        self._case(outcome, zero, zero.dims)

        for payload in complexes or []:
            complex_ = ComplexMapper.payload_to_entity(payload)
            self._case(outcome, complex_, payload.get("expected"), reduced=bool(payload.get("reduced", False)))

        broken = FiniteComplex((1, 1, 1), (np.ones((1, 1)), np.ones((1, 1))), name="broken")
        try:
            self.homology.homology(broken)
            rejected = False
        except NotAComplexException:
            rejected = True
        outcome.check(Verdict.holds("∂∂ ≠ 0 rejected", rejected, "homology needs a complex"))
        return outcome

    def _case(
        self,
        outcome: SuiteOutcome,
        complex_: FiniteComplex,
        expected: Optional[Sequence[int]],
        reduced: bool = False,
        label: str = "",
    ) -> HomologyResult:
        label = label or complex_.name
        result = self.homology.homology(complex_, reduced=reduced)
        for k, betti in enumerate(result.betti):
            outcome.add_row(
                complex=label,
                reduced=reduced,
                degree=k,
                dim=complex_.dims[k],
                rank=result.ranks[k],
                betti=betti,
                expected=None if expected is None else int(expected[k]),
                spectral_gap=result.spectral_gaps[k],
            )
        if expected is not None:
            matches = tuple(result.betti) == tuple(int(b) for b in expected)
            suffix = " (reduced)" if reduced else ""
            outcome.check(Verdict.holds(
                f"betti {label}{suffix}",
                matches,
                "dim H_k = dim C_k − rank ∂_k − rank ∂_{k+1}",
                measured=result.defect,
            ))
        outcome.metadata.setdefault("betti", {})[label + (" (reduced)" if reduced else "")] = list(result.betti)
        return result
