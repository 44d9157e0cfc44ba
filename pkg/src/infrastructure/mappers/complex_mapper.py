from typing import Any, Dict

import numpy as np

from src.core.exceptions import NotFoundException, ValidationException
from src.domain.entities.finite_complex import FiniteComplex

BUILDERS = ("alternating-identity", "simplicial-circle", "zero")


class ComplexMapper:
    """Mapper between complex payloads (builder name or dense matrices) and FiniteComplex"""

    @staticmethod
    def payload_to_entity(payload: Dict[str, Any]) -> FiniteComplex:
        builder = payload.get("builder")
        if builder is not None:
            if builder == "alternating-identity":
                return FiniteComplex.alternating_identity(int(payload["n"]), int(payload["top_degree"]))
            if builder == "simplicial-circle":
                return FiniteComplex.simplicial_circle()
            if builder == "zero":
                return FiniteComplex.zero(payload["dims"])
            raise NotFoundException(f"Unknown complex builder '{builder}'", details={"known": list(BUILDERS)})

        if "dims" not in payload or "boundaries" not in payload:
            raise ValidationException("Complex payload needs 'builder' or both 'dims' and 'boundaries'")
        dims = [int(d) for d in payload["dims"]]
        matrices = []
        for k, rows in enumerate(payload["boundaries"], start=1):
            matrix = np.asarray(rows, dtype=float)
            if matrix.size == 0 and k < len(dims):
                matrix = np.zeros((dims[k - 1], dims[k]))
            matrices.append(matrix)
        return FiniteComplex(tuple(dims), tuple(matrices), name=payload.get("name", "complex"))

    @staticmethod
    def entity_to_payload(complex_: FiniteComplex) -> Dict[str, Any]:
        return {
            "name": complex_.name,
            "dims": list(complex_.dims),
            "boundaries": [m.tolist() for m in complex_.boundaries],
        }
