from typing import Any, Dict

import numpy as np

from src.core.exceptions import NotFoundException, ValidationException
from src.domain.entities.region import (
    Ball,
    CloudComplementRegion,
    HalfSpace,
    OpenRegion,
    SuperLevelRegion,
)

REGION_KINDS = ("ball", "half-space", "super-level", "cloud-complement")


class RegionMapper:
    """Mapper between scenario region payloads and OpenRegion entities"""

    @staticmethod
    def payload_to_entity(payload: Dict[str, Any]) -> OpenRegion:
        """{"kind": "ball", "center": [...], "radius": r} and friends"""
        kind = payload.get("kind")
        try:
            if kind == "ball":
                radius = float(payload["radius"])
                if radius <= 0:
                    raise ValidationException(f"Ball radius must be positive, got {radius}")
                return Ball(np.asarray(payload["center"], dtype=float), radius, name=payload.get("name", "ball"))
            if kind == "half-space":
                normal = np.asarray(payload["normal"], dtype=float)
                if not np.any(normal):
                    raise ValidationException("Half-space normal must be nonzero")
                return HalfSpace(normal, float(payload["offset"]), name=payload.get("name", "half-space"))
            if kind == "super-level":
                base = RegionMapper.payload_to_entity(payload["base"])
                return SuperLevelRegion(base, float(payload["level"]))
            if kind == "cloud-complement":
                return CloudComplementRegion(np.asarray(payload["removed"], dtype=float))
        except KeyError as exc:
            raise ValidationException(f"Region '{kind}' misses field {exc.args[0]}", details=payload)
        raise NotFoundException(f"Unknown region kind '{kind}'", details={"known": list(REGION_KINDS)})

    @staticmethod
    def entity_to_payload(region: OpenRegion) -> Dict[str, Any]:
        return region.describe()
