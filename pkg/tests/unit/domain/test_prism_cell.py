import numpy as np
import pytest

from src.domain.entities.prism import PrismCell, prism_cells
from src.domain.entities.simplex_domain import SimplexDomain


class TestPrismCell:

    def test_interval_cells(self):
        first, second = prism_cells(1)
        assert first.vertices().tolist() == [[0.0, 0.0], [0.0, 1.0], [1.0, 1.0]]
        assert second.vertices().tolist() == [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]]
        assert (first.sign, second.sign) == (1, -1)

    def test_index_range(self):
        with pytest.raises(ValueError):
            PrismCell(1, 2)

    def test_membership(self):
        first, second = prism_cells(1)
        high, low = np.array([[0.5, 0.9]]), np.array([[0.5, 0.2]])
        assert first.contains(high)[0] and not second.contains(high)[0]
        assert second.contains(low)[0] and not first.contains(low)[0]

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_affine_param_hits_the_vertices(self, k):
        for cell in prism_cells(k):
            image = cell.affine_param(SimplexDomain(k + 1).vertices())
            assert np.allclose(image, cell.vertices())

    @pytest.mark.parametrize("k", [1, 2])
    def test_cells_cover_the_prism(self, k, rng):
        x = rng.dirichlet(np.ones(k + 1), size=200)[:, 1:]
        t = rng.uniform(size=(200, 1))
        points = np.hstack([x, t])
        hits = np.sum([cell.contains(points) for cell in prism_cells(k)], axis=0)
        assert np.all(hits >= 1)
