"""Estimator-style interface around the query engine.

``NumericalRange`` follows the fit/predict conventions: ``fit`` takes the
square matrix, ``predict`` labels complex points against the fitted region and
``decision_function`` exposes the signed margin.  Parameters mirror
``RankRangeQuery`` and are stored unmodified, so ``get_params`` and
``set_params`` work the usual way.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .engine import RankRangeQuery, boundary_region
from .settings import DEFAULT
from .validation import check_points

__all__ = ["NumericalRange"]


class NumericalRange(BaseEstimator):
    """Compute a rank-k numerical range and classify points against it.

    Parameters
    ----------
    k : int, default 1
        Rank of the compression; k = 1 gives the classical numerical range.
    grid_size : int, default 720
        Number of uniformly sampled support angles.
    tolerance : float, default 1e-9
        Geometric tolerance used for classification and membership margins.
    certify : bool, default True
        Attempt a compression-witness certificate for nonempty regions.

    Attributes
    ----------
    region_ : ConvexRegion
    certificate_ : EmptyCertificate | NonEmptyWitness | Approximate
    angles_, offsets_ : ndarray
        The support family generating the region.
    is_empty_ : bool
    n_features_in_ : int
        Matrix dimension seen during fit.
    """

    def __init__(self, k: int = 1, grid_size: int = 720, tolerance: float = DEFAULT.geometric, certify: bool = True):
        self.k = k
        self.grid_size = grid_size
        self.tolerance = tolerance
        self.certify = certify

    def fit(self, X, y=None):
        query = RankRangeQuery(X, self.k, grid_size=self.grid_size, tolerance=self.tolerance)
        result = boundary_region(query, attempt_witness=self.certify)
        self.matrix_ = query.matrix
        self.n_features_in_ = query.n
        self.result_ = result
        self.region_ = result.region
        self.certificate_ = result.certificate
        self.angles_ = result.angles
        self.offsets_ = result.offsets
        self.is_empty_ = result.region.is_empty
        return self

    def _check_fitted(self):
        if not hasattr(self, "region_"):
            raise NotFittedError("this NumericalRange instance is not fitted yet; call fit first")

    def decision_function(self, X) -> np.ndarray:
        """Smallest support slack per point; positive inside, negative outside."""
        self._check_fitted()
        points = check_points(X)
        phases = np.exp(1j * self.angles_)
        slacks = self.offsets_[None, :] - 2.0 * np.real(points[:, None] * phases[None, :])
        return slacks.min(axis=1)

    def predict(self, X) -> np.ndarray:
        """Labels +1 (inside), 0 (boundary within tolerance), -1 (outside)."""
        self._check_fitted()
        margins = self.decision_function(X)
        labels = np.zeros(margins.shape, dtype=int)
        labels[margins > self.tolerance] = 1
        labels[margins < -self.tolerance] = -1
        return labels

    def fit_predict(self, X, points) -> np.ndarray:
        return self.fit(X).predict(points)
