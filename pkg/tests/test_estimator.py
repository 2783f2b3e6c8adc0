"""Estimator-style wrapper: fit/predict conventions and parameter plumbing."""

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from rankrange.engine import Approximate, EmptyCertificate, NonEmptyWitness
from rankrange.estimator import NumericalRange
from rankrange.geometry import RegionKind

W = np.exp(2j * np.pi / 3)


def test_params_round_trip():
    est = NumericalRange(k=2, grid_size=240, tolerance=1e-8, certify=False)
    params = est.get_params()
    assert params == {"k": 2, "grid_size": 240, "tolerance": 1e-8, "certify": False}
    est.set_params(k=3)
    assert est.k == 3
    copied = clone(est)
    assert copied.get_params() == est.get_params()


def test_fit_exposes_region_and_certificate(diamond):
    est = NumericalRange(k=1).fit(diamond)
    assert est.n_features_in_ == 4
    assert est.region_.kind is RegionKind.POLYGON
    assert isinstance(est.certificate_, NonEmptyWitness)
    assert not est.is_empty_
    assert est.angles_.shape == est.offsets_.shape


def test_fit_without_certification(diamond):
    est = NumericalRange(k=1, certify=False).fit(diamond)
    assert isinstance(est.certificate_, Approximate)


def test_predict_labels(diamond):
    est = NumericalRange(k=1).fit(diamond)
    labels = est.predict([0.0, 0.2 + 0.2j, 2.0, 1.0])
    assert labels.tolist() == [1, 1, -1, 0]
    margins = est.decision_function([0.0, 2.0])
    assert margins[0] > 0.0
    assert margins[1] < 0.0


def test_predict_accepts_xy_pairs(diamond):
    est = NumericalRange(k=1).fit(diamond)
    as_complex = est.predict([0.1 + 0.2j, -2.0 - 2.0j])
    as_pairs = est.predict(np.array([[0.1, 0.2], [-2.0, -2.0]]))
    assert np.array_equal(as_complex, as_pairs)


def test_point_region_classifies_origin_as_boundary(diamond):
    est = NumericalRange(k=2).fit(diamond)
    assert est.region_.kind is RegionKind.POINT
    assert est.predict([0.0])[0] == 0


def test_empty_fit_labels_everything_outside():
    est = NumericalRange(k=2).fit(np.diag([1.0 + 0.0j, W, W**2]))
    assert est.is_empty_
    assert isinstance(est.certificate_, EmptyCertificate)
    labels = est.predict([0.0, -0.5, 1.0, 0.3 - 0.4j])
    assert np.all(labels == -1)


def test_fit_predict_matches_fit_then_predict(diamond):
    points = [0.0, 1.5, 0.5j]
    a = NumericalRange(k=1).fit_predict(diamond, points)
    b = NumericalRange(k=1).fit(diamond).predict(points)
    assert np.array_equal(a, b)


def test_unfitted_raises(diamond):
    est = NumericalRange()
    with pytest.raises(NotFittedError):
        est.predict([0.0])
    with pytest.raises(NotFittedError):
        est.decision_function([0.0])
