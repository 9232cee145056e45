import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from probnucleus import (
    GlobalNucleusDecomposition,
    Hyperparams,
    LocalNucleusDecomposition,
    WeaklyGlobalNucleusDecomposition,
)

from _graphs import SEVEN_EDGES, seven


def test_params_and_clone():
    est = GlobalNucleusDecomposition(theta=0.3, n_samples=50, random_state=4, keep_nonmaximal=True)
    params = est.get_params()
    assert params["theta"] == 0.3 and params["keep_nonmaximal"] is True
    twin = clone(est)
    assert twin.get_params() == params and twin is not est
    est.set_params(theta=0.6)
    assert est.theta == 0.6


def test_local_fit_and_transform():
    est = LocalNucleusDecomposition(theta=0.42, backend="exact").fit(np.array(SEVEN_EDGES))
    assert est.k_max_ == 1
    assert [[est.graph_.label_of(v) for v in n.vertices] for n in est.nuclei_] == [[1, 2, 3, 4, 5]]
    nu = est.transform()
    assert nu.shape == (8,) and np.nansum(nu) == 7
    assert np.array_equal(LocalNucleusDecomposition(0.42).fit_transform(seven()), nu)


def test_excluded_triangles_are_nan():
    nu = LocalNucleusDecomposition(theta=0.6).fit_transform(seven())
    assert np.isnan(nu).sum() == 3


def test_global_estimators():
    g = seven()
    fg = GlobalNucleusDecomposition(theta=0.42, estimator="oracle").fit(g)
    assert len(fg.nuclei_at(1)) == 2
    wg = WeaklyGlobalNucleusDecomposition(theta=0.42, random_state=1).fit(g)
    assert len(wg.nuclei_) == 1
    assert np.nanmax(wg.transform()) == 1


def test_not_fitted_and_bad_params():
    with pytest.raises(NotFittedError):
        LocalNucleusDecomposition().transform()
    with pytest.raises(ValueError):
        LocalNucleusDecomposition(theta=0).fit(seven())
    with pytest.raises(ValueError):
        LocalNucleusDecomposition(backend="fast").fit(seven())
    with pytest.raises(TypeError):
        GlobalNucleusDecomposition(random_state="x").fit(seven())
    with pytest.raises(ValueError):
        LocalNucleusDecomposition().fit(np.zeros((3, 2)))


def test_hyperparams_passthrough():
    est = LocalNucleusDecomposition(theta=0.3, hyperparams=Hyperparams(50, 10, 0.2, 0.95))
    assert clone(est).hyperparams == Hyperparams(50, 10, 0.2, 0.95)
    est.fit(seven())
    assert est.k_max_ == 1
