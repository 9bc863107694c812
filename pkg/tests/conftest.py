from pathlib import Path

import numpy as np
import pytest

from fcmm.dataset import DataMatrix, load_csv, standardize
from fcmm.membership import MembershipMatrix, to_power

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


def random_instance(rng, n, d, c, r=2.0):
    """Random Gaussian points plus a flat-Dirichlet membership matrix."""
    data = DataMatrix.from_points(rng.normal(size=(n, d)))
    F = MembershipMatrix.from_values(rng.dirichlet(np.ones(c), size=n))
    return data, F, to_power(F, r)


@pytest.fixture(scope="session")
def iris_path():
    return DATA_DIR / "iris.csv"


@pytest.fixture(scope="session")
def iris_raw(iris_path):
    return load_csv(iris_path, drop_columns={4}, has_header=True)


@pytest.fixture(scope="session")
def iris_data(iris_raw):
    return standardize(iris_raw)
