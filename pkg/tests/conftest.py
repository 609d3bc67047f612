import pytest

from skewgentle import data_text
from skewgentle.surface import load_surface


@pytest.fixture(scope="session")
def cylinder():
    return load_surface(data_text("cylinder.json"))


@pytest.fixture(scope="session")
def disk():
    return load_surface(
        '{"vertices": [{"id": "v", "kind": "boundary-marked"}],'
        ' "arcs": [], "ribbon": {"v": []}, "boundary": [["v", "s"]]}')
