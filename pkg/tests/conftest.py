import pytest
from hypothesis import settings

from jacobi_edge import _backend

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")


@pytest.fixture(params=sorted(_backend.BACKENDS))
def backend(request):
    """Name of each available kernel backend."""
    return request.param
