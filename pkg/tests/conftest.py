import pytest

from lacasse import backend


@pytest.fixture(params=backend.available_backends())
def kernels(request):
    """Each kernel backend importable in this environment, in turn."""
    return backend.get_kernels(request.param)
