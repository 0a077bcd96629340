import pytest

from resgaps.catalog.utils import load_catalog


@pytest.fixture(scope="session")
def catalog():
    """The embedded catalog, loaded once."""
    return load_catalog()


@pytest.fixture
def catalog_file(tmp_path):
    """Write catalog text to a temporary file and return its path."""

    def write(text: str):
        path = tmp_path / "catalog.txt"
        path.write_text(text, encoding="utf-8")
        return path

    return write
