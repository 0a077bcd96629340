from pathlib import Path
from typing import Optional, Union

from .catalog.models import Catalog
from .catalog.utils import load_catalog

# Catalog shared by the HTTP service and the CLI, loaded on first use
_catalog: Optional[Catalog] = None


def open_catalog(path: Optional[Union[str, Path]] = None) -> Catalog:
    """(Re)load the shared catalog from `path`, config.CATALOG or the embedded file."""
    global _catalog
    _catalog = load_catalog(path)
    return _catalog


def get_catalog() -> Catalog:
    """FastAPI dependency returning the shared catalog."""
    return _catalog if _catalog is not None else open_catalog()
