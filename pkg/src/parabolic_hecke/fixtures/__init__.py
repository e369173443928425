"""Bundled fixture data."""

import json
from functools import lru_cache
from importlib import resources


@lru_cache(maxsize=None)
def load(name: str = "reference") -> dict:
    return json.loads(resources.files(__name__).joinpath(f"{name}.json").read_text())
