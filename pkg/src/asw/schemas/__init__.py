"""JSON schemas for the CLI's --format json outputs."""

import json
from importlib import resources

NAMES = ("report", "suite", "tower", "equations", "lemmas", "catalog", "classify")


def load(name: str) -> dict:
    return json.loads(resources.files(__package__).joinpath(f"{name}.schema.json").read_text())
