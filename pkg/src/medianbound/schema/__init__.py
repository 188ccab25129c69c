"""The published JSON schema for CLI envelopes."""

import json
from importlib import resources


def load_schema() -> dict:
    return json.loads(resources.files(__name__).joinpath("envelope.schema.json").read_text())
