"""Python access to the stackcoh calculator."""

import json

from ._stackcoh import (
    StackcohError,
    __version__,
    derham_dims,
    hodge_dims,
    run_scenario_text,
)


def run_scenario(text, name="scenario"):
    """Run scenario text and return the report as a dict."""
    return json.loads(run_scenario_text(text, name))


__all__ = [
    "StackcohError",
    "__version__",
    "derham_dims",
    "hodge_dims",
    "run_scenario",
    "run_scenario_text",
]
