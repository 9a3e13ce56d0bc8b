"""
JSON renderer: compact, deterministic output with rationals as strings.
"""
import json

from renderers.base_renderer import BaseRenderer, Document


class JsonRenderer(BaseRenderer):
    """Renders the document payload as one line of compact JSON."""

    format_name = "json"

    def _render(self, document: Document) -> str:
        return json.dumps(document.data, separators=(",", ":")) + "\n"
