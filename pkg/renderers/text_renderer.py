"""
Plain-text renderer for human-readable layouts such as the coefficient table.
"""
from renderers.base_renderer import BaseRenderer, Document


class TextRenderer(BaseRenderer):
    """Joins preformatted lines."""

    format_name = "text"

    def supports(self, document: Document) -> bool:
        return document.lines is not None

    def _render(self, document: Document) -> str:
        return "\n".join(document.lines) + "\n"
