"""
CSV renderer for tabular command output (spectra and quasi tracks).
"""
import csv
import io

from renderers.base_renderer import BaseRenderer, Document


class CsvRenderer(BaseRenderer):
    """Renders a header line followed by one line per row, "\\n" terminated."""

    format_name = "csv"

    def supports(self, document: Document) -> bool:
        return document.header is not None and document.rows is not None

    def _render(self, document: Document) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(document.header)
        writer.writerows(document.rows)
        return buffer.getvalue()
