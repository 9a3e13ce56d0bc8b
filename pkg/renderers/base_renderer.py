"""
Base renderer module for the k-bonacci toolkit.
Provides the document type every command produces and the abstract base
class for all output formats.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional
import logging

from core.errors import DomainError

logger = logging.getLogger(__name__)


@dataclass
class Document:
    """
    Command output before formatting.

    Attributes:
        data (dict): JSON-ready payload, always present
        header (list, optional): CSV column names
        rows (list, optional): CSV rows of strings
        lines (list, optional): Preformatted text lines
    """
    data: Dict[str, Any]
    header: Optional[List[str]] = None
    rows: Optional[List[List[str]]] = None
    lines: Optional[List[str]] = field(default=None)


class BaseRenderer(ABC):
    """
    Abstract base class for all renderers.

    Attributes:
        format_name (str): The --format value selecting this renderer
    """

    format_name = "abstract"

    def __init__(self):
        logger.debug(f"Renderer '{self.format_name}' initialized")

    def supports(self, document: Document) -> bool:
        """
        Whether the document carries what this renderer needs.

        Args:
            document (Document): The command output

        Returns:
            bool: True if render() will succeed
        """
        return True

    def render(self, document: Document) -> str:
        """
        Format a document.

        Args:
            document (Document): The command output

        Returns:
            str: The formatted text, ending in a newline

        Raises:
            DomainError: If the document cannot be shown in this format
        """
        if not self.supports(document):
            raise DomainError(f"output format '{self.format_name}' is not available for this command")
        return self._render(document)

    @abstractmethod
    def _render(self, document: Document) -> str:
        pass
