"""
Base entity module for the k-bonacci toolkit.
Provides the abstract base class for all serializable domain values.
"""
from abc import ABC, abstractmethod
from typing import Dict, Any
import json
import logging

logger = logging.getLogger(__name__)


class BaseEntity(ABC):
    """
    Abstract base class for all entities.

    Entities are immutable value objects. Every entity has a JSON form in
    which all numbers are exact rational strings, and re-parsing that form
    yields an equal entity.
    """

    @abstractmethod
    def to_dict(self) -> Dict[str, Any]:
        """
        Get the JSON-ready form of the entity.

        Returns:
            dict: Mapping of plain strings, integers, lists and None
        """
        pass

    @classmethod
    @abstractmethod
    def from_dict(cls, data: Dict[str, Any]) -> "BaseEntity":
        """
        Rebuild an entity from its JSON-ready form.

        Args:
            data (dict): The mapping produced by to_dict()

        Returns:
            BaseEntity: The rebuilt entity
        """
        pass

    def to_json(self) -> str:
        """
        Serialize the entity as compact, deterministic JSON.

        Returns:
            str: The JSON text
        """
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "BaseEntity":
        """
        Parse an entity from JSON text.

        Args:
            text (str): JSON produced by to_json()

        Returns:
            BaseEntity: The parsed entity
        """
        entity = cls.from_dict(json.loads(text))
        logger.debug(f"Parsed {cls.__name__} from JSON")
        return entity
