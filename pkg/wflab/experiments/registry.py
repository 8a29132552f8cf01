"""Registry for experiment command implementations."""

from typing import Dict, List, Optional, Type

from .base import ExperimentType


class ExperimentRegistry:
    """Registry for experiment command implementations."""

    _types: Dict[str, Type[ExperimentType]] = {}

    @classmethod
    def register(cls, experiment_type: Type[ExperimentType]):
        """Register an experiment class."""
        instance = experiment_type()
        cls._types[instance.type_name] = experiment_type

    @classmethod
    def get(cls, type_name: str) -> Optional[ExperimentType]:
        """Get an experiment instance by name."""
        if type_name not in cls._types:
            return None
        return cls._types[type_name]()

    @classmethod
    def list_all(cls) -> List[ExperimentType]:
        return [experiment_type() for experiment_type in cls._types.values()]

    @classmethod
    def get_all_types(cls) -> Dict[str, str]:
        """Get dictionary of type_name -> display_name for all registered commands."""
        return {instance.type_name: instance.display_name for instance in cls.list_all()}
