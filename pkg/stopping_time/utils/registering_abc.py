"""
This module defines the abstract base class 'RegisteringABC'
"""

__all__ = [
    'RegisteringABC',
]
__version__ = '0.1.0'


from abc import ABC
from typing import Dict, List, Type

from typing_extensions import Self


class RegisteringABC(ABC):
    """
    An abstract base class that supports registering implementation classes with
    identifier strings. These identifiers can then be used to create instances of
    the corresponding implementation classes.
    Every direct subclass of RegisteringABC owns a registry of its own, so two
    families of implementations may use the same identifiers (e.g. 'csv').
    Note: inside the file that defines an implementation class the classmethod
    register_implementation needs to be called -- outside of the class definition.
    """

    _implementations: Dict[str, Type["RegisteringABC"]] = {}

    def __init_subclass__(cls, **kwargs) -> None:
        super().__init_subclass__(**kwargs)
        if RegisteringABC in cls.__bases__:
            cls._implementations = {}

    @classmethod
    def register_implementation(cls: Self, identifier: str) -> None:
        """
        Registers an implementation class with a given string identifier so it
        can be created later on by the `create_instance` method.

        Parameters
        ----------
        identifier : str
            The identifier for the implementation.

        Returns
        -------
        None
        """
        cls._implementations[identifier] = cls

    @classmethod
    def identifiers(cls: Self) -> List[str]:
        """
        Returns the registered identifiers in sorted order.
        """
        return sorted(cls._implementations)

    @classmethod
    def create_instance(cls: Self, identifier: str, *args, **kwargs) -> Self:
        """
        Create an instance of the implementation class based on the identifier.

        Parameters
        ----------
            identifier : str
                The identifier of the implementation class.

        Returns
        -------
            Self
                An instance of the implementation class specified by the identifier.

        Raises
        ------
            ValueError
                If no implementation is registered for the identifier.
        """
        implementation_class = cls._implementations.get(identifier)
        if implementation_class:
            return implementation_class(*args, **kwargs)
        raise ValueError(f"No implementation registered for identifier '{identifier}'")
