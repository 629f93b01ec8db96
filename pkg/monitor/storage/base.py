from abc import ABC, abstractmethod


class StorageBackend(ABC):
    """Abstract base class for trace file storage backends."""

    @abstractmethod
    async def read(self, path: str) -> str:
        """Read a trace document.

        Args:
            path: Path to the document, resolved by the backend.

        Returns:
            Document text.

        Raises:
            FileNotFoundError: If the document doesn't exist.
            IOError: If the read fails.
        """
        pass

    @abstractmethod
    async def write(self, path: str, content: str) -> None:
        """Write a trace document, creating parent directories as needed.

        Raises:
            IOError: If the write fails.
        """
        pass
