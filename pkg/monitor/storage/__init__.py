from config.settings import STORAGE_BACKEND, TRACE_DIR

from .base import StorageBackend

_storage_instance: StorageBackend | None = None


def get_storage() -> StorageBackend:
    """Get the configured storage backend (singleton)."""
    global _storage_instance

    if _storage_instance is not None:
        return _storage_instance

    if STORAGE_BACKEND == "local":
        from .local import LocalStorage
        _storage_instance = LocalStorage(TRACE_DIR or None)
    else:
        raise ValueError(f"Unknown STORAGE_BACKEND: {STORAGE_BACKEND}")

    return _storage_instance


def set_storage(storage: StorageBackend | None) -> None:
    """Replace the singleton (tests use this to point at a temporary directory)."""
    global _storage_instance
    _storage_instance = storage


__all__ = ["StorageBackend", "get_storage", "set_storage"]
