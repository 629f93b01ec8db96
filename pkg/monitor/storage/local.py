import logging
from pathlib import Path

import aiofiles

from .base import StorageBackend

logger = logging.getLogger(__name__)


class LocalStorage(StorageBackend):
    """Local filesystem storage, with relative paths resolved against `root`."""

    def __init__(self, root: str | None = None):
        self.root = Path(root) if root else None

    def _resolve(self, path: str) -> Path:
        file_path = Path(path)
        if self.root is not None and not file_path.is_absolute():
            file_path = self.root / file_path
        return file_path

    async def read(self, path: str) -> str:
        file_path = self._resolve(path)

        if not file_path.exists():
            raise FileNotFoundError(f"File not found: {file_path}")

        if not file_path.is_file():
            raise IOError(f"Not a file: {file_path}")

        async with aiofiles.open(file_path, encoding="utf-8") as f:
            content = await f.read()
        logger.debug(f"LocalStorage.read: {file_path} ({len(content)} chars)")
        return content

    async def write(self, path: str, content: str) -> None:
        file_path = self._resolve(path)

        file_path.parent.mkdir(parents=True, exist_ok=True)
        async with aiofiles.open(file_path, "w", encoding="utf-8") as f:
            await f.write(content)
        logger.debug(f"LocalStorage.write: {file_path} ({len(content)} chars)")
