from contextlib import asynccontextmanager
import os
from typing import List, Optional, Tuple

import aiosqlite
from pydantic import ValidationError

from models import InversionResult
from services.log_service import logger

# (alpha, rho, delta, omega_grid)
CellKey = Tuple[float, float, float, int]


class ResultCacheService:
    """
    Async SQLite store of omega-optimized inversions.

    A row is keyed by the cell and the omega grid it was searched on, so
    changing ORDSEL_OMEGA_GRID never serves a result from a coarser scan.
    """

    def __init__(self, db_path: str):
        self.db_path = db_path
        os.makedirs(os.path.dirname(os.path.abspath(db_path)), exist_ok=True)

    async def init_db(self):
        async with self._get_connection() as conn:
            await conn.execute(
                """
                CREATE TABLE IF NOT EXISTS inversions (
                    alpha REAL NOT NULL,
                    rho REAL NOT NULL,
                    delta REAL NOT NULL,
                    omega_grid INTEGER NOT NULL,
                    method TEXT NOT NULL,
                    result TEXT NOT NULL,
                    stored_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP,
                    PRIMARY KEY (alpha, rho, delta, omega_grid)
                )
            """
            )
            await conn.commit()

    @asynccontextmanager
    async def _get_connection(self):
        conn = await aiosqlite.connect(self.db_path)
        try:
            yield conn
        finally:
            await conn.close()

    async def lookup(self, cell: CellKey) -> Optional[Tuple[InversionResult, str]]:
        async with self._get_connection() as conn:
            cursor = await conn.execute(
                "SELECT result, method FROM inversions WHERE alpha = ? AND rho = ? AND delta = ? AND omega_grid = ?",
                cell,
            )
            row = await cursor.fetchone()
        if row is None:
            return None
        try:
            return InversionResult.model_validate_json(row[0]), row[1]
        except ValidationError:
            logger.warning(f"discarding unreadable cache row for {cell}")
            return None

    async def store(self, cell: CellKey, result: InversionResult, method: str) -> None:
        async with self._get_connection() as conn:
            await conn.execute(
                """
                INSERT OR REPLACE INTO inversions (alpha, rho, delta, omega_grid, method, result, stored_at)
                VALUES (?, ?, ?, ?, ?, ?, CURRENT_TIMESTAMP)
            """,
                (*cell, method, result.model_dump_json()),
            )
            await conn.commit()

    async def forget(self, cell: CellKey) -> bool:
        async with self._get_connection() as conn:
            cursor = await conn.execute(
                "DELETE FROM inversions WHERE alpha = ? AND rho = ? AND delta = ? AND omega_grid = ?",
                cell,
            )
            await conn.commit()
            return cursor.rowcount > 0

    async def cells(self) -> List[CellKey]:
        async with self._get_connection() as conn:
            cursor = await conn.execute("SELECT alpha, rho, delta, omega_grid FROM inversions ORDER BY alpha, rho, delta, omega_grid")
            return [tuple(row) for row in await cursor.fetchall()]

    async def clear(self) -> None:
        async with self._get_connection() as conn:
            await conn.execute("DELETE FROM inversions")
            await conn.commit()
