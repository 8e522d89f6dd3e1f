"""Ejecución acotada de trabajos independientes en hilos."""

import asyncio
import logging
from typing import Callable, Iterable, TypeVar

from ..config import worker_count

T = TypeVar("T")
R = TypeVar("R")


async def _gather_bounded(fn: Callable[[T], R], items: list[T], limit: int) -> list[R]:
    semaphore = asyncio.Semaphore(limit)

    async def _one(item: T) -> R:
        async with semaphore:
            return await asyncio.to_thread(fn, item)

    # gather conserva el orden de envío
    return await asyncio.gather(*(_one(item) for item in items))


def map_bounded(fn: Callable[[T], R], items: Iterable[T], workers: int | None = None) -> list[R]:
    """Aplica `fn` a cada elemento, con a lo sumo `workers` hilos a la vez.

    Los resultados se devuelven en el orden de `items`, sin importar en qué
    orden terminen los hilos.
    """
    items = list(items)
    limit = worker_count() if workers is None else max(1, int(workers))
    if limit == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    logging.debug(f"Repartiendo {len(items)} trabajos en {limit} hilos.")
    return asyncio.run(_gather_bounded(fn, items, limit))
