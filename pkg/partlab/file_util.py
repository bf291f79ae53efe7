import logging
import os

import fsspec

from partlab.constants import CACHE_HEADER
from partlab.divisor_arith import SequenceTable

logger = logging.getLogger()


def get_fs(path: str) -> tuple[fsspec.AbstractFileSystem, str]:
    """The filesystem behind a local path or fsspec URL, and the path on it."""
    return fsspec.core.url_to_fs(path)


def read_table_cache(
    path: str, fs: fsspec.AbstractFileSystem | None = None
) -> SequenceTable | None:
    """
    Reads a cached p_d table. Returns None when the file is missing or does
    not parse as a contiguous "n value" listing starting at n=0.
    """
    if fs is None:
        fs, path = get_fs(path)
    if not fs.exists(path):
        return None
    with fs.open(path, "r") as f:
        lines = f.read().splitlines()
    if len(lines) == 0 or lines[0].strip() != CACHE_HEADER:
        logger.warning("Ignoring cache %s: missing header %r", path, CACHE_HEADER)
        return None
    values = []
    for line in lines[1:]:
        if line.strip() == "":
            continue
        try:
            n_str, value_str = line.split()
            n, value = int(n_str), int(value_str)
        except ValueError:
            logger.warning("Ignoring cache %s: malformed line %r", path, line)
            return None
        if n != len(values):
            logger.warning("Ignoring cache %s: expected n=%d, got n=%d", path, len(values), n)
            return None
        values.append(value)
    if len(values) == 0:
        return None
    return SequenceTable(name="pd", values=values)


def write_table_cache(
    path: str, table: SequenceTable, fs: fsspec.AbstractFileSystem | None = None
):
    if fs is None:
        fs, path = get_fs(path)
    parent = os.path.dirname(path)
    if parent:
        fs.makedirs(parent, exist_ok=True)
    with fs.open(path, "w") as f:
        f.write(CACHE_HEADER + "\n")
        for n, value in enumerate(table.values):
            f.write(f"{n} {value}\n")
    logger.info("Wrote %s table of order %d to %s", table.name, table.order, path)
