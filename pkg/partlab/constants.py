import os

# Parts and weights stay within native machine integers below this bound.
MAX_PARTITION_WEIGHT = 10**6

CACHE_HEADER = "# partlab pd v1"
CACHE_ENV_VAR = "PARTLAB_CACHE"


def default_cache_path() -> str | None:
    return os.environ.get(CACHE_ENV_VAR)
