"""
Layered run configuration: model defaults, then YAML files (which may pull in
further files through a `config:` key, included files first), then command
line flags. Later layers win.
"""

import copy
from typing import Any, Type, TypeVar

import fsspec
from omegaconf import DictConfig, ListConfig, OmegaConf
from pydantic import BaseModel

from partlab import RejectedInputError

INCLUDE_KEY = "config"

T = TypeVar("T", bound=BaseModel)


def parse_file_config(path: str) -> DictConfig:
    with fsspec.open(path, mode="r") as f:
        file_cfg = OmegaConf.create(f.read())
    if not isinstance(file_cfg, DictConfig):
        raise RejectedInputError(
            f"Config file {path} must hold a mapping, found {type(file_cfg).__name__}"
        )
    return file_cfg


def _include_paths(include: Any) -> list[str]:
    if isinstance(include, str):
        return [include]
    if isinstance(include, ListConfig) and all(isinstance(p, str) for p in include):
        return list(include)
    raise RejectedInputError(
        f'"{INCLUDE_KEY}" must be a path or a list of paths, got {include!r}'
    )


def recursively_parse_config(
    cfg: DictConfig, _seen: tuple[str, ...] = ()
) -> list[DictConfig]:
    """Flattens the includes of cfg into merge order, cfg itself last."""
    if INCLUDE_KEY not in cfg:
        return [cfg]
    own = copy.deepcopy(cfg)
    include = own[INCLUDE_KEY]
    del own[INCLUDE_KEY]
    layers: list[DictConfig] = []
    for path in _include_paths(include):
        if path in _seen:
            raise RejectedInputError(f"Config include cycle: {' -> '.join(_seen + (path,))}")
        layers.extend(recursively_parse_config(parse_file_config(path), _seen + (path,)))
    layers.append(own)
    return layers


def parse_args_to_pydantic_model(args_cls: Type[T], cli_args: DictConfig) -> T:
    layers = recursively_parse_config(cli_args)
    defaults = OmegaConf.create(args_cls().model_dump(mode="json"))
    merged = OmegaConf.merge(defaults, *layers)
    return args_cls.model_validate(
        OmegaConf.to_container(merged, resolve=True, throw_on_missing=True)
    )


def overrides_to_cli_config(
    overrides: dict[str, Any], config_path: str | list[str] | None = None
) -> DictConfig:
    """Drop unset (None) flags so they do not shadow file or default values."""
    cfg = {k: v for k, v in overrides.items() if v is not None}
    if config_path is not None:
        cfg[INCLUDE_KEY] = config_path
    return OmegaConf.create(cfg)
