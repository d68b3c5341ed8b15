"""Named groups: ``alt 6``, ``psl2 11``, ``m11``, ``file path/to.gens`` and so on."""
from __future__ import annotations

from importlib import resources
from pathlib import Path

from .group_core import Group, GroupError, alternating_group, load_group, symmetric_group
from .matrix_groups import psl2, psl3, sl3

SHIPPED = ("m10", "m11", "m12", "m22", "pgl2_9", "pgammal2_9", "sz8")


def gens_path(name: str) -> Path:
    path = resources.files("engelgraphs").joinpath(f"data/gens/{name}.gens")
    if not path.is_file():
        raise GroupError(f"no shipped generator file {name}.gens")
    return Path(str(path))


def build_group(spec, cache_dir=None) -> Group:
    """Build a group from a spec such as ``"alt 5"`` or ``["psl3", "4"]``."""
    parts = spec.split() if isinstance(spec, str) else list(spec)
    if not parts:
        raise GroupError("empty group spec")
    kind = parts[0].lower()
    args = parts[1:]
    try:
        if kind == "file":
            return load_group(args[0], cache_dir=cache_dir)
        if kind in SHIPPED and not args:
            G = load_group(gens_path(kind), cache_dir=cache_dir)
            G.name = kind.upper() if kind.startswith("m") else kind
            return G
        if kind in ("alt", "sym"):
            n = int(args[0])
            return alternating_group(n) if kind == "alt" else symmetric_group(n)
        if kind == "psl2":
            return psl2(int(args[0]))
        if kind == "psl3":
            return psl3(int(args[0]))
        if kind == "sl3":
            return sl3(int(args[0]))
    except (IndexError, ValueError) as exc:
        raise GroupError(f"bad group spec {' '.join(parts)!r}: {exc}") from exc
    raise GroupError(f"unknown group {' '.join(parts)!r}")
