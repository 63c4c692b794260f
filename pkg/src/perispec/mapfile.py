"""JSON schemas for maps and block matrices, and their (de)serialization.

A map file holds an algebra and either an explicit superoperator matrix or a
preset stanza naming a built-in family. Complex numbers are encoded as
[real, imaginary] pairs; matrices as row-major nested lists of those pairs.
All serialization is deterministic: keys are sorted and every number is a
plain Python float.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .algebra import AlgebraElement, BlockAlgebra
from .errors import MapFileError
from .positivity import Block2Matrix
from .presets import (
    PRESET_NAMES,
    ExampleManifest,
    build_example1,
    build_example1_continuous,
    build_example2,
    build_example2_continuous,
    build_psi_swap,
)
from .superop import ContinuousFamily, InvariantState, Superoperator

__all__ = [
    "LoadedMap",
    "complex_to_pair",
    "matrix_to_json",
    "element_to_json",
    "load_map_file",
    "load_block2_file",
    "explicit_map_dict",
    "preset_map_dict",
    "dump_json",
]


def complex_to_pair(z: complex) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def matrix_to_json(m: np.ndarray) -> list:
    return [[complex_to_pair(entry) for entry in row] for row in np.asarray(m)]


def element_to_json(x: AlgebraElement) -> list:
    return [matrix_to_json(p) for p in x.parts]


def dump_json(document: dict) -> str:
    """Canonical rendering: sorted keys, two-space indent, trailing newline."""
    return json.dumps(document, sort_keys=True, indent=2, allow_nan=False) + "\n"


def _parse_complex(obj, where: str) -> complex:
    if isinstance(obj, (int, float)):
        return complex(float(obj), 0.0)
    if (
        isinstance(obj, (list, tuple))
        and len(obj) == 2
        and all(isinstance(v, (int, float)) for v in obj)
    ):
        return complex(float(obj[0]), float(obj[1]))
    raise MapFileError(f"{where}: expected a number or [re, im] pair, got {obj!r}")


def _parse_matrix(obj, where: str) -> np.ndarray:
    if not isinstance(obj, list) or not obj:
        raise MapFileError(f"{where}: expected a nonempty nested list")
    rows = []
    for i, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != len(obj):
            raise MapFileError(f"{where}: row {i} does not make the matrix square")
        rows.append([_parse_complex(entry, f"{where}[{i}]") for entry in row])
    return np.array(rows, dtype=np.complex128)


@dataclass(frozen=True)
class LoadedMap:
    """A map file after validation.

    ``family`` and ``manifest`` are filled for presets that provide them;
    ``t`` is the snapshot time used to realize a continuous preset as the
    single map ``phi``.
    """

    phi: Superoperator
    preset: dict | None = None
    t: float | None = None
    family: ContinuousFamily | None = None
    manifest: ExampleManifest | None = None
    invariant: InvariantState | None = None


def _load_preset(stanza: dict, override_t: float | None) -> LoadedMap:
    if not isinstance(stanza, dict):
        raise MapFileError("map.preset must be an object")
    name = stanza.get("name")
    if name not in PRESET_NAMES:
        raise MapFileError(f"unknown preset {name!r}; choose one of {PRESET_NAMES}")
    if name == "psi_swap":
        phi, _, state = build_psi_swap()
        return LoadedMap(phi=phi, preset={"name": name}, invariant=state)
    if "lambda0" not in stanza:
        raise MapFileError(f"preset {name!r} requires a lambda0 entry")
    lambda0 = _parse_complex(stanza["lambda0"], "map.preset.lambda0")
    t = override_t
    if t is None and "t" in stanza:
        if not isinstance(stanza["t"], (int, float)):
            raise MapFileError("map.preset.t must be a number")
        t = float(stanza["t"])
    preset = {"name": name, "lambda0": complex_to_pair(lambda0)}
    if name == "ex1":
        phi, state, manifest = build_example1(lambda0)
        return LoadedMap(phi=phi, preset=preset, manifest=manifest, invariant=state)
    if name == "ex2":
        phi, manifest = build_example2(lambda0)
        return LoadedMap(phi=phi, preset=preset, manifest=manifest)
    t = 1.0 if t is None else t
    preset["t"] = float(t)
    if name == "ex1c":
        family = build_example1_continuous(lambda0)
        _, state, manifest = build_example1(lambda0)
        return LoadedMap(
            phi=family.builder(t),
            preset=preset,
            t=t,
            family=family,
            manifest=manifest,
            invariant=state,
        )
    family = build_example2_continuous(lambda0)
    _, manifest = build_example2(lambda0)
    return LoadedMap(
        phi=family.builder(t), preset=preset, t=t, family=family, manifest=manifest
    )


def _parse_algebra(obj) -> BlockAlgebra:
    if not isinstance(obj, dict) or "blocks" not in obj:
        raise MapFileError("algebra must be an object with a blocks list")
    blocks = obj["blocks"]
    if (
        not isinstance(blocks, list)
        or not blocks
        or not all(isinstance(n, int) and n >= 1 for n in blocks)
    ):
        raise MapFileError("algebra.blocks must be a nonempty list of positive ints")
    return BlockAlgebra(tuple(blocks))


def load_map_file(source: str | Path | dict, t: float | None = None) -> LoadedMap:
    """Load and validate a map file (path or already-parsed document)."""
    if isinstance(source, dict):
        document = source
    else:
        path = Path(source)
        if not path.exists():
            raise MapFileError(f"no such file: {path}")
        try:
            document = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise MapFileError(f"cannot parse {path}: {exc}") from exc
    if not isinstance(document, dict) or "map" not in document:
        raise MapFileError("a map file must be an object with a map entry")
    stanza = document["map"]
    if not isinstance(stanza, dict):
        raise MapFileError("map must be an object")
    if ("superop" in stanza) == ("preset" in stanza):
        raise MapFileError("map must contain exactly one of superop or preset")
    if "preset" in stanza:
        loaded = _load_preset(stanza["preset"], t)
        if "algebra" in document:
            declared = _parse_algebra(document["algebra"])
            if declared != loaded.phi.algebra:
                raise MapFileError(
                    f"declared blocks {declared.blocks} do not match the preset's "
                    f"{loaded.phi.algebra.blocks}"
                )
        return loaded
    if "algebra" not in document:
        raise MapFileError("an explicit superop needs an algebra entry")
    algebra = _parse_algebra(document["algebra"])
    matrix = _parse_matrix(stanza["superop"], "map.superop")
    if matrix.shape != (algebra.dim, algebra.dim):
        raise MapFileError(
            f"superop of shape {matrix.shape} does not fit coefficient dimension "
            f"{algebra.dim}"
        )
    return LoadedMap(phi=Superoperator(algebra, matrix))


def explicit_map_dict(phi: Superoperator) -> dict:
    """Map-file document with the superoperator written out entry by entry."""
    return {
        "algebra": {"blocks": list(phi.algebra.blocks)},
        "map": {"superop": matrix_to_json(phi.matrix)},
    }


def preset_map_dict(name: str, lambda0: complex | None, t: float | None) -> dict:
    stanza: dict = {"name": name}
    if lambda0 is not None:
        stanza["lambda0"] = complex_to_pair(lambda0)
    if t is not None:
        stanza["t"] = float(t)
    return {"map": {"preset": stanza}}


def load_block2_file(
    source: str | Path | dict,
) -> tuple[Block2Matrix, np.ndarray | None, np.ndarray | None]:
    """Load a block 2x2 matrix file, returning optional congruence factors."""
    if isinstance(source, dict):
        document = source
    else:
        path = Path(source)
        if not path.exists():
            raise MapFileError(f"no such file: {path}")
        try:
            document = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise MapFileError(f"cannot parse {path}: {exc}") from exc
    if not isinstance(document, dict) or "block2" not in document:
        raise MapFileError("a block2 file must be an object with a block2 entry")
    stanza = document["block2"]
    if not isinstance(stanza, dict):
        raise MapFileError("block2 must be an object")
    missing = [k for k in ("a", "b", "c", "d") if k not in stanza]
    if missing:
        raise MapFileError(f"block2 is missing entries {missing}")
    blocks = {k: _parse_matrix(stanza[k], f"block2.{k}") for k in ("a", "b", "c", "d")}
    try:
        m = Block2Matrix(**blocks)
    except Exception as exc:
        raise MapFileError(str(exc)) from exc
    x = _parse_matrix(stanza["x"], "block2.x") if "x" in stanza else None
    y = _parse_matrix(stanza["y"], "block2.y") if "y" in stanza else None
    return m, x, y
