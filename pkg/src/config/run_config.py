"""
Run configuration for Mass Growth Lab commands
A single JSON file with exact rational charges; floats are rejected wherever
exact combinatorics depend on the value.
"""
import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, InstanceOf, ValidationError, ValidationInfo, field_validator

from src.algebra.quiver import Quiver, a_n_quiver, kronecker_quiver, validate_quiver
from src.config.settings import get_settings
from src.geometry.charge_geometry import Charge, ensure_upper_half
from src.representations.representation import Representation, random_rep, rep_from_dict, universal_extension
from src.stability.hn_engine import StabilityCondition
from src.twists.words import TwistWord, parse_word
from src.utils.errors import ConfigValidationError

_NAMED_QUIVER = re.compile(r"^(?P<kind>[AK])(?P<size>[1-9][0-9]*)$")


def parse_rational(value: Any) -> Fraction:
    """An int or a [num, den] pair"""
    if isinstance(value, bool) or isinstance(value, float):
        raise ValueError(f"rationals must be integers or [num, den] pairs, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, (list, tuple)) and len(value) == 2 and \
            all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        if value[1] == 0:
            raise ValueError("zero denominator")
        return Fraction(value[0], value[1])
    raise ValueError(f"rationals must be integers or [num, den] pairs, got {value!r}")


def parse_charge_list(values: Any) -> List[Tuple[Fraction, Fraction]]:
    if not isinstance(values, list) or not values:
        raise ValueError("charges must be a nonempty list of [re, im] pairs")
    charges = []
    for k, pair in enumerate(values):
        if not isinstance(pair, list) or len(pair) != 2:
            raise ValueError(f"charge {k + 1} must be a [re, im] pair")
        charges.append((parse_rational(pair[0]), parse_rational(pair[1])))
    return charges


class QuiverSpec(BaseModel):
    """A named quiver (A3, K3), an adjacency matrix, or vertices and 1-based arrows"""
    model_config = ConfigDict(extra="forbid")

    name: Optional[str] = None
    matrix: Optional[List[List[int]]] = None
    vertices: Optional[int] = None
    arrows: Optional[List[Tuple[int, int]]] = None

    def build(self) -> Quiver:
        given = sum(x is not None for x in (self.name, self.matrix, self.vertices))
        if given != 1:
            raise ValueError("give exactly one of name, matrix or vertices")
        if self.name is not None:
            match = _NAMED_QUIVER.match(self.name)
            if not match:
                raise ValueError(f"unknown quiver name '{self.name}' (use A<n> or K<m>)")
            size = int(match.group('size'))
            return a_n_quiver(size) if match.group('kind') == 'A' else kronecker_quiver(size)
        if self.matrix is not None:
            return validate_quiver(self.matrix)
        n = self.vertices or 0
        if n < 1:
            raise ValueError("vertices must be positive")
        q = [[0] * n for _ in range(n)]
        for source, target in self.arrows or []:
            if not (1 <= source <= n and 1 <= target <= n):
                raise ValueError(f"arrow ({source}, {target}) references a vertex outside 1..{n}")
            q[source - 1][target - 1] += 1
        return validate_quiver(q)


class RandomRepSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    dims: List[int]
    seed: int = 0


class RepresentationSpec(BaseModel):
    """Inline maps, a seeded random rep, or the universal extension of two vertices"""
    model_config = ConfigDict(extra="forbid")

    dims: Optional[List[int]] = None
    maps: Optional[List[List[List[int]]]] = None
    random: Optional[RandomRepSpec] = None
    universal_extension: Optional[Tuple[int, int]] = None


class OutputSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    directory: Optional[str] = None
    csv: str = "series.csv"
    json_report: str = Field(default="report.json", alias="json")
    svg: str = "polygon.svg"


class RunConfig(BaseModel):
    """Validated run-level input; field order matters for the cross-field checks"""
    model_config = ConfigDict(extra="forbid", arbitrary_types_allowed=True)

    quiver: InstanceOf[Quiver]
    field: int = Field(default_factory=lambda: get_settings().field_characteristic)
    cy_dimension: int = 3
    charges: Optional[List[Tuple[Fraction, Fraction]]] = None
    extra_charges: List[List[Tuple[Fraction, Fraction]]] = Field(default_factory=list)
    word: Optional[str] = None
    t_grid: List[float] = Field(default_factory=lambda: [-1.0, 0.0, 1.0])
    n_max: Optional[int] = None
    seed: Optional[int] = None
    cap: Optional[int] = None
    representation: Optional[RepresentationSpec] = None
    output: OutputSpec = Field(default_factory=OutputSpec)

    @field_validator("quiver", mode="before")
    @classmethod
    def _build_quiver(cls, value: Any) -> Quiver:
        if isinstance(value, Quiver):
            return value
        if isinstance(value, str):
            value = {'name': value}
        if isinstance(value, list):
            value = {'matrix': value}
        return QuiverSpec.model_validate(value).build()

    @field_validator("field")
    @classmethod
    def _prime_field(cls, value: int) -> int:
        if value < 2 or any(value % d == 0 for d in range(2, int(value ** 0.5) + 1)):
            raise ValueError(f"field characteristic must be prime, got {value}")
        return value

    @field_validator("cy_dimension")
    @classmethod
    def _cy_dimension(cls, value: int) -> int:
        if value < 3:
            raise ValueError(f"Calabi-Yau dimension must be >= 3, got {value}")
        return value

    @field_validator("charges", mode="before")
    @classmethod
    def _parse_charges(cls, value: Any, info: ValidationInfo) -> Optional[List[Tuple[Fraction, Fraction]]]:
        if value is None:
            return None
        return cls._checked_charges(value, info)

    @field_validator("extra_charges", mode="before")
    @classmethod
    def _parse_extra_charges(cls, value: Any, info: ValidationInfo) -> List[List[Tuple[Fraction, Fraction]]]:
        if not isinstance(value, list):
            raise ValueError("extra_charges must be a list of charge lists")
        return [cls._checked_charges(item, info) for item in value]

    @staticmethod
    def _checked_charges(value: Any, info: ValidationInfo) -> List[Tuple[Fraction, Fraction]]:
        charges = parse_charge_list(value)
        quiver = info.data.get('quiver')
        if quiver is not None and len(charges) != quiver.n:
            raise ValueError(f"{len(charges)} charges for a quiver with {quiver.n} vertices")
        for re_part, im_part in charges:
            ensure_upper_half(Charge(re_part, im_part))
        return charges

    @field_validator("word")
    @classmethod
    def _check_word(cls, value: Optional[str], info: ValidationInfo) -> Optional[str]:
        if value is None:
            return None
        quiver = info.data.get('quiver')
        parse_word(value, quiver.n if quiver is not None else None)
        return value

    @field_validator("t_grid")
    @classmethod
    def _check_t_grid(cls, value: List[float]) -> List[float]:
        if not value:
            raise ValueError("t_grid must not be empty")
        return value

    @field_validator("n_max")
    @classmethod
    def _check_n_max(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value < 8:
            raise ValueError("n_max must be at least 8")
        return value

    @field_validator("cap")
    @classmethod
    def _check_cap(cls, value: Optional[int]) -> Optional[int]:
        if value is None:
            return None
        limit = get_settings().enumeration_hard_limit
        if not 1 <= value <= limit:
            raise ValueError(f"cap must lie in 1..{limit}, got {value}")
        return value

    @field_validator("representation")
    @classmethod
    def _check_representation(cls, value: Optional[RepresentationSpec],
                              info: ValidationInfo) -> Optional[RepresentationSpec]:
        if value is None:
            return None
        kinds = sum(x is not None for x in (value.dims, value.random, value.universal_extension))
        if kinds != 1:
            raise ValueError("representation needs exactly one of dims, random or universal_extension")
        quiver = info.data.get('quiver')
        if quiver is None:
            return value
        dims = value.dims if value.dims is not None else (value.random.dims if value.random else None)
        if dims is not None and (len(dims) != quiver.n or any(d < 0 for d in dims)):
            raise ValueError(f"dimension vector {dims} does not fit {quiver.n} vertices")
        if value.universal_extension is not None:
            i, j = value.universal_extension
            if not (1 <= i <= quiver.n and 1 <= j <= quiver.n):
                raise ValueError(f"universal_extension references a vertex outside 1..{quiver.n}")
            if quiver.q[i - 1][j - 1] == 0:
                raise ValueError(f"no arrow {i} -> {j} for universal_extension")
        return value

    # -- derived objects ---------------------------------------------------------

    @property
    def n(self) -> int:
        return self.quiver.n

    def stability_condition(self) -> StabilityCondition:
        if self.charges is None:
            return StabilityCondition.standard(self.n)
        return StabilityCondition.from_pairs(self.charges, name="config")

    def stability_conditions(self) -> List[StabilityCondition]:
        extra = [StabilityCondition.from_pairs(c, name=f"extra-{k + 1}") for k, c in enumerate(self.extra_charges)]
        return [self.stability_condition()] + extra

    def twist_word(self) -> TwistWord:
        if self.word is None:
            raise ConfigValidationError("this command needs a twist word ('word')")
        return parse_word(self.word, self.n)

    def build_representation(self) -> Representation:
        spec = self.representation
        if spec is None:
            raise ConfigValidationError("this command needs a representation ('representation')")
        if spec.universal_extension is not None:
            i, j = spec.universal_extension
            return universal_extension(self.quiver, i - 1, j - 1, self.field)
        if spec.random is not None:
            return random_rep(self.quiver, spec.random.dims, seed=spec.random.seed, p=self.field, cap=self.cap)
        data: Dict[str, Any] = {'dims': spec.dims, 'maps': spec.maps, 'field': self.field}
        try:
            return rep_from_dict(data, self.quiver)
        except ValueError as e:
            raise ConfigValidationError(f"representation: {e}", line=None) from e

    def output_directory(self, override: Optional[str] = None) -> Path:
        return Path(override or self.output.directory or get_settings().output_directory)


def _line_of(text: str, loc: Tuple[Union[str, int], ...]) -> Optional[int]:
    """1-based line of the deepest key of loc found in the JSON text"""
    offset = 0
    found = None
    for part in loc:
        if not isinstance(part, str):
            continue
        match = re.compile(r'"' + re.escape(part) + r'"\s*:').search(text, offset)
        if match is None:
            break
        offset = match.start()
        found = text.count("\n", 0, offset) + 1
    return found


def parse_run_config(text: str, overrides: Optional[Dict[str, Any]] = None) -> RunConfig:
    """Validate JSON text; errors carry the line of the offending key"""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigValidationError(f"invalid JSON: {e.msg}", line=e.lineno) from e
    if not isinstance(data, dict):
        raise ConfigValidationError("config must be a JSON object", line=1)
    for key, value in (overrides or {}).items():
        if value is not None:
            data[key] = value

    try:
        config = RunConfig.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        loc = tuple(first.get('loc', ()))
        path = ".".join(str(p) for p in loc) or "config"
        raise ConfigValidationError(f"{path}: {first.get('msg')}", line=_line_of(text, loc)) from e
    logger.debug(f"Run config validated: quiver {config.quiver.label()}, N={config.cy_dimension}")
    return config


def load_run_config(path: Union[str, Path], overrides: Optional[Dict[str, Any]] = None) -> RunConfig:
    path = Path(path)
    if not path.exists():
        raise ConfigValidationError(f"config file not found: {path}")
    logger.info(f"Loading run config from {path}")
    return parse_run_config(path.read_text(encoding="utf-8"), overrides)
