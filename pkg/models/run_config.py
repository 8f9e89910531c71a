"""
Data model for one CLI run
"""
import json
from typing import Any, Dict, List, Optional
from pydantic import BaseModel, ValidationError, field_validator

from config.config import (
    DEFAULT_ASSIGN,
    DEFAULT_METHOD,
    DEFAULT_OUTPUT_FORMAT,
    DEFAULT_SCHEME,
    DEFAULT_TIE_MODE,
)
from models.percentile import PercentileMethod, TieMode
from models.rank_class import RankClassScheme
from models.ranking import TieBreakChain
from utils.errors import ConfigError

INPUT_FORMATS = ("delimited-table", "json-lines")
ASSIGN_MODES = ("crisp-up", "crisp-down", "missing", "fractional")
OUTPUT_FORMATS = ("delimited", "json")


class RunConfig(BaseModel):
    """Validated settings for one command invocation"""
    inputs: List[str] = []
    # detected per file from the extension when None
    input_format: Optional[str] = None
    method: str = DEFAULT_METHOD
    tie_mode: str = DEFAULT_TIE_MODE
    tie_break: str = ""
    scheme: str = DEFAULT_SCHEME
    assign: str = DEFAULT_ASSIGN
    output_format: str = DEFAULT_OUTPUT_FORMAT
    output: Optional[str] = None
    force: bool = False
    group_by: Optional[str] = None
    inverted: bool = False

    @field_validator("input_format")
    @classmethod
    def _check_input_format(cls, value: Optional[str]) -> Optional[str]:
        if value is None:
            return None
        aliases = {"csv": "delimited-table", "delimited": "delimited-table", "jsonl": "json-lines"}
        value = aliases.get(value, value)
        if value not in INPUT_FORMATS:
            raise ValueError(f"input format must be one of {', '.join(INPUT_FORMATS)}")
        return value

    @field_validator("method")
    @classmethod
    def _check_method(cls, value: str) -> str:
        try:
            PercentileMethod.parse(value)
        except ValidationError as e:
            raise ValueError(e.errors()[0]["msg"])
        return value

    @field_validator("tie_mode")
    @classmethod
    def _check_tie_mode(cls, value: str) -> str:
        return TieMode(value).value

    @field_validator("tie_break")
    @classmethod
    def _check_tie_break(cls, value: str) -> str:
        return str(TieBreakChain.parse(value))

    @field_validator("scheme")
    @classmethod
    def _check_scheme(cls, value: str) -> str:
        RankClassScheme.parse(value)
        return value

    @field_validator("assign")
    @classmethod
    def _check_assign(cls, value: str) -> str:
        if value not in ASSIGN_MODES:
            raise ValueError(f"assignment mode must be one of {', '.join(ASSIGN_MODES)}")
        return value

    @field_validator("output_format")
    @classmethod
    def _check_output_format(cls, value: str) -> str:
        if value not in OUTPUT_FORMATS:
            raise ValueError(f"output format must be one of {', '.join(OUTPUT_FORMATS)}")
        return value

    @property
    def percentile_method(self) -> PercentileMethod:
        return PercentileMethod.parse(self.method)

    @property
    def tie_mode_value(self) -> TieMode:
        return TieMode(self.tie_mode)

    @property
    def chain(self) -> TieBreakChain:
        return TieBreakChain.parse(self.tie_break)

    @property
    def rank_class_scheme(self) -> RankClassScheme:
        return RankClassScheme.parse(self.scheme)

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump()

    @classmethod
    def build(cls, file_values: Optional[Dict[str, Any]] = None,
              env_values: Optional[Dict[str, Any]] = None,
              flag_values: Optional[Dict[str, Any]] = None) -> "RunConfig":
        """
        Merge settings with precedence flag > environment > config file > default

        Args:
            file_values: Values read from a JSON config file
            env_values: Values taken from environment variables
            flag_values: Values given on the command line (None means not given)

        Returns:
            Validated RunConfig
        """
        merged: Dict[str, Any] = {}
        for source in (file_values, env_values, flag_values):
            if source:
                merged.update({key: value for key, value in source.items() if value is not None})
        try:
            return cls(**merged)
        except ValidationError as e:
            first = e.errors()[0]
            location = ".".join(str(part) for part in first["loc"]) or "config"
            raise ConfigError(f"{location}: {first['msg']}") from e

    @staticmethod
    def read_file(path: str) -> Dict[str, Any]:
        """
        Read a JSON config file

        Args:
            path: Path to the config file

        Returns:
            Dictionary of settings
        """
        try:
            with open(path, "r", encoding="utf-8") as f:
                values = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"cannot read config file {path}: {e}") from e
        if not isinstance(values, dict):
            raise ConfigError(f"config file {path} must hold a JSON object")
        unknown = set(values) - set(RunConfig.model_fields)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        return values
