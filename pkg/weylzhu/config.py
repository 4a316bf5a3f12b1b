# weylzhu/config.py
"""Run configuration for the command-line driver.

Precedence, lowest first: model defaults, the ``[weylzhu]`` table of the
TOML file named by WEYLZHU_CONFIG, then explicit command-line flags.
"""
import os
import tomllib
from fractions import Fraction
from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .errors import ConfigError

OUTPUT_DIR_VAR = "WEYLZHU_OUTPUT_DIR"
LOG_DIR_VAR = "WEYLZHU_LOG_DIR"
CONFIG_FILE_VAR = "WEYLZHU_CONFIG"

FAMILY_NAMES = ("v", "cv", "wlambda", "w0+", "w0-")


class RunConfig(BaseModel):
    """Validated parameters for one CLI subcommand."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True, extra="forbid")

    command: str
    max_d: int = Field(default=8, ge=0)
    j_window: int = Field(default=8, ge=0)
    level: int = Field(default=1, ge=0)
    depth: int = Field(default=2, ge=0)
    window: int = Field(default=12, ge=0)
    family: str = "w0+"
    lam: Fraction = Fraction(1, 2)
    ell: int = 1
    p2_max: int = Field(default=6, ge=0)
    list_bipartitions: bool = False
    report: Literal["interlock", "matrices"] = "interlock"
    format: Literal["json", "csv", "text"] = "json"
    out: Optional[Path] = None
    no_timestamp: bool = False
    quick: bool = False
    strict: bool = False
    verbose: bool = False
    log_dir: Optional[Path] = None

    @field_validator("family", mode="before")
    @classmethod
    def validate_family(cls, v):
        name = str(v).lower()
        if name not in FAMILY_NAMES:
            raise ValueError(f"family must be one of {', '.join(FAMILY_NAMES)}")
        return name

    @field_validator("lam", mode="before")
    @classmethod
    def parse_lambda(cls, v):
        try:
            value = Fraction(str(v).strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"lambda must be a rational p/q, got {v!r}") from exc
        if not 0 < value < 1:
            raise ValueError("lambda must lie strictly between 0 and 1")
        return value

    @model_validator(mode="after")
    def check_windows(self):
        if self.command == "characters" and self.j_window < self.max_d:
            raise ValueError(f"j_window ({self.j_window}) must be at least max_d ({self.max_d})")
        return self

    def output_path(self):
        """Resolve --out against WEYLZHU_OUTPUT_DIR when it is a bare file name."""
        if self.out is None:
            return None
        out_dir = os.environ.get(OUTPUT_DIR_VAR)
        if out_dir and self.out.parent == Path("."):
            return Path(out_dir) / self.out
        return self.out

    def resolved_log_dir(self):
        if self.log_dir is not None:
            return self.log_dir
        env_dir = os.environ.get(LOG_DIR_VAR)
        return Path(env_dir) if env_dir else None


def load_file_defaults(path=None):
    """Keys of the [weylzhu] table in the TOML file, or {} when none is set."""
    path = path or os.environ.get(CONFIG_FILE_VAR)
    if not path:
        return {}
    config_file = Path(path)
    if not config_file.exists():
        raise ConfigError(f"Config file not found: {config_file}")
    try:
        with open(config_file, "rb") as f:
            data = tomllib.load(f)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"Invalid TOML in {config_file}: {exc}") from exc
    table = data.get("weylzhu", {})
    if not isinstance(table, dict):
        raise ConfigError(f"[weylzhu] in {config_file} must be a table")
    return {key.replace("-", "_"): value for key, value in table.items()}


def build_config(command, cli_values, file_defaults=None):
    """Merge file defaults with explicitly given CLI values."""
    merged = dict(file_defaults if file_defaults is not None else load_file_defaults())
    merged.update({k: v for k, v in cli_values.items() if v is not None})
    merged["command"] = command
    return RunConfig(**merged)
