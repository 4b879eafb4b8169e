"""Runtime configuration: the single configuration entry point.

Values come from command-line flags and the defaults below, nothing else: the
tool reads no environment variables and no .env file, so identical
invocations behave identically on every machine. Invalid values fail at
startup with a readable message instead of surfacing deep inside a search.
"""

from pydantic import field_validator
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict

from src.config_errors import load_settings_or_exit
from src.search import DEFAULT_FORM_CAP


class CliConfig(BaseSettings):
    """Options shared by every subcommand."""

    subcommand: str | None = None
    inputs: list[str] = []
    output: str | None = None

    # Search bounds
    max_steps: int = 8
    max_len: int = 12
    form_cap: int = DEFAULT_FORM_CAP

    # Verification corpus
    seed: int = 0
    clo_max_segments: int = 3
    # None checks every enumerated segment; a number caps the pool for quick runs
    clo_segment_pool: int | None = None

    log_level: str = "INFO"

    model_config = SettingsConfigDict(extra="forbid")

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        """Only explicit arguments (the parsed CLI flags) feed the configuration."""
        return (init_settings,)

    @field_validator("max_steps", "max_len", "form_cap", "clo_max_segments", "clo_segment_pool")
    @classmethod
    def _validate_positive(cls, value: int | None) -> int | None:
        if value is not None and value < 1:
            raise ValueError("must be a positive integer")
        return value

    @field_validator("seed")
    @classmethod
    def _validate_seed(cls, value: int) -> int:
        if not 0 <= value < 2**64:
            raise ValueError("must fit in 64 unsigned bits")
        return value

    @field_validator("log_level")
    @classmethod
    def _normalize_log_level(cls, value: str) -> str:
        return value.upper()


def load_config(**options) -> CliConfig:
    """Build the configuration from parsed flags, exiting with status 2 when they are invalid."""
    return load_settings_or_exit(lambda: CliConfig(**options))
