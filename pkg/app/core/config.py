from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
        populate_by_name=True,
    )

    log_level: str = Field(default="WARNING", alias="LOG_LEVEL")
    json_logs: bool = Field(default=True, alias="QMETA_JSON_LOGS")

    input_tolerance: float = Field(default=1e-6, gt=0, alias="QMETA_INPUT_TOLERANCE")

    default_seed: int = Field(default=42, ge=0, lt=2**64, alias="QMETA_DEFAULT_SEED")
    default_trials: int = Field(default=100_000, ge=1, alias="QMETA_DEFAULT_TRIALS")


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings()
