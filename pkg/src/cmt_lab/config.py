"""Plain-text run configuration.

Format: one ``name = value`` per line, ``#`` comments, optional
``[section]`` headers.  Keys appearing before any header belong to the
implicit section ``params``, so a bare key-value file is a valid
system-parameter file.  Parse errors report line numbers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ConfigError
from .params import FrequencyGrid, SystemParams

__all__ = ["Config", "parse_config", "load_config", "system_params_from_config"]

_TRUE = {"true", "yes", "on", "1"}
_FALSE = {"false", "no", "off", "0"}


@dataclass
class Config:
    """Parsed sections: section name -> {key: raw string value}."""

    sections: dict[str, dict[str, str]] = field(default_factory=dict)
    source: str = "<config>"

    def has_section(self, name: str) -> bool:
        return name in self.sections

    def section(self, name: str) -> dict[str, str]:
        if name not in self.sections:
            raise ConfigError(f"{self.source}: missing required section [{name}]")
        return self.sections[name]

    def _raw(self, section: str, key: str, default=None, required=False):
        values = self.sections.get(section, {})
        if key not in values:
            if required:
                raise ConfigError(f"{self.source}: missing key '{key}' in section [{section}]")
            return default
        return values[key]

    def get_float(self, section, key, default=None, required=False):
        raw = self._raw(section, key, default, required)
        if raw is None or isinstance(raw, float):
            return raw
        try:
            return float(raw)
        except ValueError:
            raise ConfigError(f"{self.source}: [{section}] {key} = {raw!r} is not a number") from None

    def get_int(self, section, key, default=None, required=False):
        raw = self._raw(section, key, default, required)
        if raw is None or isinstance(raw, int):
            return raw
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(f"{self.source}: [{section}] {key} = {raw!r} is not an integer") from None

    def get_str(self, section, key, default=None, required=False):
        return self._raw(section, key, default, required)

    def get_bool(self, section, key, default=False):
        raw = self._raw(section, key)
        if raw is None:
            return default
        low = raw.strip().lower()
        if low in _TRUE:
            return True
        if low in _FALSE:
            return False
        raise ConfigError(f"{self.source}: [{section}] {key} = {raw!r} is not a boolean")

    def grid(self, section: str) -> FrequencyGrid:
        return FrequencyGrid(
            start=self.get_float(section, "start", required=True),
            stop=self.get_float(section, "stop", required=True),
            count=self.get_int(section, "count", required=True),
        )


def parse_config(text: str, source: str = "<config>") -> Config:
    sections: dict[str, dict[str, str]] = {}
    current = "params"
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("["):
            if not line.endswith("]") or len(line) < 3:
                raise ConfigError(f"{source}: malformed section header {raw!r}", line=lineno)
            current = line[1:-1].strip().lower()
            sections.setdefault(current, {})
            continue
        if "=" not in line:
            raise ConfigError(f"{source}: expected 'name = value', got {raw!r}", line=lineno)
        key, _, value = line.partition("=")
        key = key.strip().lower()
        value = value.split("#", 1)[0].strip()
        if not key:
            raise ConfigError(f"{source}: empty key in {raw!r}", line=lineno)
        if not value:
            raise ConfigError(f"{source}: empty value for key '{key}'", line=lineno)
        sections.setdefault(current, {})[key] = value
    return Config(sections=sections, source=source)


def load_config(path) -> Config:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    return parse_config(text, source=str(path))


def system_params_from_config(cfg: Config) -> SystemParams:
    """Build SystemParams from the [params] section (field names match exactly)."""
    section = cfg.section("params")
    try:
        return SystemParams.from_mapping(
            {k: float(v) for k, v in section.items()}
        )
    except ValueError as exc:
        raise ConfigError(f"{cfg.source}: [params] {exc}") from exc
