# Toolkit settings data model and persistence.

import json
from pathlib import Path
from dataclasses import dataclass, asdict, fields

OUTPUT_FORMATS = ("plain", "csv", "qs")


@dataclass
class ToolkitSettings:
    """Toolkit settings."""
    default_order: int = 32  # q-powers
    enum_order: int = 6  # q-powers, cap for the enumeration oracle
    enum_max_points: int = 50_000_000
    max_workers: int = 4
    output_format: str = "plain"  # "plain", "csv" or "qs"


def _get_settings_path() -> Path:
    """Get settings file path."""
    config_dir = Path.home() / ".thetaglue"
    config_dir.mkdir(exist_ok=True)
    return config_dir / "settings.json"


def load_settings() -> ToolkitSettings:
    """Load settings from disk, return defaults if missing or invalid."""
    settings_path = _get_settings_path()

    if not settings_path.exists():
        return ToolkitSettings()

    try:
        with open(settings_path, 'r', encoding='utf-8') as f:
            data = json.load(f)

        known = {f.name for f in fields(ToolkitSettings)}
        data = {k: v for k, v in data.items() if k in known}

        if data.get('output_format') not in OUTPUT_FORMATS:
            data['output_format'] = 'plain'

        settings = ToolkitSettings(**data)
        defaults = ToolkitSettings()
        # Non-positive sizes fall back to their defaults
        for name in ('default_order', 'enum_order', 'enum_max_points', 'max_workers'):
            value = getattr(settings, name)
            if not isinstance(value, int) or value < 1:
                setattr(settings, name, getattr(defaults, name))
        return settings
    except (json.JSONDecodeError, TypeError, ValueError, AttributeError):
        return ToolkitSettings()


def save_settings(settings: ToolkitSettings) -> None:
    """Save settings to disk."""
    settings_path = _get_settings_path()

    try:
        with open(settings_path, 'w', encoding='utf-8') as f:
            json.dump(asdict(settings), f, indent=2)
    except Exception:
        pass  # Silently fail if unable to save


class SettingsError(ValueError):
    """A settings assignment names an unknown key or an invalid value."""


def apply_assignments(settings: ToolkitSettings, assignments: list[str]) -> ToolkitSettings:
    """Return a copy of settings with each "key=value" applied."""
    known = {f.name: f for f in fields(ToolkitSettings)}
    data = asdict(settings)
    for item in assignments:
        key, sep, raw = item.partition("=")
        key, raw = key.strip(), raw.strip()
        if not sep or key not in known:
            raise SettingsError(f"expected key=value with key in {', '.join(known)}, got {item!r}")
        if key == "output_format":
            if raw not in OUTPUT_FORMATS:
                raise SettingsError(f"output_format must be one of {', '.join(OUTPUT_FORMATS)}, got {raw!r}")
            data[key] = raw
            continue
        try:
            value = int(raw)
        except ValueError:
            raise SettingsError(f"{key} must be a positive integer, got {raw!r}") from None
        if value < 1:
            raise SettingsError(f"{key} must be a positive integer, got {value}")
        data[key] = value
    return ToolkitSettings(**data)
