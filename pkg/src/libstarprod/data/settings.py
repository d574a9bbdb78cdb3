"""Contains the default settings shared by the library checks and the command line."""

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Settings:
    """Bounds and presentation defaults; ``degree_cap`` of ``None`` means 2j."""

    jet_order: int = 3
    degree: int = 3
    h_order: int = 3
    workers: int = 1
    level: str = "plain"
    output_format: str = "text"
    degree_cap: int | None = None

    def updated(self, **overrides) -> "Settings":
        """Copy with every override that is not ``None`` applied."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})
