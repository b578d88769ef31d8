from dataclasses import dataclass, field, asdict
from typing import Any, Dict, Optional


@dataclass
class RunManifest:
    """A class used to describe how a run directory was produced, enough to reproduce it"""

    command: str
    tool_version: str
    seed: Optional[int] = None
    config: Optional[Dict[str, Any]] = None
    data: Optional[str] = None
    tune_data: Optional[str] = None
    artifacts: Dict[str, Any] = field(default_factory=lambda: dict())
    started_at: Optional[str] = None
    finished_at: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, values: Dict[str, Any]) -> 'RunManifest':
        return cls(**values)
