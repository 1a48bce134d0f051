"""Machine-readable verification results."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

STATUSES = ("pass", "fail", "inconclusive")


@dataclass
class Certificate:
    """Outcome of one named check.

    ``witness`` holds whatever lets a reader re-verify the verdict
    (preimages, determinants, matrices), already in JSON-ready form.
    """

    name: str
    params: dict[str, Any]
    status: str
    witness: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict[str, Any]:
        return {
            "check": self.name,
            "params": self.params,
            "status": self.status,
            "witness": self.witness,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)
