"""Return type for verifiers: a boolean together with a witness."""

from typing import Any, NamedTuple


class Check(NamedTuple):
    ok: bool
    witness: Any = None

    def __bool__(self) -> bool:
        return self.ok
