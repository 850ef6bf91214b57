# Glued D-lattice descriptions: family, block parameters, persistence, and creation.

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from .errors import SpecError


def _as_int(value, field_name: str) -> int:
    """Whole-number field value; floats must be integral, strings must parse."""
    if isinstance(value, bool):
        raise SpecError(f"{field_name} must be an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, float) and value.is_integer():
        return int(value)
    if isinstance(value, str):
        try:
            return int(value.strip())
        except ValueError:
            pass
    raise SpecError(f"{field_name} must be an integer, got {value!r}")


class Family(str, Enum):
    ODD_8M = "ODD_8M"
    EVEN_8M4 = "EVEN_8M4"
    FOUR_BLOCK = "FOUR_BLOCK"


@dataclass(frozen=True)
class LatticeSpec:
    """A glued sum of D-lattices D_{n_1} + ... + D_{n_k}.

    Attributes:
        family: ODD_8M (k odd, n_i = 8m_i), EVEN_8M4 (k even, n_i = 8m_i + 4)
            or FOUR_BLOCK (k = 4, n_i = 8m_i + 4eps + 2).
        k: Number of components.
        m: Block parameters, one per component.
        epsilon: 0 or 1, FOUR_BLOCK only.
    """
    family: Family
    k: int
    m: tuple[int, ...]
    epsilon: int = 0

    def __post_init__(self):
        if not isinstance(self.family, Family):
            try:
                object.__setattr__(self, "family", Family(self.family))
            except ValueError:
                raise SpecError(f"unknown family {self.family!r}") from None
        object.__setattr__(self, "k", _as_int(self.k, "k"))
        object.__setattr__(self, "m", tuple(_as_int(x, "m_i") for x in self.m))
        object.__setattr__(self, "epsilon", _as_int(self.epsilon, "epsilon"))
        self._validate()

    def _validate(self) -> None:
        if self.k < 1:
            raise SpecError(f"k must be positive, got {self.k}")
        if len(self.m) != self.k:
            raise SpecError(f"expected {self.k} block parameters, got {len(self.m)}")
        if self.family is Family.ODD_8M:
            if self.k % 2 == 0:
                raise SpecError(f"ODD_8M needs odd k, got {self.k}")
            if min(self.m) < 1:
                raise SpecError(f"ODD_8M needs every m_i >= 1, got {list(self.m)}")
        elif self.family is Family.EVEN_8M4:
            if self.k % 2:
                raise SpecError(f"EVEN_8M4 needs even k, got {self.k}")
            if min(self.m) < 0:
                raise SpecError(f"EVEN_8M4 needs every m_i >= 0, got {list(self.m)}")
        else:
            if self.k != 4:
                raise SpecError(f"FOUR_BLOCK needs k = 4, got {self.k}")
            if min(self.m) < 0:
                raise SpecError(f"FOUR_BLOCK needs every m_i >= 0, got {list(self.m)}")
        if self.epsilon not in (0, 1):
            raise SpecError(f"epsilon must be 0 or 1, got {self.epsilon}")
        if self.epsilon and self.family is not Family.FOUR_BLOCK:
            raise SpecError("epsilon is only meaningful for FOUR_BLOCK")

    @property
    def n(self) -> tuple[int, ...]:
        """Component ranks n_i."""
        if self.family is Family.ODD_8M:
            return tuple(8 * x for x in self.m)
        if self.family is Family.EVEN_8M4:
            return tuple(8 * x + 4 for x in self.m)
        return tuple(8 * x + 4 * self.epsilon + 2 for x in self.m)

    @property
    def rank(self) -> int:
        return sum(self.n)

    @property
    def ell(self) -> int:
        """l with k = 2l+1 (ODD_8M) or k = 2l (EVEN_8M4); 2 for FOUR_BLOCK."""
        return self.k // 2

    def describe(self) -> str:
        parts = [f"family={self.family.value}", f"k={self.k}", f"m={','.join(map(str, self.m))}"]
        if self.family is Family.FOUR_BLOCK:
            parts.append(f"epsilon={self.epsilon}")
        parts.append(f"n={','.join(map(str, self.n))}")
        parts.append(f"rank={self.rank}")
        return " ".join(parts)

    def to_dict(self) -> dict:
        return {
            "family": self.family.value,
            "k": self.k,
            "m": list(self.m),
            "epsilon": self.epsilon,
        }

    @staticmethod
    def from_dict(data: dict) -> "LatticeSpec":
        if not isinstance(data, dict):
            raise SpecError("spec must be a JSON object")
        try:
            family = data["family"]
            m = data["m"]
        except KeyError as exc:
            raise SpecError(f"missing field {exc.args[0]!r}") from None
        if isinstance(m, str):
            m = [x for x in m.split(",") if x.strip()]
        elif not isinstance(m, (list, tuple)):
            raise SpecError(f"m must be a list or a comma string, got {m!r}")
        k = data.get("k", len(m))
        epsilon = data.get("epsilon", 0)
        return LatticeSpec(family=family, k=k, m=tuple(m), epsilon=epsilon)

    @staticmethod
    def load(path: Path | str) -> "LatticeSpec":
        spec_path = Path(path)
        try:
            with open(spec_path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except FileNotFoundError:
            raise SpecError(f"spec file not found: {spec_path}") from None
        except json.JSONDecodeError as exc:
            raise SpecError(f"{spec_path}: invalid JSON ({exc.msg})") from None
        return LatticeSpec.from_dict(data)

    def save(self, path: Path | str) -> None:
        with open(Path(path), "w", encoding="utf-8") as f:
            json.dump(self.to_dict(), f, indent=2)


def create_spec(family: Family | str, m, epsilon: int = 0) -> LatticeSpec:
    """Build a spec with k taken from the number of block parameters."""
    m = tuple(m)
    return LatticeSpec(family=family, k=len(m), m=m, epsilon=epsilon)
