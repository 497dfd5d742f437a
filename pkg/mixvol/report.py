"""
Outcome of a single inequality check.
"""

import hashlib
import json
from fractions import Fraction
from typing import (
    Any,
    Dict,
    Optional,
)

from mixvol.util import (
    as_rational,
    format_rational,
)

__all__ = (
    "InequalityReport",
    "describe",
)


def describe(value: Any) -> Any:
    """
    Turn an instance component into plain JSON data: rationals become
    ``"p/q"`` strings, bodies and matrices their file-format dictionaries.
    """
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if hasattr(value, "to_dict"):
        return value.to_dict()
    if isinstance(value, dict):
        return {str(k): describe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [describe(v) for v in value]
    raise TypeError(f"Cannot describe {value!r} as instance data")


class InequalityReport:
    """
    Both sides of a checked inequality, oriented so that ``lhs`` is the
    bounded side: the inequality holds iff ``lhs <= rhs``.

    ``instance`` is JSON data sufficient to rebuild the checked instance (the
    generator seed and parameters for random trials, or the bodies and
    matrices themselves); ``digest`` identifies it.
    """

    BASE_ATTRS = ("inequality_id", "lhs", "rhs", "holds", "ratio", "digest")

    inequality_id: str
    lhs: Fraction
    rhs: Fraction
    instance: Dict[str, Any]
    witness: Optional[Any]

    def __init__(
        self,
        inequality_id: str,
        lhs: Fraction,
        rhs: Fraction,
        instance: Optional[Dict[str, Any]] = None,
        witness: Optional[Any] = None,
    ) -> None:
        """
        :type inequality_id: str
        :param inequality_id: name of the inequality, e.g. ``main-theorem``

        :type lhs: Fraction
        :param lhs: the bounded side

        :type rhs: Fraction
        :param rhs: the bounding side

        :type instance: dict
        :param instance: JSON-serializable description of the instance

        :type witness: any
        :param witness: optional JSON-serializable evidence (a translate, a
          certificate vector)
        """
        object.__setattr__(self, "inequality_id", inequality_id)
        object.__setattr__(self, "lhs", as_rational(lhs))
        object.__setattr__(self, "rhs", as_rational(rhs))
        object.__setattr__(self, "instance", describe(instance or {}))
        object.__setattr__(self, "witness", describe(witness))

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("InequalityReport is immutable")

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs

    @property
    def ratio(self) -> Optional[Fraction]:
        """
        ``rhs / lhs``, or ``None`` when ``lhs`` is not positive.
        """
        if self.lhs > 0:
            return self.rhs / self.lhs
        return None

    @property
    def digest(self) -> str:
        payload = json.dumps({"inequality_id": self.inequality_id, "instance": self.instance}, sort_keys=True)
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]

    def to_record(self) -> Dict[str, Any]:
        """
        The results-store record for this report.
        """
        ratio = self.ratio
        return {
            "inequality_id": self.inequality_id,
            "seed": self.instance.get("seed"),
            "trial": self.instance.get("trial"),
            "lhs": format_rational(self.lhs),
            "rhs": format_rational(self.rhs),
            "ratio": format_rational(ratio) if ratio is not None else None,
            "holds": self.holds,
            "digest": self.digest,
        }

    def with_origin(self, seed: int, trial: int, dim: int) -> "InequalityReport":
        """
        Return a copy whose instance also records the master seed, trial index
        and dimension of the random trial that produced it.
        """
        instance = dict(self.instance, seed=seed, trial=trial, dim=dim)
        return InequalityReport(self.inequality_id, self.lhs, self.rhs, instance, self.witness)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "inequality_id": self.inequality_id,
            "lhs": format_rational(self.lhs),
            "rhs": format_rational(self.rhs),
            "instance": self.instance,
            "witness": self.witness,
        }

    def to_json(self) -> str:
        """
        Return a JSON dump of this report.
        """
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, jdef: str) -> "InequalityReport":
        """
        Build a new report from a JSON dump produced by :meth:`to_json`.
        """
        data = json.loads(jdef)
        return cls(data["inequality_id"], data["lhs"], data["rhs"], data.get("instance"), data.get("witness"))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, InequalityReport):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __repr__(self) -> str:
        verdict = "holds" if self.holds else "VIOLATED"
        return (
            f"InequalityReport({self.inequality_id}: {format_rational(self.lhs)} <= {format_rational(self.rhs)} "
            f"{verdict}, digest={self.digest})"
        )
