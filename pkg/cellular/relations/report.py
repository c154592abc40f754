"""
Vanishing tables: which basis constants actually occur in I(N).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, Optional, Union

from cellular.configurations.models import ConfigClass, Perm
from cellular.evaluator.evaluate import eval_basic
from cellular.evaluator.precision import BigFloat
from cellular.logger import get_logger
from cellular.recurrences.models import format_rational
from cellular.relations.fit import ConstantBasis, fit_relation

logger = get_logger(__name__)


class VanishingRow:
    """Fitted coefficients of one I(N) with a zero flag per constant."""

    def __init__(self, config: Perm, N: int, basis: List[str], coeffs: Optional[List[Fraction]], residual: Any):
        self.config = config
        self.N = N
        self.basis = basis
        self.coeffs = coeffs
        self.residual = residual

    @property
    def accepted(self) -> bool:
        return self.coeffs is not None

    @property
    def zeros(self) -> Optional[List[bool]]:
        return None if self.coeffs is None else [q == 0 for q in self.coeffs]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "config": list(self.config.values),
            "N": self.N,
            "basis": self.basis,
            "coeffs": [format_rational(q) for q in self.coeffs] if self.coeffs is not None else None,
            "residual": str(self.residual) if self.residual is not None else None,
            "accepted": self.accepted,
        }

    def line(self) -> str:
        if self.coeffs is None:
            return f"N={self.N}: no relation found"
        cells = ["0" if q == 0 else "*" for q in self.coeffs]
        values = ", ".join(f"{name}: {format_rational(q)}" for name, q in zip(self.basis, self.coeffs))
        return f"N={self.N}: [{' '.join(cells)}]  {values}"


def vanishing_report(
    c: Union[ConfigClass, Perm],
    Ns: Iterable[int],
    basis: ConstantBasis,
    digits: int,
    values: Optional[Mapping[int, Union[BigFloat, Any]]] = None,
) -> List[VanishingRow]:
    """
    One row per N. Values are taken from ``values`` when given (for integrals
    computed elsewhere) and otherwise by quadrature at ``digits`` digits.
    """
    sigma = c.rep if isinstance(c, ConfigClass) else c
    rows = []
    for N in Ns:
        if values is not None and N in values:
            value = values[N]
        else:
            value = eval_basic(sigma, N, digits).value
        relation = fit_relation(value, basis, digits)
        if relation is None:
            logger.warning("No relation for %s at N=%d", sigma, N)
            rows.append(VanishingRow(sigma, N, basis.names, None, None))
            continue
        residual = relation.to_dict()["residual"]
        rows.append(VanishingRow(sigma, N, basis.names, relation.rationals(), residual))
    return rows
