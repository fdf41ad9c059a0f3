"""
The nine EA designs compared by the experiment harness.

EA1 to EA8 form a full two-level factorial over the measurement
interpretation (I:1 / I:3), diversity control (off / on) and the credit
assignment mode (direct / ETV). SGA is a plain GA with a fixed portfolio.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional

from etvea.constants import (
    CREDIT_DIRECT,
    CREDIT_ETV,
    CREDIT_NONE,
    FACTOR_DIVERSITY,
    FACTOR_ETV,
    FACTOR_OUTLIER,
    INTERPRETATION_AVERAGE,
    INTERPRETATION_NONE,
    INTERPRETATION_OUTLIER,
)
from etvea.custom_exceptions import UnknownDesign


@dataclass(frozen=True)
class DesignSpec:
    name: str
    interpretation: str
    diversity_control: bool
    credit_mode: str
    fixed_portfolio: Optional[Dict[int, float]] = field(
        default=None, hash=False
    )

    def __str__(self) -> str:
        return "%s (%s, Div=%s, %s)" % (
            self.name,
            self.interpretation,
            "Yes" if self.diversity_control else "No",
            self.credit_mode,
        )

    @property
    def adaptive(self) -> bool:
        return self.fixed_portfolio is None

    @property
    def factorial(self) -> bool:
        """True for the designs of the 2^3 matrix."""
        return self.adaptive

    def codes(self) -> Dict[str, int]:
        """
        +1/-1 coding of the three factors; only defined for factorial
        designs.
        """
        if not self.factorial:
            raise UnknownDesign("%s is not part of the factorial" % self.name)
        return {
            FACTOR_OUTLIER: (
                1 if self.interpretation == INTERPRETATION_OUTLIER else -1
            ),
            FACTOR_DIVERSITY: 1 if self.diversity_control else -1,
            FACTOR_ETV: 1 if self.credit_mode == CREDIT_ETV else -1,
        }


SGA_PORTFOLIO = {4: 0.98}

DESIGNS: List[DesignSpec] = [
    DesignSpec("EA1", INTERPRETATION_AVERAGE, False, CREDIT_DIRECT),
    DesignSpec("EA2", INTERPRETATION_OUTLIER, False, CREDIT_DIRECT),
    DesignSpec("EA3", INTERPRETATION_AVERAGE, True, CREDIT_DIRECT),
    DesignSpec("EA4", INTERPRETATION_OUTLIER, True, CREDIT_DIRECT),
    DesignSpec("EA5", INTERPRETATION_AVERAGE, False, CREDIT_ETV),
    DesignSpec("EA6", INTERPRETATION_OUTLIER, False, CREDIT_ETV),
    DesignSpec("EA7", INTERPRETATION_AVERAGE, True, CREDIT_ETV),
    DesignSpec("EA8", INTERPRETATION_OUTLIER, True, CREDIT_ETV),
    DesignSpec(
        "SGA", INTERPRETATION_NONE, True, CREDIT_NONE, SGA_PORTFOLIO
    ),
]

DESIGN_NAMES: List[str] = [design.name for design in DESIGNS]
FACTORIAL_DESIGNS: List[str] = [d.name for d in DESIGNS if d.factorial]


def get_design(name: str) -> DesignSpec:
    for design in DESIGNS:
        if design.name == name:
            return design
    raise UnknownDesign(name)


def design_index(name: str) -> int:
    return DESIGN_NAMES.index(get_design(name).name)
