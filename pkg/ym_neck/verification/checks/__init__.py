"""Built-in identity checks."""

from .calculus import CoclosedCheck, HodgeSplitCheck, InstantonCheck
from .forms import CylinderFormsCheck, InversionCheck, ModDtCheck, TableCheck
from .frames import EigenmodesCheck, FramesCheck, TIntegralsCheck, TransitionCheck

__all__ = [
    "FramesCheck",
    "TransitionCheck",
    "TIntegralsCheck",
    "EigenmodesCheck",
    "CylinderFormsCheck",
    "ModDtCheck",
    "TableCheck",
    "InversionCheck",
    "CoclosedCheck",
    "HodgeSplitCheck",
    "InstantonCheck",
]
