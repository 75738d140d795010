from .general import UIMixin
from .coefficients import CoefficientsMixin
