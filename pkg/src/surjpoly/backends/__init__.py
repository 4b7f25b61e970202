from surjpoly.backends.base import EvaluationAlgebra, Witness, evaluate, v_power_coeffs
from surjpoly.backends.product import ProductAlgebra, ProductElement, product_backend
from surjpoly.backends.shift import DEFAULT_PROBE, ShiftAlgebra, ShiftOp, shift_solve_inner_1
from surjpoly.backends.weyl import (
    WeylAlgebra,
    WeylElement,
    weyl_ad_v,
    weyl_mul,
    weyl_solve_inner,
)

__all__ = [
    "DEFAULT_PROBE",
    "EvaluationAlgebra",
    "ProductAlgebra",
    "ProductElement",
    "ShiftAlgebra",
    "ShiftOp",
    "WeylAlgebra",
    "WeylElement",
    "Witness",
    "evaluate",
    "product_backend",
    "shift_solve_inner_1",
    "v_power_coeffs",
    "weyl_ad_v",
    "weyl_mul",
    "weyl_solve_inner",
]
