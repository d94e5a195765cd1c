"""Shuffle Hopf algebra of alternating-character words over F_q, with exact
truncated numerics over F_q[theta] and a theorem verification harness."""

from .ff import FieldElem, FieldSpec, field_from_q, field_make
from .words import (
    Element,
    Letter,
    TensorElement,
    basis_words,
    concat,
    format_element,
    format_tensor,
    format_word,
    letter,
    parse_element,
    parse_word,
    word_weight,
)
from .products import (
    binom_mod_p,
    bracket,
    delta_coeff,
    diamond,
    horizontal,
    shuffle,
    triangle,
)
from .coalgebra import (
    antipode,
    coproduct,
    coproduct_letter,
    coproduct_mzv_recursive,
    counit,
    tensor_shuffle,
)
from .zeta import (
    BudgetExceededError,
    Laurent,
    Poly,
    ZetaArray,
    array_to_word,
    format_laurent,
    laurent_inv_pow,
    monic_enum,
    parse_laurent,
    power_sum_d,
    power_sum_lt,
    power_sum_lt_element,
    word_to_array,
    zeta_trunc,
)
from .verify import (
    CheckReport,
    Rng,
    check_algebra,
    check_coalgebra,
    check_coproduct_oracle,
    check_hopf,
    check_zeta_homomorphism,
    random_element,
    run_default_matrix,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
