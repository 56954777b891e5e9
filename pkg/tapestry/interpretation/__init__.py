# This file is part of tapestry, licensed under the BSD-3-Clause License.
"""
Global and configuration-space interpretations, and process covering maps.
"""
from tapestry.interpretation.configuration import (  # noqa
    ConfigurationInterpretation,
    ConfigurationTree,
    ExtendedTapestry,
    configuration_extend,
    factorization_check,
    pcm_c,
)
from tapestry.interpretation.global_interp import GlobalInterpretation, interpret, write_grid  # noqa
from tapestry.interpretation.pcm import (  # noqa
    PcmResult,
    coproduct_decompose,
    coproduct_sum,
    pcm,
    pcm_coproduct,
    pcm_sum_linearity_check,
)
