"""Shifts of finite type, their block-code automorphisms and Markov measures."""

from .codes import (AutomorphismScan, CodeStatus, SlidingBlockCode, Verdict, classify_code,
                    enumerate_automorphisms, identity_code, orbit_shift, scan_automorphisms,
                    shift_power, symbol_map, theorem_a_check)
from .measures import (CesaroReport, CylinderMeasure, LogCombination, PushforwardReport, bernoulli,
                       block_entropy, cesaro_average, parry_measure, pushforward, rpf_equilibrium)
from .shift import (PeriodicWord, Sft, build_sft, enumerate_periodic_words, full_shift,
                    gluing_constant, golden_mean_shift, sft_entropy)

__all__ = [
    "AutomorphismScan", "CesaroReport", "CodeStatus", "CylinderMeasure", "LogCombination",
    "PeriodicWord", "PushforwardReport", "Sft", "SlidingBlockCode", "Verdict", "bernoulli",
    "block_entropy", "build_sft", "cesaro_average", "classify_code", "enumerate_automorphisms",
    "enumerate_periodic_words", "full_shift", "gluing_constant", "golden_mean_shift",
    "identity_code", "orbit_shift", "parry_measure", "pushforward", "rpf_equilibrium",
    "scan_automorphisms", "sft_entropy", "shift_power", "symbol_map", "theorem_a_check",
]
