"""signlab: a desk-scale numerical laboratory for multiplicative sequences.

The package sieves the Liouville and Moebius functions over large ranges,
generates the model sequences they are usually compared against (periodic,
Sturmian, polynomial phases, block-random-phase sign models, ticker tapes),
and measures the statistics of interest: logarithmic averages, sign-pattern
and word counts, local Fourier-uniformity and periodic-correlation suprema,
Vinogradov mean-value solution counts, and entropy / mutual-information
estimates.

Everything is deterministic given explicit parameters and seeds; randomized
models draw from per-block Philox streams so that sequences are reproducible
bit for bit across platforms.
"""

from .sieve import SieveTable, build_sieve, load_sieve, save_sieve
from .multiplicative import (
    MultiplicativeSpec,
    convolve_check,
    decompose,
    dirichlet_value,
    random_unit_spec,
)
from .logavg import (
    DensityEstimate,
    LogAverage,
    default_scales,
    harmonic_number,
    log_average,
    upper_log_density,
)
from .sequences import (
    SymbolicSequence,
    TickerTapeSchedule,
    default_block_rule,
    default_ticker_schedule,
    log_block_rule,
    make_liouville,
    make_noise,
    make_periodic,
    make_quadratic_phase,
    make_sawin_model,
    make_sturmian,
    make_thue_morse,
    make_ticker_tape,
)
from .frequency import (
    FrequencySet,
    apply_Dn,
    cantor_box_dimension,
    cantor_cover,
    cantor_cover_for_words,
)
from .words import (
    GrowthReport,
    WordStats,
    count_positive_density_words,
    count_words,
    count_words_eps_rounded,
    fit_growth,
    word_density_profile,
)
from .correlators import (
    chowla_correlation,
    dilation_defect,
    local_fourier_stat,
    local_periodic_stat,
    log_correlation,
)
from .vinogradov import (
    VmvCount,
    count_diagonal,
    count_vmv,
    count_vmv_bruteforce,
    power_mean_expansion_check,
    prime_phase_sum,
)
from .infotheory import (
    JointHistogram,
    entropy_decrement_demo,
    hoeffding_check,
    mutual_information,
    pinsker_bound_check,
    shannon_entropy,
    window_residue_histogram,
)

__version__ = "0.1.0"

__all__ = [
    "SieveTable",
    "build_sieve",
    "load_sieve",
    "save_sieve",
    "MultiplicativeSpec",
    "decompose",
    "convolve_check",
    "dirichlet_value",
    "random_unit_spec",
    "LogAverage",
    "DensityEstimate",
    "log_average",
    "upper_log_density",
    "harmonic_number",
    "default_scales",
    "SymbolicSequence",
    "TickerTapeSchedule",
    "make_liouville",
    "make_periodic",
    "make_sturmian",
    "make_quadratic_phase",
    "make_sawin_model",
    "make_ticker_tape",
    "make_thue_morse",
    "make_noise",
    "default_block_rule",
    "log_block_rule",
    "default_ticker_schedule",
    "FrequencySet",
    "cantor_cover",
    "cantor_cover_for_words",
    "cantor_box_dimension",
    "apply_Dn",
    "WordStats",
    "GrowthReport",
    "count_words",
    "count_positive_density_words",
    "count_words_eps_rounded",
    "word_density_profile",
    "fit_growth",
    "log_correlation",
    "chowla_correlation",
    "local_fourier_stat",
    "local_periodic_stat",
    "dilation_defect",
    "VmvCount",
    "count_vmv",
    "count_vmv_bruteforce",
    "count_diagonal",
    "prime_phase_sum",
    "power_mean_expansion_check",
    "JointHistogram",
    "shannon_entropy",
    "mutual_information",
    "hoeffding_check",
    "pinsker_bound_check",
    "entropy_decrement_demo",
    "window_residue_histogram",
]
