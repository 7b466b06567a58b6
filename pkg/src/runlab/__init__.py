"""Comparison-instrumented string periodicity laboratory."""

from .symbols import SymbolString, alphabet, as_symbols
from .oracle import (
    ComparisonEntry,
    ComparisonOracle,
    Outcome,
    Transcript,
    consistent_strings,
    sign_of,
)
from .periodicity import (
    RunInterval,
    ShortRunInterval,
    check_runs_count,
    cubic_exponent_sum,
    exponent_sum,
    find_runs_bruteforce,
    find_short_runs_bruteforce,
    fine_wilf_check,
    gen_kolpakov_word,
    minimal_period,
    runs_from_json_lines,
    runs_to_json_lines,
)
from .lz import (
    AdversarialInstance,
    gen_adversarial,
    lengths_from_csv,
    lengths_to_csv,
    lower_bound_floor,
    lz_equivalent,
    lz_factorize,
    lz_factorize_instrumented,
    perturb_adversarial,
    query_count,
)
from .derived import PeriodicInterval, find_periodic_intervals
from .generators import GENERATOR_NAMES, ExperimentConfig, make_string
from .linear_runs import (
    BlockTable,
    BudgetRecord,
    CandidateRun,
    CandidateSource,
    ChainKind,
    DecayRecord,
    RunSearchReport,
    block_signature_letters,
    classify_small_period_factor,
    compute_block_table,
    find_all_p_runs,
    find_all_runs,
    find_p_periodic_runs,
    run_search,
    shift_run_candidates,
    verify_order_chain,
    DEFAULT_LOOKAHEAD,
)

__all__ = [
    "SymbolString",
    "alphabet",
    "as_symbols",
    "ComparisonEntry",
    "ComparisonOracle",
    "Outcome",
    "Transcript",
    "consistent_strings",
    "sign_of",
    "RunInterval",
    "ShortRunInterval",
    "check_runs_count",
    "cubic_exponent_sum",
    "exponent_sum",
    "find_runs_bruteforce",
    "find_short_runs_bruteforce",
    "fine_wilf_check",
    "gen_kolpakov_word",
    "minimal_period",
    "runs_from_json_lines",
    "runs_to_json_lines",
    "AdversarialInstance",
    "gen_adversarial",
    "lengths_from_csv",
    "lengths_to_csv",
    "lower_bound_floor",
    "lz_equivalent",
    "lz_factorize",
    "lz_factorize_instrumented",
    "perturb_adversarial",
    "query_count",
    "PeriodicInterval",
    "find_periodic_intervals",
    "ExperimentConfig",
    "GENERATOR_NAMES",
    "make_string",
    "BlockTable",
    "BudgetRecord",
    "CandidateRun",
    "CandidateSource",
    "ChainKind",
    "DecayRecord",
    "RunSearchReport",
    "block_signature_letters",
    "classify_small_period_factor",
    "compute_block_table",
    "find_all_p_runs",
    "find_all_runs",
    "find_p_periodic_runs",
    "run_search",
    "shift_run_candidates",
    "verify_order_chain",
    "DEFAULT_LOOKAHEAD",
]
