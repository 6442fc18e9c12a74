"""Exact h-fold sumset representation counting and growth certificates.

Public surface: canonical integer sets and base-h blocks (``intset``),
the exact counting engine with its brute-force oracle (``repcount``),
premise/certificate/bound verification (``verify``), the greedy repair
constructor (``construct``), and the command-line front end (``cli``).
"""

from .construct import ConstructionLog, DensityReport, density_report, greedy_repair
from .errors import (
    CertificateError,
    CountOverflowError,
    NegativeElementError,
    ParameterError,
    PrefixTooShortError,
    RangeOverflowError,
    SetFileError,
    SumrepError,
    WindowError,
)
from .intset import (
    BlockDecomposition,
    IntegerSet,
    block_of,
    blocks,
    counting,
    from_values,
    load_set,
    parse_set_text,
    save_set,
)
from .repcount import RepTable, rep_count, rep_count_naive, rep_table, sumset
from .verify import (
    BhsReport,
    BlockGrowthResult,
    BoundResult,
    Mode,
    PremiseReport,
    TheoremReport,
    Witness,
    block_growth_check,
    bound_value,
    check_premise,
    compute_k0,
    distinct_tops,
    is_bhs,
    min_threshold,
    run_theorem,
    verify_counting_bound,
    w0_value,
    witness_certificate,
)

__version__ = "0.1.0"
