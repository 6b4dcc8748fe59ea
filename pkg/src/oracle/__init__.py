"""
Oracle package: dense truncations for validating closed-form operators.
"""
from oracle.domain import (
    MAX_ORACLE_DEGREE,
    MAX_ORACLE_VARIABLES,
    DenseTruncation,
    OracleComparison,
    OracleError,
    OracleSizeError,
)
from oracle.dense import (
    TRUNCATION_KINDS,
    build,
    compare,
    compare_operator,
    compare_shell_spectra,
    dense_block_split,
    dense_operator,
    shift_matrices,
    write_matrix_csv,
)

__all__ = [
    "MAX_ORACLE_DEGREE",
    "MAX_ORACLE_VARIABLES",
    "DenseTruncation",
    "OracleComparison",
    "OracleError",
    "OracleSizeError",
    "TRUNCATION_KINDS",
    "build",
    "compare",
    "compare_operator",
    "compare_shell_spectra",
    "dense_block_split",
    "dense_operator",
    "shift_matrices",
    "write_matrix_csv",
]
