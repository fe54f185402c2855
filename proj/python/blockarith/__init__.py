"""Arithmetic of blocks of consecutive integers: P, omega, R and Q_m, with exact verifiers."""

from ._core import (
    DEFAULT_SEED,
    DomainError,
    Error,
    MemoryBudgetError,
    OutOfTableError,
    ResourceLimitError,
    ValidationError,
    __version__,
    block_stats,
    check_baker,
    check_ls,
    enumerate_triples,
    erdos_gcd_bound,
    ew_family,
    factorize,
    find_ew_pairs,
    hanson_check,
    inequalities,
    is_prime,
    khodzaev_threshold,
    lambda_m,
    legendre_vp,
    lemma_product_gap,
    make_triple,
    prime_pi,
    primorial,
    report_schema,
    run_cli,
    scan,
    sieve_primes,
    stirling2,
    ew_abc_chain,
    verify_ew_pair,
)


def run(*args):
    """Runs the command line in-process and returns (exit_code, stdout, stderr)."""
    return run_cli([str(a) for a in args])
