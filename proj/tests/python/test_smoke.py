import json
import os
import subprocess
from fractions import Fraction

import jsonschema
import pytest

import blockarith as ba

SCHEMA = json.loads(ba.report_schema())


def cli(*args):
    exe = os.environ.get("BLOCKARITH_CLI")
    if not exe:
        pytest.skip("BLOCKARITH_CLI not set")
    return subprocess.run([exe, *map(str, args)], capture_output=True, text=True)


def test_arith_core():
    assert not ba.is_prime(1)
    assert ba.is_prime(523)
    assert ba.is_prime(2**61 - 1)
    assert ba.factorize(1215) == [(3, 5), (5, 1)]
    assert ba.factorize(1216) == [(2, 6), (19, 1)]
    assert ba.sieve_primes(10) == [2, 3, 5, 7]
    assert ba.prime_pi(48) == 15
    assert ba.primorial(30) == 6469693230
    assert ba.legendre_vp(4, 2) == 3
    assert ba.stirling2(4, 2) == 7
    with pytest.raises(ba.ResourceLimitError):
        ba.is_prime(10**30)


def test_block_stats():
    s = ba.block_stats(8, 3, [2])
    assert (s["P"], s["omega"], s["R"], s["Q"][2]) == (5, 3, 30, 5)
    assert ba.block_stats(34, 24)["omega"] == 14
    assert ba.lambda_m(9, 2, 2) == 2
    assert ba.lambda_m(10, 3, 3) == 10
    with pytest.raises(ba.DomainError):
        ba.block_stats(8, 1)
    with pytest.raises(ba.Error):
        ba.block_stats(0, 3)


def test_scan_and_verifiers():
    rows = ba.scan("OMEGA_23", 3, 150, nmax=1000)
    assert [(r["n"], r["k"]) for r in rows] == [(114, 109), (114, 113)]
    assert ba.scan("LS18", 3, 80, nmax=2000, workers=2)[-1]["rhs"] == "567/5"
    assert ba.erdos_gcd_bound(4) == (24, 24)
    assert ba.hanson_check(1000)["holds"]
    assert ba.khodzaev_threshold(100, 100) == 20
    with pytest.raises(ba.ValidationError):
        ba.scan("NOPE", 3, 4, nmax=10)


def test_ew_and_abc():
    assert ba.find_ew_pairs(2, 1300) == [(2, 8), (6, 48), (14, 224), (30, 960), (75, 1215)]
    assert ba.ew_family(5) == (30, 960)
    assert ba.verify_ew_pair(75, 1215, 2)
    assert not ba.verify_ew_pair(75, 1215, 3)
    assert ba.ew_abc_chain(75, 1215)["first_failing_shift"] == 2
    t = ba.make_triple(3, 125, 128)
    assert (t["radical"], t["omega"]) == (30, 3)
    assert ba.check_baker(1, 1, 2) == "fails"
    assert ba.check_baker(1, 8, 9) == "holds"
    assert ba.check_ls(3, 125, 128) == "holds"
    assert ba.enumerate_triples(10000, "1.4") == [(1, 4374, 4375), (1, 2400, 2401), (3, 125, 128)]
    g = ba.lemma_product_gap(10**6, 4)
    assert abs(g["ratio"] - 1) < Fraction(1, 100)
    assert ba.lemma_product_gap(10, 3)["gap"] == -23


def test_in_process_cli_validates_against_schema():
    code, out, err = ba.run("stats", "--n", 8, "--k", 3, "--m", 2)
    assert code == 0, err
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    assert report["findings"]["Q"] == {"2": "5"}


@pytest.mark.parametrize(
    "args",
    [
        ["stats", "--n", "8", "--k", "3", "--m", "2"],
        ["scan", "--ineq", "LS2K", "--kmin", "250", "--kmax", "270", "--nmax", "2000"],
        ["scan", "--ineq", "OMEGA_2K", "--kmax", "30", "--nmax", "200"],
        ["ew", "--k", "2", "--max", "1300", "--families", "12"],
        ["ew", "--k", "3", "--max", "100000"],
        ["abc", "check", "--a", "1", "--b", "1", "--c", "2"],
        ["abc", "enumerate", "--cmax", "2000", "--quality", "1.3", "--audit"],
        ["lemma", "--k", "4", "--x", "1000000"],
        ["verify", "--suite", "erdos-gcd", "--limit", "60"],
        ["verify", "--suite", "hanson", "--limit", "5000"],
        ["verify", "--suite", "stirling", "--limit", "20"],
        ["verify", "--suite", "khodzaev", "--limit", "400", "--n", "10000"],
        ["lambda", "--n", "9", "--k", "2", "--m", "2"],
    ],
)
def test_cli_reports_match_schema(args):
    r = cli(*args)
    assert r.returncode == 0, r.stderr
    report = json.loads(r.stdout)
    jsonschema.validate(report, SCHEMA)
    assert cli(*args).stdout == r.stdout


def test_shipped_schema_file_matches_binary():
    path = os.environ.get("BLOCKARITH_SCHEMA")
    if not path:
        pytest.skip("BLOCKARITH_SCHEMA not set")
    with open(path) as f:
        assert json.load(f) == SCHEMA


def test_cli_csv_and_exit_codes():
    r = cli("scan", "--ineq", "LS18", "--kmin", 3, "--kmax", 300, "--nmax", 100000, "--format", "csv")
    assert r.returncode == 0
    assert len(r.stdout.splitlines()) == 15
    assert cli("stats", "--n", 8).returncode == 2
    assert cli("abc", "enumerate", "--cmax", 3000000).returncode == 4
    assert cli("abc", "check", "--a", 1, "--b", 8, "--c", 9, "--max-bits", 2, "--no-prefilter").returncode == 3
    assert cli("lambda", "--n", 9, "--k", 2, "--format", "csv").returncode == 2
