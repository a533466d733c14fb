"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Every claim is decided exactly (no numeric tolerances); the stated per-
criterion wall-clock limits are asserted.  Criteria 3 and 10 assert
statements that the computations refute: the rdec4 fixture's restriction to
span(Y, Z) is an indecomposable two-generator pencil module, and the eight
admissible c3 triples fall into two twist classes over F_3 separated by the
square class of alpha*beta.  Both tests assert the claims as stated and are
expected to stay red rather than be weakened.
"""

import time

import pytest

from modequiv.verify import FAIL, PASS, RunConfig, run_claim

CRITERIA = (
    (1, "tame-pair", (2, 3, 5), 5.0),
    (2, "wild-pair", (2, 3), 10.0),
    (3, "indec-rdec", (2, 3), 5.0),
    (4, "r-distinct", (2, 3), 5.0),
    (5, "riso-not-tiso", (2,), 30.0),
    (6, "jordan-orbit", (2, 3, 5), 30.0),
    (7, "two-generator-orbit", (2, 3), 60.0),
    (8, "band-scaling", (5,), 10.0),
    (9, "semidihedral-family", (2,), 60.0),
    (10, "c-families", (3,), 120.0),
    (11, "algebra-laws", (2,), 60.0),
)


@pytest.mark.parametrize(
    "number,claim,fields,limit",
    CRITERIA,
    ids=[f"criterion-{n:02d}-{c}" for n, c, _, _ in CRITERIA],
)
def test_criterion(number, claim, fields, limit):
    cfg = RunConfig(fields=fields)
    start = time.perf_counter()
    records = [run_claim(claim, cfg, p) for p in fields]
    elapsed = time.perf_counter() - start

    ok = all(r.status == PASS for r in records)
    verdict = "PASS" if ok else "FAIL"
    print(f"criterion {number:2d} [{claim}] {verdict} in {elapsed:6.2f}s")
    for r in records:
        print(f"    p={r.field}: {r.status}  {r.detail}")

    problems = [r for r in records if r.status != PASS]
    assert not problems, "; ".join(
        f"p={r.field}: {r.status}: {r.detail}" for r in problems
    )
    assert elapsed < limit, f"criterion {number} took {elapsed:.2f}s, limit {limit}s"
