"""Exit-gate criteria.  Each one prints a single PASS/FAIL line with its timing.

Run directly (``python3 tests/test_acceptance.py``) or through pytest, where the
lines are repeated in the terminal summary.
"""

import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import F5, conjugate, regular  # noqa: E402
from repdim import auslander, gldim, krull  # noqa: E402
from repdim.category import direct_sum  # noqa: E402
from repdim.quiver import A2, KRONECKER, euler_form  # noqa: E402
from repdim.reps import (  # noqa: E402
    PREPROJECTIVE, Representation, catalog, classify_region, ext1_dim, is_projective, projective_at,
    tau_monomorphism_check,
)
from repdim.trimat import build_lambda, projective_b, tri_injective_resolution  # noqa: E402
from repdim.xfield import Field  # noqa: E402

RESULTS: list[str] = []

GHAT = ["(0,P(1))", "(0,P(2))", "(0,I(1))", "(0,I(2))", "(K,P(1))", "(K,0)", "(K,I(1))", "(K^2,I(2))"]


def P1():
    return projective_at(KRONECKER, "1", F5)


def crit_1():
    for q in (A2, KRONECKER):
        mods = catalog(q, bound=3, field=F5).modules
        for X in mods:
            for Y in mods:
                if len(X.hom_basis(Y)) - ext1_dim(X, Y) != euler_form(q, X.dim, Y.dim):
                    return False, f"{X.label} {Y.label}"
    return True, "all ordered pairs"


def crit_2():
    cat = catalog(A2, field=F5)
    gl = gldim.global_dimension(gldim.end_algebra(cat.modules).algebra)
    v = gldim.repdim_certificate(projective_at(A2, "1", F5)).verdict
    return len(cat) == 3 and gl == 2 and v == gldim.REPDIM_LE_2, f"{len(cat)} indecomposables, gl.dim {gl}, {v}"


def crit_3():
    cert = gldim.repdim_certificate(P1())
    names = [d["module"] for d in cert.data["ghat"]]
    gl = cert.data["gamma"]["gl_dim"]
    ok = sorted(names) == sorted(GHAT) and gl == 3 and cert.verdict == gldim.REPDIM_EQ_3
    return ok, f"{len(names)} summands, gl.dim {gl}, {cert.verdict}"


def crit_4():
    S = auslander.subext_set(P1(), catalog(KRONECKER, bound=3, field=F5))
    ok = sorted(U.label for U in S.members) == ["P(1)", "P(2)"] and S.consistent and all(S.lemma_1_to_2) \
        and S.size_bound_ok and auslander.same_multiset(S.members, S.reconstructed)
    return ok, f"S = {sorted(U.label for U in S.members)}"


def crit_5():
    cat = catalog(KRONECKER, bound=3, field=F5)
    gen = auslander.build_generator(P1(), cat)
    cert = auslander.verify_generator(gen, cat)
    regs = sum(1 for X in cat.modules if X.dim == (1, 1))
    return len(cert.records) == 14 and regs == 6 and cert.passed, f"{len(cert.records)} records, {regs} regulars"


def crit_6():
    lam = build_lambda(P1())
    res = tri_injective_resolution(projective_b(lam, 0))
    labels = [T.label for T in res.terms]
    cert = gldim.repdim_certificate(P1())
    sig = cert.data["sigma"][0]
    suite = cert.data["pd_suite"]
    ok = labels == ["(K^4,I(2)^2)", "(K^3,I(1)^3)"] and res.exact and sig["pass"] and sig["pd"] <= 2 \
        and len(suite) == 20 and all(c["pass"] and c["agree"] for c in suite)
    return ok, f"{' -> '.join(labels)}, pd(Sigma) = {sig['pd']}, suite {sum(c['pass'] for c in suite)}/20"


def crit_7():
    M = P1()
    lam = build_lambda(M)
    c3, c6 = catalog(KRONECKER, bound=3, field=F5), catalog(KRONECKER, bound=6, field=F5)
    t3, t6 = gldim.torsionless_enum(lam, M, c3), gldim.torsionless_enum(lam, M, c6)
    regs = [X for X in c3.modules if X.dim == (1, 1)]
    tested = []
    for X in c6.modules:
        if classify_region(KRONECKER, X) == PREPROJECTIVE and not is_projective(X):
            r = tau_monomorphism_check(X, regs)
            if r is not None:
                tested.append(r)
    ok = len(t3.entries) == 5 and t3.dims() == t6.dims() and tested and all(tested)
    return ok, f"{len(t3.entries)} entries at bound 3, {len(t6.entries)} at bound 6, {len(tested)} tau-mono checks"


def crit_8():
    X = direct_sum([projective_at(KRONECKER, "1", F5), projective_at(KRONECKER, "2", F5), regular(1, 3)])[0]
    rng = np.random.default_rng(0)
    ms = {tuple(sorted(s.module.dim for s in krull.decompose(conjugate(X, rng)).summands)) for _ in range(10)}
    F2 = Field(2)
    Y = Representation(KRONECKER, [2, 2], {"a": [[1, 0], [0, 1]], "b": [[0, 1], [1, 1]]}, F2)
    try:
        krull.decompose(Y)
        raised = False
    except krull.NonSplitField:
        raised = True
    return len(ms) == 1 and raised, f"multisets {sorted(ms)}, NonSplitField raised: {raised}"


def crit_9():
    from repdim.cli import build_certificate
    from repdim.config import load_config
    from importlib import resources

    text = (resources.files("repdim") / "data" / "kronecker_p1.json").read_text()
    a = build_certificate(load_config(text)).dumps()
    b = build_certificate(load_config(text)).dumps()
    return a == b, f"{len(a)} bytes"


CRITERIA = [
    (1, "Euler identity suite", crit_1, 5),
    (2, "finite-type check", crit_2, 1),
    (3, "Kronecker theorem reproduction", crit_3, 30),
    (4, "subextension lemma suite", crit_4, 5),
    (5, "add(G)-approximation suite", crit_5, 30),
    (6, "injective resolution and pd suite", crit_6, 60),
    (7, "torsionless and tau-monomorphism evidence", crit_7, 30),
    (8, "Krull-Schmidt robustness", crit_8, 10),
    (9, "determinism", crit_9, None),
]


def evaluate(n, name, fn, limit):
    t0 = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t0
    timed = limit is None or dt < limit
    line = f"criterion {n} {'PASS' if ok and timed else 'FAIL'}: {name} ({detail}; {dt:.2f}s" + \
        (f" < {limit}s)" if limit else ")")
    print(line)
    RESULTS.append(line)
    return ok, timed, line


@pytest.mark.parametrize("n,name,fn,limit", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(n, name, fn, limit):
    ok, timed, line = evaluate(n, name, fn, limit)
    assert ok and timed, line


if __name__ == "__main__":
    results = [evaluate(*c) for c in CRITERIA]
    sys.exit(0 if all(ok and t for ok, t, _ in results) else 1)
