"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line."""

import time
from pathlib import Path

import numpy as np
import pytest

from univqg.au import au_isomorphic, reverse_inverse
from univqg.bu import bu_descriptor, bu_isomorphic
from univqg.cli import run
from univqg.decompose import (
    CircleAtom,
    GroupExpression,
    au_atom,
    bu_atom,
    decompose_au,
    decompose_bu,
    expression_equal,
)
from univqg.fusion import ALPHA, BETA, DimensionTable, alternating_word, fuse, min_dim_sequence, words_up_to
from univqg.generators import (
    random_bu_parameter,
    random_normal,
    random_positive,
    random_unit,
    random_unitary,
)
from univqg.linalg import Tolerance, polar_decompose
from univqg.normal_forms import mu_signature, normalize_au, normalize_bu

GOLDEN = Path(__file__).parent / "golden"
SEED = 7


@pytest.fixture
def gate(capsys):
    """Run a criterion body, print its verdict and fail on any violation."""

    def check(number, title, body):
        t0 = time.perf_counter()
        failures = body()
        elapsed = time.perf_counter() - t0
        ok = not failures and elapsed < 60
        with capsys.disabled():
            status = "PASS" if ok else "FAIL"
            print(f"\n[{status}] criterion {number}: {title} ({elapsed:.1f}s)")
            for f in failures[:5]:
                print(f"    {f}")
        assert not failures, failures[:5]
        assert elapsed < 60

    return check


def test_criterion_01_fusion_formula(gate):
    def body():
        bad = []
        words = list(words_up_to(6))
        for n in (2, 3, 4):
            table = DimensionTable(n)
            for x in words:
                for y in words:
                    rhs = sum(k * table.dim(w) for w, k in fuse(x, y).items())
                    if table.dim(x) * table.dim(y) != rhs:
                        bad.append(f"n={n} x={x} y={y}")
        return bad

    gate(1, "fusion formula exact for n in {2,3,4}, |x|,|y| <= 6", body)


def test_criterion_02_minimality(gate):
    def body():
        bad = []
        for n in (2, 3, 4, 5):
            table = DimensionTable(n)
            if table.dim(ALPHA) != n or table.dim(BETA) != n:
                bad.append(f"n={n}: letter dimension != n")
            bad += [f"n={n} d({x})={table.dim(x)}" for x in words_up_to(8, minlen=2) if table.dim(x) <= n]
        return bad

    gate(2, "d_a = d_b = n < d_x for |x| in 2..8, n in {2..5}", body)


def test_criterion_03_recursion(gate):
    def body():
        bad = []
        for n in (2, 3, 4, 5, 6):
            table = DimensionTable(n)
            f = min_dim_sequence(n, 10)
            alt = [table.dim(alternating_word(k)) for k in range(11)]
            if f != alt:
                bad.append(f"n={n}: {f} != {alt}")
        if min_dim_sequence(3, 5) != [1, 3, 8, 21, 55, 144]:
            bad.append(f"n=3 spot values {min_dim_sequence(3, 5)}")
        return bad

    gate(3, "min_dim_sequence equals alternating-word dimensions", body)


def test_criterion_04_au_classification(gate):
    def body():
        rng = np.random.default_rng(SEED)
        strict = Tolerance.from_eq(1e-6)
        bad = []
        for i in range(200):
            n = int(rng.integers(2, 7))
            q = random_positive(n, rng)
            v = random_unitary(n, rng)
            if not au_isomorphic(q, v @ q @ v.conj().T):
                bad.append(f"case {i}: unitary conjugate not isomorphic")
            qn = normalize_au(q).qn
            dual = np.diag(reverse_inverse(np.linalg.eigvalsh(qn)[::-1]))
            if not au_isomorphic(qn, dual):
                bad.append(f"case {i}: reverse-inverse diagonal not isomorphic")
            lam, w = np.linalg.eigh(q)
            lam[int(rng.integers(n))] *= 1 + 1e-3
            if au_isomorphic(q, (w * lam) @ w.conj().T, strict):
                bad.append(f"case {i}: 1e-3 perturbation still isomorphic")
        return bad

    gate(4, "A_u invariant: conjugation, duality, 1e-3 separation (200 cases)", body)


def test_criterion_05_bu_normalization(gate):
    def body():
        rng = np.random.default_rng(SEED)
        bad = []
        for i in range(200):
            n = int(rng.integers(1, 9))
            c = 1 if n % 2 else int(rng.choice([1, -1]))
            q = random_bu_parameter(n, c, rng) * rng.uniform(0.1, 10)
            nb = normalize_bu(q)
            qq = nb.qn @ nb.qn.conj().T
            gap = abs(np.trace(qq) - np.trace(np.linalg.inv(qq)))
            if gap > 1e-8 * n:
                bad.append(f"case {i}: trace gap {gap:.2e}")
            if nb.c != c:
                bad.append(f"case {i}: c={nb.c}, expected {c}")
        for n in (1, 3, 5, 7):
            for _ in range(25):
                if normalize_bu(random_bu_parameter(n, 1, rng)).c != 1:
                    bad.append(f"odd n={n} produced c=-1")
            try:
                random_bu_parameter(n, -1, rng)
                bad.append(f"odd n={n} accepted c=-1")
            except ValueError:
                pass
        return bad

    gate(5, "normalize_bu trace balance and odd-n sign (200 cases)", body)


def test_criterion_06_bu_classification(gate):
    def body():
        rng = np.random.default_rng(SEED)
        bad = []
        for i in range(200):
            n = int(rng.integers(1, 9))
            c = 1 if n % 2 else int(rng.choice([1, -1]))
            q = normalize_bu(random_bu_parameter(n, c, rng)).qn
            s, z = random_unitary(n, rng), random_unit(rng)
            q2 = z * s.T @ q @ s
            res = bu_isomorphic(q, q2)
            if res.verdict != "yes" or res.residual > 1e-7:
                bad.append(f"case {i}: {res.verdict} ({res.reason}) residual {res.residual}")
            for d in (bu_descriptor(q), bu_descriptor(q2)):
                if d.equation_residual() > 1e-8:
                    bad.append(f"case {i}: equation residual {d.equation_residual():.2e}")
            if not np.allclose(mu_signature(q2).mu, mu_signature(q).mu, rtol=0, atol=1e-8):
                bad.append(f"case {i}: mu not transported")
            u, p = polar_decompose(q)
            u2, p2 = polar_decompose(q2)
            if np.linalg.norm(p2 - s.conj().T @ p @ s) > 1e-8 or np.linalg.norm(u2 - z * s.T @ u @ s) > 1e-8:
                bad.append(f"case {i}: polar parts not transported")
        return bad

    gate(6, "B_u orbit decisions, descriptor equation, transport (200 cases)", body)


def su_q2(q):
    s = abs(q) / q
    return np.array([[0, -s / np.sqrt(abs(q))], [np.sqrt(abs(q)), 0]])


def test_criterion_07_su_q2(gate):
    def body():
        bad = []
        qs = (-0.5, -0.25, 0.25, 0.5)
        for q in qs:
            d = bu_descriptor(su_q2(q))
            if abs(d.mu.mu[0] - abs(q) ** -0.5) > 1e-10:
                bad.append(f"q={q}: mu1={d.mu.mu[0]}")
            if d.c != (1 if q < 0 else -1):
                bad.append(f"q={q}: c={d.c}")
        for a in qs:
            for b in qs:
                if a != b and bu_isomorphic(su_q2(a), su_q2(b)).verdict != "no":
                    bad.append(f"q={a} vs q={b} not separated")
        return bad

    gate(7, "SU_q(2) mu, sign and pairwise non-isomorphism", body)


def test_criterion_08_corollaries(gate):
    def body():
        t1 = np.array([[0, 1], [-1, 0]])
        z = np.zeros((2, 2))
        cor2 = np.array([[0, 0, 2, 0], [0, 0, 0, 1], [0.5j, 0, 0, 0], [0, 1j, 0, 0]])
        cases = [
            ("diag(2i,0.5i,1)", decompose_au(np.diag([2j, 0.5j, 1])), [au_atom(np.diag([2, 0.5])), CircleAtom()]),
            ("2x2 non-normal", decompose_au(np.array([[1, 1], [0, 1]])), [CircleAtom()]),
            ("diag(T1,I2)", decompose_bu(np.block([[t1, z], [z, np.eye(2)]])), [bu_atom(t1), bu_atom(np.eye(2))]),
            ("T=diag(2,1), q=i", decompose_bu(cor2), [au_atom(np.diag([2, 0.5]))]),
        ]
        return [
            f"{name}: got {got}"
            for name, got, want in cases
            if not expression_equal(got, GroupExpression(tuple(want)))
        ]

    gate(8, "free product decompositions of block examples", body)


def test_criterion_09_uniqueness(gate):
    def body():
        rng = np.random.default_rng(SEED)
        bad = []
        for i in range(100):
            n = int(rng.integers(1, 8))
            q = random_normal(n, rng)
            v = random_unitary(n, rng)
            e1, e2 = decompose_au(q), decompose_au(v @ q @ v.conj().T)
            if not expression_equal(e1, e2):
                bad.append(f"case {i}: {e1} vs {e2}")
            p1 = GroupExpression(tuple(e1.atoms[j] for j in rng.permutation(len(e1.atoms))))
            p2 = GroupExpression(tuple(e2.atoms[j] for j in rng.permutation(len(e2.atoms))))
            if not expression_equal(p1, p2) or not expression_equal(p1, e1):
                bad.append(f"case {i}: reordering changed the verdict")
            other = decompose_au(random_normal(n, rng))
            if expression_equal(e1, other) != expression_equal(p1, other):
                bad.append(f"case {i}: reordering changed a negative verdict")
        return bad

    gate(9, "decompose_au unique up to conjugation and atom order (100 cases)", body)


def test_criterion_10_cli_golden(gate):
    cases = {
        "classify_au_diag41": ["classify", "au", "--matrix", str(GOLDEN / "diag41.json")],
        "fusion_dims_n3": ["fusion", "dims", "--n", "3", "--max-len", "4"],
        "decompose_au_nonnormal": ["decompose", "au", "--matrix", str(GOLDEN / "nonnormal2x2.json")],
    }

    def body():
        bad = []
        for name, argv in cases.items():
            code, out = run(argv)
            want = (GOLDEN / f"{name}.out.json").read_bytes()
            if code != 0 or out != want:
                bad.append(f"{name}: exit {code}, {out!r}")
        return bad

    gate(10, "CLI golden files byte-identical", body)
