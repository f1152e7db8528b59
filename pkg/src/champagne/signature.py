"""Inertia of real symmetric matrices, exact and floating-point.

The exact route clears denominators and computes the characteristic
polynomial of the resulting integer matrix (Faddeev-LeVerrier, exact
integer divisions).  A symmetric matrix has only real eigenvalues, so
Descartes' sign-variation count on the coefficients is not a bound but the
exact number of positive roots; with the multiplicity of the zero root read
off the trailing zero coefficients, that yields the full signature.  This
avoids pivoting entirely, which matters because the sign-pattern matrices
verified here have zero diagonals.

The floating route is a cyclic Jacobi eigensolver with a tolerance band
around zero, applied after normalizing the matrix to unit max-norm.

On top of these sit samplers and checkers for two sign-pattern families:
odd cyclic band matrices (positive on the +-1 mod n band, zero elsewhere)
whose determinant is 2 * prod of the band entries and whose signature
depends only on n mod 4, and 7x7 matrices positive exactly on the edges of
the catalog graph H7, which have negative determinant and signature (4,3).
Randomized sampling is evidence that the signature is constant on each
family, not a proof; reports carry a `method` field saying so.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import catalog
from .graphs import Graph

SAMPLE_DENOMINATOR = 1 << 16
FLOAT_TOL = 1e-9
JACOBI_SWEEP_LIMIT = 30  # documented non-convergence limit

H7_EDGES = tuple(catalog.H7.edges())
H7_SIGNATURE = (4, 0, 3)


class MatrixError(ValueError):
    pass


class PatternViolation(MatrixError):
    pass


class JacobiConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class Signature:
    n_plus: int
    n_zero: int
    n_minus: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.n_plus, self.n_zero, self.n_minus)

    def __iter__(self):
        return iter(self.as_tuple())


@dataclass
class SymMatrix:
    """Symmetric matrix in "exact" (Fraction) or "float" (ndarray) mode.

    `pattern`, when set, is the frozenset of off-diagonal pairs required to
    be strictly positive; every other entry (diagonal included) must be
    exactly zero.  Construction validates symmetry and the pattern.
    """

    n: int
    mode: str
    entries: object
    pattern: frozenset | None = None

    def __post_init__(self):
        if self.mode not in ("exact", "float"):
            raise MatrixError(f"mode must be 'exact' or 'float', got {self.mode!r}")
        if self.mode == "exact":
            rows = tuple(
                tuple(Fraction(x) for x in row) for row in self.entries
            )
            if len(rows) != self.n or any(len(r) != self.n for r in rows):
                raise MatrixError(f"entries are not {self.n}x{self.n}")
            for i in range(self.n):
                for j in range(i):
                    if rows[i][j] != rows[j][i]:
                        raise MatrixError(f"not symmetric at ({i},{j})")
            self.entries = rows
        else:
            arr = np.array(self.entries, dtype=float)
            if arr.shape != (self.n, self.n):
                raise MatrixError(f"entries are not {self.n}x{self.n}")
            if not np.allclose(arr, arr.T, atol=0, rtol=0):
                raise MatrixError("not symmetric")
            self.entries = arr
        if self.pattern is not None:
            self.pattern = frozenset(
                (min(u, v), max(u, v)) for u, v in self.pattern
            )
            self.check_pattern()

    @classmethod
    def exact(cls, rows, pattern=None) -> "SymMatrix":
        return cls(len(rows), "exact", rows, pattern)

    @classmethod
    def from_float(cls, rows) -> "SymMatrix":
        arr = np.array(rows, dtype=float)
        return cls(len(arr), "float", arr)

    @classmethod
    def adjacency(cls, g: Graph, mode: str = "exact") -> "SymMatrix":
        rows = [[0] * g.n for _ in range(g.n)]
        for u, v in g.edges():
            rows[u][v] = rows[v][u] = 1
        return cls(g.n, mode, rows)

    def value(self, i: int, j: int):
        if self.mode == "exact":
            return self.entries[i][j]
        return self.entries[i, j]

    def check_pattern(self, pattern: frozenset | None = None) -> None:
        """Require strict positivity on pattern slots, exact zero elsewhere."""
        pattern = self.pattern if pattern is None else pattern
        if pattern is None:
            raise MatrixError("matrix carries no pattern")
        for i in range(self.n):
            for j in range(i + 1):
                v = self.value(i, j)
                if (j, i) in pattern or (i, j) in pattern:
                    if not v > 0:
                        raise PatternViolation(
                            f"slot ({j},{i}) must be positive, got {v}"
                        )
                elif v != 0:
                    raise PatternViolation(f"slot ({j},{i}) must be zero, got {v}")

    def to_float_array(self) -> np.ndarray:
        if self.mode == "float":
            return np.array(self.entries, dtype=float, copy=True)
        return np.array(
            [[float(x) for x in row] for row in self.entries], dtype=float
        )

    def to_json_obj(self) -> dict:
        if self.mode == "exact":
            rows = [
                [f"{x.numerator}/{x.denominator}" for x in row]
                for row in self.entries
            ]
        else:
            rows = [[float(x) for x in row] for row in self.entries]
        return {"mode": self.mode, "entries": rows}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "SymMatrix":
        mode = obj.get("mode")
        rows = obj.get("entries")
        if mode == "exact":
            parsed = [[Fraction(x) for x in row] for row in rows]
            return cls.exact(parsed)
        if mode == "float":
            return cls.from_float(rows)
        raise MatrixError(f"matrix JSON mode must be 'exact' or 'float': {obj!r}")


def load_matrix(path: str) -> SymMatrix:
    with open(path, encoding="utf-8") as fh:
        return SymMatrix.from_json_obj(json.load(fh))


# -- exact route --------------------------------------------------------------


def _integer_scaled(m: SymMatrix) -> tuple[list[list[int]], int]:
    lcm = 1
    for row in m.entries:
        for x in row:
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    scaled = [[int(x * lcm) for x in row] for row in m.entries]
    return scaled, lcm


def charpoly_int(b: list[list[int]]) -> list[int]:
    """Coefficients c[0..n] of det(lambda*I - B), c[n] = 1, exact integers."""
    n = len(b)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        bm = [
            [sum(b[i][t] * m[t][j] for t in range(n)) for j in range(n)]
            for i in range(n)
        ]
        trace = sum(bm[i][i] for i in range(n))
        if trace % k:
            raise MatrixError("non-integral characteristic coefficient")
        ck = -(trace // k)
        coeffs[n - k] = ck
        m = [
            [bm[i][j] + (ck if i == j else 0) for j in range(n)]
            for i in range(n)
        ]
    return coeffs


def _sign_variations(coeffs) -> int:
    signs = [1 if c > 0 else -1 for c in coeffs if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def signature_exact(m: SymMatrix) -> Signature:
    """Exact inertia from characteristic-coefficient sign variations.

    All roots are real, so Descartes' count is exact; rescaling by the
    positive common denominator leaves every eigenvalue sign unchanged.
    """
    if m.mode != "exact":
        raise MatrixError("signature_exact requires an exact-mode matrix")
    if m.n == 0:
        return Signature(0, 0, 0)
    scaled, _ = _integer_scaled(m)
    coeffs = charpoly_int(scaled)
    n_zero = 0
    while coeffs[n_zero] == 0:
        n_zero += 1
    reduced = coeffs[n_zero:]
    n_plus = _sign_variations(reduced)
    n_minus = _sign_variations(
        [c if i % 2 == 0 else -c for i, c in enumerate(reduced)]
    )
    if n_plus + n_minus != m.n - n_zero:
        raise MatrixError("sign variations inconsistent with real spectrum")
    return Signature(n_plus, n_zero, n_minus)


def det_exact(m: SymMatrix) -> Fraction:
    """Determinant via the characteristic polynomial's constant term."""
    if m.mode != "exact":
        raise MatrixError("det_exact requires an exact-mode matrix")
    if m.n == 0:
        return Fraction(1)
    scaled, lcm = _integer_scaled(m)
    c0 = charpoly_int(scaled)[0]
    return Fraction((-1) ** m.n * c0, lcm**m.n)


def det_bareiss(m: SymMatrix) -> Fraction:
    """Fraction-free Gaussian elimination determinant; cross-check oracle."""
    if m.mode != "exact":
        raise MatrixError("det_bareiss requires an exact-mode matrix")
    n = m.n
    if n == 0:
        return Fraction(1)
    a, lcm = _integer_scaled(m)
    a = [row[:] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return Fraction(0)
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1], lcm**n)


# -- floating route ------------------------------------------------------------


def jacobi_eigenvalues(
    a, sweep_limit: int = JACOBI_SWEEP_LIMIT, off_tol: float = 1e-13
) -> np.ndarray:
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sorted.

    Sweeps rotate every off-diagonal pair once; stops when the off-diagonal
    Frobenius norm falls below off_tol (relative to the matrix norm), and
    raises JacobiConvergenceError after `sweep_limit` sweeps.
    """
    a = np.array(a, dtype=float, copy=True)
    n = a.shape[0]
    if n < 2:
        return np.sort(np.diag(a))
    scale = max(np.abs(a).max(), 1.0)
    others = [
        np.array([i for i in range(n) if i not in (p, q)], dtype=np.intp)
        for p in range(n)
        for q in range(n)
    ]
    for _ in range(sweep_limit):
        hollow = a.copy()
        np.fill_diagonal(hollow, 0.0)
        if math.sqrt((hollow * hollow).sum()) <= off_tol * scale:
            return np.sort(np.diag(a))
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                diff = a[q, q] - a[p, p]
                if abs(apq) < 1e-36 * abs(diff):
                    t = apq / diff
                else:
                    phi = diff / (2.0 * apq)
                    t = 1.0 / (abs(phi) + math.sqrt(phi * phi + 1.0))
                    if phi < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                tau = s / (1.0 + c)
                idx = others[p * n + q]
                aip = a[idx, p].copy()
                aiq = a[idx, q].copy()
                new_p = aip - s * (aiq + tau * aip)
                new_q = aiq + s * (aip - tau * aiq)
                a[idx, p] = a[p, idx] = new_p
                a[idx, q] = a[q, idx] = new_q
                a[p, p] -= t * apq
                a[q, q] += t * apq
                a[p, q] = a[q, p] = 0.0
    raise JacobiConvergenceError(
        f"no convergence after {sweep_limit} Jacobi sweeps"
    )


def signature_of_array(arr, tol: float = FLOAT_TOL) -> Signature:
    """Inertia of a float symmetric array; |eigenvalue| <= tol counts as zero.

    The matrix is normalized to unit max-norm first, so `tol` is relative
    to the largest entry.
    """
    if tol <= 0:
        raise MatrixError("tol must be positive")
    arr = np.array(arr, dtype=float)
    n = arr.shape[0]
    if n == 0:
        return Signature(0, 0, 0)
    top = np.abs(arr).max()
    if top == 0.0:
        return Signature(0, n, 0)
    eig = jacobi_eigenvalues(arr / top)
    n_plus = int((eig > tol).sum())
    n_minus = int((eig < -tol).sum())
    return Signature(n_plus, n - n_plus - n_minus, n_minus)


def signature_float(m: SymMatrix, tol: float = FLOAT_TOL) -> Signature:
    return signature_of_array(m.to_float_array(), tol)


# -- sign-pattern families -----------------------------------------------------


def cycle_pattern(n: int) -> frozenset:
    return frozenset(
        (min(i, (i + 1) % n), max(i, (i + 1) % n)) for i in range(n)
    )


def h7_pattern() -> frozenset:
    return frozenset(H7_EDGES)


def _sample_positive(rng: random.Random) -> Fraction:
    # uniform on (0.1, 10) at granularity 1/2^16
    lo = SAMPLE_DENOMINATOR // 10 + 1
    hi = SAMPLE_DENOMINATOR * 10 - 1
    return Fraction(rng.randint(lo, hi), SAMPLE_DENOMINATOR)


def _pattern_sample(n: int, pairs, rng: random.Random) -> SymMatrix:
    rows = [[Fraction(0)] * n for _ in range(n)]
    for u, v in sorted(pairs):
        rows[u][v] = rows[v][u] = _sample_positive(rng)
    return SymMatrix.exact(rows, pattern=pairs)


def cycle_pattern_sample(n: int, rng: random.Random) -> SymMatrix:
    """Random matrix positive exactly on the +-1 (mod n) band, n odd >= 3."""
    if n < 3 or n % 2 == 0:
        raise MatrixError("cycle pattern requires odd n >= 3")
    return _pattern_sample(n, cycle_pattern(n), rng)


def h7_pattern_sample(rng: random.Random) -> SymMatrix:
    """Random 7x7 matrix positive exactly on the edges of H7."""
    return _pattern_sample(7, h7_pattern(), rng)


def cycle_eigenvalues(n: int) -> list[float]:
    """Spectrum of the n-cycle adjacency matrix: 2cos(2 pi k / n), sorted."""
    if n < 3:
        raise MatrixError("cycles need n >= 3")
    return sorted(2.0 * math.cos(2.0 * math.pi * k / n) for k in range(n))


def expected_cycle_signature(n: int) -> tuple[int, int, int]:
    if n % 4 == 1:
        return ((n + 1) // 2, 0, (n - 1) // 2)
    if n % 4 == 3:
        return ((n - 1) // 2, 0, (n + 1) // 2)
    raise MatrixError("cycle signature formula applies to odd n only")


def cycle_det_formula(m: SymMatrix, n: int) -> Fraction:
    """2 * product of the band entries a_{i,i+1} (indices mod n)."""
    prod = Fraction(1)
    for i in range(n):
        prod *= m.value(i, (i + 1) % n)
    return 2 * prod


def h7_det_formula(m: SymMatrix) -> Fraction:
    """Closed form of det for the H7 sign pattern (always negative)."""
    a = m.value
    return (
        -2
        * a(0, 3)
        * a(1, 4)
        * a(2, 5)
        * (
            a(0, 1) * a(2, 5) * a(3, 6) * a(4, 6)
            + a(0, 2) * a(1, 4) * a(3, 6) * a(5, 6)
            + a(0, 3) * a(1, 2) * a(4, 6) * a(5, 6)
        )
    )


def _parse_kind(kind: str):
    if kind == "h7":
        return "h7", 7
    if kind.startswith("cycle(") and kind.endswith(")"):
        return "cycle", int(kind[6:-1])
    raise MatrixError(f"unknown pattern kind {kind!r}; use 'cycle(N)' or 'h7'")


def check_sample(m: SymMatrix, kind: str) -> list[str]:
    """All violations of the kind's pattern, determinant identity, and
    expected signature for one sample matrix; empty when clean."""
    name, n = _parse_kind(kind)
    problems = []
    pairs = cycle_pattern(n) if name == "cycle" else h7_pattern()
    try:
        m.check_pattern(pairs)
    except PatternViolation as exc:
        problems.append(f"pattern: {exc}")
    det = det_exact(m)
    if name == "cycle":
        expected_det = cycle_det_formula(m, n)
        if det != expected_det:
            problems.append(f"determinant {det} != band formula {expected_det}")
        if not det > 0:
            problems.append(f"determinant {det} not positive")
        expected_sig = expected_cycle_signature(n)
    else:
        expected_det = h7_det_formula(m)
        if det != expected_det:
            problems.append(f"determinant {det} != closed formula {expected_det}")
        if not det < 0:
            problems.append(f"determinant {det} not negative")
        expected_sig = H7_SIGNATURE
    sig = signature_exact(m).as_tuple()
    if sig != expected_sig:
        problems.append(f"signature {sig} != expected {expected_sig}")
    return problems


@dataclass
class PatternLemmaReport:
    kind: str
    trials: int
    seed: int
    expected_signature: tuple[int, int, int]
    method: str = "randomized-sampling (evidence, not a proof)"
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json_obj(self) -> dict:
        return {
            "kind": self.kind,
            "trials": self.trials,
            "seed": self.seed,
            "expected_signature": list(self.expected_signature),
            "method": self.method,
            "passed": self.passed,
            "failures": self.failures,
        }


def verify_pattern_lemma(
    kind: str, trials: int, seed: int = 0, corrupt_slot=None
) -> PatternLemmaReport:
    """Sample `trials` matrices of the given sign pattern and check each for
    the determinant identity and the expected signature.

    Per-trial RNG streams derive from (seed, kind, trial index), so results
    are reproducible for any parallel execution order.  `corrupt_slot` is a
    self-test hook: it zeroes that slot in every sample, which the pattern
    check must flag.
    """
    if trials < 1:
        raise MatrixError("trials must be >= 1")
    name, n = _parse_kind(kind)
    expected = (
        expected_cycle_signature(n) if name == "cycle" else H7_SIGNATURE
    )
    report = PatternLemmaReport(kind, trials, seed, expected)
    for trial in range(trials):
        rng = random.Random(f"{seed}:{kind}:{trial}")
        m = (
            cycle_pattern_sample(n, rng)
            if name == "cycle"
            else h7_pattern_sample(rng)
        )
        if corrupt_slot is not None:
            rows = [list(r) for r in m.entries]
            u, v = corrupt_slot
            rows[u][v] = rows[v][u] = Fraction(0)
            m = SymMatrix(m.n, "exact", rows)
        problems = check_sample(m, kind)
        if problems:
            report.failures.append(
                {"trial": trial, "problems": problems, "matrix": m.to_json_obj()}
            )
    return report
