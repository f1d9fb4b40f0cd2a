"""Hamiltonian cycle constructors, certificates, and golden fixtures.

Three families have closed-form constructors:

  * g3   (multiples-of-3 missing): case formulas keyed on n mod 6 and the
    parity of k = n div 6, interleaving the two arithmetic-progression path
    halves with the multiples of 6 in a fixed order.
  * g5   (multiples-of-5 missing): a snake path through 5-blocks with a
    per-residue splice for the tail (n mod 10).
  * g35  (multiples of 3 and 5 missing): embedded reference cycles for
    14 <= n <= 74, extended beyond 74 thirty vertices at a time by the
    (P1, P2, P3, P4) part scheme where P3 grows by a shifted copy of P2+P3.

Certificates are verified against a built graph, never trusted.  The fixture
file format is one record per line, ``family:n:v1,v2,...,vk``; closed cycles
omit the repeated final vertex.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .errors import DomainError, FixtureParseError
from .graphs import EvenGraph, GraphSpec, intersection, pmm

FAMILIES = ("g3", "g5", "g35")

_FAMILY_KIND = {"g3": "pmm3", "g5": "pmm5", "g35": "g35"}


def family_spec(family: str, n: int) -> GraphSpec:
    if family == "g3":
        return pmm(3, n)
    if family == "g5":
        return pmm(5, n)
    if family == "g35":
        return intersection((3, 5), n)
    raise DomainError(f"unknown family {family!r} (expected one of {FAMILIES})")


@dataclass(frozen=True)
class CertificateFailure:
    reason: str       # repeat | missing | non-adjacent | not-closed | unknown-vertex | empty
    position: int     # 1-based position in the sequence where the check failed
    detail: str

    def __str__(self):
        return f"{self.reason} at position {self.position}: {self.detail}"


@dataclass(frozen=True)
class HamCertificate:
    """An ordered vertex sequence claimed to be a Hamiltonian cycle or path."""

    spec: GraphSpec
    sequence: tuple[int, ...]
    closed: bool
    status: str = "unverified"            # unverified | verified | failed
    failure: CertificateFailure | None = None

    @property
    def verified(self) -> bool:
        return self.status == "verified"


def verify_certificate(graph: EvenGraph, cert: HamCertificate) -> HamCertificate:
    """Check a certificate against a graph and return it with status filled.

    Verified means: the sequence is a permutation of the vertex set, every
    consecutive pair is an edge, and (for closed certificates) the last
    vertex is adjacent to the first.  The first offence is reported.
    """
    seq = cert.sequence
    failure = None
    if not seq:
        failure = CertificateFailure("empty", 0, "certificate has no vertices")
    if failure is None:
        known = graph._index
        seen = {}
        for pos, v in enumerate(seq, start=1):
            if v not in known:
                failure = CertificateFailure(
                    "unknown-vertex", pos, f"{v} is not a vertex of the graph")
                break
            if v in seen:
                failure = CertificateFailure(
                    "repeat", pos, f"{v} already appears at position {seen[v]}")
                break
            seen[v] = pos
    if failure is None and len(seq) != graph.vertex_count:
        missing = sorted(set(int(v) for v in graph.vertices) - set(seq))
        failure = CertificateFailure(
            "missing", len(seq), f"missing {', '.join(map(str, missing[:4]))}")
    if failure is None:
        for pos in range(len(seq) - 1):
            if not graph.has_edge(seq[pos], seq[pos + 1]):
                failure = CertificateFailure(
                    "non-adjacent", pos + 1, f"{seq[pos]} !~ {seq[pos + 1]}")
                break
    if failure is None and cert.closed and len(seq) > 1:
        if not graph.has_edge(seq[-1], seq[0]):
            failure = CertificateFailure(
                "not-closed", len(seq), f"{seq[-1]} !~ {seq[0]}")
    status = "verified" if failure is None else "failed"
    return replace(cert, status=status, failure=failure)


# ---------------------------------------------------------------------------
# g3: case formulas on n mod 6
# ---------------------------------------------------------------------------

def _x(i: int) -> int:
    return 6 * i - 4


def _y(i: int) -> int:
    return 6 * i - 2


def _pair_lo(sym, j):
    # covers indices {2j-1, 2j}; ascending for odd j, descending for even j
    a, b = sym(2 * j - 1), sym(2 * j)
    return [a, b] if j % 2 else [b, a]


def _pair_hi(sym, j):
    # covers indices {2j, 2j+1}; same orientation rule as _pair_lo
    a, b = sym(2 * j), sym(2 * j + 1)
    return [a, b] if j % 2 else [b, a]


def _require_even_cycle_n(n: int) -> None:
    if n < 4 or n % 2 != 0:
        raise DomainError(f"closed cycles exist for even n >= 4 only, got n={n}")


def ham_cycle_g3(n: int) -> HamCertificate:
    """Closed Hamiltonian cycle of the multiples-of-3-missing graph at n."""
    _require_even_cycle_n(n)
    seq: list[int] = []
    r = n % 6
    if r == 0:
        k = n // 6
        seps = [6 * j for j in range(1, 2 * k + 1)]
        si = 0
        for j in range(1, k + 1):
            seq += _pair_lo(_x, j) + [seps[si]]
            si += 1
        for j in range(k, 0, -1):
            seq += _pair_lo(_y, j) + [seps[si]]
            si += 1
    elif r == 2:
        k = (n - 2) // 6
        seps = []
        for j in range(1, k + 1):
            seps += [12 * j, 12 * j - 6]
        seq += [_x(1), _x(2), _x(3), seps[0]]
        si = 1
        for j in range(2, k + 1):
            seq += _pair_hi(_x, j) + [seps[si]]
            si += 1
        for j in range(k, 0, -1):
            seq += _pair_hi(_y, j) + [seps[si]]
            si += 1
        seq.append(_y(1))
    else:  # n mod 6 == 4
        k = (n - 4) // 6
        seps = [6 * j for j in range(1, 2 * k + 2)]
        si = 0
        for j in range(1, k + 1):
            seq += _pair_lo(_x, j) + [seps[si]]
            si += 1
        extra = [_x(2 * k + 2), _x(2 * k + 1)] if k % 2 else [_x(2 * k + 1), _x(2 * k + 2)]
        seq += extra + [seps[si]]
        si += 1
        for j in range(k, 0, -1):
            seq += _pair_hi(_y, j) + [seps[si]]
            si += 1
        seq.append(_y(1))
    return HamCertificate(pmm(3, n), tuple(seq), closed=True)


# ---------------------------------------------------------------------------
# g5: snake path with residue splice
# ---------------------------------------------------------------------------

_G5_BASE = {
    4: (2, 4, 6, 8),
    6: (2, 4, 6, 8, 10, 12),
    8: (2, 4, 6, 8, 14, 12, 10, 16),
    10: (2, 4, 6, 8, 10, 12, 14, 20, 18, 16),
    12: (2, 4, 6, 8, 10, 12, 14, 24, 22, 20, 18, 16),
    14: (2, 4, 6, 8, 10, 12, 14, 24, 22, 20, 18, 28, 26, 16),
    16: (2, 4, 6, 8, 10, 12, 14, 24, 22, 32, 30, 28, 26, 16, 18, 20),
    18: (2, 4, 6, 8, 10, 12, 14, 24, 22, 20, 18, 16, 26, 28, 34, 32, 30, 36),
}


def _g5_snake(blocks: int) -> list[int]:
    """(2,4,...,14) then 5-blocks of consecutive evens, odd blocks reversed."""
    seq = list(range(2, 15, 2))
    for t in range(1, blocks + 1):
        block = list(range(10 * t + 6, 10 * t + 15, 2))
        seq.extend(reversed(block) if t % 2 else block)
    return seq


def ham_cycle_g5(n: int) -> HamCertificate:
    """Closed Hamiltonian cycle of the multiples-of-5-missing graph at n."""
    _require_even_cycle_n(n)
    if n <= 18:
        return HamCertificate(pmm(5, n), _G5_BASE[n], closed=True)
    m, i = divmod(n, 10)
    b = 20 * m
    if i == 8:
        seq = _g5_snake(2 * m - 1) + [b + 6, b + 8, b + 14, b + 12, b + 10, b + 16]
    else:
        seq = _g5_snake(2 * m - 2)
        if i == 0:
            seq += [b, b - 2, b - 4]
        elif i == 2:
            seq += [b + 4, b + 2, b, b - 2, b - 4]
        elif i == 4:
            seq += [b + 4, b + 2, b, b - 2, b + 8, b + 6, b - 4]
        else:  # i == 6
            seq += [b + 4, b + 2, b + 12, b + 10, b + 8, b + 6, b - 4, b - 2, b]
    return HamCertificate(pmm(5, n), tuple(seq), closed=True)


# ---------------------------------------------------------------------------
# g35: embedded reference cycles + thirty-step extension
# ---------------------------------------------------------------------------

#: (len(P1), len(P4)) per base size m; P2 is always the next 30 vertices and
#: P3 the remainder.  P4 here excludes the closing repeat of the start vertex.
_G35_SPLIT = {
    46: (3, 2), 48: (3, 3), 50: (5, 5), 52: (3, 3), 54: (3, 3), 56: (3, 3),
    58: (3, 2), 60: (3, 3), 62: (3, 2), 64: (3, 2), 66: (3, 2), 68: (3, 2),
    70: (3, 2), 72: (3, 3), 74: (3, 3),
}

Parts = tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...], tuple[int, ...]]


def split_g35_parts(m: int) -> Parts:
    """Split the base-m reference cycle into (P1, P2, P3, P4)."""
    if m not in _G35_SPLIT:
        raise DomainError(f"no part split is defined for m={m}")
    seq = fixture_sequence("g35", m)
    l1, l4 = _G35_SPLIT[m]
    p1 = seq[:l1]
    p2 = seq[l1:l1 + 30]
    p3 = seq[l1 + 30:len(seq) - l4]
    p4 = seq[len(seq) - l4:]
    return p1, p2, p3, p4


def extend_g35_parts(parts: Parts, steps: int) -> Parts:
    """Apply the +30 growth rule: P3 <- (P2, P3) with every entry shifted +60."""
    p1, p2, p3, p4 = (tuple(p) for p in parts)
    if len(p2) != 30:
        raise DomainError(f"P2 must hold exactly 30 vertices, got {len(p2)}")
    if steps < 0:
        raise DomainError("steps must be non-negative")
    for _ in range(steps):
        p3 = tuple(v + 60 for v in p2 + p3)
    return p1, p2, p3, p4


def ham_cycle_g35(n: int) -> HamCertificate:
    """Closed Hamiltonian cycle of the graph missing multiples of 3 and 5."""
    _require_even_cycle_n(n)
    spec = intersection((3, 5), n)
    if n <= 12:
        # identical graphs below 13: the first non-trivial multiple of 5
        # that is not a multiple of 3 is 25
        return HamCertificate(spec, ham_cycle_g3(n).sequence, closed=True)
    if n <= 74:
        return HamCertificate(spec, fixture_sequence("g35", n), closed=True)
    m = 46 + (n - 46) % 30
    steps = (n - m) // 30
    p1, p2, p3, p4 = extend_g35_parts(split_g35_parts(m), steps)
    return HamCertificate(spec, p1 + p2 + p3 + p4, closed=True)


_CYCLE_BUILDERS = {"g3": ham_cycle_g3, "g5": ham_cycle_g5, "g35": ham_cycle_g35}


def ham_cycle(family: str, n: int) -> HamCertificate:
    try:
        builder = _CYCLE_BUILDERS[family]
    except KeyError:
        raise DomainError(f"unknown family {family!r}") from None
    return builder(n)


_SMALL_PATHS = {1: (2,), 2: (2, 4), 3: (2, 4, 6)}


def ham_path(family: str, n: int) -> HamCertificate:
    """Open Hamiltonian path certificate for any n >= 1.

    Even n: the cycle with its closing edge dropped.  Odd n >= 5: the cycle
    at n+1 with the vertex 2(n+1) cut out (valid because the smaller graph is
    the induced subgraph on the remaining vertices).  n <= 3: the graph is
    itself a path.
    """
    if n < 1:
        raise DomainError(f"paths exist for n >= 1 only, got n={n}")
    spec = family_spec(family, n)
    if n <= 3:
        return HamCertificate(spec, _SMALL_PATHS[n], closed=False)
    if n % 2 == 0:
        return HamCertificate(spec, ham_cycle(family, n).sequence, closed=False)
    seq = list(ham_cycle(family, n + 1).sequence)
    pos = seq.index(2 * (n + 1))
    return HamCertificate(spec, tuple(seq[pos + 1:] + seq[:pos]), closed=False)


# ---------------------------------------------------------------------------
# Fixture storage
# ---------------------------------------------------------------------------

def parse_fixture_lines(lines) -> dict[tuple[str, int], tuple[int, ...]]:
    fixtures = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(":")
        if len(parts) != 3:
            raise FixtureParseError("expected family:n:v1,v2,...", lineno)
        family, n_text, seq_text = parts
        if family not in FAMILIES:
            raise FixtureParseError(f"unknown family {family!r}", lineno)
        try:
            n = int(n_text)
            seq = tuple(int(tok) for tok in seq_text.split(","))
        except ValueError as exc:
            raise FixtureParseError(str(exc), lineno) from None
        if (family, n) in fixtures:
            raise FixtureParseError(f"duplicate record for {family}:{n}", lineno)
        fixtures[(family, n)] = seq
    return fixtures


def load_fixture_file(path) -> dict[tuple[str, int], tuple[int, ...]]:
    text = Path(path).read_text(encoding="utf-8")
    return parse_fixture_lines(text.splitlines())


@lru_cache(maxsize=1)
def builtin_fixtures() -> dict[tuple[str, int], tuple[int, ...]]:
    text = (resources.files("goldbach_lab") / "data" / "cycles.txt").read_text("utf-8")
    return parse_fixture_lines(text.splitlines())


def fixture_sequence(family: str, n: int) -> tuple[int, ...]:
    try:
        return builtin_fixtures()[(family, n)]
    except KeyError:
        raise DomainError(f"no embedded cycle for {family} at n={n}") from None


def align_cycle(seq, reference):
    """Rotate and orient a closed cycle to start like ``reference``.

    Returns the aligned tuple, or None if the reference start vertex is
    absent.  Cycles are compared as cyclic sequences: fix the start vertex,
    then pick the direction whose second vertex matches the reference.
    """
    seq = list(seq)
    ref = list(reference)
    if not ref or ref[0] not in seq:
        return None
    pos = seq.index(ref[0])
    rotated = seq[pos:] + seq[:pos]
    if len(ref) > 1 and len(rotated) > 1 and rotated[1] != ref[1]:
        rotated = [rotated[0]] + rotated[:0:-1]
    return tuple(rotated)
