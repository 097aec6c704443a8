"""(lambda, N)-quasi-roots: verification, exhaustive search and uniqueness checks.

A (lambda, N)-quasi-root decomposition of ``h`` is a geodesic product
``h = a g^n b`` with ``n >= N`` and ``|a|, |b| <= lambda |h|``.  All bounds are
compared with exact rationals.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor

from .graph import DefiningGraph, VertexOrder
from .normalform import (
    PreconditionError,
    choose_order_for_pair,
    conical_conjugate,
    is_sd_conical,
    normal_form,
)
from .sampling import random_connected_graph, random_element
from .seqwords import ConclusionFailed, match_word_quasiroots
from .structure import (
    are_conjugate_cyclically_reduced,
    cyclically_reduce,
    extract_nth_roots,
    is_cyclically_reduced,
    is_primitive,
    is_strongly_non_split,
)
from .words import (
    DEFAULT_CAP,
    CapExceeded,
    GroupElement,
    dependence_dag,
    enumerate_geodesic_prefixes,
    identity,
    is_geodesic,
)

__all__ = [
    "HypothesisFailed",
    "Instance",
    "QuasiRootCheck",
    "QuasiRootDecomposition",
    "QuasiRootParams",
    "SamplingExhausted",
    "Step2Report",
    "Step3Report",
    "TheoremViolation",
    "UniquenessReport",
    "check_all_pairs",
    "check_step2",
    "check_step3",
    "check_uniqueness",
    "decomposition_from_json",
    "find_quasi_roots",
    "find_quasi_roots_reference",
    "generate_instance",
    "theorem_min_power",
    "verify_quasi_root",
]

LAMBDA_CHOICES = (Fraction(0), Fraction(1, 4), Fraction(2, 5))


class HypothesisFailed(ValueError):
    def __init__(self, failed: list[str]):
        self.failed = list(failed)
        super().__init__("hypotheses failed: " + ", ".join(self.failed))


class TheoremViolation(AssertionError):
    """Every hypothesis held and a conclusion was false."""

    def __init__(self, message: str, report=None):
        self.report = report
        super().__init__(message)


class SamplingExhausted(RuntimeError):
    pass


def _fraction(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("pass lambda as an exact rational (Fraction, int or 'p/q'), not a float")
    return Fraction(x)


@dataclass(frozen=True)
class QuasiRootParams:
    """``0 <= lam < 1/2`` and ``N >= 2``.

    ``diagnostic=True`` admits ``lam == 1/2``, which is outside the theory but
    shows why the strict bound is needed.
    """

    lam: Fraction
    N: int
    diagnostic: bool = False

    def __post_init__(self):
        lam = _fraction(self.lam)
        object.__setattr__(self, "lam", lam)
        upper_ok = lam <= Fraction(1, 2) if self.diagnostic else lam < Fraction(1, 2)
        if lam < 0 or not upper_ok:
            raise ValueError(f"lambda must lie in [0, 1/2), got {lam}")
        if int(self.N) != self.N or self.N < 2:
            raise ValueError(f"N must be an integer >= 2, got {self.N}")

    def side_bound(self, h_length: int) -> int:
        """Largest admissible ``|a|`` (or ``|b|``) for ``|h| = h_length``."""
        return floor(self.lam * h_length)

    @property
    def lambda_str(self) -> str:
        return f"{self.lam.numerator}/{self.lam.denominator}"


def theorem_min_power(num_vertices: int, lam) -> Fraction:
    """``(2|V| + 1) / (1 - 2 lambda)``, the power bound of the uniqueness theorem."""
    lam = _fraction(lam)
    return Fraction(2 * num_vertices + 1) / (1 - 2 * lam)


@dataclass(frozen=True)
class QuasiRootDecomposition:
    h: GroupElement
    a: GroupElement
    g: GroupElement
    n: int
    b: GroupElement

    def key(self) -> tuple:
        return (self.a.word, self.g.word, self.n, self.b.word)

    def sort_key(self) -> tuple:
        return (self.a.sort_key(), self.b.sort_key(), self.g.sort_key(), self.n)

    def to_json(self, params: QuasiRootParams | None = None, hypotheses: dict | None = None) -> dict:
        out = {"h": str(self.h), "a": str(self.a), "g": str(self.g), "n": self.n, "b": str(self.b)}
        if params is not None:
            out["lambda"] = params.lambda_str
            out["N"] = params.N
        if hypotheses is not None:
            out["hypotheses"] = dict(hypotheses)
        return out


def decomposition_from_json(graph: DefiningGraph, obj: dict) -> QuasiRootDecomposition:
    return QuasiRootDecomposition(
        h=GroupElement(graph, obj["h"]),
        a=GroupElement(graph, obj["a"]),
        g=GroupElement(graph, obj["g"]),
        n=int(obj["n"]),
        b=GroupElement(graph, obj["b"]),
    )


@dataclass(frozen=True)
class QuasiRootCheck:
    product: bool
    geodesic: bool
    min_power: bool
    a_bound: bool
    b_bound: bool

    def __bool__(self):
        return self.product and self.geodesic and self.min_power and self.a_bound and self.b_bound

    @property
    def failed(self) -> list[str]:
        return [name for name in ("product", "geodesic", "min_power", "a_bound", "b_bound")
                if not getattr(self, name)]


def verify_quasi_root(params: QuasiRootParams, h: GroupElement, a: GroupElement,
                      g: GroupElement, n: int, b: GroupElement) -> QuasiRootCheck:
    for x in (a, g, b):
        h._same_graph(x)
    H = len(h)
    return QuasiRootCheck(
        product=a * g ** n * b == h,
        geodesic=H == len(a) + n * len(g) + len(b),
        min_power=n >= params.N,
        a_bound=len(a) <= params.lam * H,
        b_bound=len(b) <= params.lam * H,
    )


def _dedup_sorted(found) -> list[QuasiRootDecomposition]:
    unique = {}
    for d in found:
        unique.setdefault(d.key(), d)
    return sorted(unique.values(), key=QuasiRootDecomposition.sort_key)


def find_quasi_roots(params: QuasiRootParams, h: GroupElement, nontrivial_only: bool = True,
                     cap: int = DEFAULT_CAP) -> list[QuasiRootDecomposition]:
    """Every (lambda, N)-quasi-root decomposition of ``h``.

    Works on the dependence DAG of ``h``: the geodesic prefix ``a`` is an
    ideal, and ``a g^n`` is a chain of ideals whose consecutive differences all
    have the content of ``g`` and all represent ``g``.  ``b`` is the
    complement.  A trivial root is reported once, with ``n = N``.
    """
    graph = h.graph
    dag = dependence_dag(h)
    H = len(h)
    N = params.N
    L = params.side_bound(H)
    full = dag.full
    nv = len(full)
    found: list[QuasiRootDecomposition] = []
    segments: dict = {}
    runs: dict = {}
    visited = 0

    def seg(lo, hi):
        key = (lo, hi)
        s = segments.get(key)
        if s is None:
            s = GroupElement._from_reduced(graph, dag.segment(lo, hi)).word
            segments[key] = s
        return s

    def run_length(start, delta):
        # Number of consecutive copies of seg(start, start+delta).
        chain = [start]
        cur = start
        while True:
            key = (cur, delta)
            if key in runs:
                break
            nxt = tuple(c + d for c, d in zip(cur, delta))
            if any(x > f for x, f in zip(nxt, full)) or not dag.is_ideal(nxt):
                runs[key] = 0
                break
            chain.append(nxt)
            cur = nxt
        # chain[-1] has a known run; fill backwards
        for i in range(len(chain) - 2, -1, -1):
            here, there = chain[i], chain[i + 1]
            nxt_run = runs[(there, delta)]
            if nxt_run and seg(here, there) == seg(there, tuple(c + d for c, d in zip(there, delta))):
                runs[(here, delta)] = nxt_run + 1
            else:
                runs[(here, delta)] = 1
        return runs[(start, delta)]

    zero = tuple([0] * nv)
    layer = {zero}
    for da in range(L + 1):
        for ca in sorted(layer):
            rest = H - da
            a_elem = None
            if not nontrivial_only and rest <= L:
                a_elem = GroupElement._from_reduced(graph, dag.prefix(ca))
                found.append(QuasiRootDecomposition(
                    h, a_elem, identity(graph), N, GroupElement._from_reduced(graph, dag.suffix(ca))))
            max_g = rest // N
            up = {ca}
            for ell in range(1, max_g + 1):
                nxt_up = set()
                for c in up:
                    for vi in dag.addable(c):
                        lst = list(c)
                        lst[vi] += 1
                        nxt_up.add(tuple(lst))
                visited += len(nxt_up)
                if visited > cap:
                    raise CapExceeded(f"more than {cap} ideals visited")
                up = nxt_up
                n_lo = max(N, -(-(rest - L) // ell))  # need rest - n*ell <= L
                for cg in sorted(up):
                    delta = tuple(g - a for g, a in zip(cg, ca))
                    if any(a + N * d > f for a, d, f in zip(ca, delta, full)):
                        continue
                    j = run_length(ca, delta)
                    if j < n_lo:
                        continue
                    if a_elem is None:
                        a_elem = GroupElement._from_reduced(graph, dag.prefix(ca))
                    g_elem = GroupElement._from_reduced(graph, seg(ca, cg))
                    for n in range(n_lo, j + 1):
                        end = tuple(a + n * d for a, d in zip(ca, delta))
                        b_elem = GroupElement._from_reduced(graph, dag.suffix(end))
                        found.append(QuasiRootDecomposition(h, a_elem, g_elem, n, b_elem))
        if da == L:
            break
        nxt = set()
        for c in layer:
            for vi in dag.addable(c):
                lst = list(c)
                lst[vi] += 1
                nxt.add(tuple(lst))
        visited += len(nxt)
        if visited > cap:
            raise CapExceeded(f"more than {cap} ideals visited")
        layer = nxt
    return _dedup_sorted(found)


def find_quasi_roots_reference(params: QuasiRootParams, h: GroupElement, nontrivial_only: bool = True,
                               cap: int = DEFAULT_CAP) -> list[QuasiRootDecomposition]:
    """Slow search straight from the definition, used to cross-check :func:`find_quasi_roots`.

    For every prefix ``a`` and suffix ``b`` within the length bound, the middle
    part ``m`` must be cyclically reduced and every n-th root of it (n >= N) is
    a candidate.
    """
    graph = h.graph
    H = len(h)
    L = params.side_bound(H)
    found = []
    for da in range(min(L, H) + 1):
        for a in enumerate_geodesic_prefixes(h, da, cap):
            rest = a.inverse() * h
            for db in range(min(L, len(rest)) + 1):
                for b_inv in enumerate_geodesic_prefixes(rest.inverse(), db, cap):
                    b = b_inv.inverse()
                    m = rest * b_inv
                    if H != da + len(m) + db:
                        continue
                    if not m:
                        if not nontrivial_only:
                            found.append(QuasiRootDecomposition(h, a, identity(graph), params.N, b))
                        continue
                    if not is_cyclically_reduced(m):
                        continue
                    for n in range(max(params.N, 2), len(m) + 1):
                        if len(m) % n == 0:
                            for g in extract_nth_roots(m, n, cap):
                                found.append(QuasiRootDecomposition(h, a, g, n, b))
    return _dedup_sorted(found)


# -- uniqueness ------------------------------------------------------------


@dataclass
class UniquenessReport:
    left_conjugate_equal: bool
    right_conjugate_equal: bool
    roots_conjugate: bool
    hypotheses: dict = field(default_factory=dict)

    @property
    def hypotheses_hold(self) -> bool:
        return all(self.hypotheses.values())

    @property
    def failed_hypotheses(self) -> list[str]:
        return [k for k, v in self.hypotheses.items() if not v]

    @property
    def conclusions_hold(self) -> bool:
        return self.left_conjugate_equal and self.right_conjugate_equal and self.roots_conjugate

    @property
    def theorem_violation(self) -> bool:
        return self.hypotheses_hold and not self.conclusions_hold

    def to_json(self) -> dict:
        return {
            "left_conjugate_equal": self.left_conjugate_equal,
            "right_conjugate_equal": self.right_conjugate_equal,
            "roots_conjugate": self.roots_conjugate,
            "hypotheses": dict(self.hypotheses),
        }


def _roots_conjugate(g1: GroupElement, g2: GroupElement, cap: int) -> bool:
    if not g1 or not g2:
        return not g1 and not g2
    h1, h2 = cyclically_reduce(g1).h, cyclically_reduce(g2).h
    return are_conjugate_cyclically_reduced(h1, h2, cap)


class _RootFacts:
    # Memoises the per-root predicates; the harness asks about the same g often.
    def __init__(self, cap: int):
        self.cap = cap
        self._cache: dict = {}

    def __call__(self, g: GroupElement) -> tuple[bool, bool]:
        key = g.word
        facts = self._cache.get(key)
        if facts is None:
            facts = (is_strongly_non_split(g), bool(g) and is_primitive(g, self.cap))
            self._cache[key] = facts
        return facts


def _uniqueness_hypotheses(params, d1, d2, facts) -> dict:
    graph = d1.h.graph
    snp1, prim1 = facts(d1.g)
    snp2, prim2 = facts(d2.g)
    return {
        "d1 valid": bool(verify_quasi_root(params, d1.h, d1.a, d1.g, d1.n, d1.b)),
        "d2 valid": bool(verify_quasi_root(params, d2.h, d2.a, d2.g, d2.n, d2.b)),
        "same h": d1.h == d2.h,
        "graph connected": graph.is_connected(),
        "N bound": params.N >= theorem_min_power(len(graph), params.lam),
        "g1 strongly non-split": snp1,
        "g2 strongly non-split": snp2,
        "g1 primitive": prim1,
        "g2 primitive": prim2,
    }


def check_uniqueness(params: QuasiRootParams, d1: QuasiRootDecomposition, d2: QuasiRootDecomposition,
                     strict: bool = False, cap: int = DEFAULT_CAP, _facts=None) -> UniquenessReport:
    """Compare two quasi-root decompositions of one element.

    The three conclusions are always computed.  When a hypothesis fails the
    report is informational (``strict=True`` raises :class:`HypothesisFailed`
    instead); when every hypothesis holds and a conclusion fails,
    :class:`TheoremViolation` is raised.
    """
    d1.h._same_graph(d2.h)
    facts = _facts or _RootFacts(cap)
    hyps = _uniqueness_hypotheses(params, d1, d2, facts)
    report = UniquenessReport(
        left_conjugate_equal=d1.g.conjugate(d1.a) == d2.g.conjugate(d2.a),
        right_conjugate_equal=d1.g.conjugate(d1.b.inverse()) == d2.g.conjugate(d2.b.inverse()),
        roots_conjugate=_roots_conjugate(d1.g, d2.g, cap),
        hypotheses=hyps,
    )
    if strict and not report.hypotheses_hold:
        raise HypothesisFailed(report.failed_hypotheses)
    if report.theorem_violation:
        raise TheoremViolation(f"uniqueness fails for {d1} and {d2}", report)
    return report


def check_all_pairs(params: QuasiRootParams, decompositions, cap: int = DEFAULT_CAP):
    """Check uniqueness across every decomposition whose root is strongly non-split and primitive.

    Each qualifying decomposition is compared against the first one.  The
    three conclusions are equivalence relations, so agreement with a common
    reference is the same as pairwise agreement.  Returns the list of reports.
    """
    facts = _RootFacts(cap)
    eligible = [d for d in decompositions if all(facts(d.g))]
    if not eligible:
        return []
    ref = eligible[0]
    return [check_uniqueness(params, ref, d, cap=cap, _facts=facts) for d in eligible]


# -- the proof pipeline as computation ---------------------------------------


@dataclass
class Step2Report:
    rotation: int
    nf_factorization: bool
    left_conjugate_equal: bool
    right_conjugate_equal: bool


@dataclass
class Step3Report:
    order: VertexOrder
    apexes: tuple[str, str]
    ks: tuple[int, int]
    step2: Step2Report
    left_conjugate_equal: bool
    right_conjugate_equal: bool


def _unpack(d):
    if isinstance(d, QuasiRootDecomposition):
        return d.a, d.g, d.n, d.b
    return tuple(d)


def check_step2(h: GroupElement, first, second, A, B, order: VertexOrder | None = None) -> Step2Report:
    """Two geodesic decompositions ``h = a_i p_i^{n_i} b_i`` with SD-conical roots.

    Reads both off the normal form of ``h`` via the concatenation law and
    matches them as plain words.  ``first``/``second`` are ``(a, p, n, b)``.
    """
    A, B = _fraction(A), _fraction(B)
    order = order or h.graph.default_order()
    decs = [_unpack(first), _unpack(second)]
    failed = []
    for i, (a, p, n, b) in enumerate(decs, start=1):
        if a * p ** n * b != h or len(h) != len(a) + n * len(p) + len(b):
            failed.append(f"h = a{i} p{i}^n{i} b{i} geodesic")
        if n < 3:
            failed.append(f"n{i} >= 3")
        if not is_strongly_non_split(p):
            failed.append(f"p{i} strongly non-split")
        if not is_sd_conical(p, order):
            failed.append(f"p{i} SD-conical")
        if not p or not is_primitive(p):
            failed.append(f"p{i} primitive")
        if len(a) > A:
            failed.append(f"|a{i}| <= A")
        if len(b) > B:
            failed.append(f"|b{i}| <= B")
        if len(h) - (A + B) < 3 * len(p):
            failed.append(f"|h| - (A+B) >= 3|p{i}|")
    if not h.graph.is_connected():
        failed.append("graph connected")
    if failed:
        raise HypothesisFailed(failed)

    sigma_h = normal_form(h, order)
    words = []
    for a, p, n, b in decs:
        sa, sp, spb = normal_form(a, order), normal_form(p, order), normal_form(p * b, order)
        if sa + sp * (n - 1) + spb != sigma_h:
            raise TheoremViolation("normal form of a p^n b does not factor")
        words.append((sa, sp, n - 1, spb))
    try:
        rotation, _ = match_word_quasiroots(sigma_h, words[0], words[1], A,
                                            B + max(len(decs[0][1]), len(decs[1][1])))
    except ConclusionFailed as exc:
        raise TheoremViolation(f"word-level matching failed: {exc}") from exc
    (a1, p1, _, b1), (a2, p2, _, b2) = decs
    report = Step2Report(
        rotation=rotation,
        nf_factorization=True,
        left_conjugate_equal=p1.conjugate(a1) == p2.conjugate(a2),
        right_conjugate_equal=p1.conjugate(b1.inverse()) == p2.conjugate(b2.inverse()),
    )
    if not (report.left_conjugate_equal and report.right_conjugate_equal):
        raise TheoremViolation("conjugator identities fail in the group", report)
    return report


def check_step3(h: GroupElement, first, second, A, B) -> Step3Report:
    """Reduce two strongly non-split primitive decompositions to :func:`check_step2`.

    Picks an order and apexes, replaces each ``g_i`` by its conical conjugate
    ``p_i`` (``g_i^{n_i} = c_i p_i^{n_i - k_i} d_i``), widens the bounds by
    ``(|V| - 1) max|g_i|`` and pulls the conclusions back to ``g_i``.
    """
    A, B = _fraction(A), _fraction(B)
    graph = h.graph
    V = len(graph)
    decs = [_unpack(first), _unpack(second)]
    failed = []
    if not graph.is_connected():
        failed.append("graph connected")
    for i, (a, g, n, b) in enumerate(decs, start=1):
        if n < 1:
            failed.append(f"n{i} >= 1")
        if a * g ** n * b != h or len(h) != len(a) + n * len(g) + len(b):
            failed.append(f"h = a{i} g{i}^n{i} b{i} geodesic")
        if not is_strongly_non_split(g):
            failed.append(f"g{i} strongly non-split")
        if not g or not is_primitive(g):
            failed.append(f"g{i} primitive")
        if len(a) > A:
            failed.append(f"|a{i}| <= A")
        if len(b) > B:
            failed.append(f"|b{i}| <= B")
        if len(h) - (A + B) < (2 * V + 1) * len(g):
            failed.append(f"|h| - (A+B) >= (2|V|+1)|g{i}|")
    if failed:
        raise HypothesisFailed(failed)

    (a1, g1, n1, b1), (a2, g2, n2, b2) = decs
    order, v1, v2 = choose_order_for_pair(g1, g2)
    conj = [conical_conjugate(g1, v1), conical_conjugate(g2, v2)]
    new = []
    for (a, g, n, b), cc in zip(decs, conj):
        if not (is_sd_conical(cc.p, order) and is_strongly_non_split(cc.p)):
            raise TheoremViolation(f"conical conjugate {cc.p} is not SD-conical and strongly non-split")
        new.append((a * cc.a, cc.p, n - cc.k, cc.b * b))
    r = max(len(g1), len(g2))
    step2 = check_step2(h, new[0], new[1], A + (V - 1) * r, B + (V - 1) * r, order)
    report = Step3Report(
        order=order,
        apexes=(v1, v2),
        ks=(conj[0].k, conj[1].k),
        step2=step2,
        left_conjugate_equal=g1.conjugate(a1) == g2.conjugate(a2),
        right_conjugate_equal=g1.conjugate(b1.inverse()) == g2.conjugate(b2.inverse()),
    )
    if not (report.left_conjugate_equal and report.right_conjugate_equal):
        raise TheoremViolation("conjugator identities fail after pull-back", report)
    return report


# -- instances -------------------------------------------------------------


@dataclass(frozen=True)
class Instance:
    graph: DefiningGraph
    params: QuasiRootParams
    h: GroupElement
    planted: QuasiRootDecomposition


def generate_instance(seed: int, max_vertices: int = 6, max_root_length: int = 6,
                      max_side_length: int | None = None, power_shortfall: int = 0,
                      extra_power: int = 0, max_tries: int = 200) -> Instance:
    """A reproducible planted quasi-root instance.

    The graph is connected with 2..``max_vertices`` vertices; the root is
    cyclically reduced, strongly non-split and primitive; ``lambda`` is drawn
    from {0, 1/4, 2/5} and ``N`` is the theorem's bound rounded up.  The
    planted power is ``N - power_shortfall + extra_power`` and the
    instance's ``N`` is lowered by ``power_shortfall``, so a positive shortfall
    gives instances just below the theorem's bound.  ``|a|`` and ``|b|`` are
    uniform up to the admissible maximum, optionally capped by
    ``max_side_length``.
    """
    rng = random.Random(seed)
    for _ in range(max_tries):
        nv = rng.randint(2, max_vertices)
        graph = random_connected_graph(rng, nv)
        g = None
        for _ in range(100):
            cand = random_element(rng, graph, rng.randint(1, max_root_length))
            if is_cyclically_reduced(cand) and is_strongly_non_split(cand) and is_primitive(cand):
                g = cand
                break
        if g is None:
            continue
        lam = rng.choice(LAMBDA_CHOICES)
        N = ceil(theorem_min_power(nv, lam)) - power_shortfall
        if N < 2:
            continue
        params = QuasiRootParams(lam, N)
        n = N + extra_power
        gn = g ** n
        side = floor(lam * len(gn))
        if max_side_length is not None:
            side = min(side, max_side_length)
        for _ in range(50):
            a = random_element(rng, graph, rng.randint(0, side))
            b = random_element(rng, graph, rng.randint(0, side))
            h = a * gn * b
            if len(h) != len(a) + len(gn) + len(b):
                continue
            if verify_quasi_root(params, h, a, g, n, b):
                return Instance(graph, params, h, QuasiRootDecomposition(h, a, g, n, b))
    raise SamplingExhausted(f"no instance after {max_tries} attempts for seed {seed}")
