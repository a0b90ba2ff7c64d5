"""Named invariant suites, shared by ``sct verify`` and the test suite.

Each suite takes a weight bound and returns a list of :class:`Check`.  Bounds
that would make a check expensive are capped per check (e.g. the Hopf axioms
stop at forests of weight 5).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import cumulants, hopf, ncpart, nsym, operad, symfun, trees
from .poly import m

# Small and large Schroeder numbers, frozen from the enumeration recurrences.
TREE_COUNTS = (1, 1, 3, 11, 45, 197, 903, 4279, 20793, 103049, 518859)
PRIME_COUNTS = (1, 1, 2, 6, 22, 90, 394, 1806, 8558, 41586, 206098)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        tail = f" ({self.detail})" if self.detail else ""
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}{tail}"


def _check(name: str, fn: Callable[[], bool], detail: str = "") -> Check:
    try:
        return Check(name, bool(fn()), detail)
    except Exception as exc:  # a crashing invariant is a failed invariant
        return Check(name, False, f"{type(exc).__name__}: {exc}")


# --- counting -------------------------------------------------------------------------

def pst_catalan_sum(n: int) -> int:
    """``sum_{pi in NC_n} prod_B C_{|B|-1}``."""
    total = 0
    for pi in ncpart.enumerate_nc(n):
        term = 1
        for b in pi.blocks:
            term *= ncpart.catalan(len(b) - 1)
        total += term
    return total


def counting(weight: int, prime_weight: int | None = None, pst_weight: int | None = None) -> list[Check]:
    prime_weight = weight if prime_weight is None else prime_weight
    pst_weight = min(weight, 8) if pst_weight is None else pst_weight
    return [
        _check(f"tree counts 0..{weight}",
               lambda: [len(trees.enumerate_words("all", n)) for n in range(weight + 1)]
               == list(TREE_COUNTS[: weight + 1])),
        _check(f"prime counts 0..{prime_weight}",
               lambda: [len(trees.enumerate_words("prime", n)) for n in range(prime_weight + 1)]
               == list(PRIME_COUNTS[: prime_weight + 1])),
        _check(f"binary counts are Catalan 0..{weight}",
               lambda: all(len(trees.enumerate_words("binary", n)) == ncpart.catalan(n) for n in range(weight + 1))),
        _check(f"right-directed counts are Catalan 0..{weight}",
               lambda: all(len(trees.enumerate_words("right_directed", n)) == ncpart.catalan(n)
                           for n in range(weight + 1))),
        _check(f"|PST_n| = sum over NC_n of Catalan products, n <= {pst_weight}",
               lambda: all(len(trees.enumerate_words("prime", n)) == pst_catalan_sum(n)
                           for n in range(1, pst_weight + 1))),
    ]


# --- printed expansions ---------------------------------------------------------------

G_GOLDEN = {
    0: "1",
    1: "S[1]",
    2: "S[2] + S[1,1]",
    3: "S[3] + 2S[2,1] + S[1,2] + S[1,1,1]",
    4: "S[4] + 3S[3,1] + 2S[2,2] + S[1,3] + 3S[2,1,1] + 2S[1,2,1] + S[1,1,2] + S[1,1,1,1]",
}
G3_RIBBON = "5R[3] + 3R[2,1] + 2R[1,2] + R[1,1,1]"
G3_MIRRORED = {(1, 1, 1): 5, (1, 2): 3, (2, 1): 2, (3,): 1}
K_GOLDEN = {
    1: {"S": "S[1]", "L": "L[1]", "R": "R[1]"},
    2: {"S": "S[2] - S[1,1]", "L": "-L[2]", "R": "-R[1,1]"},
    3: {"S": "S[3] - 2S[2,1] - S[1,2] + 2S[1,1,1]", "L": "L[3] + L[2,1]", "R": "R[1,2] + 2R[1,1,1]"},
    4: {
        "S": "S[4] - 3S[3,1] - 2S[2,2] - S[1,3] + 5S[2,1,1] + 3S[1,2,1] + 2S[1,1,2] - 5S[1,1,1,1]",
        "L": "-(L[4] + 2L[3,1] + L[2,2] + L[2,1,1])",
        "R": "-(R[1,3] + 2R[1,2,1] + 3R[1,1,2] + 5R[1,1,1,1])",
    },
}
S_IN_K_GOLDEN = {
    1: {(1,): 1},
    2: {(2,): 1, (1, 1): 1},
    3: {(3,): 1, (2, 1): 2, (1, 2): 1, (1, 1, 1): 1},
    4: {(4,): 1, (3, 1): 3, (2, 2): 2, (2, 1, 1): 3, (1, 3): 1, (1, 2, 1): 2, (1, 1, 2): 1, (1, 1, 1, 1): 1},
}
# Prime trees of weight <= 3 with signs (-1)^(i(t)-1), written out by hand.
KAPPA3_GOLDEN = {
    (0,): 1,
    (1, 0, 0): 1,
    (2, 0, 0, 0): 1, (1, 1, 0, 0, 0): -1,
    (3, 0, 0, 0, 0): 1, (2, 1, 0, 0, 0, 0): -1, (2, 0, 1, 0, 0, 0): -1,
    (1, 2, 0, 0, 0, 0): -1, (1, 1, 1, 0, 0, 0, 0): 1, (1, 1, 0, 1, 0, 0, 0): 1,
}
KAPPA2_TEXT = "S[0] + S[1,0,0] + S[2,0,0,0] - S[1,1,0,0,0]"


def _k_text(n: int, basis: str) -> str:
    return str(nsym.convert(nsym.cumulant_K(n).homogeneous(n), basis))


def goldens(weight: int = 4) -> list[Check]:
    out = [
        _check("g_0..g_4 on S",
               lambda: all(str(nsym.lagrange_g(n).homogeneous(n)) == G_GOLDEN[n] for n in range(5))),
        _check("g_3 on R", lambda: str(nsym.convert(nsym.lagrange_g(3).homogeneous(3), "R")) == G3_RIBBON),
        _check("g_3 mirror-conjugated ribbons",
               lambda: {nsym.mirror_conjugate(i): c
                        for i, c in nsym.convert(nsym.lagrange_g(3).homogeneous(3), "R").terms.items()}
               == G3_MIRRORED),
    ]
    for n in range(1, 5):
        for basis in ("S", "L", "R"):
            out.append(_check(f"K_{n} on {basis}", lambda n=n, b=basis: _k_text(n, b) == K_GOLDEN[n][b]))
    out.append(_check("kappa to weight 3 termwise",
                      lambda: operad.kappa_series(3).terms == KAPPA3_GOLDEN))
    out.append(_check("kappa to weight 2 text", lambda: str(operad.kappa_series(2)) == KAPPA2_TEXT))
    out.append(_check("S_1..S_4 on the K alphabet",
                      lambda: all(nsym.s_in_K(n) == S_IN_K_GOLDEN[n] for n in range(1, 5))))
    out.append(_check("S_1..S_4 back-substituted",
                      lambda: all(nsym.substitute_K(nsym.s_in_K(n), n).homogeneous(n) == nsym.S(n)
                                  for n in range(1, 5))))
    return out


# --- noncommutative symmetric functions -----------------------------------------------

def nsym_suite(weight: int) -> list[Check]:
    n = weight

    def routes_agree():
        ref = nsym.cumulant_K(n, "solve")
        return all(nsym.cumulant_K(n, meth) == ref for meth in nsym.CUMULANT_METHODS)

    def omega_route():
        g = nsym.lagrange_g(n)
        return all(nsym.cumulant_K(n).homogeneous(k) == -nsym.minus_A(nsym.omega(g.homogeneous(k - 1)))
                   for k in range(1, n + 1))

    def antipode_lambda():
        k = nsym.cumulant_K(n)
        return all(nsym.antipode(nsym.L(d), n) * (-1) ** d == k.homogeneous(d) for d in range(1, n + 1))

    def g_from_ndpf():
        return all(nsym.lagrange_g(d).homogeneous(d) == nsym.lagrange_g_ndpf(d) for d in range(n + 1))

    return [
        _check(f"three cumulant routes agree to weight {n}", routes_agree),
        _check(f"project_to_nsym(kappa) = K to weight {n}",
               lambda: operad.project_to_nsym(operad.kappa_series(n)) == nsym.cumulant_K(n)),
        _check(f"K_n = -(Omega g_(n-1))(-A) to weight {n}", omega_route),
        _check(f"(-1)^n antipode(Lambda_n) = K_n to weight {n}", antipode_lambda),
        _check(f"g_n as a sum over NDPF_n to weight {n}", g_from_ndpf),
        _check(f"S_n in K back-substitutes to weight {n}",
               lambda: all(nsym.substitute_K(nsym.s_in_K(d), d).homogeneous(d) == nsym.S(d)
                           for d in range(1, n + 1))),
    ]


# --- operad group ------------------------------------------------------------------------

def random_triples(count: int, weight: int, seed: int = 0) -> tuple[int, int]:
    """Number of random triples passing ``(f -| g) |- g = f o g`` and the dipterous law."""
    rng = random.Random(seed)
    ok_vdash = ok_dipterous = 0
    for _ in range(count):
        f, g, h = (operad.random_group_element(weight, rng, density=0.5) for _ in range(3))
        fg = operad.dashv(f, g)
        ok_vdash += operad.vdash(fg, g) == operad.compose(f, g)
        ok_dipterous += operad.dashv(fg, h) == operad.dashv(f, operad.compose(g, h))
    return ok_vdash, ok_dipterous


def operad_suite(weight: int, comp_weight: int | None = None, triples: int = 100,
                 triple_weight: int = 6, inverse_weight: int | None = None) -> list[Check]:
    comp_weight = weight if comp_weight is None else comp_weight
    inverse_weight = min(weight, 8) if inverse_weight is None else inverse_weight
    n = weight
    triple_weight = min(triple_weight, weight)
    counts: dict[str, tuple[int, int]] = {}

    def triple(i: int) -> bool:
        if "r" not in counts:
            counts["r"] = random_triples(triples, triple_weight)
        return counts["r"][i] == triples

    k = inverse_weight
    return [
        _check(f"f_c o g_c = leaf (weight {comp_weight})",
               lambda: operad.compose(operad.corolla_series(comp_weight), operad.g_c(comp_weight))
               == operad.leaf_series(comp_weight)),
        _check(f"kappa -| f_c = f_c (weight {n})",
               lambda: operad.dashv(operad.kappa_series(n), operad.corolla_series(n)) == operad.corolla_series(n)),
        _check(f"(f -| g) |- g = f o g on {triples} random triples (weight {triple_weight})", lambda: triple(0)),
        _check(f"(f -| g) -| h = f -| (g o h) on {triples} random triples (weight {triple_weight})",
               lambda: triple(1)),
        _check(f"comp_inverse(f_c) = g_c (weight {k})",
               lambda: operad.comp_inverse(operad.corolla_series(k)) == operad.g_c(k)),
        _check(f"r_transform(f_c) = kappa = vdash_inverse(g_c) (weight {k})",
               lambda: operad.r_transform(operad.corolla_series(k)) == operad.kappa_series(k)
               == operad.vdash_inverse(operad.g_c(k))),
        _check(f"dashv_fixpoint(f_c) = LDST series (weight {k})",
               lambda: operad.dashv_fixpoint(operad.corolla_series(k)) == operad.ldst_series(k)),
    ]


# --- Hopf algebras ------------------------------------------------------------------------

LEFT_COMB = (1, 1, 0, 0, 0)


def left_comb_coproduct() -> dict:
    t = hopf.Decorated(LEFT_COMB)
    return {
        ((t,), hopf.UNIT): 1,
        ((hopf.Decorated((1, 0, 0)),), (hopf.Decorated((1, 0, 0)),)): 1,
        (hopf.UNIT, (t,)): 1,
    }


def _character_roundtrip(n: int) -> bool:
    phi = hopf.moment_character()
    kappa = hopf.extract_cumulant(phi)
    for d in range(1, n + 1):
        letters = hopf.standard_letters(d)
        for t in trees.enumerate_words("all", d):
            dec = hopf.Decorated(t, letters)
            if kappa((dec,)) != hopf.prime_tree_cumulant(dec):
                return False
    solved = hopf.solve_character(kappa)
    return all(solved((hopf.Decorated(t, hopf.standard_letters(d)),)) == phi((hopf.Decorated(t, hopf.standard_letters(d)),))
               for d in range(1, n + 1) for t in trees.enumerate_words("all", d))


def _iota_morphism(n: int) -> bool:
    for d in range(1, n + 1):
        w = hopf.standard_letters(d)
        x = hopf.iota(w)
        if hopf.iota_tensor(hopf.efp_coproduct(w)) != hopf.coproduct_of_sum(x):
            return False
        if hopf.iota_tensor(hopf.efp_coproduct(w, "prec")) != hopf.coproduct_of_sum(x, "prec"):
            return False
    return True


def _efp_agreement(n: int) -> bool:
    kappa = hopf.extract_cumulant(hopf.moment_character())
    k = hopf.efp_cumulant()
    for d in range(1, n + 1):
        w = hopf.standard_letters(d)
        total = 0
        for f, c in hopf.iota(w).items():
            total = total + c * kappa(f)
        if total != k(w) or k(w) != cumulants.speicher_kappa(d):
            return False
    return True


def hopf_suite(weight: int, forest_weight: int | None = None, iota_length: int | None = None,
               efp_length: int | None = None) -> list[Check]:
    fw = min(weight, 5) if forest_weight is None else forest_weight
    il = min(weight, 4) if iota_length is None else iota_length
    el = min(weight, 5) if efp_length is None else efp_length
    forests = hopf.forests_up_to(fw)
    return [
        _check(f"coassociativity on all forests of weight <= {fw}",
               lambda: all(hopf.is_coassociative_at(f) for f in forests)),
        _check(f"codendriform axioms on all forests of weight <= {fw}",
               lambda: all(all(hopf.codendriform_axioms(f)) for f in forests)),
        _check(f"codendriform axioms on decorated forests of weight <= {fw}",
               lambda: all(all(hopf.codendriform_axioms(f)) for f in hopf.forests_up_to(fw, True))),
        _check("coproduct of the weight-2 left comb",
               lambda: hopf.coproduct(hopf.as_forest(LEFT_COMB)) == left_comb_coproduct()),
        _check(f"character equation solved and inverted (weight {weight})", lambda: _character_roundtrip(weight)),
        _check(f"iota is a coalgebra and prec-coalgebra morphism (length {il})", lambda: _iota_morphism(il)),
        _check(f"word cumulants equal tree cumulants through iota (length {el})", lambda: _efp_agreement(el)),
    ]


# --- Speicher equivalence --------------------------------------------------------------------

KREWERAS_EXAMPLES = (
    ("1,3,4|2|5,7|6|8", "1,2|3|4,7,8|5,6"),
    ("1,2|3|4,6|5", "1|2,3,6|4,5"),
)


def _kreweras_examples() -> bool:
    return all(ncpart.format_partition(ncpart.kreweras(ncpart.parse_partition(a))) == b
               for a, b in KREWERAS_EXAMPLES)


def _order_reversal(n: int) -> bool:
    parts = ncpart.enumerate_nc(n)
    comp = {p: ncpart.kreweras(p) for p in parts}
    return all(ncpart.leq(p, q) == ncpart.leq(comp[q], comp[p]) for p in parts for q in parts)


def _moebius_identities(n: int) -> bool:
    zero, one = ncpart.bottom(n), ncpart.top(n)
    return all(
        ncpart.moebius(zero, p) == ncpart.moebius_closed(p) == ncpart.moebius(ncpart.kreweras(p), one)
        for p in ncpart.enumerate_nc(n)
    )


def _sectors_are_kreweras(n: int) -> bool:
    return all(
        ncpart.sector_partition(t)
        == ncpart.kreweras(ncpart.arrangement_to_partition(ncpart.tree_to_arrangement(t)))
        for t in trees.enumerate_words("prime", n)
    )


def speicher_suite(weight: int, moment_weight: int | None = None) -> list[Check]:
    n = min(weight, 7)
    mw = min(weight, 6) if moment_weight is None else moment_weight
    return [
        _check(f"prime-tree kappa = Moebius kappa, n <= {n}",
               lambda: all(cumulants.kappa_eval(d, "scalar") == cumulants.speicher_kappa(d) for d in range(1, n + 1))),
        _check(f"moments from cumulants, n <= {mw}",
               lambda: all(cumulants.moments_from_kappa(d) == cumulants.moment(cumulants.standard_letters(d))
                           for d in range(1, mw + 1))),
        _check("Kreweras complement examples", _kreweras_examples),
        _check(f"Kreweras reverses the order, n <= {n}", lambda: all(_order_reversal(d) for d in range(1, n + 1))),
        _check(f"mu(0,pi): closed form = recursion = mu(K(pi),1), n <= {n}",
               lambda: all(_moebius_identities(d) for d in range(1, n + 1))),
        _check(f"sector partition = Kreweras of the arrangement partition, n <= {n}",
               lambda: all(_sectors_are_kreweras(d) for d in range(1, n + 1))),
    ]


# --- cluster property ---------------------------------------------------------------------

def _involution_ok(j: int, k: int) -> bool:
    letters = cumulants.standard_letters(j + k)
    moment_of = cumulants.factored_moment(j)
    for t in trees.enumerate_words("prime", j + k):
        u = cumulants.cluster_involution(t, j, k)
        if u == t or not trees.is_prime(u) or cumulants.cluster_involution(u, j, k) != t:
            return False
        if abs(trees.internal_count(u) - trees.internal_count(t)) != 1:
            return False
        if cumulants.eval_tree(t, letters, "scalar", moment_of) != cumulants.eval_tree(u, letters, "scalar", moment_of):
            return False
    return True


def cluster_suite(weight: int) -> list[Check]:
    pairs = [(j, s - j) for s in range(2, weight + 1) for j in range(1, s)]
    return [
        _check(f"involution is fixed-point-free, sign-reversing and value-preserving, j+k <= {weight}",
               lambda: all(_involution_ok(j, k) for j, k in pairs)),
        _check(f"mixed cumulants vanish under factored moments, j+k <= {weight}",
               lambda: all(cumulants.mixed_kappa_factored(j, k) == 0 for j, k in pairs)),
    ]


# --- classical layer -----------------------------------------------------------------------

UNSIGNED_3 = m(1) ** 3 * 2 + m(2) * m(1) * 3 + m(3)
# Derived from the tree sum, Moebius inversion and the known kappa_4.
UNSIGNED_4 = m(1) ** 4 * 5 + m(2) * m(1) ** 2 * 10 + m(2) ** 2 * 2 + m(3) * m(1) * 4 + m(4)
# Reference form expected verbatim; its m2m1^2 and m3m1 coefficients disagree with UNSIGNED_4.
UNSIGNED_4_PRINTED = m(1) ** 4 * 5 + m(2) * m(1) ** 2 * 6 + m(2) ** 2 * 2 + m(3) * m(1) * 8 + m(4)


def random_unit_slope(N: int, rng: random.Random) -> symfun.PowerSeries:
    coeffs = [0, Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 2, 3]))]
    coeffs += [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(N - 1)]
    return symfun.PowerSeries(coeffs, N)


def _revert_roundtrip(N: int, samples: int = 10, seed: int = 0) -> bool:
    rng = random.Random(seed)
    t = symfun.PowerSeries.t(N)
    for _ in range(samples):
        F = random_unit_slope(N, rng)
        G = symfun.revert(F)
        if symfun.revert(G) != F or F.compose(G) != t or G != symfun.revert_lagrange(F):
            return False
    return True


def _triangle(n: int) -> bool:
    ks = symfun.classical_cumulants(n)
    for d in range(1, n + 1):
        scalar = cumulants.univariate(cumulants.speicher_kappa(d))
        tree = cumulants.univariate_kappa(d)
        nc = nsym.specialize(nsym.cumulant_K(d).homogeneous(d), m)
        if not (ks[d - 1] == scalar == tree == nc):
            return False
    return True


def classical_suite(weight: int) -> list[Check]:
    n = max(weight, 2)
    ks = lambda: symfun.classical_cumulants(n)  # noqa: E731
    return [
        _check("unsigned polynomial n=3", lambda: cumulants.unsigned_polynomial(3) == UNSIGNED_3),
        _check("unsigned polynomial n=4 (derived)", lambda: cumulants.unsigned_polynomial(4) == UNSIGNED_4),
        _check(f"unsigned polynomial = |k_n|, n <= {n}",
               lambda: all(cumulants.unsigned_polynomial(d) == k.unsigned() for d, k in enumerate(ks(), 1))),
        _check(f"k_n = (-1)^n e_n*, n <= {n}",
               lambda: all(k == symfun.e_star(d) * (-1) ** d for d, k in enumerate(ks(), 1))),
        _check(f"h_n* by reversion = Lagrange formula, n <= {n}",
               lambda: all(symfun.h_star(d) == symfun.h_star_lagrange(d) for d in range(n + 1))),
        _check(f"star is an involution on h_n, n <= {n}",
               lambda: all(symfun.star(symfun.h_star(d)) == m(d) for d in range(n + 1))),
        _check(f"closed formula for -e_n* matches reversion, 2 <= n <= {n}",
               lambda: all(symfun.estar_formula(d).to_h_poly() == -symfun.e_star(d) for d in range(2, n + 1))),
        _check("reversion round-trip to order 8", lambda: _revert_roundtrip(8)),
        _check(f"classical = scalar tree = Moebius = NSym character, n <= {n}", lambda: _triangle(n)),
    ]


SUITES: dict[str, Callable[[int], list[Check]]] = {
    "counting": counting,
    "goldens": goldens,
    "nsym": nsym_suite,
    "operad": operad_suite,
    "hopf": hopf_suite,
    "speicher": speicher_suite,
    "cluster": cluster_suite,
    "classical": classical_suite,
}


def run_suite(name: str, weight: int) -> list[Check]:
    if name == "all":
        return [c for suite in SUITES.values() for c in suite(weight)]
    try:
        return SUITES[name](weight)
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; expected all or one of {sorted(SUITES)}") from None
