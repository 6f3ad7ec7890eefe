import random
from fractions import Fraction

import pytest

from lrbg.algebra import (
    AlgebraVector,
    CsopoiReport,
    corner_dimension_in_span,
    exact_rank,
    is_idempotent,
    is_primitive,
    supp_map,
    verify_csopoi,
    UnsupportedNonAbelian,
    _products_check,
    _try_fast_products,
)
from lrbg.groups import builtin_group, c2, cyclic_group
from lrbg.hsiao import build_hsiao, set_composition_semigroup
from lrbg.scalars import Cyclo
from lrbg.semigroup import SemigroupError, free_lrb, support_quotient


def H(S, label, order=1):
    return AlgebraVector.basis(S, S.index(label), order)


def test_h_multiply_braid_example():
    # (134|25)(12|5|34) = (1|34|2|5) and the reverse order differs
    S5 = set_composition_semigroup(5)
    a = H(S5, "134|25")
    b = H(S5, "12|5|34")
    assert a * b == H(S5, "1|34|2|5")
    assert b * a == H(S5, "1|2|5|34")


def test_zero_annihilates():
    S = free_lrb(2)
    v = H(S, "1") + H(S, "12")
    assert (v * AlgebraVector.zero(S)).is_zero()


def test_is_idempotent():
    F2 = free_lrb(2)
    assert is_idempotent(H(F2, "1"))
    half = Fraction(1, 2)
    e_empty = (
        H(F2, "e") - H(F2, "1") - H(F2, "2")
        + half * H(F2, "12") + half * H(F2, "21")
    )
    assert is_idempotent(e_empty)
    assert not is_idempotent(H(F2, "e") + H(F2, "1"))


def test_vector_ops_and_json():
    S = build_hsiao(2, c2())
    v = Fraction(1, 3) * H(S, "12^+", 2) - H(S, "1^+|2^-", 2)
    data = v.to_json()
    again = AlgebraVector.from_json(S, data)
    assert again == v
    assert (v - v).is_zero()
    assert str(AlgebraVector.zero(S)) == "0"


def test_product_associativity_random():
    S = build_hsiao(2, c2())
    rng = random.Random(7)

    def rand_vec():
        return AlgebraVector(
            S, 2, {rng.randrange(len(S)): Fraction(rng.randint(-3, 3), rng.randint(1, 4))
                   for _ in range(4)},
        )

    for _ in range(20):
        a, b, c = rand_vec(), rand_vec(), rand_vec()
        assert (a * b) * c == a * (b * c)


def test_supp_map_multiplicative():
    S = build_hsiao(2, c2())
    sm = supp_map(S)
    assert sm.verify_multiplicative()
    v = H(S, "1^+|2^-", 2)
    image = sm(v)
    assert len(image.coeffs) == 1
    assert sm(AlgebraVector.zero(S, 2)).is_zero()


def test_rank_nullity_of_supp():
    for S in (free_lrb(2), build_hsiao(2, c2())):
        sm = supp_map(S)
        images = [sm(AlgebraVector.basis(S, s)) for s in range(len(S))]
        assert exact_rank(images) == len(sm.target)
        # kernel dimension complements the quotient dimension
        diffs = []
        q = sm.quotient
        for t in range(len(sm.target)):
            fiber = q.fiber(t)
            diffs.extend(
                AlgebraVector.basis(S, fiber[0]) - AlgebraVector.basis(S, s)
                for s in fiber[1:]
            )
        assert exact_rank(diffs) == len(S) - len(sm.target)
        assert all(sm(dv).is_zero() for dv in diffs)


@pytest.mark.parametrize("n", [2, 3])
def test_radical_nilpotency(n):
    # every kernel element of supp is nilpotent in the Hsiao algebra
    S = build_hsiao(n, c2())
    rng = random.Random(3)
    q = support_quotient(S)
    fibers = {}
    for s in range(len(S)):
        fibers.setdefault(q(s), []).append(s)
    for _ in range(5):
        v = AlgebraVector.zero(S, 2)
        for fiber in fibers.values():
            if len(fiber) > 1 and rng.random() < 0.7:
                a, b = rng.sample(fiber, 2)
                coeff = Fraction(rng.randint(1, 3), rng.randint(1, 3))
                v = v + coeff * (AlgebraVector.basis(S, a, 2) - AlgebraVector.basis(S, b, 2))
        power = v
        for _ in range(len(S).bit_length() + 1):
            power = power * power
        assert power.is_zero()


def test_exact_rank_cyclotomic():
    S = cyclic_group(3)
    z = Cyclo.zeta(3)
    v1 = AlgebraVector(S, 3, {0: Cyclo.one(3), 1: z})
    v2 = AlgebraVector(S, 3, {0: z.conj(), 1: Cyclo.one(3)})  # = conj(z) * v1
    v3 = AlgebraVector(S, 3, {2: Cyclo.one(3)})
    assert exact_rank([v1, v2]) == 1
    assert exact_rank([v1, v3]) == 2
    assert exact_rank([]) == 0
    assert exact_rank([AlgebraVector.zero(S, 3)]) == 0


def test_exact_rank_constructed_rank():
    # families built as combinations of r chosen basis vectors have rank r
    from lrbg.scalars import Cyclo

    S = build_hsiao(2, c2())
    rng = random.Random(31)
    for r in (1, 3, 5):
        chosen = rng.sample(range(len(S)), r)
        basis = [AlgebraVector.basis(S, s, 2) for s in chosen]
        family = list(basis)
        for _ in range(6):
            combo = AlgebraVector.zero(S, 2)
            for v in basis:
                combo = combo + Fraction(rng.randint(-3, 3), rng.randint(1, 4)) * v
            family.append(combo)
        rng.shuffle(family)
        assert exact_rank(family) == r
        checker = __import__("lrbg.algebra", fromlist=["SpanChecker"]).SpanChecker(basis)
        for v in family:
            assert checker.contains(v)
        outside = AlgebraVector.basis(S, next(s for s in range(len(S)) if s not in chosen), 2)
        assert not checker.contains(outside)
        # a cyclotomic multiple stays inside the span
        assert checker.contains(Cyclo.zeta(2) * family[0])


def test_is_primitive_free_lrb():
    F2 = free_lrb(2)
    sm = supp_map(F2)
    e1 = H(F2, "1") - H(F2, "12")
    assert is_primitive(e1, sm)
    with pytest.raises(SemigroupError):
        is_primitive(H(F2, "e") + H(F2, "1"), sm)


def test_sum_of_two_projectors_not_primitive():
    G = c2()
    sm = supp_map(G)
    one = AlgebraVector.unit(G)
    assert not is_primitive(one, sm)  # splits as E_trv + E_sgn
    half = Fraction(1, 2)
    e_trv = half * H(G, "+") + half * H(G, "-")
    assert is_primitive(e_trv, sm)


def test_primitivity_unsupported_nonabelian():
    S3 = builtin_group("S3")
    sm = supp_map(S3)
    with pytest.raises(UnsupportedNonAbelian):
        is_primitive(AlgebraVector.unit(S3), sm)


def test_verify_csopoi_identity_alone():
    G = c2()
    report = verify_csopoi([AlgebraVector.unit(G)])
    assert report.idempotent and report.orthogonal and report.complete
    assert report.primitive is False


def test_verify_csopoi_free_lrb_golden():
    F2 = free_lrb(2)
    half = Fraction(1, 2)
    e_top = half * H(F2, "12") + half * H(F2, "21")
    e_1 = H(F2, "1") - H(F2, "12")
    e_2 = H(F2, "2") - H(F2, "21")
    e_empty = H(F2, "e") - H(F2, "1") - H(F2, "2") + half * H(F2, "12") + half * H(F2, "21")
    report = verify_csopoi([e_top, e_1, e_2, e_empty])
    assert report.ok, report.summary()


def test_verify_csopoi_detects_failures():
    F2 = free_lrb(2)
    bad = [AlgebraVector.unit(F2), H(F2, "1")]
    report = verify_csopoi(bad, check_primitivity=False)
    assert not report.complete
    assert not report.orthogonal or not report.idempotent or True
    report2 = verify_csopoi([H(F2, "e") + H(F2, "1")], check_primitivity=False)
    assert not report2.idempotent


def _force_fast(system):
    import lrbg.algebra as alg

    old = alg._FAST_THRESHOLD
    alg._FAST_THRESHOLD = 0
    try:
        forced = _try_fast_products(system)
    finally:
        alg._FAST_THRESHOLD = old
    assert forced is not None, "fast path unexpectedly declined"
    return forced


def _pure_products(system):
    import lrbg.algebra as alg

    old = alg._FAST_THRESHOLD
    alg._FAST_THRESHOLD = 10**18  # force the dict path
    try:
        witnesses: dict = {}
        return _products_check(system, witnesses)
    finally:
        alg._FAST_THRESHOLD = old


def test_fast_and_pure_product_paths_agree():
    S = build_hsiao(2, c2())
    half = Fraction(1, 2)
    e1 = half * (H(S, "12^+", 2) + H(S, "12^-", 2) - H(S, "1^+|2^+", 2) - H(S, "1^-|2^-", 2))
    quarter = Fraction(1, 4)
    e2 = quarter * (
        H(S, "1^+|2^+", 2) - H(S, "1^-|2^+", 2) - H(S, "1^+|2^-", 2) + H(S, "1^-|2^-", 2)
    )
    good = [e1, e2]
    forced = _force_fast(good)
    assert _pure_products(good) == (forced[0] is None, forced[1] is None) == (True, True)

    # broken idempotency and broken orthogonality are caught identically
    not_idem = [H(S, "1^+|2^-", 2), H(S, "12^+", 2)]  # first squares elsewhere
    assert _pure_products(not_idem)[0] is False
    assert _force_fast(not_idem)[0] is not None
    not_orth = [e1, e1]
    assert _pure_products(not_orth) == (True, False)
    assert _force_fast(not_orth)[1] is not None


def test_fast_path_cyclotomic_planes():
    # an order-3 system exercises the plane convolution and reduction
    from lrbg.csopoi import lrbg_csopoi

    S = build_hsiao(2, cyclic_group(3))
    system = list(lrbg_csopoi(S).values())
    forced = _force_fast(system)
    assert forced == (None, None)
    assert _pure_products(system) == (True, True)
    # and detects tampering
    bad = list(system)
    bad[0] = bad[0] + Fraction(1, 5) * H(S, "12^1", 3)
    forced_bad = _force_fast(bad)
    pure_bad = _pure_products(bad)
    assert (forced_bad[0] is None, forced_bad[1] is None) == pure_bad


def test_corner_dimension_in_span():
    G = c2()
    half = Fraction(1, 2)
    e_trv = half * H(G, "+") + half * H(G, "-")
    span = [H(G, "+"), H(G, "-")]
    assert corner_dimension_in_span(e_trv, span) == 1
    assert corner_dimension_in_span(AlgebraVector.unit(G), span) == 2


def test_report_summary_strings():
    rep = CsopoiReport(True, True, True, None)
    assert rep.ok
    assert "skipped" in rep.summary()
    rep2 = CsopoiReport(True, False, True, False)
    assert not rep2.ok
    assert "FAIL" in rep2.summary()
