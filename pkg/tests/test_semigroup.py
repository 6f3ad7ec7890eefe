import pytest

from lrbg.groups import (
    builtin_group,
    c2,
    cyclic_group,
    direct_product,
    group_exponent,
    is_abelian,
    is_group,
    symmetric_group,
    wreath_group,
)
from lrbg.semigroup import (
    FiniteSemigroup,
    NotAssociative,
    SemigroupError,
    check_axioms,
    free_lrb,
    idempotent_subsemigroup,
    lambda_morphism,
    leq,
    maximal_subgroup,
    related,
    support_quotient,
)


def test_construction_rejects_non_associative():
    with pytest.raises(NotAssociative):
        FiniteSemigroup(["a", "b"], [[0, 1], [0, 0]])


def test_identity_detection_and_validation():
    G = cyclic_group(3)
    assert G.identity == 0
    with pytest.raises(SemigroupError):
        FiniteSemigroup(G.labels, G.table, identity=1, check=False)


def test_omega_in_groups():
    G = cyclic_group(3)
    for s in range(3):
        assert G.omega(s) == G.identity
    assert G.element_order(1) == 3


def test_omega_appendix(appendix_semigroup):
    S = appendix_semigroup
    assert S.omega(S.index("s")) == S.index("x")
    assert maximal_subgroup(S, S.index("x")).members == (0, 1)


def test_omega_in_hsiao_like_wreath():
    from lrbg.hsiao import build_hsiao

    S = build_hsiao(2, c2())
    minus = S.index("12^-")
    plus = S.index("12^+")
    assert S.omega(minus) == plus


def test_check_axioms_appendix(appendix_semigroup):
    S = appendix_semigroup
    assert check_axioms(S, "LRBG").ok
    report = check_axioms(S, "strict-LRBG")
    assert not report.ok
    assert report.witness == ("s", "y")
    assert not check_axioms(S, "LRB").ok


def test_check_axioms_lrb():
    from lrbg.hsiao import set_composition_semigroup

    sigma3 = set_composition_semigroup(3)
    assert len(sigma3) == 13
    assert check_axioms(sigma3, "LRB").ok
    assert check_axioms(free_lrb(2), "LRB").ok


def test_central_idempotents_kind(appendix_semigroup):
    T = support_quotient(appendix_semigroup).target
    assert check_axioms(T, "central-idempotents").ok
    assert not check_axioms(appendix_semigroup, "central-idempotents").ok


def test_idempotent_subsemigroup(appendix_semigroup):
    E, embed = idempotent_subsemigroup(appendix_semigroup)
    assert sorted(E.labels) == ["x", "y", "z"]
    assert check_axioms(E, "LRB").ok
    # of any group: the one-element semigroup
    E2, _ = idempotent_subsemigroup(cyclic_group(4))
    assert len(E2) == 1


def test_idempotents_of_hsiao_are_set_compositions():
    from lrbg.hsiao import build_hsiao

    S = build_hsiao(2, c2())
    E, _ = idempotent_subsemigroup(S)
    assert len(E) == 3  # Sigma_2


def test_leq_hsiao_fig2():
    from lrbg.hsiao import build_hsiao

    S = build_hsiao(2, c2())
    i = S.index
    assert leq(S, i("12^+"), i("1^+|2^+"))
    assert leq(S, i("12^+"), i("2^+|1^+"))
    assert leq(S, i("12^-"), i("1^-|2^-"))
    assert not leq(S, i("1^+|2^-"), i("12^+"))
    assert not leq(S, i("12^+"), i("1^+|2^-"))
    for s in range(len(S)):
        assert leq(S, s, s)


def test_leq_is_partial_order():
    from lrbg.hsiao import build_hsiao

    for S in (build_hsiao(2, c2()), build_hsiao(2, cyclic_group(3)), build_hsiao(3, c2())):
        n = len(S)
        for s in range(n):
            assert leq(S, s, s)
            for t in range(n):
                if leq(S, s, t) and leq(S, t, s):
                    assert s == t
                for u in range(n):
                    if leq(S, s, t) and leq(S, t, u):
                        assert leq(S, s, u)


def test_support_quotient_sigma2():
    from lrbg.hsiao import set_composition_semigroup

    q = support_quotient(set_composition_semigroup(2))
    assert len(q.target) == 2  # partitions of {1,2}
    assert check_axioms(q.target, "central-idempotents").ok


def test_support_quotient_hsiao():
    from lrbg.hsiao import build_hsiao, build_hsiao_partitions

    S = build_hsiao(2, c2())
    q = support_quotient(S)
    assert len(q.target) == 6
    P = build_hsiao_partitions(2, c2())
    assert len(P) == 6
    assert check_axioms(q.target, "central-idempotents").ok


def test_support_quotient_free_lrb():
    q = support_quotient(free_lrb(2))
    # Boolean lattice on {1, 2}
    assert len(q.target) == 4
    assert all(q.target.is_idempotent(i) for i in range(4))


def test_cor_omega_product_compatibility(appendix_semigroup):
    # supp((st)^w) = supp(s^w) supp(t^w)
    from lrbg.hsiao import build_hsiao

    for S in (appendix_semigroup, build_hsiao(2, c2())):
        q = support_quotient(S)
        T = q.target
        for s in range(len(S)):
            for t in range(len(S)):
                lhs = q(S.omega(S.table[s][t]))
                rhs = T.table[q(S.omega(s))][q(S.omega(t))]
                assert lhs == rhs


def test_maximal_subgroups_hsiao():
    from lrbg.hsiao import build_hsiao

    S = build_hsiao(2, c2())
    G_top = maximal_subgroup(S, S.index("1^+|2^+"))
    assert len(G_top) == 4
    assert G_top.is_abelian()
    G_bottom = maximal_subgroup(S, S.index("12^+"))
    assert len(G_bottom) == 2
    # in an LRB every maximal subgroup is trivial
    F = free_lrb(2)
    for x in range(len(F)):
        assert len(maximal_subgroup(F, x)) == 1


def test_lambda_morphism_props(appendix_semigroup):
    from lrbg.hsiao import build_hsiao

    S = build_hsiao(2, c2())
    x = S.index("1^+|2^+")
    y = S.index("2^+|1^+")
    lam = lambda_morphism(S, y, x)
    assert lam[S.index("1^+|2^-")] == S.index("2^-|1^+")
    # with equal supports, lambda_{x,y} inverts lambda_{y,x}
    lam_back = lambda_morphism(S, x, y)
    for s, img in lam.items():
        assert lam_back[img] == s
    # identity on G_x
    lam_id = lambda_morphism(S, x, x)
    assert all(lam_id[s] == s for s in lam_id)


def test_lambda_connects_congruence(appendix_semigroup):
    from lrbg.hsiao import build_hsiao

    for S in (appendix_semigroup, build_hsiao(2, c2())):
        for s in range(len(S)):
            for t in range(len(S)):
                x, y = S.omega(s), S.omega(t)
                if related(S, s, t):
                    assert related(S, x, y)
                    assert S.table[y][s] == t
                elif related(S, x, y):
                    assert S.table[y][s] != t


def test_supp_restricted_to_subgroup_is_isomorphism():
    from lrbg.hsiao import build_hsiao

    S = build_hsiao(2, c2())
    q = support_quotient(S)
    for x in S.idempotents():
        G = maximal_subgroup(S, x)
        images = {q(s) for s in G}
        assert len(images) == len(G)
        for a in G:
            for b in G:
                assert q(S.table[a][b]) == q.target.table[q(a)][q(b)]


def test_strictness_iff_band_of_groups(appendix_semigroup, five_element_lrbag):
    from lrbg.hsiao import build_hsiao

    for S in (appendix_semigroup, five_element_lrbag, build_hsiao(2, c2())):
        strict = check_axioms(S, "strict-LRBG").ok
        bands = True
        for x in S.idempotents():
            for y in S.idempotents():
                Gx = maximal_subgroup(S, x).members
                Gy = maximal_subgroup(S, y).members
                targets = {S.omega(S.table[a][b]) for a in Gx for b in Gy}
                if len(targets) > 1:
                    bands = False
        assert strict == bands


def test_wreath_group_b2():
    B2 = wreath_group(2, c2())
    assert len(B2) == 8
    assert is_group(B2)
    assert not is_abelian(B2)
    assert group_exponent(B2) == 4


def test_free_lrb_sizes():
    assert len(free_lrb(1)) == 2
    assert len(free_lrb(2)) == 5
    assert len(free_lrb(3)) == 16


def test_builtin_groups():
    for name in ("trivial", "C2", "C3", "C4", "C2xC2", "S3"):
        G = builtin_group(name)
        assert is_group(G)
    assert not is_abelian(builtin_group("S3"))
    assert is_abelian(builtin_group("C2xC2"))
    assert group_exponent(builtin_group("C2xC2")) == 2
    with pytest.raises(SemigroupError):
        builtin_group("Q8")


def test_verify_isomorphism():
    from lrbg.semigroup import verify_isomorphism

    C2a = cyclic_group(2, labels=["1", "g"])
    C2b = FiniteSemigroup(["u", "v"], [[1, 0], [0, 1]], identity=1, check=False)
    assert verify_isomorphism(C2a, C2b, [1, 0])
    assert not verify_isomorphism(C2a, C2b, [0, 1])
    assert verify_isomorphism(C2a, C2b, {0: 1, 1: 0})
    assert not verify_isomorphism(C2a, cyclic_group(3), [0, 1])


def test_json_round_trip(appendix_semigroup):
    data = appendix_semigroup.to_json()
    again = FiniteSemigroup.from_json(data)
    assert again.labels == appendix_semigroup.labels
    assert again.table == appendix_semigroup.table
    assert again.identity == appendix_semigroup.identity


def test_s3_idempotent_table_sanity():
    S3 = symmetric_group(3)
    assert len(S3) == 6
    assert is_group(S3)
    D = direct_product(c2(), c2())
    assert group_exponent(D) == 2
