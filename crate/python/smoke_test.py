"""Smoke test for the pyoctgroup extension."""

import pyoctgroup as og


def main():
    alpha = og.generator("alpha")
    assert alpha.order() == 7
    assert alpha.is_octonion_automorphism()
    n2, n7 = og.generator("N2"), og.generator("N7")
    assert str(n2 * n7) == "(e1 -e1)(e2 -e2)(e6 -e6)(e7 -e7)"
    assert og.SignedPerm("(e1 -e5)(e3 -e7)") ** 2 == og.SignedPerm.identity(7)

    e1, e2 = og.Octonion("e1"), og.Octonion("e2")
    assert str(e1 * e2) == "e3"
    a, b = og.Octonion("1 + 2*e3 - e5"), og.Octonion("1/2*e1 + e7")
    assert (a.norm(), b.norm(), (a * b).norm()) == ("6", "5/4", "15/2")
    assert str(og.associator(a, a, b)) == "0"

    cat = og.Catalog()
    assert "2^3.PSL2(7)" in og.Catalog.group_names()
    assert cat.order("7:3") == 21
    table = cat.chartab("7:3")
    assert [r["degree"] for r in table["irreps"]] == [1, 1, 1, 3, 3]
    assert cat.tensor("2^3:7:3", "3_1", "3_2") == {"1": 1, "1_1": 1, "1_2": 1, "3_1": 1, "3_2": 1}
    branch = dict(cat.branch("PSL2(7)", "7:3"))
    assert branch["6"] == {"3_1": 1, "3_2": 1}
    claims = cat.verify("quaternion")
    assert claims and all(status == "pass" for _, status, _, _ in claims)
    try:
        cat.order("nope")
    except ValueError as err:
        assert "nope" in str(err)
    else:
        raise AssertionError("unknown group accepted")
    print("pyoctgroup smoke test ok")


if __name__ == "__main__":
    main()
