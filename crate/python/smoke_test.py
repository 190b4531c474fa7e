"""Smoke test for the pydunkl extension module."""

import math

import pydunkl


def main():
    a2 = pydunkl.RootSystem("A2", "1")
    assert a2.dim == 3 and a2.order == 6, (a2.dim, a2.order)
    assert a2.gamma == "3"
    assert a2.info()["roots"] == 6

    b2 = pydunkl.RootSystem("B2", "1/2,1")
    assert b2.pair("x1", "x1") == b2.pair("x2", "x2")
    print("B2 T(e1) x1^2 =", b2.apply("T(e1)", "x1^2"))
    print("B2 V_k x1^2  =", b2.intertwine("x1^2"))

    a1 = pydunkl.RootSystem("A1", "1/2")
    # E_k(x, 0) = 1
    assert abs(a1.kernel([0.7], [0.0]) - 1) < 1e-14
    # E_0(x, y) = e^{xy}
    a1_0 = pydunkl.RootSystem("A1", "0")
    assert abs(a1_0.kernel([0.5], [1.2]) - math.exp(0.6)) < 1e-12

    nodes, weights = a1.quadrature(30)
    assert abs(sum(weights) - a1.c_k()) < 1e-10 * a1.c_k()

    phi, norm, h = a1.hermite([2])
    print("A1 Hermite nu=2:", phi, "|", norm, "|", h)

    assert a1.heat_kernel(1.0, 0.3, 0.4) > 0
    value, boundary = a1.transform(0.8)
    assert abs(value.real - math.exp(-0.32)) < 1e-8, value

    rows = a1.ray_probe(1.0, 1.0, [50.0, 100.0])
    assert len(rows) == 2

    try:
        pydunkl.RootSystem("A2", "-1")
    except ValueError as e:
        print("rejected:", e)
    else:
        raise AssertionError("negative k accepted")

    report = pydunkl.run_verify("operators", group="A2", k="1")
    assert report["pass"], report
    print("smoke test passed")


if __name__ == "__main__":
    main()
