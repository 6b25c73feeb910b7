"""Smoke test for the extension module. Run after `maturin develop`:

    python crates/py/python/smoke_test.py
"""

import aqpath


def main():
    cube = aqpath.AugmentedCube(5)
    assert cube.dimension == 5
    assert cube.order() == 32
    assert len(cube.neighbors(0)) == 9
    assert ("h1", 16) in cube.labeled_neighbors(0)
    assert cube.to_binary(6) == "00110"

    assert [aqpath.target_count(n) for n in (4, 5, 6, 7)] == [4, 5, 7, 8]

    fam = aqpath.construct(6, (0, 0b011111, 0b000101))
    assert len(fam) == 7
    assert not fam.fallback
    assert fam.trace[0].startswith("trace: n=6 case=T1.2.1")
    assert aqpath.check_family(6, (0, 0b011111, 0b000101), fam.paths) == 7

    broken = [list(p) for p in fam.paths]
    broken[0] = broken[0][:-1]
    try:
        aqpath.check_family(6, (0, 0b011111, 0b000101), broken)
    except ValueError:
        pass
    else:
        raise AssertionError("broken family accepted")

    count, paths = aqpath.max_dpaths(4, (0, 3, 5))
    assert count == 4
    assert aqpath.check_family(4, (0, 3, 5), paths) == 4
    value, argmin = aqpath.pi3_exact(4)
    assert (value, argmin) == (4, (0, 3, 5))
    assert sorted(aqpath.common_neighbors(5, [0b00000, 0b01111, 0b10111])) == [
        0b00111,
        0b01000,
        0b10000,
        0b11111,
    ]
    print("smoke ok")


if __name__ == "__main__":
    main()
