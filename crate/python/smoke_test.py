"""Smoke test for the qinterp Python extension.

Build and install first:  pip install --no-build-isolation ./crates/py
"""

from fractions import Fraction

import qinterp


def main():
    sym = qinterp.Category(q=2)
    assert sym.hom_dim(1, 1) == 5
    assert sym.hom_dim(1, 2) == 16
    assert sym.hom_dim(2, 2) == 67

    # ev ∘ δ is the dimension t^d; scalars use the wire format p(t)/q(t)
    dims = ["1/1", "(t)/1", "(t^2)/1"]
    for d in range(3):
        loop = sym.compose(sym.ev(d), sym.delta(d))
        assert sym.trace(sym.identity(d)) == dims[d]
        assert loop == sym.identity(0).scale(dims[d])

    for f in sym.hom_basis(1, 1):
        assert qinterp.Morphism.from_json(f.to_json()) == f

    # primitive idempotents sum to the identity
    idem = sym.idempotents(2)
    total = idem[0]
    for e in idem[1:]:
        total = total + e
    assert total == sym.identity(2)

    assert qinterp.delta_determinant(2, 1) == "t-1"

    # semisimple away from powers of q, not at t = 2
    assert qinterp.Category(q=2, t=5).radical(1) == []
    assert qinterp.Category(q=2, t="3/2").radical(2) == []
    assert len(qinterp.Category(q=2, t=2).radical(1)) == 1
    assert qinterp.Category(q=2, t=5).center(2)["center_dim"] == 5

    lat = qinterp.Lattice(2, 3)
    assert len(lat) == 16
    assert lat.mobius(0, len(lat) - 1) == -8

    spec = qinterp.Specializer(2, 1)
    cat = spec.category()
    m = spec.matrix(cat.identity(2))
    assert len(m) == 4 and all(Fraction(m[i][j]) == (i == j) for i in range(4) for j in range(4))
    report = spec.quotient_check(1, 1, samples=10)
    assert report["match"] and report["radical_killed"]

    st = qinterp.selftest(5)
    assert st["failed"] == 0, st

    try:
        sym.compose(sym.identity(1), sym.identity(2))
    except ValueError:
        pass
    else:
        raise AssertionError("mismatched composition accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
