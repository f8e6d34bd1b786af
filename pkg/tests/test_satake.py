import itertools
from fractions import Fraction as F

import pytest

from banach_hecke.cocycle import CocycleSpec
from banach_hecke.hecke import HeckeAlgebra
from banach_hecke.root_datum import RootDatum
from banach_hecke.satake import (
    CoefficientTable,
    InterpolatedSource,
    MissingCoefficient,
    NotInvariant,
    OracleSource,
    Satake,
    TableConflict,
    TableSource,
    evaluate,
    gl_symmetric_map,
)
from banach_hecke.scalars import FieldInvariants, LaurentPoly, NumericRing, RationalRing, SymbolicRing

Q = LaurentPoly.q_power(1)
ONE = LaurentPoly.const(1)


@pytest.fixture(scope="module")
def S2():
    return Satake(RootDatum.gl(2))


def test_transform_examples(S2):
    assert S2.transform_coefficients({(1, 1): ONE}) == {(1, 1): ONE}
    assert S2.transform_coefficients({(2, 0): ONE}) == {(2, 0): ONE, (1, 1): Q - 1}
    assert S2.transform_coefficients({(1, 0): ONE}) == {(1, 0): ONE}


def test_inverse_examples(S2):
    assert S2.inverse({(1, 1): ONE}) == {(1, 1): ONE}
    assert S2.inverse({(2, 0): ONE}) == {(2, 0): ONE, (1, 1): 1 - Q}


def test_round_trip(rng):
    fld = FieldInvariants(3)
    ring = RationalRing(fld)
    for datum in (RootDatum.gl(2), RootDatum.gl(3)):
        S = Satake(datum, (0,) * (datum.rank - 1) + (1,), ring, OracleSource(3))
        pts = [v for v in itertools.product(range(-1, 3), repeat=datum.rank) if datum.is_antidominant(v)]
        for _ in range(5):
            h = {mu: F(rng.randint(-3, 3), rng.randint(1, 2)) for mu in rng.sample(pts, 2)}
            h = {k: v for k, v in h.items() if v}
            assert S.inverse(S.transform(h)) == h


def test_inverse_rejects_non_invariant():
    S = Satake(RootDatum.gl(2))
    from banach_hecke.cocycle import GroupRingElt
    with pytest.raises(NotInvariant):
        S.inverse(GroupRingElt.monomial((1, 0), ONE))


def test_homomorphism_symbolic():
    d = RootDatum.gl(2)
    H = HeckeAlgebra(d)
    S = Satake(d)
    pts = [(1, 0), (1, 1), (2, 0), (0, -1)]
    for a, b in itertools.combinations_with_replacement(pts, 2):
        prod = H.spherical_coefficients(H.spherical_product(H.spherical_embed(a), H.spherical_embed(b)))
        assert S.transform(prod) == S.transform({a: ONE}) * S.transform({b: ONE})


def test_w_equivariance():
    fld = FieldInvariants(2)
    ring = RationalRing(fld)
    for datum, xi in ((RootDatum.gl(2), (0, 1)), (RootDatum.gl(3), (0, 1, 2))):
        S = Satake(datum, xi, ring, OracleSource(2))
        spec = CocycleSpec(datum, xi, fld)
        mu = (2,) + (0,) * (datum.rank - 1)
        for lam in S.lower_set(mu):
            base = S._pi(lam) * S.coeff(lam, mu)
            for w in datum.weyl_group:
                wl = w.act(lam)
                g = spec.gamma(w, lam)
                lhs = S._pi(wl) * S.coeff(wl, mu)
                rhs = ring.pi_power(g.a) * ring.q_power(g.b) * g.c * base
                assert lhs == rhs


def test_normalized_images_isometric():
    fld = FieldInvariants(2, 2, 1)
    ring = NumericRing(fld)
    for xi in ((0, 0), (0, 1), (0, 3)):
        S = Satake(RootDatum.gl(2), xi, ring, fld=fld)
        for mu in [(2, 0), (3, -1), (1, 0)]:
            img = S.normalized_image(mu)
            assert img[mu] == ring.one()
            assert all(c.valuation() >= 0 for c in img.values())
            assert S.spec.gauss_norm(S.spec.sigma_combination(img)) == 0


def test_pgl2_lift_and_tate_shape():
    fld = FieldInvariants(3)
    ring = NumericRing(fld)
    S = Satake(RootDatum.pgl2(), (1,), ring, fld=fld)
    assert S.coeff((-1,), (-2,)) == ring.zero()
    assert S.coeff((0,), (-2,)) == ring.const(2)
    g = S.spec.sigma_combination(S.normalized_image((-1,)))
    x = g
    for m in range(2, 5):
        x = x * g
        coeffs = S.spec.sigma_coefficients(x)
        assert coeffs[(-m,)] == ring.one()
        assert all(c.valuation() >= 0 for c in coeffs.values())


def test_symmetric_map_examples():
    fld = FieldInvariants(2)
    ring = NumericRing(fld)
    k = 2
    z1, z2 = ring.pi_power(1), ring.const(3)
    e1, e2 = gl_symmetric_map([z1, z2], (0, k), ring)
    assert e1 == z1 + z2
    assert e2 == ring.q_power(-1) * ring.pi_power(-k) * z1 * z2
    (v,) = gl_symmetric_map([z1], (4,), ring)
    assert v == ring.pi_power(-4) * z1
    sym = SymbolicRing()
    assert gl_symmetric_map([ONE] * 3, (0, 0, 0), sym) == (3 * ONE, 3 * Q.inverse(), Q.inverse() ** 3)
    with pytest.raises(ValueError):
        gl_symmetric_map([ONE] * 2, (0, 0), sym, RootDatum.pgl2())


def test_symmetric_map_is_sigma_evaluation():
    fld = FieldInvariants(3, 2, 1)
    ring = NumericRing(fld)
    xi = (0, 1, 3)
    datum = RootDatum.gl(3)
    spec = CocycleSpec(datum, xi, fld)
    raw = [ring.pi_power(1), ring.const(2), ring.pi_power(-3) * 5]
    zeta = [ring.q_power(i) * ring.pi_power(xi[i]) * raw[i] for i in range(3)]
    values = gl_symmetric_map(zeta, xi, ring, datum)
    for i in range(1, 4):
        lam = (1,) * i + (0,) * (3 - i)
        assert evaluate(spec.sigma(lam), raw, ring) == values[i - 1]


def test_table_io(tmp_path):
    path = tmp_path / "c.jsonl"
    src = InterpolatedSource(CoefficientTable.load(path), path)
    assert src((1, 1), (2, 0)) == Q - 1
    assert src((1, 1), (2, 0)) == Q - 1
    assert len(path.read_text().splitlines()) == 1
    table = CoefficientTable.load(path)
    assert TableSource(table)((1, 1), (2, 0)) == Q - 1
    with pytest.raises(MissingCoefficient):
        TableSource(table)((0, 2), (2, 0))
    with pytest.raises(TableConflict):
        table.add((1, 1), (2, 0), Q)
    path.write_text(path.read_text() + '{"lambda":[1,1],"mu":[2,0],"poly":["0","1"]}\n')
    with pytest.raises(TableConflict):
        CoefficientTable.load(path)


def test_missing_datum():
    custom = RootDatum.from_json({"type": "custom", "simple_roots": [[2]], "simple_coroots": [[1]],
                                  "positive_roots": [[2]], "positive_coroots": [[1]]})
    with pytest.raises(MissingCoefficient):
        Satake(custom).transform_coefficients({(-1,): ONE})
