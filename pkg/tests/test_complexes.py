import pytest
from fractions import Fraction

from finefill import (BARYCENTRIC, INT, MIDPOINT, RAT, Chain, H1Report,
                      boundary, homology_h1, l1_norm, parse_complex,
                      subdivide, validate, write_complex)
from finefill.errors import UnknownCellError, ValidationError

from instances import (CORPUS, double_traversal, tetrahedron, triangle_face,
                       triangle_graph)
from oracles import determinant_divisor_factors, rank_over_q


def test_validate_triangle_graph():
    cx = triangle_graph()
    assert len(cx.vertices) == 3 and len(cx.edges) == 3 and not cx.faces


def test_validate_rejects_open_walk():
    with pytest.raises(ValidationError) as err:
        validate("ab", [("e1", "a", "b"), ("e2", "b", "a")], [("f", [(1, "e1")])])
    assert any(code == "WALK_NOT_CLOSED" for code, _ in err.value.violations)


def test_validate_rejects_discontinuous_walk():
    with pytest.raises(ValidationError) as err:
        validate("abc",
                 [("e1", "a", "b"), ("e2", "b", "c"), ("e3", "c", "a"), ("d", "a", "c")],
                 [("f", [(1, "e1"), (1, "d"), (1, "e3")])])
    assert any(code == "WALK_DISCONTINUOUS" for code, _ in err.value.violations)


def test_validate_rejects_dangling_and_duplicates():
    with pytest.raises(ValidationError) as err:
        validate("aa", [("e", "a", "zz")])
    codes = {code for code, _ in err.value.violations}
    assert codes == {"DUPLICATE_ID", "DANGLING_REFERENCE"}


def test_double_traversal_is_valid():
    cx = double_traversal()
    assert boundary(cx, Chain(2, INT, {"f": 1})).coeffs == {"e": 2}


def test_boundary_examples():
    cx = triangle_face()
    df = boundary(cx, Chain(2, INT, {"f": 1}))
    assert df.coeffs == {"e1": 1, "e2": 1, "e3": 1}
    assert boundary(cx, df).is_zero()
    e = boundary(cx, Chain(1, INT, {"e1": 1}))
    assert e.coeffs == {"a": -1, "b": 1}
    with pytest.raises(UnknownCellError):
        boundary(cx, Chain(2, INT, {"nope": 1}))


def test_boundary_squared_vanishes_on_corpus():
    for _, build in CORPUS:
        cx = build()
        for f in cx.faces:
            assert boundary(cx, boundary(cx, Chain(2, INT, {f.id: 1}))).is_zero()


def test_l1_norm():
    assert l1_norm(Chain(1, INT, {})) == 0
    assert l1_norm(Chain(1, INT, {"e1": 2, "e2": -3})) == 5
    assert l1_norm(Chain(2, RAT, {"f": Fraction(1, 2)})) == Fraction(1, 2)


def test_norm_triangle_inequality_and_homogeneity():
    a = Chain(1, INT, {"e1": 2, "e2": -1})
    b = Chain(1, INT, {"e2": 4, "e3": 1})
    assert l1_norm(a.add(b)) <= l1_norm(a) + l1_norm(b)
    for r in (-3, -1, 0, 2, 5):
        assert l1_norm(a.scale(r)) == abs(r) * l1_norm(a)


def test_int_chain_rejects_fractions():
    with pytest.raises(ValueError):
        Chain(1, INT, {"e": Fraction(1, 2)})


def test_homology_tetrahedron():
    cx = tetrahedron()
    assert homology_h1(cx) == H1Report(0, ())
    # independent oracle: betti = (E - rank d1) - rank d2, torsion from
    # determinant divisors
    d1, d2 = cx.boundary_matrix_1(), cx.boundary_matrix_2()
    betti = (len(cx.edges) - rank_over_q(d1)) - rank_over_q(d2)
    torsion = tuple(f for f in determinant_divisor_factors(d2) if f > 1)
    assert homology_h1(cx) == H1Report(betti, torsion)


def test_homology_triangle_graph():
    assert homology_h1(triangle_graph()) == H1Report(1, ())


def test_homology_double_traversal():
    cx = double_traversal()
    assert homology_h1(cx) == H1Report(0, (2,))
    assert determinant_divisor_factors(cx.boundary_matrix_2()) == [2]


def test_homology_matches_oracle_on_corpus():
    for name, build in CORPUS:
        cx = build()
        d1, d2 = cx.boundary_matrix_1(), cx.boundary_matrix_2()
        betti = (len(cx.edges) - rank_over_q(d1)) - (rank_over_q(d2) if cx.faces else 0)
        torsion = tuple(f for f in determinant_divisor_factors(d2) if f > 1) if cx.faces else ()
        assert homology_h1(cx) == H1Report(betti, torsion), name


def test_midpoint_subdivision_counts():
    res = subdivide(triangle_graph(), MIDPOINT)
    assert len(res.complex.vertices) == 6 and len(res.complex.edges) == 6


def test_barycentric_face_counts():
    assert len(subdivide(triangle_face(), BARYCENTRIC).complex.faces) == 6
    # walk of length 2 gives 4 triangles
    res = subdivide(double_traversal(), BARYCENTRIC)
    assert len(res.complex.faces) == 4
    assert homology_h1(res.complex) == H1Report(0, (2,))


def test_subdivision_preserves_h1_on_corpus():
    for name, build in CORPUS:
        cx = build()
        h = homology_h1(cx)
        for mode in (MIDPOINT, BARYCENTRIC):
            sub = subdivide(cx, mode).complex
            assert homology_h1(sub) == h, (name, mode)


def test_midpoint_doubles_cycle_norms():
    from finefill import enumerate_cycles
    for name, build in CORPUS:
        cx = build()
        res = subdivide(cx, MIDPOINT)
        for gamma in enumerate_cycles(cx, 4):
            img = res.map_chain1(gamma)
            assert l1_norm(img) == 2 * l1_norm(gamma), name
            assert boundary(res.complex, img).is_zero(), name


def test_provenance_map():
    res = subdivide(triangle_face(), BARYCENTRIC)
    for cell, (dim, orig) in res.provenance.items():
        assert dim in (0, 1, 2)
        if dim == 2:
            assert orig == "f"


def test_cx_round_trip():
    for name, build in CORPUS:
        cx = build()
        assert parse_complex(write_complex(cx)) == cx, name


def test_empty_and_point_complexes():
    empty = validate((), ())
    assert homology_h1(empty) == H1Report(0, ())
    point = validate("p", ())
    assert homology_h1(point) == H1Report(0, ())
    assert parse_complex(write_complex(point)) == point


def test_cx_comments_and_errors():
    text = "complex v1\n# a comment\nvertex a\n"
    cx = parse_complex(text)
    assert cx.vertices == ("a",)
    from finefill.errors import FormatError
    with pytest.raises(FormatError):
        parse_complex("vertex a\n")
    with pytest.raises(FormatError):
        parse_complex("complex v1\nface f e1\n")
