"""Smoke tests for the python bindings: the same text formats as the CLI."""

import pytest

import tfg

R2 = "graph r2\nvertex a\nedge x a a\nedge y a a\n"
R3 = "graph r3\nvertex a\nedge x a a\nedge y a a\nedge z a a\n"
MP2 = (
    "graph mp2\nvertex u\nvertex w\n"
    "edge s u u\nedge t u w\nedge r w u\nedge l1 w w\nedge l2 w w\n"
)


def test_matui_graph_roundtrip():
    text = tfg.matui_graph(2, 1)
    assert "vertex v1" in text
    assert tfg.adjacency_matrix(text) == [[2]]
    assert tfg.is_diconnected(text)
    assert tfg.is_non_circular(text)


def test_homology_and_abelianization():
    assert tfg.homology(R2, 0) == "trivial"
    assert tfg.homology(R3, 0) == "Z/2"
    assert tfg.abelianization(R3) == "Z/2"
    sym = tfg.graph_from_matrix([[2, 1], [1, 2]])
    assert tfg.homology(sym, 0) == "Z^1"
    assert tfg.homology(sym, 1) == "Z^1"
    assert tfg.abelianization(sym) == "Z/2 + Z^1"


def test_exact_linear_algebra():
    assert tfg.determinant([[1, 1], [1, 2]]) == 1
    snf = tfg.smith_normal_form([[0, -1], [-1, -1]])
    assert snf["invariant_factors"] == [1, 1]
    assert tfg.kernel_basis([[-1, -1], [-1, -1]]) == [[1, -1]] or tfg.kernel_basis(
        [[-1, -1], [-1, -1]]
    ) == [[-1, 1]]
    # arbitrary precision survives the boundary
    big = [[10**30, 0], [0, 10**30]]
    assert tfg.determinant(big) == 10**60


def test_matsumoto():
    assert tfg.matsumoto_equivalent(MP2, R2)
    assert not tfg.matsumoto_equivalent(R2, R3)
    with pytest.raises(tfg.UnsupportedInfinite):
        tfg.matsumoto_equivalent(tfg.graph_from_matrix([[2, 1], [1, 2]]), R2)


def test_completion_certificate():
    cert = tfg.build_completion(R2, [2])
    assert "check matsumoto: PASS MET" in cert
    assert "check lpc: PASS {2}" in cert
    assert tfg.validate_certificate(cert)
    tampered = cert.replace("primes {2}", "primes {5}")
    assert not tfg.validate_certificate(tampered)


def test_multi_prime_family():
    text = tfg.multi_prime_family_graph([2, 3, 5, 7, 11])
    assert tfg.adjacency_matrix(text)[0][0] == 2308


def test_elements():
    swap = "element over r2\npair x -> y\npair y -> x\n"
    ident = tfg.compose_elements(swap, swap, R2)
    assert ident == "element over r2\npair @a -> @a\n"
    assert tfg.elements_equal(ident, "element over r2\npair @a -> @a\n", R2)
    assert tfg.invert_element(swap, R2) == swap
    rnd = tfg.random_element(R2, depth=2, seed=11)
    assert rnd == tfg.random_element(R2, depth=2, seed=11)


def test_local_prime_content():
    assert tfg.local_prime_content(R3, "pattern a: (x y z)\n") == [3]
    assert tfg.local_prime_content(R3, "") == []
