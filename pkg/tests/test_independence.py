import json

import pytest

from latforge.congruence import principal_congruence, princ_set
from latforge.independence import BuildError, build, linear_extension, verify
from latforge.order import as_lattice, boolean_square, chain, diamond, is_order_isomorphism, pentagon
from latforge.rigid_family import RigidCatalog
from latforge.symmetry import compose, cyclic, klein_four, lattice_automorphisms, symmetric3, trivial
from conftest import bounds_plus_antichain, n_shape


def check_certificate(cert):
    """Validate a certificate's maps against L directly."""
    L, P, G = cert.lattice, cert.poset, cert.group
    ps = princ_set(L)
    names = {m.blocks: ps.name(k) for k, m in enumerate(ps.members)}
    pairs = {p: names[principal_congruence(L, a, b).blocks] for p, (a, b) in cert.princ_iso.items()}
    assert is_order_isomorphism(P, ps.order, pairs)
    auts = set(lattice_automorphisms(L).elements)
    perm = {}
    for g in range(len(G)):
        img = cert.aut_iso[G.label(g)]
        perm[g] = tuple(L.index[x] for x in img)
        assert perm[g] in auts
    assert len(set(perm.values())) == len(G) == len(auts)
    for x in range(len(G)):
        for y in range(len(G)):
            assert perm[G.table[x][y]] == compose(perm[x], perm[y])


def test_two_chain_trivial(catalog):
    cert = build(chain(2), trivial(), catalog)
    assert cert.stats["princ_size"] == 2 and cert.stats["aut_order"] == 1
    assert cert.stats["grafts"] == []
    check_certificate(cert)


def test_three_chain_z2(catalog):
    cert = build(chain(3), cyclic(2), catalog)
    assert cert.stats["aut_order"] == 2
    check_certificate(cert)


def test_b2_s3_kills_aut_P(catalog):
    cert = build(boolean_square(), symmetric3(), catalog)
    check_certificate(cert)
    assert cert.stats["aut_order"] == 6
    assert [g["entry"] for g in cert.stats["grafts"]] == [0, 1]


def test_n_shape_v4(catalog):
    cert = build(n_shape(), klein_four(), catalog)
    check_certificate(cert)
    assert cert.stats["princ_size"] == 6
    sizes = {g["p"]: g["interval_size"] for g in cert.stats["grafts"]}
    assert sizes["a"] == sizes["b"] == 2  # minimal elements keep [o, a_p] prime


def test_covers_only_policy(catalog):
    cert = build(chain(5), cyclic(2), catalog, policy="covers-only")
    assert len(cert.stats["gadgets"]) == 2
    check_certificate(cert)


def test_build_is_deterministic(catalog):
    a = json.dumps(build(bounds_plus_antichain(), cyclic(3), catalog).to_json())
    b = json.dumps(build(bounds_plus_antichain(), cyclic(3), catalog).to_json())
    assert a == b


def test_catalog_too_small(catalog):
    small = RigidCatalog(catalog.entries[:1], [True], [True], [[False]])
    with pytest.raises(BuildError) as info:
        build(boolean_square(), trivial(), small)
    assert info.value.stage == "catalog" and "catalog too small" in str(info.value)


def test_non_rigid_entries_fail_the_gate():
    M3 = as_lattice(diamond(3))
    bad = RigidCatalog([M3, M3], [True] * 2, [True] * 2, [[False] * 2] * 2)
    with pytest.raises(BuildError) as info:
        build(bounds_plus_antichain(), trivial(), bad)
    assert info.value.stage == "aut K-bar" and info.value.witness


def test_non_simple_entry_fails_princ_gate(catalog):
    bad = RigidCatalog([as_lattice(pentagon())], [True], [True], [[False]])
    with pytest.raises(BuildError) as info:
        build(chain(3), trivial(), bad)
    assert info.value.stage == "princ K-bar" and info.value.witness


def test_verify_m3():
    M3 = as_lattice(diamond(3))
    ok = verify(M3, chain(2), symmetric3())
    assert ok.ok and ok.certificate is not None
    check_certificate(ok.certificate)
    bad = verify(M3, chain(3), symmetric3())
    assert not bad.ok and not bad.princ_ok and bad.aut_ok
    assert bad.certificate is None
    assert bad.messages == ["princ: Princ L has 2 members and is not isomorphic to P (3 elements)"]
    worse = verify(M3, chain(2), cyclic(3))
    assert worse.princ_ok and not worse.aut_ok and worse.messages[0].startswith("aut:")


def test_verify_round_trip(catalog):
    cert = build(chain(4), cyclic(3), catalog)
    again = verify(cert.lattice, chain(4), cyclic(3))
    assert again.ok
    assert json.dumps(again.certificate.to_json()["princ_iso"]) == json.dumps(cert.to_json()["princ_iso"])


def test_linear_extension():
    assert linear_extension(n_shape()) == ["a", "b", "c", "d"]
    assert linear_extension(chain(2)) == []


def test_certificate_json_shape(catalog):
    data = build(chain(3), cyclic(2), catalog).to_json()
    assert set(data) == {"version", "lattice", "poset", "group", "princ_iso", "aut_iso", "stats"}
    assert data["princ_iso"]["c0"] == ["o", "o"]
    assert all(len(v) == len(data["lattice"]["elements"]) for v in data["aut_iso"].values())
