from fractions import Fraction as F

import pytest

from densym.algebras import (
    AlgebraKind, FiniteAlgebra, identify, reference_kind_table, span_algebra,
)
from densym.errors import SpanNotClosedError
from densym.truncation import TruncatedBasis, realize
from densym.rings import CIRCLE


def zero_one_basis(k, M=None):
    return TruncatedBasis(k, M if M else k + 6, CIRCLE, F(0), F(1))


def zero_one_maps(k, M=None):
    basis = zero_one_basis(k, M)
    return {name: realize(name, basis)
            for name in ["Id", "P0", "C", "P0star", "P1", "L"]}


def block_sum(a: FiniteAlgebra, b: FiniteAlgebra) -> FiniteAlgebra:
    n, m = a.dim, b.dim
    names = [f"x{i}" for i in range(n + m)]
    sc = [[[F(0)] * (n + m) for _ in range(n + m)] for _ in range(n + m)]
    for i in range(n):
        for j in range(n):
            for t in range(n):
                sc[i][j][t] = a.sc[i][j][t]
    for i in range(m):
        for j in range(m):
            for t in range(m):
                sc[n + i][n + j][n + t] = b.sc[i][j][t]
    return FiniteAlgebra(names, sc)


class TestAlgebraKind:
    def test_canonical_strings(self):
        assert str(AlgebraKind.of("R")) == "R"
        assert str(AlgebraKind.of("R", "R", "R")) == "R^3"
        assert str(AlgebraKind.of("R", "b", "R")) == "b+R^2"
        assert str(AlgebraKind.of("t2", "R")) == "t2+R"
        assert str(AlgebraKind.of("a")) == "a"

    def test_dims(self):
        assert AlgebraKind.of("b", "R", "R").dim == 6
        assert AlgebraKind.of("t2").dim == 3


class TestFiniteAlgebra:
    def test_rejects_non_associative(self):
        # x*x = y, x*y = x, all else 0 is not associative
        sc = [[[F(0), F(1)], [F(1), F(0)]],
              [[F(0), F(0)], [F(0), F(0)]]]
        with pytest.raises(ValueError):
            FiniteAlgebra(["x", "y"], sc)

    def test_reference_fingerprints(self):
        b = reference_kind_table("b")
        assert b.dim == 4 and b.radical_dim() == 2 and b.center_dim() == 1
        assert not b.is_commutative()
        t2 = reference_kind_table("t2")
        assert t2.radical_dim() == 1 and t2.center_dim() == 1
        a = reference_kind_table("a")
        assert a.radical_dim() == 1 and a.is_commutative()
        r3 = reference_kind_table("R^3")
        assert r3.radical_dim() == 0 and r3.is_commutative()

    def test_identify_reference_algebras(self):
        assert str(identify(reference_kind_table("t2"))) == "t2"
        assert str(identify(reference_kind_table("a"))) == "a"
        assert str(identify(reference_kind_table("R^3"))) == "R^3"
        assert str(identify(reference_kind_table("b"))) == "b"

    def test_identify_direct_sums(self):
        bR2 = block_sum(block_sum(reference_kind_table("b"),
                                  reference_kind_table("R")),
                        reference_kind_table("R"))
        assert str(identify(bR2)) == "b+R^2"
        t2R = block_sum(reference_kind_table("t2"), reference_kind_table("R"))
        assert str(identify(t2R)) == "t2+R"
        aR = block_sum(reference_kind_table("a"), reference_kind_table("R"))
        assert str(identify(aR)) == "a+R"

    def test_csv_export(self):
        a = reference_kind_table("a")
        text = a.structure_constants_csv()
        lines = text.strip().splitlines()
        assert lines[0] == "i,j,k,c"
        assert "atil,btil,btil,1" in lines


class TestSpanAlgebra:
    def test_identity_alone(self):
        basis = zero_one_basis(2)
        alg = span_algebra([realize("Id", basis)])
        assert alg.dim == 1 and alg.sc[0][0] == [F(1)]
        assert str(identify(alg)) == "R"

    def test_mult_table_structure_constants(self):
        maps = zero_one_maps(4)
        order = ["Id", "P0", "C", "P0star", "P1", "L"]
        alg = span_algebra([maps[n] for n in order])
        idx = {n: i for i, n in enumerate(order)}

        def coords(**named):
            out = [F(0)] * 6
            for n, c in named.items():
                out[idx[n]] = F(c)
            return out

        # spot checks straight out of the printed table
        assert alg.sc[idx["C"]][idx["P1"]] == coords(P0star=1, P1=-1, P0=-1)
        assert alg.sc[idx["P1"]][idx["C"]] == coords(P1=-1)
        assert alg.sc[idx["P0star"]][idx["P1"]] == coords(P0star=1, P0=-1)
        assert alg.sc[idx["L"]][idx["C"]] == coords(L=1)
        assert alg.sc[idx["C"]][idx["L"]] == coords(L=-1)
        assert alg.sc[idx["L"]][idx["L"]] == [F(0)] * 6
        assert alg.sc[idx["P0"]][idx["C"]] == coords(P0star=1)
        assert str(identify(alg)) == "b+R^2"

    def test_non_closed_span_raises(self):
        basis = zero_one_basis(3)
        with pytest.raises(SpanNotClosedError):
            span_algebra([realize("Id", basis), realize("C", basis),
                          realize("P1", basis)])

    def test_b_basis_change_matches_reference(self):
        maps = zero_one_maps(3)
        half = F(1, 2)
        abar = half * (2 * maps["P1"] + maps["P0"] - maps["P0star"])
        bbar = half * (maps["P0"] + maps["P0star"])
        cbar = half * (maps["P0"] - maps["P0star"])
        dbar = maps["L"]
        abar.name, bbar.name, cbar.name, dbar.name = "abar", "bbar", "cbar", "dbar"
        alg = span_algebra([abar, bbar, cbar, dbar])
        ref = reference_kind_table("b")
        assert alg.sc == ref.sc

    def test_central_elements(self):
        maps = zero_one_maps(4)
        z1 = maps["Id"] + maps["C"] - maps["P0"] - maps["P0star"]
        z2 = (maps["Id"] - maps["C"] - maps["P0"] + maps["P0star"]
              - 2 * maps["P1"])
        for z in (z1, z2):
            for name, m in maps.items():
                assert (z @ m).equals(m @ z), f"z fails to commute with {name}"

    def test_z2_vanishes_at_order_two(self):
        maps = zero_one_maps(2)
        z2 = (maps["Id"] - maps["C"] - maps["P0"] + maps["P0star"]
              - 2 * maps["P1"])
        assert z2.is_zero()
        z1 = maps["Id"] + maps["C"] - maps["P0"] - maps["P0star"]
        assert not z1.is_zero()

    def test_z1_z2_vanish_at_order_one(self):
        maps = zero_one_maps(1)
        z1 = maps["Id"] + maps["C"] - maps["P0"] - maps["P0star"]
        z2 = (maps["Id"] - maps["C"] - maps["P0"] + maps["P0star"]
              - 2 * maps["P1"])
        assert z1.is_zero() and z2.is_zero()

    def test_scaling_the_trace_map_changes_nothing(self):
        maps = zero_one_maps(3)
        order = ["Id", "P0", "C", "P0star", "P1", "L"]
        scaled = [maps[n] if n != "L" else 7 * maps[n] for n in order]
        for m, n in zip(scaled, order):
            m.name = n
        alg = span_algebra(scaled)
        assert str(identify(alg)) == "b+R^2"
        # and the rescaled basis still produces the exact reference table
        rescaled = alg.rescale_basis([F(1)] * 5 + [F(1, 7)])
        plain = span_algebra([maps[n] for n in order])
        assert rescaled.sc == plain.sc

    def test_structure_constants_stable_under_window_growth(self):
        for M in (9, 11):
            maps = zero_one_maps(3, M)
            order = ["Id", "P0", "C", "P0star", "P1", "L"]
            alg = span_algebra([maps[n] for n in order])
            if M == 9:
                first = alg.sc
            else:
                assert alg.sc == first

    def test_zero_zero_algebra_idempotents(self):
        basis = TruncatedBasis(5, 9, CIRCLE, F(0), F(0))
        Id, P0, S = (realize(n, basis) for n in ["Id", "P0", "S"])
        alg = span_algebra([Id, P0, S])
        assert str(identify(alg)) == "R^3"
        # orthogonal idempotent basis: P0 and (Id - S)/2
        e2 = F(1, 2) * (Id - S)
        assert (e2 @ e2).equals(e2)
        assert (P0 @ e2).is_zero() and (e2 @ P0).is_zero()
