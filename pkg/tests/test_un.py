"""The U_N coordinate coalgebra: coproducts, degree pieces, kernel numerics,
degree filtration, and the standard comodules."""

import math
import random

import pytest

from expfilt import coalgebras
from expfilt.comodule import validate
from expfilt.fpcomb import PrimeField
from expfilt.linalg import Subspace
from expfilt.polyring import MultiPoly, monomial, parse_poly, prime_var
from expfilt.un import (
    UNContext,
    coproduct_poly,
    degree_filtration_un,
    degree_piece,
    degree_piece_comodule,
    degree_piece_count,
    frobenius_kernel_dims,
    ga_as_u2,
    natural_rep,
    natural_rep_gl,
    restrict_mat_to_un,
    sym_square_rep,
    sym_square_rep_gl,
    x_coproduct,
)

F2 = PrimeField(2)
F3 = PrimeField(3)
F5 = PrimeField(5)


def span(field, dim, indices):
    vecs = []
    for i in indices:
        v = [0] * dim
        v[i] = 1
        vecs.append(v)
    return Subspace.from_vectors(field, dim, vecs)


def coassoc_threefold(coalg, field, f):
    """(Delta (x) 1) Delta(f) == (1 (x) Delta) Delta(f), with the third tensor
    leg carried by the b-alphabet."""
    delta = coalgebras.coproduct(coalg, field, f).poly
    gens = coalgebras.generator_vars(coalg)
    to_middle = {prime_var(v): v.replace("x", "b") for v in gens}
    to_outer = {v: v for v in gens}

    # left route: expand the unprimed leg again
    assign = dict(coalgebras._coproduct_assignment(coalg, field))
    left_route = {**assign, **{k: MultiPoly.variable(field, w) for k, w in to_middle.items()}}
    lhs = delta.substitute(left_route)

    # right route: expand the primed leg, into (primed, b)
    expand_primed = {}
    for v in gens:
        img = assign[v]
        expand_primed[prime_var(v)] = img.rename_variables(
            {v2: prime_var(v2) if not v2.endswith("'") else v2.replace("x", "b").rstrip("'")
             for v2 in img.variables()}
        )
    right_route = {**{v: MultiPoly.variable(field, v) for v in to_outer}, **expand_primed}
    rhs = delta.substitute(right_route)
    return lhs == rhs


class TestCoproduct:
    def test_adjacent_entry_is_primitive(self):
        t = x_coproduct(UNContext(F3, 3), 1, 2)
        assert t.poly == parse_poly("x1_2 + x1_2'", F3)

    def test_corner_entry_has_middle_term(self):
        t = x_coproduct(UNContext(F3, 3), 1, 3)
        assert t.poly == parse_poly("x1_3 + x1_2*x2_3' + x1_3'", F3)

    def test_index_range_enforced(self):
        with pytest.raises(ValueError):
            x_coproduct(UNContext(F3, 3), 2, 2)

    @pytest.mark.parametrize("N", [2, 3, 4])
    def test_coassociativity_on_generators(self, N):
        ctx = UNContext(F3, N)
        for i in range(1, N + 1):
            for j in range(i + 1, N + 1):
                f = MultiPoly.variable(F3, f"x{i}_{j}")
                assert coassoc_threefold(ctx.coalgebra, F3, f)

    def test_coassociativity_on_products(self):
        ctx = UNContext(F3, 3)
        for text in ("x1_2*x2_3", "x1_3^2", "x1_2 + 2*x1_3*x2_3"):
            assert coassoc_threefold(ctx.coalgebra, F3, parse_poly(text, F3))

    def test_counit_law(self):
        ctx = UNContext(F3, 3)
        point = coalgebras.identity_point(ctx.coalgebra)
        for text in ("x1_3", "x1_2*x2_3 + 2*x1_3"):
            f = parse_poly(text, F3)
            delta = coproduct_poly(ctx, f)
            # (1 (x) counit): evaluate primed variables at the identity
            right = {prime_var(v): MultiPoly.constant(F3, point[v]) for v in point}
            right.update({v: MultiPoly.variable(F3, v) for v in point})
            assert delta.poly.substitute(right) == f

    def test_unit_maps_to_unit_tensor(self):
        t = coproduct_poly(UNContext(F3, 3), MultiPoly.one(F3))
        assert t.poly == MultiPoly.one(F3)

    def test_multiplicative_on_product(self):
        ctx = UNContext(F3, 3)
        f = parse_poly("x1_2", F3)
        g = parse_poly("x2_3", F3)
        lhs = coproduct_poly(ctx, f * g).poly
        rhs = coproduct_poly(ctx, f).poly * coproduct_poly(ctx, g).poly
        assert lhs == rhs

    def test_leg_degree_bound_random(self):
        rng = random.Random(5)
        ctx = UNContext(F3, 3)
        names = ctx.variables()
        for _ in range(100):
            terms = {}
            for _ in range(rng.randrange(1, 4)):
                mono = monomial(
                    {v: rng.randrange(3) for v in rng.sample(names, rng.randrange(1, 3))}
                )
                terms[mono] = rng.randrange(1, 3)
            f = MultiPoly(F3, terms)
            t = coproduct_poly(ctx, f)
            assert t.left_degree() <= f.total_degree()
            assert t.right_degree() <= f.total_degree()

    def test_foreign_variable_rejected(self):
        with pytest.raises(ValueError):
            coproduct_poly(UNContext(F3, 3), parse_poly("x1_4", F3))


class TestDegreePiece:
    def test_d_one(self):
        assert degree_piece(UNContext(F3, 3), 1) == [()]

    def test_n3_d2(self):
        piece = degree_piece(UNContext(F3, 3), 2)
        assert len(piece) == 4
        assert piece[0] == ()
        names = {m[0][0] for m in piece[1:]}
        assert names == {"x1_2", "x1_3", "x2_3"}

    @pytest.mark.parametrize("N,d", [(2, 4), (3, 3), (4, 2)])
    def test_count_formula(self, N, d):
        ctx = UNContext(F3, N)
        assert len(degree_piece(ctx, d)) == degree_piece_count(ctx, d)

    def test_count_recurrence(self):
        ctx = UNContext(F3, 3)
        m = ctx.m
        for d in range(2, 7):
            assert degree_piece_count(ctx, d) == math.comb(m + d - 2, m) + math.comb(
                m + d - 2, m - 1
            )

    @pytest.mark.parametrize("N", [2, 3, 4])
    def test_subcoalgebra_up_to_degree_five(self, N):
        ctx = UNContext(F2, N)
        for d in range(1, 6):
            for mono in degree_piece(ctx, d):
                t = coproduct_poly(ctx, MultiPoly.from_monomial(F2, mono))
                assert t.left_degree() < d and t.right_degree() < d


class TestKernelDims:
    @pytest.mark.parametrize("p", [2, 3])
    def test_n3_r1(self, p):
        rec = frobenius_kernel_dims(UNContext(PrimeField(p), 3), 1)
        assert rec.dim_kernel == p**3 == rec.dim_kernel_formula
        assert rec.injective_check and rec.surjective_check

    def test_enumerated_piece_and_discrepancy(self):
        rec = frobenius_kernel_dims(UNContext(F2, 3), 1)
        assert rec.dim_piece_strict == 4
        assert rec.dim_piece_formula_claimed == 10
        assert rec.formula_discrepancy

    def test_divisibility_of_claimed_formula(self):
        # m = 1 < p^r: the closed form C(1 + p^r, p^r) = 1 + p^r is prime to p
        rec = frobenius_kernel_dims(UNContext(F5, 2), 1)
        assert rec.m == 1
        assert rec.claimed_formula_p_free
        assert rec.claimed_formula_not_pth_power

    def test_guard(self):
        with pytest.raises(ValueError):
            frobenius_kernel_dims(UNContext(F5, 5), 2)


class TestStandardComodules:
    def test_natural_u2_column(self):
        M = natural_rep(UNContext(F3, 2))
        assert M.coaction[0][1] == parse_poly("x1_2", F3)
        assert M.coaction[1][1] == parse_poly("1", F3)

    def test_natural_u3_last_column(self):
        M = natural_rep(UNContext(F3, 3))
        assert M.coaction[2][2] == parse_poly("1", F3)
        assert M.coaction[1][2] == parse_poly("x2_3", F3)
        assert M.coaction[0][2] == parse_poly("x1_3", F3)

    @pytest.mark.parametrize("N", [2, 3, 4, 5])
    def test_natural_validates(self, N):
        assert validate(natural_rep(UNContext(F3, N))).ok

    def test_sym_square_u2_entries(self):
        M = sym_square_rep(UNContext(F3, 2))
        # basis order: e1e1, e1e2, e2e2
        assert M.coaction[0][0] == parse_poly("1", F3)
        col = [str(M.coaction[j][2]) for j in range(3)]
        assert col == ["x1_2^2", "2*x1_2", "1"]

    @pytest.mark.parametrize("N", [2, 3])
    def test_sym_square_validates(self, N):
        assert validate(sym_square_rep(UNContext(F3, N))).ok

    def test_sym_square_u2_filtration_degree(self):
        M = sym_square_rep(UNContext(F3, 2))
        assert degree_filtration_un(M, 3).is_full()
        assert not degree_filtration_un(M, 2).is_full()

    def test_degree_piece_comodule_validates(self):
        for p, N, d in ((2, 3, 2), (3, 3, 2), (3, 2, 3)):
            M = degree_piece_comodule(UNContext(PrimeField(p), N), d)
            assert validate(M).ok

    def test_gl_restriction_matches_direct(self):
        for N in (2, 3):
            ctx = UNContext(F3, N)
            assert restrict_mat_to_un(natural_rep_gl(F3, N)).coaction == natural_rep(ctx).coaction
            assert (
                restrict_mat_to_un(sym_square_rep_gl(F3, N)).coaction
                == sym_square_rep(ctx).coaction
            )

    def test_gl_comodules_validate(self):
        assert validate(natural_rep_gl(F3, 3)).ok
        assert validate(sym_square_rep_gl(F3, 2)).ok


class TestDegreeFiltration:
    def test_natural_u3_pieces(self):
        M = natural_rep(UNContext(F3, 3))
        assert degree_filtration_un(M, 1) == span(F3, 3, [0])
        assert degree_filtration_un(M, 2).is_full()

    def test_two_route_agreement(self):
        """Coideal preimage equals the joint kernel of the high-degree duals."""
        from expfilt import linalg
        from expfilt.comodule import action_matrices

        rng = random.Random(9)
        from expfilt.samplers import random_un_comodule

        for _ in range(15):
            M = random_un_comodule(F3, 3, rng)
            for d in (1, 2):
                direct = degree_filtration_un(M, d)
                rows = []
                for mono, A in action_matrices(M).items():
                    if sum(e for _, e in mono) >= d:
                        rows.extend(A)
                other = linalg.kernel_of(rows, M.dim, F3)
                assert direct == other

    def test_ga_as_u2_matches_ga_filtration(self):
        from expfilt.ga import degree_filtration_ga, family_to_comodule, y_r_family

        fam = y_r_family(F3, 1)
        M = family_to_comodule(fam)
        M2 = ga_as_u2(M)
        assert validate(M2).ok
        for d in (1, 2, 3, 4):
            assert degree_filtration_ga(M, d) == degree_filtration_un(M2, d)


class TestLinearSubgroupRestriction:
    def test_center_of_u3(self):
        """Restriction along the center embedding x1_3 -> T, others -> 0."""
        from expfilt.un import restrict_along

        M = natural_rep(UNContext(F3, 3))
        subs = {
            "x1_2": MultiPoly.zero(F3),
            "x2_3": MultiPoly.zero(F3),
            "x1_3": parse_poly("T", F3),
        }
        R = restrict_along(M, subs, coalgebras.ga_poly())
        assert validate(R).ok
        assert R.coaction[0][2] == parse_poly("T", F3)

    def test_diagonal_one_parameter_subgroup(self):
        """x1_2, x2_3 -> T and x1_3 -> T^2/2: the exponential of the regular
        nilpotent direction (needs p > 2)."""
        from expfilt.un import restrict_along

        inv2 = F3.inv(2)
        M = natural_rep(UNContext(F3, 3))
        subs = {
            "x1_2": parse_poly("T", F3),
            "x2_3": parse_poly("T", F3),
            "x1_3": parse_poly(f"{inv2}*T^2", F3),
        }
        R = restrict_along(M, subs, coalgebras.ga_poly())
        assert validate(R).ok

    def test_non_coalgebra_map_rejected(self):
        from expfilt.un import restrict_along

        M = natural_rep(UNContext(F3, 3))
        subs = {
            "x1_2": MultiPoly.zero(F3),
            "x2_3": MultiPoly.zero(F3),
            "x1_3": parse_poly("T^2", F3),  # Delta(T^2) has a cross term
        }
        with pytest.raises(ValueError):
            restrict_along(M, subs, coalgebras.ga_poly())
