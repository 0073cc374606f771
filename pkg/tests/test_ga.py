"""Divided-power families, coaction conversions, degree filtrations, generated
submodules, the carries basis, restriction, and the coalgebra splitting."""

import math

import pytest

from expfilt import linalg
from expfilt.fpcomb import PrimeField, digits
from expfilt.comodule import validate
from expfilt.ga import (
    GaUFamily,
    carries_basis,
    comodule_to_family,
    degree_filtration_ga,
    derived_v,
    family_to_comodule,
    ga_one_param_theta,
    generated_submodule,
    regular_comodule,
    restrict_frobenius_ga,
    retract_iso_check,
    v_on_poly,
    validate_family,
    y_r_family,
)
from expfilt.linalg import Subspace
from expfilt.polyring import parse_poly
from expfilt.samplers import random_ga_family, rng_from_seed

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


class TestVOnPoly:
    def test_derivative(self):
        for n in (1, 2, 4):
            f = parse_poly(f"T^{n}", F5)
            assert v_on_poly(1, f) == parse_poly(f"{n}*T^{n - 1}", F5)

    def test_top_coefficient(self):
        for j in (0, 1, 3):
            f = parse_poly(f"T^{j}" if j else "1", F3)
            assert v_on_poly(j, f) == parse_poly("1", F3)

    def test_vanishing_by_exact_oracle(self):
        for p in (2, 3, 5):
            fld = PrimeField(p)
            assert math.comb(p, 1) % p == 0
            assert v_on_poly(1, parse_poly(f"T^{p}", fld)).is_zero()


class TestFamilyBasics:
    def test_invariants_checked(self):
        bad = GaUFamily(F3, 2, {0: [[0, 1], [0, 0]], 1: [[0, 0], [0, 1]]})
        assert any("u_1^p" in v for v in validate_family(bad))
        a = [[0, 1, 0], [0, 0, 0], [0, 0, 0]]
        b = [[0, 0, 0], [0, 0, 1], [0, 0, 0]]
        noncomm = GaUFamily(F3, 3, {0: a, 1: b})
        assert any("commute" in v for v in validate_family(noncomm))

    def test_derived_v_identity_and_generators(self):
        fam = y_r_family(F3, 2)
        assert derived_v(fam, 0) == linalg.identity(2)
        for s in range(3):
            assert derived_v(fam, 3**s) == fam.u(s)

    @pytest.mark.parametrize("p", [2, 3])
    def test_derived_v_matches_regular_module(self, p):
        """Divided-power products agree with the direct binomial matrices."""
        from expfilt.comodule import dual_action
        from expfilt.polyring import monomial

        fld = PrimeField(p)
        D = p * p
        M = regular_comodule(fld, D)
        fam = comodule_to_family(M)
        for j in range(D):
            direct = dual_action(M, {monomial({"T": j}) if j else (): 1})
            assert derived_v(fam, j) == direct


class TestConversions:
    def test_zero_family_gives_trivial_comodule(self):
        fam = GaUFamily(F3, 3, {})
        M = family_to_comodule(fam)
        assert all(
            str(M.coaction[j][i]) == ("1" if i == j else "0")
            for i in range(3)
            for j in range(3)
        )

    def test_y1_coaction_at_p3(self):
        M = family_to_comodule(y_r_family(F3, 1))
        assert M.coaction[1][0] == parse_poly("T + T^3", F3)
        assert M.coaction[0][0] == parse_poly("1", F3)
        assert M.coaction[1][1] == parse_poly("1", F3)
        assert M.coaction[0][1].is_zero()
        assert validate(M).ok

    def test_trivial_comodule_extracts_empty_family(self):
        from expfilt import coalgebras
        from expfilt.comodule import trivial_comodule

        fam = comodule_to_family(trivial_comodule(F3, coalgebras.ga_poly(), 3))
        assert fam.u_mats == {} and fam.dim == 3

    def test_regular_module_extracts_derivative_family(self):
        for p in (2, 3):
            fld = PrimeField(p)
            fam = comodule_to_family(regular_comodule(fld, p))
            assert sorted(fam.u_mats) == [0]
            u0 = fam.u(0)
            for n in range(p):
                for l in range(p):
                    assert u0[l][n] == (n % p if l == n - 1 else 0)

    def test_roundtrips_random(self):
        rng = rng_from_seed(13)
        for _ in range(50):
            fld = rng.choice([F2, F3, F5])
            fam = random_ga_family(fld, rng.randrange(2, 5), rng)
            M = family_to_comodule(fam)
            back = comodule_to_family(M)
            assert back.dim == fam.dim
            assert {s: m for s, m in back.u_mats.items()} == {
                s: m for s, m in fam.u_mats.items() if not linalg.is_zero_matrix(m, fld)
            }
            assert family_to_comodule(back).coaction == M.coaction

    def test_non_comodule_input_rejected(self):
        M = family_to_comodule(y_r_family(F3, 1))
        M.coaction[1][0] = parse_poly("T^2", F3)  # not of divided-power shape
        with pytest.raises(ValueError):
            comodule_to_family(M)

    def test_invalid_family_rejected(self):
        a = [[0, 1, 0], [0, 0, 0], [0, 0, 0]]
        b = [[0, 0, 0], [0, 0, 1], [0, 0, 0]]
        with pytest.raises(ValueError):
            family_to_comodule(GaUFamily(F3, 3, {0: a, 1: b}))


class TestDegreeFiltration:
    def test_trivial_module_full_at_any_d(self):
        from expfilt.comodule import trivial_comodule
        from expfilt import coalgebras

        M = trivial_comodule(F3, coalgebras.ga_poly(), 3)
        assert degree_filtration_ga(M, 1).is_full()

    def test_regular_module_pieces(self):
        fld = F3
        D = 7
        M = regular_comodule(fld, D)
        for d in range(1, D + 2):
            assert degree_filtration_ga(M, d) == span(fld, D, range(min(d, D)))

    def test_yr_pieces(self):
        for p, R in ((3, 1), (3, 2), (5, 1)):
            fld = PrimeField(p)
            M = family_to_comodule(y_r_family(fld, R))
            w_only = span(fld, 2, [1])
            assert degree_filtration_ga(M, 1) == w_only
            assert degree_filtration_ga(M, p**R) == w_only
            assert degree_filtration_ga(M, p**R + 1).is_full()

    def test_chain_monotone_and_exhausting(self):
        rng = rng_from_seed(17)
        for _ in range(20):
            fam = random_ga_family(F3, rng.randrange(2, 5), rng)
            M = family_to_comodule(fam)
            dmax = M.max_entry_degree() + 1
            prev = None
            for d in range(1, dmax + 1):
                S = degree_filtration_ga(M, d)
                if prev is not None:
                    assert S.contains_space(prev)
                prev = S
            assert prev.is_full()


class TestGeneratedSubmodule:
    def test_zero_generator(self):
        M = regular_comodule(F3, 4)
        assert generated_submodule(M, [[0, 0, 0, 0]]).dim == 0

    def test_orbit_of_top_power_matches_carries(self):
        for p in (2, 3, 5):
            fld = PrimeField(p)
            for n in (p, p + 1, 2 * p + 1):
                M = regular_comodule(fld, n + 1)
                vec = [0] * (n + 1)
                vec[n] = 1
                S = generated_submodule(M, [vec])
                assert sorted(S.pivots) == carries_basis(n, fld)

    def test_closure_under_all_dual_actions(self):
        from expfilt.comodule import action_matrices

        rng = rng_from_seed(19)
        for _ in range(20):
            fam = random_ga_family(F3, rng.randrange(2, 5), rng)
            M = family_to_comodule(fam)
            vec = [rng.randrange(3) for _ in range(M.dim)]
            S = generated_submodule(M, [vec])
            for A in action_matrices(M).values():
                for row in S.rows:
                    assert S.contains(linalg.mat_vec(A, list(row), F3))


class TestCarriesBasis:
    def test_zero(self):
        assert carries_basis(0, F5) == [0]

    def test_p_plus_one(self):
        for p in (2, 3, 5):
            assert carries_basis(p + 1, PrimeField(p)) == [0, 1, p, p + 1]

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_matches_generated_submodule_span(self, p):
        fld = PrimeField(p)
        for n in range(0, 121, 7):
            M = regular_comodule(fld, n + 1)
            vec = [0] * (n + 1)
            vec[n] = 1
            S = generated_submodule(M, [vec])
            assert sorted(S.pivots) == carries_basis(n, fld)

    def test_cardinality(self):
        for p in (2, 3, 5):
            fld = PrimeField(p)
            for n in range(200):
                assert len(carries_basis(n, fld)) == math.prod(
                    d + 1 for d in digits(n, p)
                )

    def test_complement_bijection_iff_full_digits(self):
        """The digit-wise (p-1)-complement fixes the basis exactly when every
        digit of n is p-1 (where it agrees with m -> n-m)."""

        def complement(m, n, p):
            ds = digits(n, p)
            dm = digits(m, p) + [0] * (len(ds) - len(digits(m, p)))
            return sum((p - 1 - d) * p**i for i, d in enumerate(dm[: len(ds)]))

        for p in (2, 3, 5):
            fld = PrimeField(p)
            for n in range(1, 130):
                basis = carries_basis(n, fld)
                fixed = sorted(complement(m, n, p) for m in basis) == basis
                full = all(d == p - 1 for d in digits(n, p))
                assert fixed == full
                if full:
                    assert sorted(n - m for m in basis) == basis


class TestRestriction:
    def test_trivial_unchanged(self):
        from expfilt.comodule import trivial_comodule
        from expfilt import coalgebras

        M = trivial_comodule(F3, coalgebras.ga_poly(), 2)
        R = restrict_frobenius_ga(M, 1)
        assert R.coalgebra == coalgebras.ga_trunc(1)
        assert R.coaction == M.coaction
        assert validate(R).ok

    def test_y1_truncates_to_single_term(self):
        M = restrict_frobenius_ga(family_to_comodule(y_r_family(F3, 1)), 1)
        assert M.coaction[1][0] == parse_poly("T", F3)
        assert validate(M).ok

    def test_regular_piece_is_regular_truncated_comodule(self):
        for p, r in ((2, 1), (2, 2), (3, 1)):
            fld = PrimeField(p)
            M = restrict_frobenius_ga(regular_comodule(fld, p**r), r)
            assert validate(M).ok
            # no truncation actually occurs: the piece maps isomorphically
            assert all(
                M.coaction[j][i] == regular_comodule(fld, p**r).coaction[j][i]
                for i in range(p**r)
                for j in range(p**r)
            )


class TestSection:
    def test_section_inverts_restriction(self):
        from expfilt.ga import section_frobenius_ga

        rng = rng_from_seed("section")
        for _ in range(10):
            fam = random_ga_family(F3, rng.randrange(2, 4), rng, max_support=1)
            M = family_to_comodule(fam)
            r = 1
            if M.max_entry_degree() < 3**r:
                R = restrict_frobenius_ga(M, r)
                back = section_frobenius_ga(R)
                assert back.coaction == M.coaction
                assert validate(back).ok

    def test_restriction_inverts_section(self):
        from expfilt.ga import regular_trunc_comodule, section_frobenius_ga

        M = regular_trunc_comodule(F3, 1)
        lifted = section_frobenius_ga(M)
        assert validate(lifted).ok
        assert restrict_frobenius_ga(lifted, 1).coaction == M.coaction

    def test_needs_truncated_input(self):
        from expfilt.ga import section_frobenius_ga

        with pytest.raises(ValueError):
            section_frobenius_ga(regular_comodule(F3, 3))


class TestRetract:
    @pytest.mark.parametrize("p,r", [(2, 1), (2, 2), (3, 1), (3, 2)])
    def test_structure_constants_match(self, p, r):
        assert retract_iso_check(r, PrimeField(p))["ok"]

    def test_shifted_correspondence_fails(self):
        q = 4
        res = retract_iso_check(2, F2, correspondence=lambda k: (k + 1) % q)
        assert not res["ok"]


class TestOneParamTheta:
    def test_zero_lambdas(self):
        fam = y_r_family(F3, 2)
        assert ga_one_param_theta(fam, [0, 0, 0]) == linalg.zeros(2, 2)

    def test_yr_unit_lambda(self):
        fam = y_r_family(F3, 1)
        assert ga_one_param_theta(fam, [1]) == [[0, 0], [1, 0]]

    def test_scaling_covariance_height_one(self):
        fam = y_r_family(F5, 2)
        for alpha in range(5):
            lhs = ga_one_param_theta(fam, [alpha])
            rhs = linalg.mat_scale(ga_one_param_theta(fam, [1]), alpha, F5)
            assert lhs == rhs
