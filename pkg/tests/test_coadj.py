import random
from fractions import Fraction

import pytest

from nilcascade import linalg
from nilcascade.algebra import WindowAlgebra, vec_add
from nilcascade.coadjoint import (Heisenberg, LinearForm, RationalStream, beta_kernel,
                                  beta_rank, coadjoint_matrix, coadjoint_series,
                                  eval_on_vector, gram, heisenberg, ideal_flag,
                                  invariants_regular, lower_central_series,
                                  orbit_invariants, orbit_xi_polys, regular_orbit_ideal,
                                  unit_basis, vergne_polarization, _root_coords)
from nilcascade.errors import ValidationError
from nilcascade.generators import MinorSpec, xi_minor
from nilcascade.poly import SymPoly
from nilcascade.roots import OrderSpec, Root


def random_form(algebra, rng, lo=-3, hi=3):
    return LinearForm.fin_support({r: Fraction(rng.randint(lo, hi)) for r in algebra.roots})


def random_vector(algebra, rng, size=3):
    roots = rng.sample(list(algebra.roots), min(size, len(algebra.roots)))
    return {r: Fraction(rng.randint(-2, 2)) for r in roots}


class TestGram:
    def test_heisenberg_rank_and_kernel(self):
        hei = heisenberg(1)
        lam = LinearForm.fin_support({Root.diff(1, 3): 1})
        sk = gram(lam, hei.algebra, hei.basis)
        assert sk.rank() == 2
        kernel = beta_kernel(lam, hei.algebra, hei.basis)
        assert kernel == [dict(hei.z)]

    def test_zero_form(self):
        algebra = WindowAlgebra.standard("A", 3)
        lam = LinearForm.fin_support({})
        assert beta_rank(lam, algebra) == 0
        assert len(beta_kernel(lam, algebra)) == algebra.dim

    def test_regular_a4_rank(self):
        rng = random.Random(101)
        algebra = WindowAlgebra.standard("A", 4)
        while True:
            lam = random_form(algebra, rng)
            if all(c != 0 for c in orbit_invariants(lam, algebra)):
                break
        assert beta_rank(lam, algebra) == 4  # 2 * (n - 2)

    def test_rank_always_even(self):
        rng = random.Random(5)
        for system, n in [("A", 4), ("B", 3), ("C", 3), ("D", 4)]:
            algebra = WindowAlgebra.standard(system, n)
            for _ in range(10):
                assert beta_rank(random_form(algebra, rng), algebra) % 2 == 0


class TestIdealFlag:
    def test_abelian_rank_two(self):
        algebra = WindowAlgebra.standard("A", 2)
        flag = ideal_flag(algebra)
        assert len(flag) == 1

    def test_heisenberg_flag_starts_at_center(self):
        hei = heisenberg(1)
        flag = ideal_flag(hei.algebra, hei.basis)
        assert flag[0] == hei.z

    def test_a3_flag_starts_with_long_root(self):
        algebra = WindowAlgebra.standard("A", 3)
        flag = ideal_flag(algebra)
        assert flag[0] == {Root.diff(1, 3): Fraction(1)}

    def test_prefixes_are_ideals(self):
        algebra = WindowAlgebra.standard("C", 3)
        flag = ideal_flag(algebra)
        for i in range(1, len(flag) + 1):
            span = linalg.SpanBuilder(algebra.dim)
            for v in flag[:i]:
                span.add(_root_coords(v, algebra))
            for root in algebra.roots:
                for v in flag[:i]:
                    w = algebra.bracket({root: Fraction(1)}, v)
                    if w:
                        assert span.contains(_root_coords(w, algebra)), (i, root)


class TestPolarization:
    def test_zero_form_gives_whole_algebra(self):
        algebra = WindowAlgebra.standard("A", 3)
        pol = vergne_polarization(LinearForm.fin_support({}), algebra)
        assert len(pol) == algebra.dim

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_heisenberg_dimension(self, n):
        hei = heisenberg(n)
        lam = LinearForm.fin_support({Root.diff(1, n + 2): 1})
        pol = vergne_polarization(lam, hei.algebra, hei.basis)
        assert len(pol) == n + 1

    def test_randomized_dimension_formula(self):
        rng = random.Random(20)
        algebra = WindowAlgebra.standard("A", 4)
        for _ in range(20):
            lam = random_form(algebra, rng)
            rank = beta_rank(lam, algebra)
            pol = vergne_polarization(lam, algebra)
            assert len(pol) == algebra.dim - rank // 2

    def test_isotropic_subalgebra(self):
        rng = random.Random(21)
        algebra = WindowAlgebra.standard("C", 3)
        lam = random_form(algebra, rng)
        pol = vergne_polarization(lam, algebra)
        value_of = lam.evaluator(algebra.order)
        span = linalg.SpanBuilder(algebra.dim)
        for v in pol:
            span.add(_root_coords(v, algebra))
        for u in pol:
            for v in pol:
                w = algebra.bracket(u, v)
                assert eval_on_vector(value_of, w) == 0
                if w:
                    assert span.contains(_root_coords(w, algebra))

    def test_kernels_inside_polarization(self):
        rng = random.Random(22)
        algebra = WindowAlgebra.standard("A", 4)
        lam = random_form(algebra, rng)
        flag = ideal_flag(algebra)
        pol = vergne_polarization(lam, algebra)
        span = linalg.SpanBuilder(algebra.dim)
        for v in pol:
            span.add(_root_coords(v, algebra))
        value_of = lam.evaluator(algebra.order)
        for i in range(1, len(flag) + 1):
            sub = [[eval_on_vector(value_of, algebra.bracket(flag[s], flag[t]))
                    for t in range(i)] for s in range(i)]
            for coords in linalg.kernel_basis(sub):
                vec = {}
                for c, v in zip(coords, flag[:i]):
                    vec = vec_add(vec, v, c)
                if vec:
                    assert span.contains(_root_coords(vec, algebra))


class TestCoadjoint:
    def test_identity_at_zero(self):
        algebra = WindowAlgebra.standard("A", 3)
        lam = LinearForm.fin_support({Root.diff(1, 3): Fraction(7)})
        out = coadjoint_matrix({}, lam, algebra)
        assert out == {r: lam.value(r, algebra.order) for r in algebra.roots}

    def test_heisenberg_translation(self):
        # exp(t x) moves mu(y) by -t mu(z), fixes mu(z)
        algebra = WindowAlgebra.standard("A", 3)
        t, zval = Fraction(3), Fraction(2)
        lam = LinearForm.fin_support({Root.diff(1, 3): zval})
        out = coadjoint_series({Root.diff(1, 2): t}, lam, algebra)
        assert out[Root.diff(1, 3)] == zval
        assert out[Root.diff(2, 3)] == -t * zval
        assert out[Root.diff(1, 2)] == 0

    @pytest.mark.parametrize("system,n", [("A", 4), ("B", 3), ("C", 3), ("D", 4)])
    def test_methods_agree(self, system, n):
        rng = random.Random(hash((system, n)) % 10000)
        algebra = WindowAlgebra.standard(system, n)
        for _ in range(10):
            lam = random_form(algebra, rng)
            x = random_vector(algebra, rng)
            assert coadjoint_matrix(x, lam, algebra) == coadjoint_series(x, lam, algebra)

    def test_inverse_transport(self):
        rng = random.Random(31)
        algebra = WindowAlgebra.standard("C", 3)
        for _ in range(10):
            lam = random_form(algebra, rng)
            x = random_vector(algebra, rng)
            forward = coadjoint_matrix(x, lam, algebra)
            back = coadjoint_matrix({r: -c for r, c in x.items()},
                                    LinearForm.fin_support(forward), algebra)
            assert back == {r: lam.value(r, algebra.order) for r in algebra.roots}

    def test_rank_preservation_on_subrectangles(self):
        # rk of the south-west value blocks is preserved by transport (type A)
        rng = random.Random(33)
        algebra = WindowAlgebra.standard("A", 5)
        for _ in range(10):
            lam = random_form(algebra, rng)
            x = random_vector(algebra, rng)
            moved = coadjoint_series(x, lam, algebra)
            for r in range(1, 5):
                for s in range(r + 1, 6):
                    block = [[lam.value(Root.diff(i, j), algebra.order)
                              for j in range(s, 6)] for i in range(1, r + 1)]
                    block2 = [[moved[Root.diff(i, j)] for j in range(s, 6)]
                              for i in range(1, r + 1)]
                    assert linalg.rank(block) == linalg.rank(block2)


class TestHeisenbergOrbits:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_transport_fixes_center_and_reaches_targets(self, n):
        rng = random.Random(40 + n)
        hei = heisenberg(n)
        algebra = hei.algebra
        alpha = Fraction(rng.randint(1, 5))
        z_root = next(iter(hei.z))
        lam = LinearForm.fin_support({z_root: alpha})
        targets = [Fraction(rng.randint(-5, 5)) for _ in range(2 * n)]
        current = lam
        # steer each x_i with exp(t y_i) and each y_i with exp(t x_i):
        # the response is linear with slope +-alpha and the series truncates
        for slot in range(2 * n):
            generator = hei.ys[slot] if slot < n else hei.xs[slot - n]
            coord = slot if slot < n else slot  # same position in basis list
            base = coadjoint_series({}, current, algebra, hei.basis)
            one = coadjoint_series({next(iter(generator)): Fraction(1)}, current,
                                   algebra, hei.basis)
            slope = one[coord] - base[coord]
            assert slope in (alpha, -alpha)
            t = (targets[slot] - base[coord]) / slope
            moved = coadjoint_series({next(iter(generator)): t}, current, algebra, hei.basis)
            assert moved[2 * n] == alpha  # center coordinate is fixed
            current = LinearForm.fin_support(
                {next(iter(vec)): val for vec, val in zip(hei.basis, moved)})
        final = [eval_on_vector(current.evaluator(algebra.order), v) for v in hei.basis]
        assert final[: 2 * n] == targets
        assert final[2 * n] == alpha

    def test_singular_orbit_is_fixed(self):
        # with mu(z) = 0 the hei coordinates never move
        hei = heisenberg(2)
        mu_vals = {next(iter(hei.xs[0])): Fraction(3), next(iter(hei.ys[1])): Fraction(-1)}
        mu = LinearForm.fin_support(mu_vals)
        for gen_vec in hei.basis:
            moved = coadjoint_series({next(iter(gen_vec)): Fraction(2)}, mu,
                                     hei.algebra, hei.basis)
            base = coadjoint_series({}, mu, hei.algebra, hei.basis)
            assert moved == base


class TestOrbitInvariants:
    def test_single_corner(self):
        algebra = WindowAlgebra.standard("A", 3)
        lam = LinearForm.fin_support({Root.diff(1, 3): Fraction(5)})
        values = orbit_invariants(lam, algebra)
        assert values == [Fraction(5)]
        gens = regular_orbit_ideal(lam, algebra)
        assert gens == [SymPoly.var(Root.diff(1, 3)) - SymPoly.const(5)]

    def test_zero_form_not_regular(self):
        algebra = WindowAlgebra.standard("A", 4)
        lam = LinearForm.fin_support({})
        assert orbit_invariants(lam, algebra) == [0, 0]
        assert regular_orbit_ideal(lam, algebra) is None

    def test_invariance_under_transport(self):
        rng = random.Random(50)
        algebra = WindowAlgebra.standard("A", 5)
        for _ in range(15):
            lam = random_form(algebra, rng)
            x = random_vector(algebra, rng)
            moved = LinearForm.fin_support(coadjoint_series(x, lam, algebra))
            assert orbit_invariants(moved, algebra) == orbit_invariants(lam, algebra)

    def test_matches_centgen_minor(self):
        algebra = WindowAlgebra.standard("A", 6)
        xi = orbit_xi_polys(algebra)
        nat = algebra.order
        for i, poly in enumerate(xi, start=1):
            spec = MinorSpec("A", nat, tuple(range(1, i + 1)), tuple(range(6, 6 - i, -1)))
            assert poly == xi_minor(spec)

    def test_even_rank_regularity_skips_last(self):
        assert invariants_regular([Fraction(1), Fraction(0)], 4)
        assert not invariants_regular([Fraction(0), Fraction(1)], 4)
        assert not invariants_regular([Fraction(1), Fraction(0)], 5)
