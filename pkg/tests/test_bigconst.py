"""Tower arithmetic: frozen values, exact comparison, the inequality block."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from thetakit.bigconst import (
    TowerInt,
    digit_estimate,
    evaluate,
    main_constant,
    nat,
    normalize,
    sep_constant,
    sigma,
    to_tower_str,
    tower_compare,
    tree_constants,
    verify_sigma_inequalities,
)


def random_expr(rng: random.Random, budget: int) -> TowerInt:
    # Arbitrary well-formed tree; subtrahends never exceed what was added,
    # so every subtree denotes a natural.
    if budget <= 1 or rng.random() < 0.3:
        return nat(rng.randint(0, 10 ** rng.randint(0, 6)))
    op = rng.choice(["add", "mul", "pow", "sub"])
    if op == "pow":
        return random_expr(rng, budget // 4) ** nat(rng.randint(0, 40))
    if op == "sub":
        pad = rng.randint(1, 50)
        return (random_expr(rng, budget // 2) + pad).minus(rng.randint(0, pad))
    a = random_expr(rng, budget // 2)
    b = random_expr(rng, budget // 2)
    return a + b if op == "add" else a * b


class TestConstruction:
    def test_nat_rejects_negatives(self):
        with pytest.raises(ValueError):
            nat(-1)

    def test_minus_guard(self):
        with pytest.raises(ValueError):
            nat(5).minus(-2)

    def test_negative_value_caught_on_evaluation(self):
        with pytest.raises(ValueError):
            evaluate(nat(2).minus(5))

    def test_operators_coerce_ints(self):
        assert evaluate(nat(2) + 3) == 5
        assert evaluate(2 * nat(3)) == 6
        assert evaluate(nat(2) ** 10) == 1024

    def test_evaluate_respects_cap(self):
        huge = nat(2) ** nat(10 ** 6)
        assert evaluate(huge) is None
        assert huge.digits() is None
        assert evaluate(huge, 10 ** 6) is not None

    def test_normalization_preserves_value(self):
        rng = random.Random(7)
        for _ in range(200):
            e = random_expr(rng, 32)
            v = evaluate(e)
            if v is not None:
                assert evaluate(normalize(e)) == v


class TestSigma:
    def test_frozen_values(self):
        assert evaluate(sigma(2, 1)) == 2
        assert evaluate(sigma(2, 2)) == 256
        assert evaluate(sigma(3, 2)) == 531441

    def test_r_one_is_s(self):
        for s in range(1, 7):
            assert evaluate(sigma(s, 1)) == s

    def test_preconditions(self):
        with pytest.raises(ValueError):
            sigma(0, 2)
        with pytest.raises(ValueError):
            sigma(2, 0)


class TestTreeConstants:
    def test_theta_one_ignores_branching(self):
        for a in (1, 2, 5):
            theta, mu, lam = tree_constants(a, 1)
            assert evaluate(theta) == 3
            assert evaluate(mu) == 1
            assert evaluate(lam) == 0

    def test_frozen_depth_two(self):
        theta, mu, lam = tree_constants(1, 2)
        assert evaluate(theta) == 531441
        assert evaluate(mu) == 125
        assert evaluate(lam) == 3188642

    def test_depth_two_wide_branching(self):
        theta, mu, lam = tree_constants(2, 2)
        assert evaluate(theta) == 3 ** 1728
        # mu_2 = (3*2^(2*3^1728) + 2)^3 cannot materialize; lambda_2 can.
        assert evaluate(mu) is None
        assert evaluate(lam) == 6 * 3 ** 1728 - 4

    def test_preconditions(self):
        with pytest.raises(ValueError):
            tree_constants(0, 1)
        with pytest.raises(ValueError):
            tree_constants(1, 0)


class TestComposedConstants:
    def test_sep_constant_frozen(self):
        assert evaluate(sep_constant(2, nat(125), nat(3188642))) == 3188767
        assert evaluate(sep_constant(0, nat(1), nat(0))) == 1

    def test_sep_constant_symbolic_inputs(self):
        big = nat(2) ** nat(10 ** 6)
        out = sep_constant(1, big, nat(7))
        assert out.op == "add"
        assert tower_compare(out, big) > 0

    def test_sep_constant_precondition(self):
        with pytest.raises(ValueError):
            sep_constant(-1, nat(1), nat(0))

    def test_main_constant_frozen(self):
        assert evaluate(main_constant(nat(1), nat(1))) == 3
        assert evaluate(main_constant(nat(3), nat(2))) == 10

    def test_main_constant_symbolic(self):
        big = nat(3) ** nat(10 ** 6)
        out = main_constant(big, nat(2))
        assert out.op == "mul"
        assert tower_compare(out, big) > 0


class TestTowerCompare:
    def test_frozen_tower_example(self):
        # 1728 * log2(3) is about 2739, below 4096, so the right side wins.
        left = nat(3) ** (nat(12) ** nat(3))
        right = nat(2) ** (nat(2) ** nat(12))
        assert tower_compare(left, right) == -1
        assert tower_compare(right, left) == 1

    def test_small_values(self):
        assert tower_compare(nat(2) ** nat(10), nat(1000)) == 1
        a = nat(7) ** nat(5) + nat(3)
        assert tower_compare(a, a) == 0

    def test_equal_values_different_shapes(self):
        pairs = [
            (nat(6) ** nat(100) * nat(2), nat(2) ** nat(101) * nat(3) ** nat(100)),
            ((nat(2) * nat(3)) ** (nat(2) ** nat(20)), nat(6) ** (nat(2) ** nat(20))),
            (nat(4) ** (nat(3) ** nat(50)), nat(2) ** (nat(2) * nat(3) ** nat(50))),
            (nat(2) ** nat(10 ** 6) * nat(2) ** nat(5), nat(2) ** nat(10 ** 6 + 5)),
        ]
        for x, y in pairs:
            assert tower_compare(x, y) == 0

    def test_near_tie_beyond_cap(self):
        # log2(3) * 10^6 = 1584962.50...; both neighbors decide correctly
        # even though the values have about half a million digits.
        base = nat(3) ** nat(10 ** 6)
        assert tower_compare(base, nat(2) ** nat(1584963)) == -1
        assert tower_compare(base, nat(2) ** nat(1584962)) == 1

    def test_seeded_agreement_with_exact(self):
        rng = random.Random(90401)
        checked = 0
        while checked < 100:
            x = random_expr(rng, 64)
            y = random_expr(rng, 64)
            vx = evaluate(x, 10 ** 4)
            vy = evaluate(y, 10 ** 4)
            if vx is None or vy is None:
                continue
            checked += 1
            assert tower_compare(x, y) == (vx > vy) - (vx < vy)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 10 ** 9))
    def test_agreement_property(self, seed):
        rng = random.Random(seed)
        x = random_expr(rng, 48)
        y = random_expr(rng, 48)
        vx = evaluate(x, 10 ** 4)
        vy = evaluate(y, 10 ** 4)
        if vx is not None and vy is not None:
            assert tower_compare(x, y) == (vx > vy) - (vx < vy)


class TestSigmaInequalities:
    def test_frozen_examples(self):
        assert verify_sigma_inequalities(2, 2, 2, 2)
        assert verify_sigma_inequalities(3, 3, 2, 3)

    def test_precondition_errors(self):
        with pytest.raises(ValueError):
            verify_sigma_inequalities(2, 2, 1, 2)
        with pytest.raises(ValueError):
            verify_sigma_inequalities(1, 2, 2, 2)
        with pytest.raises(ValueError):
            verify_sigma_inequalities(2, 0, 2, 2)

    def test_report_shape(self):
        rep = verify_sigma_inequalities(2, 3, 2, 4)
        assert rep.ok and bool(rep)
        # One base check plus one step check for each r in 2..r_max.
        assert len(rep.checks) == 4
        assert all(c.holds for c in rep.checks)

    def test_full_small_grid(self):
        for s in (2, 3):
            for alpha in (2, 3):
                for t in (2, 3):
                    assert verify_sigma_inequalities(alpha, t, s, 3)

    def test_monotone_in_r_max(self):
        # Raising r_max appends checks without changing earlier ones.
        for alpha, t, s in ((2, 2, 2), (3, 2, 3), (2, 3, 2)):
            previous = None
            for r_max in (1, 2, 3, 4):
                rep = verify_sigma_inequalities(alpha, t, s, r_max)
                labels = [c.label for c in rep.checks]
                if previous is not None:
                    assert labels[: len(previous)] == previous
                previous = labels


class TestLemmaIdentity:
    @pytest.mark.parametrize("a", [1, 2])
    @pytest.mark.parametrize("t", [2, 3])
    def test_depth_two_identity(self, a, t):
        # mu_2 t^lambda_2 equals ((3a^(2 theta_2)+2)(t^(2(theta_2-1)) mu_1
        # t^lambda_1))^3 t^2, as trees, not just numerically.
        theta2, mu2, lam2 = tree_constants(a, 2)
        _, mu1, lam1 = tree_constants(a, 1)
        lhs = mu2 * nat(t) ** lam2
        inner = nat(t) ** (2 * theta2.minus(1)) * (mu1 * nat(t) ** lam1)
        rhs = ((3 * nat(a) ** (2 * theta2) + 2) * inner) ** 3 * nat(t) ** 2
        assert normalize(lhs) == normalize(rhs)
        assert tower_compare(lhs, rhs) == 0


class TestRendering:
    def test_tower_notation(self):
        s = to_tower_str(nat(2) ** nat(10 ** 6))
        assert "2^1000000" == s

    def test_digit_estimates(self):
        assert digit_estimate(nat(999)) == "3"
        assert digit_estimate(nat(3) ** (nat(12) ** nat(3))) == "825"
        beyond = digit_estimate(nat(2) ** nat(10 ** 6))
        assert "beyond" in beyond or beyond.startswith("~10^")
