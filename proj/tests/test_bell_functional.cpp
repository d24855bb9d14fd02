#include <doctest.h>

#include <random>

#include "bellscope/bell_functional.hpp"
#include "bellscope/lhv_oracle.hpp"

using namespace bellscope;

namespace {

JointDistribution random_distribution(int d, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    Eigen::MatrixXd p(d, d);
    for (int m = 0; m < d; ++m) {
        for (int n = 0; n < d; ++n) {
            p(m, n) = dist(rng);
        }
    }
    p /= p.sum();
    return make_joint_distribution(d, p);
}

CorrelationVector make_q(int d, std::initializer_list<double> values) {
    Eigen::VectorXd q(d - 1);
    int i = 0;
    for (double v : values) {
        q[i++] = v;
    }
    return {d, q};
}

}  // namespace

TEST_CASE("correlation vector examples") {
    const auto V3 = build_outcome_vectors(3);
    SUBCASE("uniform distribution averages to zero") {
        const auto P = make_joint_distribution(3, Eigen::MatrixXd::Constant(3, 3, 1.0 / 9.0));
        CHECK(correlation_vector(P, V3).q.norm() < 1e-14);
    }
    SUBCASE("point mass at (0,0) gives v_0") {
        Eigen::MatrixXd p = Eigen::MatrixXd::Zero(3, 3);
        p(0, 0) = 1.0;
        const auto q = correlation_vector(make_joint_distribution(3, p), V3).q;
        CHECK(q[0] == doctest::Approx(1.0));
        CHECK(q[1] == doctest::Approx(0.0));
    }
    SUBCASE("mass on the (m+n) mod 3 = 1 sector gives v_1") {
        Eigen::MatrixXd p = Eigen::MatrixXd::Zero(3, 3);
        p(0, 1) = 0.5;
        p(2, 2) = 0.3;
        p(1, 0) = 0.2;
        const auto q = correlation_vector(make_joint_distribution(3, p), V3).q;
        CHECK(q[0] == doctest::Approx(-0.5).epsilon(1e-13));
        CHECK(q[1] == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-13));
    }
    SUBCASE("dimension mismatch rejected") {
        const auto P = make_joint_distribution(2, Eigen::MatrixXd::Constant(2, 2, 0.25));
        CHECK_THROWS_AS(correlation_vector(P, V3), std::invalid_argument);
    }
}

TEST_CASE("joint distribution validation") {
    Eigen::MatrixXd p = Eigen::MatrixXd::Constant(2, 2, 0.25);
    SUBCASE("tiny negative entries are clipped") {
        p(0, 0) = -5e-13;
        p(1, 1) = 0.5 + 5e-13;
        const auto P = make_joint_distribution(2, p);
        CHECK(P.p(0, 0) == 0.0);
    }
    SUBCASE("genuinely negative entries rejected") {
        p(0, 0) = -1e-6;
        CHECK_THROWS_AS(make_joint_distribution(2, p), std::invalid_argument);
    }
    SUBCASE("bad normalization rejected") {
        p(0, 0) = 0.5;
        CHECK_THROWS_AS(make_joint_distribution(2, p), std::invalid_argument);
    }
}

TEST_CASE("bell weights") {
    CHECK(bell_weights(2).size() == 1);
    CHECK(bell_weights(2)[0] == 1.0);
    for (int d : {2, 3, 5, 11}) {
        CHECK(bell_weights(d)[0] == 1.0);
        const auto w = bell_weights(d);
        for (int k = 1; k < d - 1; ++k) {
            CHECK(w[k] < w[k - 1]);
        }
    }
    CHECK(bell_weights(3)[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK_THROWS_AS(bell_weights(1), std::invalid_argument);
}

TEST_CASE("bell quantity") {
    SUBCASE("zero correlations") {
        const auto z = make_q(3, {0.0, 0.0});
        CHECK(bell_quantity(z, z, z, z).total == 0.0);
    }
    SUBCASE("d=3 optimal correlations reach 4/(6 sqrt 3 - 9)") {
        const double x = (2.0 * std::sqrt(3.0) + 1.0) / 6.0;
        const double y = (2.0 - std::sqrt(3.0)) / 6.0;
        const auto Q11 = make_q(3, {x, -y});
        const auto Q22 = make_q(3, {x, -y});
        const auto Q12 = make_q(3, {x, y});
        const auto Q21 = make_q(3, {-1.0 / 3.0, -2.0 / 3.0});
        const auto B = bell_quantity(Q11, Q12, Q21, Q22);
        CHECK(B.total == doctest::Approx(4.0 / (6.0 * std::sqrt(3.0) - 9.0)).epsilon(1e-12));
        CHECK(B.total == doctest::Approx(2.87293).epsilon(1e-5));
        CHECK(std::abs(B.total - B.weights.dot(B.components)) < 1e-12);
    }
    SUBCASE("d=2 CHSH arithmetic") {
        const double a = 1.0 / std::sqrt(2.0);
        const auto B = bell_quantity(make_q(2, {a}), make_q(2, {a}), make_q(2, {-a}),
                                     make_q(2, {a}));
        CHECK(B.total == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
    }
    SUBCASE("mismatched dimensions rejected") {
        CHECK_THROWS_AS(bell_quantity(make_q(3, {0, 0}), make_q(2, {0}), make_q(3, {0, 0}),
                                      make_q(3, {0, 0})),
                        std::invalid_argument);
    }
}

TEST_CASE("lhv bounds") {
    CHECK(lhv_bounds(2).lower == -2.0);
    CHECK(lhv_bounds(2).upper == 2.0);
    CHECK(lhv_bounds(3).lower == -4.0);
    CHECK(lhv_bounds(3).upper == 2.0);
    CHECK(lhv_bounds(5).lower == -3.0);
    CHECK_THROWS_AS(lhv_bounds(1), std::invalid_argument);
}

TEST_CASE("complex form matches the vector form at d=3") {
    CHECK(complex_form_bell_d3(0.0, 0.0, 0.0, 0.0) == 0.0);

    std::mt19937_64 rng(2024);
    const auto V = build_outcome_vectors(3);
    for (int trial = 0; trial < 200; ++trial) {
        const auto P11 = random_distribution(3, rng);
        const auto P12 = random_distribution(3, rng);
        const auto P21 = random_distribution(3, rng);
        const auto P22 = random_distribution(3, rng);
        const double vector_total =
            bell_quantity(correlation_vector(P11, V), correlation_vector(P12, V),
                          correlation_vector(P21, V), correlation_vector(P22, V))
                .total;
        const double complex_total =
            complex_form_bell_d3(complex_correlation_d3(P11), complex_correlation_d3(P12),
                                 complex_correlation_d3(P21), complex_correlation_d3(P22));
        CHECK(std::abs(vector_total - complex_total) < 1e-12);
    }
}

TEST_CASE("correlation vectors stay inside the unit ball") {
    std::mt19937_64 rng(7);
    for (int d : {2, 3, 5, 9}) {
        const auto V = build_outcome_vectors(d);
        for (int trial = 0; trial < 100; ++trial) {
            const auto P = random_distribution(d, rng);
            CHECK(correlation_vector(P, V).q.norm() <= 1.0 + 1e-10);
        }
    }
}

TEST_CASE("bell quantity is linear in each argument") {
    std::mt19937_64 rng(11);
    const auto V = build_outcome_vectors(4);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const auto Qa = correlation_vector(random_distribution(4, rng), V);
        const auto Qb = correlation_vector(random_distribution(4, rng), V);
        const auto Q2 = correlation_vector(random_distribution(4, rng), V);
        const auto Q3 = correlation_vector(random_distribution(4, rng), V);
        const auto Q4 = correlation_vector(random_distribution(4, rng), V);
        const double alpha = coeff(rng), beta = coeff(rng);
        const CorrelationVector zero{4, Eigen::VectorXd::Zero(3)};
        // Linearity in one slot with the others zeroed out.
        CorrelationVector mixed{4, alpha * Qa.q + beta * Qb.q};
        const double lhs = bell_quantity(mixed, zero, zero, zero).total;
        const double rhs = alpha * bell_quantity(Qa, zero, zero, zero).total +
                           beta * bell_quantity(Qb, zero, zero, zero).total;
        CHECK(std::abs(lhs - rhs) < 1e-12);
        // Affine combinations (alpha + beta = 1) with arbitrary other slots.
        CorrelationVector convex{4, alpha * Qa.q + (1.0 - alpha) * Qb.q};
        const double lhs2 = bell_quantity(convex, Q2, Q3, Q4).total;
        const double rhs2 = alpha * bell_quantity(Qa, Q2, Q3, Q4).total +
                            (1.0 - alpha) * bell_quantity(Qb, Q2, Q3, Q4).total;
        CHECK(std::abs(lhs2 - rhs2) < 1e-12);
        // Additivity across the four slots.
        const double sum_parts = bell_quantity(Qa, zero, zero, zero).total +
                                 bell_quantity(zero, Q2, zero, zero).total +
                                 bell_quantity(zero, zero, Q3, zero).total +
                                 bell_quantity(zero, zero, zero, Q4).total;
        CHECK(std::abs(bell_quantity(Qa, Q2, Q3, Q4).total - sum_parts) < 1e-12);
    }
}

TEST_CASE("deterministic distributions respect the LHV bounds") {
    for (int d : {2, 3, 4, 5}) {
        const auto bounds = lhv_bounds(d);
        const auto V = build_outcome_vectors(d);
        for (int a1 = 0; a1 < d; ++a1)
            for (int a2 = 0; a2 < d; ++a2)
                for (int b1 = 0; b1 < d; ++b1)
                    for (int b2 = 0; b2 < d; ++b2) {
                        const double value =
                            strategy_bell_value({a1, a2, b1, b2}, d);
                        CHECK(value >= bounds.lower - 1e-12);
                        CHECK(value <= bounds.upper + 1e-12);
                    }
    }
}
