#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "portopt/errors.hpp"
#include "portopt/qubo.hpp"

using namespace portopt;
using namespace testutil;

namespace {

void check_transform_equivalence(const QuboProblem& q, double tol = 1e-9) {
    const IsingProblem is = qubo_to_ising(q);
    for (std::uint64_t m = 0; m < (1ULL << q.n()); ++m) {
        const BinaryConfig x = bits_of(m, q.n());
        CHECK(std::abs(qubo_energy(q, x) - ising_energy(is, binary_to_spin(x))) <= tol);
    }
}

}  // namespace

TEST_CASE("qubo_to_ising: zero model maps to zero model") {
    const QuboProblem q = make_qubo(Eigen::MatrixXd::Zero(3, 3), 0.0);
    const IsingProblem is = qubo_to_ising(q);
    CHECK(is.j.isZero(0.0));
    CHECK(is.h.isZero(0.0));
    CHECK(is.offset == 0.0);
}

TEST_CASE("qubo_to_ising: single-edge independent-set model") {
    Eigen::MatrixXd q(2, 2);
    q << -1.0, 1.0, 1.0, -1.0;  // -x1 - x2 + 2 x1 x2
    const QuboProblem p = make_qubo(q, 0.0);
    check_transform_equivalence(p);

    CHECK(qubo_energy(p, {1, 0}) == doctest::Approx(-1.0));
    CHECK(qubo_energy(p, {0, 1}) == doctest::Approx(-1.0));
    CHECK(qubo_energy(p, {0, 0}) == doctest::Approx(0.0));
    CHECK(qubo_energy(p, {1, 1}) == doctest::Approx(0.0));
}

TEST_CASE("qubo_to_ising: random 3-variable model, seed 7") {
    std::mt19937_64 rng(7);
    check_transform_equivalence(random_qubo(3, rng));
}

TEST_CASE("ising_to_qubo: zero model") {
    const IsingProblem p =
        make_ising(Eigen::MatrixXd::Zero(2, 2), Eigen::VectorXd::Zero(2), 0.0);
    const QuboProblem q = ising_to_qubo(p);
    CHECK(q.q.isZero(0.0));
    CHECK(q.offset == 0.0);
}

TEST_CASE("ising_to_qubo: two-spin ferromagnet round trip") {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2, 2);
    j(0, 1) = -1.0;
    const IsingProblem p = make_ising(j, Eigen::VectorXd::Zero(2), 0.0);
    const IsingProblem round = qubo_to_ising(ising_to_qubo(p));
    for (int s0 : {-1, 1}) {
        for (int s1 : {-1, 1}) {
            const SpinConfig z{s0, s1};
            CHECK(ising_energy(p, z) == doctest::Approx(ising_energy(round, z)).epsilon(1e-9));
        }
    }
}

TEST_CASE("ising_to_qubo: random 4-spin round trip, seed 11") {
    std::mt19937_64 rng(11);
    const IsingProblem p = random_ising(4, rng);
    const IsingProblem round = qubo_to_ising(ising_to_qubo(p));
    for (std::uint64_t m = 0; m < 16; ++m) {
        const SpinConfig z = binary_to_spin(bits_of(m, 4));
        CHECK(ising_energy(p, z) == doctest::Approx(ising_energy(round, z)).epsilon(1e-9));
    }
}

TEST_CASE("qubo_energy: empty selection returns the offset") {
    std::mt19937_64 rng(5);
    const QuboProblem p = random_qubo(4, rng);
    CHECK(qubo_energy(p, {0, 0, 0, 0}) == doctest::Approx(p.offset));
}

TEST_CASE("qubo_energy: independent-set triangle at (1,1,0)") {
    Eigen::MatrixXd q(3, 3);
    q << -1, 1, 1, 1, -1, 1, 1, 1, -1;
    CHECK(qubo_energy(make_qubo(q, 0.0), {1, 1, 0}) == doctest::Approx(0.0));
}

TEST_CASE("qubo_energy: two-asset mean-variance example") {
    // mu = (0.1, 0.2), sigma = 0.04 I, gamma = 0.5, both assets selected.
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(2, 2);
    q(0, 0) = -0.1 + 0.5 * 0.04;
    q(1, 1) = -0.2 + 0.5 * 0.04;
    CHECK(qubo_energy(make_qubo(q, 0.0), {1, 1}) == doctest::Approx(-0.26).epsilon(1e-12));
}

TEST_CASE("qubo_energy: length mismatch") {
    std::mt19937_64 rng(5);
    const QuboProblem p = random_qubo(3, rng);
    CHECK_THROWS_AS(qubo_energy(p, {1, 0}), DimensionError);
}

TEST_CASE("ising_energy: field-free and coupling-free model returns offset") {
    const IsingProblem p =
        make_ising(Eigen::MatrixXd::Zero(3, 3), Eigen::VectorXd::Zero(3), 2.5);
    CHECK(ising_energy(p, {1, -1, 1}) == doctest::Approx(2.5));
}

TEST_CASE("ising_energy: single antiparallel coupling") {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2, 2);
    j(0, 1) = 1.0;
    const IsingProblem p = make_ising(j, Eigen::VectorXd::Zero(2), 0.0);
    CHECK(ising_energy(p, {1, -1}) == doctest::Approx(-1.0));
}

TEST_CASE("ising_energy: random 5-spin model matches the transformed QUBO, seed 3") {
    std::mt19937_64 rng(3);
    const IsingProblem p = random_ising(5, rng);
    const QuboProblem q = ising_to_qubo(p);
    for (std::uint64_t m = 0; m < 32; ++m) {
        const BinaryConfig x = bits_of(m, 5);
        CHECK(ising_energy(p, binary_to_spin(x)) ==
              doctest::Approx(qubo_energy(q, x)).epsilon(1e-9));
    }
    CHECK_THROWS_AS(ising_energy(p, {1, -1}), DimensionError);
}

TEST_CASE("restrict_to: all sites reproduce the model up to the offset") {
    std::mt19937_64 rng(21);
    const IsingProblem p = random_ising(4, rng);
    const IsingProblem r = restrict_to(p, {0, 1, 2, 3});
    for (std::uint64_t m = 0; m < 16; ++m) {
        const SpinConfig z = binary_to_spin(bits_of(m, 4));
        CHECK(ising_energy(r, z) == doctest::Approx(ising_energy(p, z) - p.offset).epsilon(1e-12));
    }
}

TEST_CASE("restrict_to: chain restricted to a prefix keeps only internal terms") {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(4, 4);
    j(0, 1) = 1.0;
    j(1, 2) = 2.0;
    j(2, 3) = 3.0;
    Eigen::VectorXd h(4);
    h << 4, 5, 6, 7;
    const IsingProblem p = make_ising(j, h, 1.0);

    const IsingProblem r = restrict_to(p, {0, 1});
    CHECK(r.n() == 2);
    CHECK(r.j(0, 1) == 1.0);
    CHECK(r.h(0) == 4.0);
    CHECK(r.h(1) == 5.0);
    CHECK(r.offset == 0.0);

    const IsingProblem single = restrict_to(p, {2});
    CHECK(single.n() == 1);
    CHECK(single.h(0) == 6.0);
}

TEST_CASE("restrict_to: bad site lists") {
    std::mt19937_64 rng(2);
    const IsingProblem p = random_ising(4, rng);
    CHECK_THROWS_AS(restrict_to(p, {0, 0}), IndexError);
    CHECK_THROWS_AS(restrict_to(p, {0, 4}), IndexError);
    CHECK_THROWS_AS(restrict_to(p, {-1}), IndexError);
}

TEST_CASE("property: transform equivalence by enumeration up to n = 12") {
    std::mt19937_64 rng(1234);
    for (int n : {2, 5, 8, 12}) {
        check_transform_equivalence(random_qubo(n, rng));
    }
}

TEST_CASE("property: energies are invariant under symmetrization") {
    std::mt19937_64 rng(99);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int n = 5;
    Eigen::MatrixXd a(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) a(r, c) = gauss(rng);
    }
    const QuboProblem p = make_qubo_symmetrized(a, 0.0);
    for (std::uint64_t m = 0; m < (1ULL << n); ++m) {
        const BinaryConfig xb = bits_of(m, n);
        Eigen::VectorXd x(n);
        for (int i = 0; i < n; ++i) x(i) = xb[i];
        CHECK(qubo_energy(p, xb) == doctest::Approx(x.transpose() * a * x).epsilon(1e-12));
    }
}

TEST_CASE("property: restriction equals zeroing the out-of-set terms") {
    std::mt19937_64 rng(77);
    const int n = 6;
    const IsingProblem p = random_ising(n, rng);
    const std::vector<int> sites{0, 2, 5};

    // Zero every coupling/bias touching a variable outside the set.
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd h = Eigen::VectorXd::Zero(n);
    for (int a : sites) {
        h(a) = p.h(a);
        for (int b : sites) {
            if (a < b) j(a, b) = p.j(a, b);
        }
    }
    const IsingProblem zeroed = make_ising(j, h, 0.0);
    const IsingProblem r = restrict_to(p, sites);

    std::uniform_int_distribution<int> coin(0, 1);
    for (int trial = 0; trial < 50; ++trial) {
        SpinConfig full(n);
        for (int i = 0; i < n; ++i) full[i] = coin(rng) ? 1 : -1;
        SpinConfig sub(sites.size());
        for (std::size_t a = 0; a < sites.size(); ++a) sub[a] = full[sites[a]];
        CHECK(ising_energy(r, sub) == doctest::Approx(ising_energy(zeroed, full)).epsilon(1e-12));
    }
}

TEST_CASE("json: round trips for both model forms") {
    std::mt19937_64 rng(8);
    const QuboProblem q = random_qubo(3, rng);
    const QuboProblem q2 = qubo_from_json(qubo_to_json(q));
    CHECK((q.q - q2.q).cwiseAbs().maxCoeff() == 0.0);
    CHECK(q.offset == q2.offset);

    const IsingProblem p = random_ising(4, rng);
    const IsingProblem p2 = ising_from_json(ising_to_json(p));
    CHECK((p.j - p2.j).cwiseAbs().maxCoeff() == 0.0);
    CHECK((p.h - p2.h).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("make_qubo rejects asymmetric input") {
    Eigen::MatrixXd a(2, 2);
    a << 0, 1, 0, 0;
    CHECK_THROWS_AS(make_qubo(a, 0.0), DimensionError);
    CHECK_NOTHROW(make_qubo_symmetrized(a, 0.0));
}
