#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "grbm/checkpoint.hpp"
#include "grbm/errors.hpp"
#include "grbm/exact.hpp"
#include "grbm/model.hpp"
#include "support/oracles.hpp"

using namespace grbm;

namespace {

RbmModel zero_model(int I, int J) {
    return RbmModel::from_params(Eigen::VectorXd::Zero(I), Eigen::VectorXd::Zero(J),
                                 Eigen::MatrixXd::Zero(I, J));
}

}  // namespace

TEST_CASE("binary vector validates entries") {
    CHECK_THROWS_AS(BinaryVector(Eigen::VectorXd::Constant(3, 0.5)),
                    std::invalid_argument);
    CHECK_NOTHROW(BinaryVector::of({0, 1, 1, 0}));
    CHECK(BinaryVector::from_index(5, 4).vec() == BinaryVector::of({1, 0, 1, 0}).vec());
}

TEST_CASE("energy matches the explicit bilinear form") {
    SUBCASE("all-zero parameters give zero energy") {
        const RbmModel m = zero_model(3, 2);
        CHECK(energy(m, BinaryVector::of({1, 0, 1}), BinaryVector::of({1, 1})) == 0.0);
    }
    SUBCASE("hand-evaluated 2x1 example") {
        Eigen::MatrixXd w(2, 1);
        w << 2.0, 0.0;
        const RbmModel m = RbmModel::from_params(Eigen::Vector2d(1.0, -1.0),
                                                 Eigen::VectorXd::Constant(1, 0.5), w);
        CHECK(energy(m, BinaryVector::of({1, 0}), BinaryVector::of({1})) ==
              doctest::Approx(-3.5).epsilon(1e-15));
    }
    SUBCASE("all-zero configurations kill every term") {
        const RbmModel m = oracle::random_model(4, 3, 1.0, 7);
        CHECK(energy(m, BinaryVector::zeros(4), BinaryVector::zeros(3)) == 0.0);
    }
    SUBCASE("dimension mismatch names the offending vector") {
        const RbmModel m = zero_model(3, 2);
        CHECK_THROWS_WITH_AS(energy(m, BinaryVector::zeros(2), BinaryVector::zeros(2)),
                             doctest::Contains("visible"), DimensionError);
        CHECK_THROWS_WITH_AS(energy(m, BinaryVector::zeros(3), BinaryVector::zeros(3)),
                             doctest::Contains("hidden"), DimensionError);
    }
}

TEST_CASE("hidden conditional") {
    SUBCASE("all-zero parameters give 0.5 everywhere") {
        const RbmModel m = zero_model(2, 3);
        const Eigen::VectorXd p = hidden_conditional(m, BinaryVector::of({1, 0}));
        for (int j = 0; j < 3; ++j) CHECK(p[j] == 0.5);
    }
    SUBCASE("a -30 bias drives the unit dead") {
        RbmModel m = zero_model(2, 2);
        m.c[1] = -30.0;
        const Eigen::VectorXd p = hidden_conditional(m, BinaryVector::of({1, 1}));
        CHECK(p[1] < 1e-12);
        CHECK(p[1] > 0.0);
    }
    SUBCASE("numeric sigmoid(2)") {
        Eigen::MatrixXd w(2, 1);
        w << 1.0, 1.0;
        const RbmModel m =
            RbmModel::from_params(Eigen::Vector2d::Zero(), Eigen::VectorXd::Zero(1), w);
        const Eigen::VectorXd p = hidden_conditional(m, BinaryVector::of({1, 1}));
        CHECK(p[0] == doctest::Approx(0.8807970779778823).epsilon(1e-14));
    }
}

TEST_CASE("visible conditional") {
    SUBCASE("zero model") {
        const RbmModel m = zero_model(2, 1);
        const Eigen::VectorXd p = visible_conditional(m, BinaryVector::of({0}));
        CHECK(p[0] == 0.5);
        CHECK(p[1] == 0.5);
    }
    SUBCASE("all-zero hidden leaves only the bias") {
        RbmModel m = oracle::random_model(3, 2, 1.0, 11);
        const Eigen::VectorXd p = visible_conditional(m, BinaryVector::zeros(2));
        for (int i = 0; i < 3; ++i)
            CHECK(p[i] == doctest::Approx(sigmoid(m.b[i])).epsilon(1e-15));
    }
    SUBCASE("numeric sigmoid(+-1)") {
        Eigen::MatrixXd w(2, 1);
        w << 1.0, -1.0;
        const RbmModel m =
            RbmModel::from_params(Eigen::Vector2d::Zero(), Eigen::VectorXd::Zero(1), w);
        const Eigen::VectorXd p = visible_conditional(m, BinaryVector::of({1}));
        CHECK(p[0] == doctest::Approx(0.7310585786300049).epsilon(1e-14));
        CHECK(p[1] == doctest::Approx(0.2689414213699951).epsilon(1e-14));
    }
}

TEST_CASE("sample_binary") {
    RngStream rng(42, 1);
    SUBCASE("degenerate probabilities are deterministic") {
        CHECK(sample_binary(Eigen::VectorXd::Zero(8), rng).vec() ==
              Eigen::VectorXd::Zero(8));
        CHECK(sample_binary(Eigen::VectorXd::Ones(8), rng).vec() ==
              Eigen::VectorXd::Ones(8));
    }
    SUBCASE("rejects probabilities outside [0,1]") {
        CHECK_THROWS_AS(sample_binary(Eigen::VectorXd::Constant(2, 1.5), rng),
                        std::invalid_argument);
        CHECK_THROWS_AS(sample_binary(Eigen::VectorXd::Constant(2, -0.1), rng),
                        std::invalid_argument);
    }
    SUBCASE("fair coins concentrate around one half") {
        const Eigen::VectorXd half = Eigen::VectorXd::Constant(4, 0.5);
        Eigen::VectorXd mean = Eigen::VectorXd::Zero(4);
        RngStream coin(7, 2);
        const int draws = 10000;
        for (int t = 0; t < draws; ++t) mean += sample_binary(half, coin).vec();
        mean /= draws;
        for (int k = 0; k < 4; ++k) {
            CHECK(mean[k] >= 0.48);
            CHECK(mean[k] <= 0.52);
        }
    }
    SUBCASE("identical streams give identical draws wherever they are used") {
        const Eigen::VectorXd p = Eigen::VectorXd::Constant(16, 0.37);
        RngStream a(123, 9);
        RngStream b(123, 9);
        const BinaryVector first = sample_binary(p, a);
        const BinaryVector second = sample_binary(p, b);
        CHECK(first.vec() == second.vec());
    }
}

TEST_CASE("free energy") {
    SUBCASE("all-zero parameters give -J log 2") {
        const RbmModel m = zero_model(3, 4);
        CHECK(free_energy(m, BinaryVector::zeros(3)) ==
              doctest::Approx(-4.0 * std::log(2.0)).epsilon(1e-15));
    }
    SUBCASE("a dead unit contributes nothing") {
        RbmModel m = oracle::random_model(3, 1, 0.5, 3);
        m.c[0] = -30.0;
        m.W.col(0).setZero();
        const BinaryVector v = BinaryVector::of({1, 0, 1});
        CHECK(free_energy(m, v) == doctest::Approx(-m.b.dot(v.vec())).epsilon(1e-12));
    }
    SUBCASE("matches hidden-state enumeration on random models") {
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            const RbmModel m = oracle::random_model(2, 2, 1.2, 100 + seed);
            for (std::uint64_t vi = 0; vi < 4; ++vi) {
                const BinaryVector v = BinaryVector::from_index(vi, 2);
                const double by_enum = oracle::hidden_sum(m, v);
                CHECK(std::exp(-free_energy(m, v)) ==
                      doctest::Approx(by_enum).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("exact partition") {
    SUBCASE("all-zero parameters count configurations") {
        CHECK(exact_partition(zero_model(2, 1)) == doctest::Approx(8.0).epsilon(1e-12));
        CHECK(exact_partition(zero_model(3, 2)) == doctest::Approx(32.0).epsilon(1e-12));
    }
    SUBCASE("two independent routes agree") {
        const RbmModel m = oracle::random_model(4, 3, 1.0, 21);
        const double z = exact_partition(m);
        CHECK(z == doctest::Approx(oracle::partition_via_free_energy(m)).epsilon(1e-10));
        CHECK(z == doctest::Approx(oracle::partition(m)).epsilon(1e-10));
        CHECK(z > 0.0);
    }
    SUBCASE("capacity guard is explicit") {
        const RbmModel big = zero_model(20, 8);
        CHECK_THROWS_AS(exact_partition(big), CapacityError);
        CHECK_THROWS_AS(exact_marginal(big, BinaryVector::zeros(20)), CapacityError);
    }
}

TEST_CASE("exact marginal") {
    SUBCASE("all-zero parameters are uniform") {
        const RbmModel m = zero_model(3, 2);
        for (std::uint64_t vi = 0; vi < 8; ++vi)
            CHECK(exact_marginal(m, BinaryVector::from_index(vi, 3)) ==
                  doctest::Approx(1.0 / 8.0).epsilon(1e-12));
    }
    SUBCASE("an empty hidden layer cannot be built") {
        CHECK_THROWS(RbmModel::from_params(Eigen::VectorXd::Zero(1),
                                           Eigen::VectorXd::Zero(0),
                                           Eigen::MatrixXd::Zero(1, 0)));
        CHECK_THROWS(RbmModel::init(1, 0, RngStream(0, 0)));
    }
    SUBCASE("marginals sum to one") {
        const RbmModel m = oracle::random_model(4, 2, 1.5, 33);
        double total = 0.0;
        for (std::uint64_t vi = 0; vi < 16; ++vi)
            total += exact_marginal(m, BinaryVector::from_index(vi, 4));
        CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("conditional and joint probabilities are consistent") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const RbmModel m = oracle::random_model(3, 3, 1.0, 500 + seed);
        for (std::uint64_t vi = 0; vi < 8; ++vi) {
            const BinaryVector v = BinaryVector::from_index(vi, 3);
            const Eigen::VectorXd p = hidden_conditional(m, v);
            for (int j = 0; j < 3; ++j)
                CHECK(p[j] == doctest::Approx(oracle::conditional_by_enumeration(m, v, j))
                                  .epsilon(1e-10));
        }
    }
}

TEST_CASE("dead-neuron invariance") {
    RbmModel m = oracle::random_model(4, 3, 1.0, 77);
    m.c[1] = -30.0;
    m.W.col(1).setZero();

    RbmModel trimmed;
    trimmed.b = m.b;
    trimmed.c.resize(2);
    trimmed.c << m.c[0], m.c[2];
    trimmed.W.resize(4, 2);
    trimmed.W.col(0) = m.W.col(0);
    trimmed.W.col(1) = m.W.col(2);

    for (std::uint64_t vi = 0; vi < 16; ++vi) {
        const BinaryVector v = BinaryVector::from_index(vi, 4);
        CHECK(std::abs(exact_marginal(m, v) - exact_marginal(trimmed, v)) < 1e-9);
    }
}

TEST_CASE("checkpoint round trip is bit exact") {
    const auto path = std::filesystem::temp_directory_path() / "grbm_ck_test.bin";
    const RbmModel m = oracle::random_model(5, 3, 0.8, 9);
    save_checkpoint(path.string(), m, 1234);

    const Checkpoint ck = load_checkpoint(path.string());
    CHECK(ck.step == 1234);
    CHECK(ck.model.b == m.b);
    CHECK(ck.model.c == m.c);
    CHECK(ck.model.W == m.W);
    CHECK(!ck.head.has_value());

    SUBCASE("head section appends and loads") {
        SoftmaxHead head;
        head.U = Eigen::MatrixXd::Random(3, 4);
        head.d = Eigen::VectorXd::Random(4);
        append_head(path.string(), head);
        const Checkpoint with_head = load_checkpoint(path.string());
        REQUIRE(with_head.head.has_value());
        CHECK(with_head.head->U == head.U);
        CHECK(with_head.head->d == head.d);
    }

    SUBCASE("identical saves are byte identical") {
        const auto other = std::filesystem::temp_directory_path() / "grbm_ck_test2.bin";
        save_checkpoint(other.string(), m, 1234);
        std::ifstream a(path, std::ios::binary), b(other, std::ios::binary);
        const std::string bytes_a((std::istreambuf_iterator<char>(a)), {});
        const std::string bytes_b((std::istreambuf_iterator<char>(b)), {});
        CHECK(bytes_a == bytes_b);
        std::filesystem::remove(other);
    }

    SUBCASE("corrupted magic is rejected") {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << "NOPE";
        out.close();
        CHECK_THROWS_AS(load_checkpoint(path.string()), DataError);
    }
    std::filesystem::remove(path);
}
