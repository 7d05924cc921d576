#include <doctest.h>

#include <cmath>

#include "dyadlab/dyadic.hpp"
#include "dyadlab/rng.hpp"
#include "support/oracles.hpp"

using namespace dyadlab;

TEST_CASE("average of a constant function") {
    const StepFunction f = StepFunction::constant(5, 3.5);
    CHECK(f.average(DyadicIndex::root()) == 3.5);
    CHECK(f.average({3, 5}) == 3.5);
    CHECK(f.average({5, 31}) == 3.5);
}

TEST_CASE("average of the identity sampled at depth 2") {
    const StepFunction f(2, {1.0 / 8, 3.0 / 8, 5.0 / 8, 7.0 / 8});
    CHECK(f.average({1, 0}) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(f.average({1, 1}) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(f.average(DyadicIndex::root()) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("average matches the brute-force slice mean") {
    Xoshiro256 rng(42);
    const StepFunction f = oracle::random_step_function(8, rng);
    const DyadicIndex quarter{3, 2}; // [1/4, 3/8)
    double direct = 0.0;
    for (std::size_t i = 64; i < 96; ++i)
        direct += f.value(i);
    direct /= 32.0;
    CHECK(f.average(quarter) == doctest::Approx(direct).epsilon(1e-14));
    CHECK(f.average(quarter) == doctest::Approx(oracle::slice_mean(f, quarter)).epsilon(1e-14));
}

TEST_CASE("average rejects off-grid intervals") {
    const StepFunction f = StepFunction::constant(4, 1.0);
    CHECK_THROWS_AS((void)f.average({5, 0}), invalid_interval_error);
    CHECK_THROWS_AS((void)f.average({2, 4}), invalid_interval_error);
    CHECK_THROWS_AS((void)f.average({2, -1}), invalid_interval_error);
}

TEST_CASE("two-scale consistency is exact") {
    Xoshiro256 rng(7);
    const StepFunction f = oracle::random_step_function(8, rng, -10.0, 10.0);
    for (int level = 0; level < 8; ++level)
        for (std::int64_t k = 0; k < (std::int64_t{1} << level); ++k) {
            const DyadicIndex index{level, k};
            const double parent = f.average(index);
            const double halves =
                0.5 * (f.average(index.left_child()) + f.average(index.right_child()));
            CHECK(parent == halves);
        }
}

TEST_CASE("haar coefficient of a constant vanishes") {
    const StepFunction f = StepFunction::constant(4, 2.75);
    for (int level = 0; level < 4; ++level)
        for (std::int64_t k = 0; k < (std::int64_t{1} << level); ++k)
            CHECK(haar_coefficient(f, {level, k}) == 0.0);
}

TEST_CASE("haar functions are orthonormal") {
    const int depth = 4;
    const DyadicIndex j{2, 1};
    const StepFunction h = haar_function(depth, j);
    for (int level = 0; level < depth; ++level)
        for (std::int64_t k = 0; k < (std::int64_t{1} << level); ++k) {
            const double coeff = haar_coefficient(h, {level, k});
            if (DyadicIndex{level, k} == j)
                CHECK(coeff == doctest::Approx(1.0).epsilon(1e-14));
            else
                CHECK(std::abs(coeff) < 1e-14);
        }
}

TEST_CASE("haar coefficient equals the direct Riemann sum") {
    Xoshiro256 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const int depth = 3 + static_cast<int>(rng.next() % 6);
        const StepFunction f = oracle::random_step_function(depth, rng);
        const int level = static_cast<int>(rng.next() % depth);
        const std::int64_t position = static_cast<std::int64_t>(rng.next() % (1ull << level));
        const DyadicIndex index{level, position};
        CHECK(haar_coefficient(f, index) ==
              doctest::Approx(oracle::haar_coefficient_direct(f, index)).epsilon(1e-12));
    }
}

TEST_CASE("haar coefficient needs children") {
    const StepFunction f = StepFunction::constant(3, 1.0);
    CHECK_THROWS_AS((void)haar_coefficient(f, {3, 0}), no_children_error);
    CHECK_THROWS_AS((void)haar_function(3, {3, 0}), no_children_error);
}

TEST_CASE("dyadic sequence rejects off-tree indices") {
    DyadicSequence s(3);
    const DyadicIndex too_deep{3, 0};
    const DyadicIndex off_grid{1, 2};
    CHECK_THROWS_AS((void)s[too_deep], invalid_interval_error);
    CHECK_THROWS_AS((void)s[off_grid], invalid_interval_error);
    CHECK_THROWS_AS(DyadicSequence(3, std::vector<double>(5, 0.0)), shape_error);
}

TEST_CASE("haar coefficient is linear") {
    Xoshiro256 rng(13);
    const StepFunction f = oracle::random_step_function(6, rng);
    const StepFunction g = oracle::random_step_function(6, rng);
    const double a = 2.5, b = -1.25;
    const StepFunction combo = a * f + b * g;
    for (int level = 0; level < 6; ++level)
        for (std::int64_t k = 0; k < (std::int64_t{1} << level); ++k) {
            const DyadicIndex index{level, k};
            const double expected =
                a * haar_coefficient(f, index) + b * haar_coefficient(g, index);
            CHECK(haar_coefficient(combo, index) == doctest::Approx(expected).epsilon(1e-12));
        }
}

TEST_CASE("analysis of a constant") {
    const HaarSpectrum spectrum = haar_analyze(StepFunction::constant(6, -4.0));
    CHECK(spectrum.mean == -4.0);
    for (double c : spectrum.coeffs.entries())
        CHECK(c == 0.0);
}

TEST_CASE("analysis of the half indicator at depth 1") {
    const HaarSpectrum spectrum = haar_analyze(StepFunction(1, {1.0, 0.0}));
    CHECK(spectrum.mean == doctest::Approx(0.5));
    CHECK(spectrum.coeffs[DyadicIndex::root()] == doctest::Approx(0.5));
}

TEST_CASE("analysis agrees with per-interval coefficients") {
    Xoshiro256 rng(17);
    const StepFunction f = oracle::random_step_function(7, rng);
    const HaarSpectrum spectrum = haar_analyze(f);
    for (int level = 0; level < 7; ++level)
        for (std::int64_t k = 0; k < (std::int64_t{1} << level); ++k) {
            const DyadicIndex index{level, k};
            CHECK(spectrum.coeffs[index] == haar_coefficient(f, index));
        }
}

TEST_CASE("round trip and Parseval") {
    Xoshiro256 rng(19);
    for (int trial = 0; trial < 40; ++trial) {
        const int depth = 4 + static_cast<int>(rng.next() % 9);
        const StepFunction f = oracle::random_step_function(depth, rng, -3.0, 3.0);
        const HaarSpectrum spectrum = haar_analyze(f);
        const StepFunction back = haar_synthesize(spectrum);

        double max_error = 0.0, max_value = 0.0;
        for (std::size_t i = 0; i < f.cells(); ++i) {
            max_error = std::max(max_error, std::abs(f.value(i) - back.value(i)));
            max_value = std::max(max_value, std::abs(f.value(i)));
        }
        CHECK(max_error <= 1e-12 * max_value);

        double coeff_energy = spectrum.mean * spectrum.mean;
        for (double c : spectrum.coeffs.entries())
            coeff_energy += c * c;
        const double norm_sq = f.norm_l2() * f.norm_l2();
        CHECK(std::abs(norm_sq - coeff_energy) <= 1e-10 * norm_sq);
    }
}

TEST_CASE("synthesis builds mean plus Haar series") {
    HaarSpectrum spectrum{0.0, DyadicSequence(3)};
    spectrum.mean = 1.5;
    spectrum.coeffs[{1, 1}] = 2.0;
    const StepFunction f = haar_synthesize(spectrum);
    const StepFunction expected = StepFunction::constant(3, 1.5) + 2.0 * haar_function(3, {1, 1});
    for (std::size_t i = 0; i < f.cells(); ++i)
        CHECK(f.value(i) == doctest::Approx(expected.value(i)).epsilon(1e-14));
}

TEST_CASE("restriction preserves averages") {
    Xoshiro256 rng(23);
    const StepFunction f = oracle::random_step_function(6, rng);
    const DyadicIndex j{2, 3};
    const StepFunction g = restrict_to(f, j);
    CHECK(g.depth() == 4);
    CHECK(g.average(DyadicIndex::root()) == f.average(j));
    CHECK(g.average({1, 0}) == f.average(j.left_child()));
    CHECK(g.average({1, 1}) == f.average(j.right_child()));
    CHECK_THROWS_AS((void)restrict_to(f, DyadicIndex{6, 0}), invalid_interval_error);
}

TEST_CASE("step function shape validation") {
    CHECK_THROWS_AS(StepFunction(3, std::vector<double>(7, 1.0)), shape_error);
    CHECK_THROWS_AS(StepFunction(0, std::vector<double>{}), shape_error);
    CHECK_THROWS_AS(inner_product(StepFunction::constant(2, 1.0), StepFunction::constant(3, 1.0)),
                    shape_error);
}

TEST_CASE("inner product weighs cells by their measure") {
    const StepFunction f(2, {1.0, 2.0, 3.0, 4.0});
    CHECK(inner_product(f, StepFunction::constant(2, 1.0)) == doctest::Approx(2.5));
    CHECK(f.integral() == doctest::Approx(2.5));
    CHECK(f.norm_l2() == doctest::Approx(std::sqrt(30.0 / 4.0)));
}
