#include <doctest.h>

#include <cmath>

#include "dyadlab/inequality.hpp"
#include "dyadlab/rng.hpp"
#include "support/oracles.hpp"

using namespace dyadlab;

namespace {

Weight two_valued_weight(int depth, double a, double b) {
    std::vector<double> values(std::size_t{1} << depth, b);
    for (std::size_t i = 0; i < values.size() / 2; ++i)
        values[i] = a;
    return Weight(StepFunction(depth, std::move(values)));
}

} // namespace

TEST_CASE("prop1 single-term example") {
    const Weight one(StepFunction::constant(3, 1.0));
    const DyadicIndex j{1, 0};
    DyadicSequence lambda(3);
    lambda[j] = j.length();

    const CheckReport report = check_prop1_main(one, lambda, j);
    CHECK(report.lhs == doctest::Approx(1.0));
    CHECK(report.rhs == doctest::Approx(4.0)); // Q = 1, m_J w = 1
    CHECK(report.ratio == doctest::Approx(0.25));
    CHECK(report.pass);

    // consequence on the same data: a2 = 1, so the numbers coincide
    const CheckReport consequence = check_prop1_consequence(one, lambda, j);
    CHECK(consequence.lhs == doctest::Approx(1.0));
    CHECK(consequence.rhs == doctest::Approx(4.0));
    CHECK(consequence.pass);
}

TEST_CASE("prop1 with the zero sequence") {
    const Weight w = gen_cascade_weight(5, 0.5, 1);
    const CheckReport report = check_prop1_main(w, DyadicSequence(5), DyadicIndex::root());
    CHECK(report.lhs == 0.0);
    CHECK(report.ratio == 0.0);
    CHECK(report.pass);
}

TEST_CASE("prop1 and consequence hold on random data") {
    Xoshiro256 rng(61);
    for (int trial = 0; trial < 30; ++trial) {
        const Weight w = gen_cascade_weight(8, 0.1 + 0.8 * rng.uniform(), 500 + trial);
        const DyadicSequence lambda = oracle::random_nonnegative_sequence(8, rng);
        const CheckReport main = worst_over_roots(CheckKind::prop1, w, nullptr, &lambda);
        CHECK(main.pass);
        CHECK(main.ratio <= 1.0 + 1e-10);
        const CheckReport consequence =
            worst_over_roots(CheckKind::prop1_consequence, w, nullptr, &lambda);
        CHECK(consequence.pass);
        CHECK(consequence.ratio <= 1.0 + 1e-10);
    }
}

TEST_CASE("carleson-b attains ratio 1 at the BMO argmax") {
    SUBCASE("constant symbol") {
        const StepFunction b = StepFunction::constant(5, 2.0);
        const CheckReport report = check_carleson_b(b, DyadicIndex::root());
        CHECK(report.lhs == 0.0);
        CHECK(report.pass);
    }
    SUBCASE("single Haar at the root") {
        const StepFunction b = haar_function(5, DyadicIndex::root());
        const CheckReport report = check_carleson_b(b, DyadicIndex::root());
        CHECK(report.ratio == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(report.pass);
    }
    SUBCASE("random symbols: the sweep maximum is exactly the BMO norm") {
        Xoshiro256 rng(67);
        const Weight unused(StepFunction::constant(7, 1.0));
        for (int trial = 0; trial < 20; ++trial) {
            const StepFunction b = oracle::random_step_function(7, rng);
            const CheckReport worst = worst_over_roots(CheckKind::carleson_b, unused, &b, nullptr);
            CHECK(worst.ratio == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(worst.pass);
            CHECK(worst.witness == bmo_norm_carleson_detail(b).argmax);
        }
    }
}

TEST_CASE("embedding hypothesis") {
    SUBCASE("single Haar symbol, arithmetic check at the root") {
        const Weight w = gen_cascade_weight(6, 0.5, 3);
        const StepFunction b = haar_function(6, DyadicIndex::root());
        const CheckReport report = check_embedding_hypothesis(b, w, DyadicIndex::root());
        const double a2 = a2_characteristic(w).value;
        // single nonzero coefficient: LHS = m_{[0,1)} w^-1, RHS = 4 a2 m_J w^-1
        CHECK(report.lhs == doctest::Approx(w.reciprocal_average(DyadicIndex::root())));
        CHECK(report.ratio == doctest::Approx(1.0 / (4.0 * a2)).epsilon(1e-12));
        CHECK(report.pass);
    }
    SUBCASE("random sweep") {
        Xoshiro256 rng(71);
        for (int trial = 0; trial < 15; ++trial) {
            const Weight w = gen_cascade_weight(8, 0.7, 700 + trial);
            const StepFunction b = oracle::random_step_function(8, rng);
            const CheckReport report = worst_over_roots(CheckKind::embedding, w, &b, nullptr);
            CHECK(report.pass);
        }
    }
}

TEST_CASE("worst_over_roots requires the needed inputs") {
    const Weight w(StepFunction::constant(4, 1.0));
    CHECK_THROWS_AS((void)worst_over_roots(CheckKind::prop1, w, nullptr, nullptr),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)worst_over_roots(CheckKind::carleson_b, w, nullptr, nullptr),
                    std::invalid_argument);
}

TEST_CASE("prop2 and consequence") {
    SUBCASE("constant weight gives zero left side") {
        const Weight one(StepFunction::constant(5, 3.0));
        CHECK(check_prop2(one, DyadicIndex::root()).lhs == 0.0);
        CHECK(check_prop2(one, DyadicIndex::root()).pass);
    }
    SUBCASE("two-valued weight at depth 1: hand arithmetic") {
        const Weight w = two_valued_weight(1, 4.0, 1.0);
        // single term I = root: rel = (4-1)/2.5 = 1.2
        const double rel_sq = 1.44;
        const double quarter_power = std::pow(2.5 * 0.625, 0.25);
        const CheckReport p2 = check_prop2(w, DyadicIndex::root());
        CHECK(p2.lhs == doctest::Approx(rel_sq * quarter_power).epsilon(1e-14));
        CHECK(p2.rhs == doctest::Approx(quarter_power).epsilon(1e-14));
        CHECK(p2.ratio == doctest::Approx(rel_sq).epsilon(1e-13));
        CHECK(p2.pass); // 1.44 <= 256

        const CheckReport p2c = check_prop2_consequence(w, DyadicIndex::root());
        CHECK(p2c.lhs == doctest::Approx(rel_sq * 2.5 * 0.625).epsilon(1e-14));
        CHECK(p2c.rhs == doctest::Approx(a2_characteristic(w).value).epsilon(1e-14));
        CHECK(p2c.pass);
    }
    SUBCASE("cascade sweep stays within the frozen constant") {
        for (int trial = 0; trial < 10; ++trial) {
            const Weight w = gen_cascade_weight(9, 0.85, 900 + trial);
            CHECK(worst_over_roots(CheckKind::prop2, w, nullptr, nullptr).pass);
            CHECK(worst_over_roots(CheckKind::prop2_consequence, w, nullptr, nullptr).pass);
        }
    }
}

TEST_CASE("prop3 and the essential inequality") {
    SUBCASE("constant weight") {
        const Weight one(StepFunction::constant(5, 2.0));
        CHECK(check_prop3_essential(one, DyadicIndex::root()).lhs == 0.0);
    }
    SUBCASE("two-valued weight at depth 1: hand arithmetic") {
        const double a = 4.0, b = 1.0;
        const Weight w = two_valued_weight(1, a, b);
        const CheckReport essential = check_prop3_essential(w, DyadicIndex::root());
        const double mean = 0.5 * (a + b);
        CHECK(essential.lhs ==
              doctest::Approx((a - b) * (a - b) / (mean * mean * mean)).epsilon(1e-14));
        CHECK(essential.rhs == doctest::Approx(0.5 * (1 / a + 1 / b)).epsilon(1e-14));
        CHECK(essential.ratio <= 4.0);
        CHECK(essential.pass);

        const CheckReport full = check_prop3(w, DyadicIndex::root());
        const double rel = (a - b) / mean;
        CHECK(full.lhs == doctest::Approx(rel * rel * 0.625).epsilon(1e-14));
        CHECK(full.rhs ==
              doctest::Approx(a2_characteristic(w).value * 0.625).epsilon(1e-14));
        CHECK(full.pass);
    }
    SUBCASE("sweeps with cascade and power weights") {
        for (int trial = 0; trial < 10; ++trial) {
            const Weight w = gen_cascade_weight(9, 0.85, 1100 + trial);
            CHECK(worst_over_roots(CheckKind::prop3_essential, w, nullptr, nullptr).pass);
            CHECK(worst_over_roots(CheckKind::prop3, w, nullptr, nullptr).pass);
        }
        for (double alpha : {-0.8, -0.3, 0.4, 0.9}) {
            const Weight w = gen_power_weight(alpha, 10);
            CHECK(worst_over_roots(CheckKind::prop3_essential, w, nullptr, nullptr).pass);
        }
    }
}

TEST_CASE("wittwer report") {
    SUBCASE("constant weight gives zero") {
        const Weight one(StepFunction::constant(5, 1.0));
        const CheckReport report = check_wittwer(one, DyadicIndex::root());
        CHECK(report.lhs == 0.0);
        CHECK(report.pass);
    }
    SUBCASE("two-valued weight at depth 1") {
        const Weight w = two_valued_weight(1, 4.0, 1.0);
        const CheckReport report = check_wittwer(w, DyadicIndex::root());
        const double disb = 3.0 / 5.0;
        CHECK(report.lhs == doctest::Approx(disb * disb * 2.5).epsilon(1e-14));
        CHECK(report.rhs == doctest::Approx((25.0 / 16.0) * 2.5).epsilon(1e-14));
        CHECK(report.constant == suite::kWittwerConstant);
        CHECK(report.pass);
    }
    SUBCASE("pass constant is configurable") {
        const Weight w = two_valued_weight(4, 4.0, 1.0);
        const CheckReport strict = check_wittwer(w, DyadicIndex::root(), {}, 1e-9);
        CHECK_FALSE(strict.pass);
    }
}

TEST_CASE("bilinear hypotheses") {
    SUBCASE("constant symbol or constant weight zero out alpha") {
        const Weight w = gen_cascade_weight(6, 0.5, 5);
        for (const auto& report :
             check_bilinear_hypotheses(StepFunction::constant(6, 2.0), w, DyadicIndex::root()))
            CHECK(report.lhs == 0.0);
        const Weight one(StepFunction::constant(6, 1.0));
        Xoshiro256 rng(73);
        const StepFunction b = oracle::random_step_function(6, rng);
        for (const auto& report : check_bilinear_hypotheses(b, one, DyadicIndex::root()))
            CHECK(report.lhs == 0.0);
    }
    SUBCASE("random sweep against 16 ||b||") {
        Xoshiro256 rng(79);
        for (int trial = 0; trial < 10; ++trial) {
            const Weight w = gen_cascade_weight(8, 0.8, 1300 + trial);
            const StepFunction b = oracle::random_step_function(8, rng);
            for (const auto& report : worst_bilinear_over_roots(b, w)) {
                CHECK(report.pass);
                CHECK(report.constant ==
                      doctest::Approx(suite::kBilinearFactor * bmo_norm_carleson(b)));
            }
        }
    }
}

TEST_CASE("reports are reproducible after re-rooting") {
    Xoshiro256 rng(83);
    const int depth = 8;
    const Weight w = gen_cascade_weight(depth, 0.7, 17);
    const StepFunction b = oracle::random_step_function(depth, rng);
    const DyadicIndex j{2, 1};

    CheckContext ctx;
    ctx.a2 = a2_characteristic(w).value;
    ctx.bmo = bmo_norm_carleson(b);

    const Weight w_sub = restrict_to(w, j);
    const StepFunction b_sub = restrict_to(b, j);

    SUBCASE("embedding") {
        const CheckReport global = check_embedding_hypothesis(b, w, j, ctx);
        const CheckReport local = check_embedding_hypothesis(b_sub, w_sub, DyadicIndex::root(), ctx);
        CHECK(local.lhs == doctest::Approx(global.lhs).epsilon(1e-10));
        CHECK(local.rhs == doctest::Approx(global.rhs).epsilon(1e-10));
        CHECK(local.ratio == doctest::Approx(global.ratio).epsilon(1e-10));
    }
    SUBCASE("carleson-b") {
        const CheckReport global = check_carleson_b(b, j, ctx);
        const CheckReport local = check_carleson_b(b_sub, DyadicIndex::root(), ctx);
        CHECK(local.lhs == doctest::Approx(global.lhs).epsilon(1e-10));
        CHECK(local.ratio == doctest::Approx(global.ratio).epsilon(1e-10));
    }
    SUBCASE("weight-only checks") {
        for (const CheckKind kind : {CheckKind::prop2, CheckKind::prop2_consequence,
                                     CheckKind::prop3, CheckKind::prop3_essential,
                                     CheckKind::wittwer}) {
            const auto run = [&](const Weight& weight, const DyadicIndex& root) {
                switch (kind) {
                case CheckKind::prop2:
                    return check_prop2(weight, root);
                case CheckKind::prop2_consequence:
                    return check_prop2_consequence(weight, root, ctx);
                case CheckKind::prop3:
                    return check_prop3(weight, root, ctx);
                case CheckKind::prop3_essential:
                    return check_prop3_essential(weight, root);
                default:
                    return check_wittwer(weight, root, ctx);
                }
            };
            const CheckReport global = run(w, j);
            const CheckReport local = run(w_sub, DyadicIndex::root());
            CHECK(local.lhs == doctest::Approx(global.lhs).epsilon(1e-10));
            CHECK(local.rhs == doctest::Approx(global.rhs).epsilon(1e-10));
        }
    }
    SUBCASE("prop1 with density-rescaled restriction") {
        const DyadicSequence lambda = oracle::random_nonnegative_sequence(depth, rng);
        CheckContext qctx;
        qctx.carleson_q = carleson_constant(lambda);
        const CheckReport global = check_prop1_main(w, lambda, j, qctx);

        DyadicSequence lambda_sub = restrict_to(lambda, j);
        for (int level = 0; level < lambda_sub.depth(); ++level)
            for (std::int64_t k = 0; k < (std::int64_t{1} << level); ++k)
                lambda_sub[{level, k}] /= j.length();
        const CheckReport local = check_prop1_main(w_sub, lambda_sub, DyadicIndex::root(), qctx);
        CHECK(local.lhs == doctest::Approx(global.lhs).epsilon(1e-10));
        CHECK(local.rhs == doctest::Approx(global.rhs).epsilon(1e-10));
    }
}

TEST_CASE("scan basics") {
    SUBCASE("constant families collapse to the unweighted norm") {
        const ScanResult power = scan_norm_vs_a2(WeightFamily::power, {0.0}, 6, 1);
        REQUIRE(power.records.size() == 1);
        CHECK(power.records[0].a2 == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(power.records[0].bmo == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(power.records[0].ratio ==
              doctest::Approx(power.records[0].norm).epsilon(1e-12));

        const ScanResult cascade = scan_norm_vs_a2(WeightFamily::cascade, {0.0}, 6, 1);
        REQUIRE(cascade.records.size() == 1);
        CHECK(cascade.records[0].a2 == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(cascade.records[0].norm ==
              doctest::Approx(power.records[0].norm).epsilon(1e-12));
    }
    SUBCASE("records are sorted by a2 and the slope is populated") {
        const ScanResult result = scan_norm_vs_a2(WeightFamily::power, {0.7, 0.0, 0.4}, 6, 1);
        REQUIRE(result.records.size() == 3);
        CHECK(result.records[0].a2 <= result.records[1].a2);
        CHECK(result.records[1].a2 <= result.records[2].a2);
        CHECK(std::isfinite(result.slope));
        for (const auto& record : result.records) {
            CHECK(record.norm > 0.0);
            CHECK(record.ratio > 0.0);
        }
    }
}

TEST_CASE("scan propagates convergence failures") {
    ScanOptions options;
    options.max_iter = 1;
    CHECK_THROWS_AS((void)scan_norm_vs_a2(WeightFamily::power, {0.3}, 6, 1, options),
                    convergence_error);
}

TEST_CASE("loglog slope recovers exact power laws") {
    std::vector<std::pair<double, double>> points;
    for (double x : {1.0, 2.0, 5.0, 20.0})
        points.emplace_back(x, 3.0 * std::pow(x, 1.5));
    CHECK(loglog_slope(points) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(std::isnan(loglog_slope({{1.0, 2.0}})));
}
