#include "dyadlab/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <limits>

#include "dyadlab/paraproduct.hpp"
#include "dyadlab/rng.hpp"

namespace dyadlab {

namespace {

double ratio_of(double lhs, double rhs) {
    if (rhs > 0.0)
        return lhs / rhs;
    return lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

CheckReport make_report(std::string id, const DyadicIndex& root, const DyadicIndex& witness,
                        double lhs, double rhs, double constant) {
    CheckReport report;
    report.id = std::move(id);
    report.root = root;
    report.witness = witness;
    report.lhs = lhs;
    report.rhs = rhs;
    report.constant = constant;
    report.ratio = ratio_of(lhs, rhs);
    report.pass = report.ratio <= constant + suite::kRatioSlack;
    return report;
}

/// term(I) for every I with level < depth, then the single-root report or
/// the worst report over all roots (levels 0..depth).
struct SumCheck {
    std::string id;
    int depth = 0;
    std::function<double(const DyadicIndex&)> term;
    std::function<double(const DyadicIndex&)> rhs;
    double constant = 1.0;

    CheckReport at(const DyadicIndex& J) const {
        double sum = 0.0;
        for (int level = J.level; level < depth; ++level) {
            const std::int64_t shift = level - J.level;
            const std::int64_t first = J.position << shift;
            const std::int64_t last = (J.position + 1) << shift;
            for (std::int64_t k = first; k < last; ++k)
                sum += term({level, k});
        }
        const double lhs = sum / J.length();
        return make_report(id, J, J, lhs, rhs(J), constant);
    }

    CheckReport worst() const {
        // bottom-up subtree sums over all roots
        std::vector<double> sums((std::size_t{1} << (depth + 1)) - 1, 0.0);
        for (int level = depth - 1; level >= 0; --level)
            for (std::int64_t k = 0; k < (std::int64_t{1} << level); ++k) {
                const std::size_t offset = tree_offset({level, k});
                sums[offset] = term({level, k}) + sums[2 * offset + 1] + sums[2 * offset + 2];
            }
        CheckReport worst_report;
        double worst_ratio = -1.0;
        for (int level = 0; level <= depth; ++level) {
            const double inv_length = std::exp2(static_cast<double>(level));
            for (std::int64_t k = 0; k < (std::int64_t{1} << level); ++k) {
                const DyadicIndex J{level, k};
                const double lhs = sums[tree_offset(J)] * inv_length;
                const double r = ratio_of(lhs, rhs(J));
                if (r > worst_ratio) {
                    worst_ratio = r;
                    worst_report = make_report(id, J, J, lhs, rhs(J), constant);
                }
            }
        }
        return worst_report;
    }
};

double haar_square(const HaarSpectrum& spectrum, const DyadicIndex& index) {
    const double c = spectrum.coeffs[index];
    return c * c;
}

double child_difference(const Weight& w, const DyadicIndex& index) {
    return w.average(index.left_child()) - w.average(index.right_child());
}

} // namespace

CheckReport check_prop1_main(const Weight& w, const DyadicSequence& lambda, const DyadicIndex& J,
                             const CheckContext& ctx) {
    const double q = ctx.carleson_q ? *ctx.carleson_q : carleson_constant(lambda);
    SumCheck check{
        "prop1",
        w.depth(),
        [&](const DyadicIndex& I) { return lambda[I] / w.reciprocal_average(I); },
        [&](const DyadicIndex& root) { return suite::kProp1Factor * q * w.average(root); },
        1.0,
    };
    return check.at(J);
}

CheckReport check_prop1_consequence(const Weight& w, const DyadicSequence& lambda,
                                    const DyadicIndex& J, const CheckContext& ctx) {
    const double q = ctx.carleson_q ? *ctx.carleson_q : carleson_constant(lambda);
    const double a2 = ctx.a2 ? *ctx.a2 : a2_characteristic(w).value;
    SumCheck check{
        "prop1c",
        w.depth(),
        [&](const DyadicIndex& I) { return w.average(I) * lambda[I]; },
        [&](const DyadicIndex& root) { return suite::kProp1Factor * q * a2 * w.average(root); },
        1.0,
    };
    return check.at(J);
}

CheckReport check_carleson_b(const StepFunction& b, const DyadicIndex& J,
                             const CheckContext& ctx) {
    const double bmo = ctx.bmo ? *ctx.bmo : bmo_norm_carleson(b);
    const HaarSpectrum spectrum = haar_analyze(b);
    SumCheck check{
        "carleson-b",
        b.depth(),
        [&](const DyadicIndex& I) { return haar_square(spectrum, I); },
        [&](const DyadicIndex&) { return bmo * bmo; },
        1.0,
    };
    return check.at(J);
}

CheckReport check_embedding_hypothesis(const StepFunction& b, const Weight& w,
                                       const DyadicIndex& J, const CheckContext& ctx) {
    if (b.depth() != w.depth())
        throw shape_error("symbol and weight live on different grids");
    const double bmo = ctx.bmo ? *ctx.bmo : bmo_norm_carleson(b);
    const double a2 = ctx.a2 ? *ctx.a2 : a2_characteristic(w).value;
    const HaarSpectrum spectrum = haar_analyze(b);
    SumCheck check{
        "embed",
        w.depth(),
        [&](const DyadicIndex& I) { return w.reciprocal_average(I) * haar_square(spectrum, I); },
        [&](const DyadicIndex& root) {
            return suite::kEmbeddingConstant * a2 * bmo * bmo * w.reciprocal_average(root);
        },
        1.0,
    };
    return check.at(J);
}

namespace {

SumCheck prop2_check(const Weight& w) {
    return {
        "prop2",
        w.depth(),
        [&w](const DyadicIndex& I) {
            const double rel = child_difference(w, I) / w.average(I);
            return rel * rel * I.length() *
                   std::pow(w.average(I) * w.reciprocal_average(I), 0.25);
        },
        [&w](const DyadicIndex& root) {
            return std::pow(w.average(root) * w.reciprocal_average(root), 0.25);
        },
        suite::kProp2Constant,
    };
}

SumCheck prop2_consequence_check(const Weight& w, double a2) {
    return {
        "prop2c",
        w.depth(),
        [&w](const DyadicIndex& I) {
            const double rel = child_difference(w, I) / w.average(I);
            return rel * rel * I.length() * w.average(I) * w.reciprocal_average(I);
        },
        [a2](const DyadicIndex&) { return a2; },
        suite::kProp2Constant,
    };
}

SumCheck prop3_essential_check(const Weight& w) {
    return {
        "prop3e",
        w.depth(),
        [&w](const DyadicIndex& I) {
            const double diff = child_difference(w, I);
            const double mean = w.average(I);
            return diff * diff / (mean * mean * mean) * I.length();
        },
        [&w](const DyadicIndex& root) { return w.reciprocal_average(root); },
        suite::kProp3Constant,
    };
}

SumCheck prop3_check(const Weight& w, double a2) {
    return {
        "prop3",
        w.depth(),
        [&w](const DyadicIndex& I) {
            const double rel = child_difference(w, I) / w.average(I);
            return rel * rel * I.length() * w.reciprocal_average(I);
        },
        [&w, a2](const DyadicIndex& root) { return a2 * w.reciprocal_average(root); },
        suite::kProp3Constant,
    };
}

SumCheck wittwer_check(const Weight& w, double a2, double constant) {
    return {
        "wittwer",
        w.depth(),
        [&w](const DyadicIndex& I) {
            const double a = child_difference(w, I) / (2.0 * w.average(I));
            return a * a * I.length() * w.average(I);
        },
        [&w, a2](const DyadicIndex& root) { return a2 * w.average(root); },
        constant,
    };
}

std::array<SumCheck, 3> bilinear_checks(const Weight& w, const HaarSpectrum& spectrum, double a2,
                                        double bmo) {
    const auto alpha = [&w, &spectrum](const DyadicIndex& I) {
        const double a = child_difference(w, I) / (2.0 * w.average(I));
        return std::abs(spectrum.coeffs[I] * a) * std::sqrt(I.length());
    };
    const double constant = suite::kBilinearFactor * bmo;
    return {
        SumCheck{"bilinear-s5", w.depth(),
                 [&w, alpha](const DyadicIndex& I) {
                     return alpha(I) * w.average(I) * w.reciprocal_average(I);
                 },
                 [a2](const DyadicIndex&) { return a2; }, constant},
        SumCheck{"bilinear-s6", w.depth(),
                 [&w, alpha](const DyadicIndex& I) { return alpha(I) * w.average(I); },
                 [&w, a2](const DyadicIndex& root) { return a2 * w.average(root); }, constant},
        SumCheck{"bilinear-s7", w.depth(),
                 [&w, alpha](const DyadicIndex& I) { return alpha(I) * w.reciprocal_average(I); },
                 [&w, a2](const DyadicIndex& root) { return a2 * w.reciprocal_average(root); },
                 constant},
    };
}

} // namespace

CheckReport check_prop2(const Weight& w, const DyadicIndex& J) { return prop2_check(w).at(J); }

CheckReport check_prop2_consequence(const Weight& w, const DyadicIndex& J,
                                    const CheckContext& ctx) {
    const double a2 = ctx.a2 ? *ctx.a2 : a2_characteristic(w).value;
    return prop2_consequence_check(w, a2).at(J);
}

CheckReport check_prop3_essential(const Weight& w, const DyadicIndex& J) {
    return prop3_essential_check(w).at(J);
}

CheckReport check_prop3(const Weight& w, const DyadicIndex& J, const CheckContext& ctx) {
    const double a2 = ctx.a2 ? *ctx.a2 : a2_characteristic(w).value;
    return prop3_check(w, a2).at(J);
}

CheckReport check_wittwer(const Weight& w, const DyadicIndex& J, const CheckContext& ctx,
                          double constant) {
    const double a2 = ctx.a2 ? *ctx.a2 : a2_characteristic(w).value;
    return wittwer_check(w, a2, constant).at(J);
}

std::array<CheckReport, 3> check_bilinear_hypotheses(const StepFunction& b, const Weight& w,
                                                     const DyadicIndex& J,
                                                     const CheckContext& ctx) {
    if (b.depth() != w.depth())
        throw shape_error("symbol and weight live on different grids");
    const double a2 = ctx.a2 ? *ctx.a2 : a2_characteristic(w).value;
    const double bmo = ctx.bmo ? *ctx.bmo : bmo_norm_carleson(b);
    const HaarSpectrum spectrum = haar_analyze(b);
    const auto checks = bilinear_checks(w, spectrum, a2, bmo);
    return {checks[0].at(J), checks[1].at(J), checks[2].at(J)};
}

CheckReport worst_over_roots(CheckKind kind, const Weight& w, const StepFunction* b,
                             const DyadicSequence* lambda, double wittwer_constant) {
    const double a2 = a2_characteristic(w).value;
    switch (kind) {
    case CheckKind::prop1: {
        if (!lambda)
            throw std::invalid_argument("prop1 needs a Carleson sequence");
        const double q = carleson_constant(*lambda);
        SumCheck check{"prop1", w.depth(),
                       [&](const DyadicIndex& I) { return (*lambda)[I] / w.reciprocal_average(I); },
                       [&](const DyadicIndex& root) {
                           return suite::kProp1Factor * q * w.average(root);
                       },
                       1.0};
        return check.worst();
    }
    case CheckKind::prop1_consequence: {
        if (!lambda)
            throw std::invalid_argument("prop1c needs a Carleson sequence");
        const double q = carleson_constant(*lambda);
        SumCheck check{"prop1c", w.depth(),
                       [&](const DyadicIndex& I) { return w.average(I) * (*lambda)[I]; },
                       [&](const DyadicIndex& root) {
                           return suite::kProp1Factor * q * a2 * w.average(root);
                       },
                       1.0};
        return check.worst();
    }
    case CheckKind::carleson_b: {
        if (!b)
            throw std::invalid_argument("carleson-b needs a symbol");
        const double bmo = bmo_norm_carleson(*b);
        const HaarSpectrum spectrum = haar_analyze(*b);
        SumCheck check{"carleson-b", b->depth(),
                       [&](const DyadicIndex& I) { return haar_square(spectrum, I); },
                       [&](const DyadicIndex&) { return bmo * bmo; }, 1.0};
        return check.worst();
    }
    case CheckKind::embedding: {
        if (!b)
            throw std::invalid_argument("embed needs a symbol");
        const double bmo = bmo_norm_carleson(*b);
        const HaarSpectrum spectrum = haar_analyze(*b);
        SumCheck check{"embed", w.depth(),
                       [&](const DyadicIndex& I) {
                           return w.reciprocal_average(I) * haar_square(spectrum, I);
                       },
                       [&](const DyadicIndex& root) {
                           return suite::kEmbeddingConstant * a2 * bmo * bmo *
                                  w.reciprocal_average(root);
                       },
                       1.0};
        return check.worst();
    }
    case CheckKind::prop2:
        return prop2_check(w).worst();
    case CheckKind::prop2_consequence:
        return prop2_consequence_check(w, a2).worst();
    case CheckKind::prop3:
        return prop3_check(w, a2).worst();
    case CheckKind::prop3_essential:
        return prop3_essential_check(w).worst();
    case CheckKind::wittwer:
        return wittwer_check(w, a2, wittwer_constant).worst();
    }
    throw std::invalid_argument("unknown check kind");
}

std::array<CheckReport, 3> worst_bilinear_over_roots(const StepFunction& b, const Weight& w) {
    if (b.depth() != w.depth())
        throw shape_error("symbol and weight live on different grids");
    const double a2 = a2_characteristic(w).value;
    const double bmo = bmo_norm_carleson(b);
    const HaarSpectrum spectrum = haar_analyze(b);
    const auto checks = bilinear_checks(w, spectrum, a2, bmo);
    return {checks[0].worst(), checks[1].worst(), checks[2].worst()};
}

ScanResult scan_norm_vs_a2(WeightFamily family, const std::vector<double>& params, int depth,
                           std::uint64_t seed, const ScanOptions& options) {
    StepFunction symbol = gen_bmo_symbol(options.symbol, depth, seed);
    const double raw_bmo = bmo_norm_carleson(symbol);
    symbol = (1.0 / raw_bmo) * symbol;
    const double bmo = bmo_norm_carleson(symbol);

    const auto run_one = [&](std::size_t index) {
        const double param = params[index];
        const Weight w = family == WeightFamily::power
                             ? gen_power_weight(param, depth)
                             : gen_cascade_weight(depth, param, substream_seed(seed, index + 1));
        ScanRecord record;
        record.param = param;
        record.a2 = a2_characteristic(w).value;
        record.bmo = bmo;
        record.norm =
            weighted_operator_norm(symbol, w, options.tol, options.max_iter, seed).value;
        record.ratio = record.norm / (record.a2 * record.bmo);
        return record;
    };

    std::vector<std::future<ScanRecord>> futures;
    futures.reserve(params.size());
    for (std::size_t i = 0; i < params.size(); ++i)
        futures.push_back(std::async(std::launch::async, run_one, i));

    ScanResult result;
    result.records.reserve(params.size());
    for (auto& future : futures)
        result.records.push_back(future.get());
    std::sort(result.records.begin(), result.records.end(),
              [](const ScanRecord& a, const ScanRecord& b) { return a.a2 < b.a2; });

    std::vector<std::pair<double, double>> points;
    for (const auto& record : result.records)
        points.emplace_back(record.a2, record.norm);
    result.slope = loglog_slope(points);
    return result;
}

double loglog_slope(const std::vector<std::pair<double, double>>& points) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t n = 0;
    for (const auto& [x, y] : points) {
        if (!(x > 0.0) || !(y > 0.0))
            continue;
        const double lx = std::log(x);
        const double ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2)
        return std::numeric_limits<double>::quiet_NaN();
    const double denom = static_cast<double>(n) * sxx - sx * sx;
    if (denom == 0.0)
        return std::numeric_limits<double>::quiet_NaN();
    return (static_cast<double>(n) * sxy - sx * sy) / denom;
}

} // namespace dyadlab
