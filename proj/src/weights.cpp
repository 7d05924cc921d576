#include "dyadlab/weights.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "dyadlab/rng.hpp"

namespace dyadlab {

namespace {

std::vector<double> reciprocal_values(const StepFunction& base) {
    std::vector<double> out(base.cells());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double v = base.value(i);
        if (!std::isfinite(v) || v <= 0.0)
            throw std::domain_error("weight values must be finite and strictly positive");
        out[i] = 1.0 / v;
    }
    return out;
}

} // namespace

Weight::Weight(StepFunction base)
    : base_(std::move(base)), reciprocal_(base_.depth(), reciprocal_values(base_)) {}

A2Result a2_characteristic(const Weight& w) {
    A2Result best{0.0, DyadicIndex::root()};
    for (int level = 0; level <= w.depth(); ++level)
        for (std::int64_t k = 0; k < (std::int64_t{1} << level); ++k) {
            const DyadicIndex index{level, k};
            const double product = w.average(index) * w.reciprocal_average(index);
            if (product > best.value) {
                best.value = product;
                best.argmax = index;
            }
        }
    return best;
}

namespace {

/// Bottom-up subtree sums S(J) = term(J) + S(J+) + S(J-) for every J with
/// level < depth, then max over J of S(J)/|J|. term is indexed by tree offset.
BmoResult max_subtree_density(int depth, const std::vector<double>& term) {
    std::vector<double> sums = term;
    // accumulate children into parents, deepest internal level first
    for (int level = depth - 2; level >= 0; --level)
        for (std::int64_t k = 0; k < (std::int64_t{1} << level); ++k) {
            const std::size_t offset = tree_offset({level, k});
            sums[offset] += sums[2 * offset + 1] + sums[2 * offset + 2];
        }
    BmoResult best{0.0, DyadicIndex::root()};
    for (int level = 0; level < depth; ++level) {
        const double inv_length = std::exp2(static_cast<double>(level));
        for (std::int64_t k = 0; k < (std::int64_t{1} << level); ++k) {
            const double density = sums[tree_offset({level, k})] * inv_length;
            if (density > best.value)
                best = {density, DyadicIndex{level, k}};
        }
    }
    return best;
}

} // namespace

BmoResult bmo_norm_carleson_detail(const StepFunction& b) {
    const HaarSpectrum spectrum = haar_analyze(b);
    std::vector<double> term(tree_size(b.depth()));
    for (std::size_t i = 0; i < term.size(); ++i) {
        const double c = spectrum.coeffs.at_offset(i);
        term[i] = c * c;
    }
    BmoResult best = max_subtree_density(b.depth(), term);
    best.value = std::sqrt(best.value);
    return best;
}

double bmo_norm_carleson(const StepFunction& b) { return bmo_norm_carleson_detail(b).value; }

double bmo_norm_oscillation(const StepFunction& b) {
    const StepFunction b_squared = b * b;
    double best = 0.0;
    for (int level = 0; level <= b.depth(); ++level)
        for (std::int64_t k = 0; k < (std::int64_t{1} << level); ++k) {
            const DyadicIndex index{level, k};
            const double mean = b.average(index);
            best = std::max(best, b_squared.average(index) - mean * mean);
        }
    return std::sqrt(std::max(best, 0.0));
}

double carleson_constant(const DyadicSequence& sequence) {
    std::vector<double> term(sequence.size());
    for (std::size_t i = 0; i < term.size(); ++i) {
        const double entry = sequence.at_offset(i);
        if (!(entry >= 0.0))
            throw std::domain_error("Carleson sequence entries must be nonnegative");
        term[i] = entry;
    }
    return max_subtree_density(sequence.depth(), term).value;
}

Weight gen_power_weight(double alpha, int depth) {
    if (!(std::abs(alpha) < 1.0))
        throw std::domain_error("power weight needs -1 < alpha < 1");
    const std::size_t cells = std::size_t{1} << depth;
    const double h = std::exp2(-static_cast<double>(depth));
    std::vector<double> values(cells);
    for (std::size_t k = 0; k < cells; ++k) {
        const double a = static_cast<double>(k) * h;
        const double b = static_cast<double>(k + 1) * h;
        values[k] = (std::pow(b, alpha + 1.0) - std::pow(a, alpha + 1.0)) / ((alpha + 1.0) * h);
    }
    return Weight(StepFunction(depth, std::move(values)));
}

Weight gen_cascade_weight(int depth, double delta, std::uint64_t seed) {
    if (!(delta >= 0.0 && delta < 1.0))
        throw std::domain_error("cascade weight needs 0 <= delta < 1");
    Xoshiro256 rng(seed);
    std::vector<double> level_means{1.0};
    for (int level = 0; level < depth; ++level) {
        std::vector<double> next(level_means.size() * 2);
        for (std::size_t k = 0; k < level_means.size(); ++k) {
            const double eps = rng.symmetric(delta);
            next[2 * k] = level_means[k] * (1.0 + eps);
            next[2 * k + 1] = level_means[k] * (1.0 - eps);
        }
        level_means = std::move(next);
    }
    return Weight(StepFunction(depth, std::move(level_means)));
}

StepFunction gen_bmo_symbol(SymbolKind kind, int depth, std::uint64_t seed) {
    switch (kind) {
    case SymbolKind::single_haar:
        return haar_function(depth, DyadicIndex::root());
    case SymbolKind::dyadic_log: {
        HaarSpectrum spectrum{0.0, DyadicSequence(depth)};
        for (int level = 0; level < depth; ++level)
            spectrum.coeffs[{level, 0}] = std::sqrt(std::exp2(-static_cast<double>(level)));
        return haar_synthesize(spectrum);
    }
    case SymbolKind::random_normalized: {
        Xoshiro256 rng(seed);
        HaarSpectrum spectrum{0.0, DyadicSequence(depth)};
        for (int level = 0; level < depth; ++level)
            for (std::int64_t k = 0; k < (std::int64_t{1} << level); ++k)
                spectrum.coeffs[{level, k}] = rng.symmetric(1.0);
        StepFunction raw = haar_synthesize(spectrum);
        const double norm = bmo_norm_carleson(raw);
        return (1.0 / norm) * raw;
    }
    }
    throw std::domain_error("unknown symbol kind");
}

Weight restrict_to(const Weight& w, const DyadicIndex& root) {
    return Weight(restrict_to(w.base(), root));
}

} // namespace dyadlab
