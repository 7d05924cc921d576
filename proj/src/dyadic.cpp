#include "dyadlab/dyadic.hpp"

#include <cmath>
#include <string>

namespace dyadlab {

namespace {

void check_depth(int depth) {
    if (depth < 1 || depth > 30)
        throw shape_error("grid depth must be in [1, 30], got " + std::to_string(depth));
}

} // namespace

DyadicSequence::DyadicSequence(int depth, double fill) : depth_(depth) {
    check_depth(depth);
    entries_.assign(tree_size(depth), fill);
}

DyadicSequence::DyadicSequence(int depth, std::vector<double> entries) : depth_(depth), entries_(std::move(entries)) {
    check_depth(depth);
    if (entries_.size() != tree_size(depth))
        throw shape_error("dyadic sequence needs 2^depth - 1 entries");
}

std::size_t DyadicSequence::checked_offset(const DyadicIndex& index) const {
    if (index.level < 0 || index.level >= depth_ || index.position < 0 ||
        index.position >= (std::int64_t{1} << index.level))
        throw invalid_interval_error("dyadic sequence index (" + std::to_string(index.level) + ", " +
                                     std::to_string(index.position) + ") out of range for depth " +
                                     std::to_string(depth_));
    return tree_offset(index);
}

StepFunction::StepFunction(int depth) : depth_(depth) {
    check_depth(depth);
    pyramid_.resize(static_cast<std::size_t>(depth) + 1);
}

StepFunction::StepFunction(int depth, std::vector<double> values) : StepFunction(depth) {
    if (values.size() != (std::size_t{1} << depth))
        throw shape_error("step function of depth " + std::to_string(depth) + " needs 2^depth values");
    pyramid_[static_cast<std::size_t>(depth)] = std::move(values);
    for (int level = depth - 1; level >= 0; --level) {
        const auto& fine = pyramid_[static_cast<std::size_t>(level) + 1];
        auto& coarse = pyramid_[static_cast<std::size_t>(level)];
        coarse.resize(fine.size() / 2);
        for (std::size_t k = 0; k < coarse.size(); ++k)
            coarse[k] = 0.5 * (fine[2 * k] + fine[2 * k + 1]);
    }
}

StepFunction StepFunction::constant(int depth, double value) {
    check_depth(depth);
    return StepFunction(depth, std::vector<double>(std::size_t{1} << depth, value));
}

void StepFunction::validate_index(const DyadicIndex& index) const {
    if (index.level < 0 || index.level > depth_ || index.position < 0 ||
        index.position >= (std::int64_t{1} << index.level))
        throw invalid_interval_error("interval (" + std::to_string(index.level) + ", " +
                                     std::to_string(index.position) + ") not on a depth-" +
                                     std::to_string(depth_) + " grid");
}

double StepFunction::average(const DyadicIndex& index) const {
    validate_index(index);
    return pyramid_[static_cast<std::size_t>(index.level)][static_cast<std::size_t>(index.position)];
}

double StepFunction::norm_l2() const {
    double sum = 0.0;
    for (double v : values())
        sum += v * v;
    return std::sqrt(sum * cell_width());
}

std::pair<std::size_t, std::size_t> StepFunction::cell_range(const DyadicIndex& index) const {
    validate_index(index);
    const std::size_t width = std::size_t{1} << (depth_ - index.level);
    const std::size_t first = static_cast<std::size_t>(index.position) * width;
    return {first, first + width};
}

double inner_product(const StepFunction& f, const StepFunction& g) {
    if (f.depth() != g.depth())
        throw shape_error("inner product needs matching depths");
    double sum = 0.0;
    for (std::size_t i = 0; i < f.cells(); ++i)
        sum += f.value(i) * g.value(i);
    return sum * f.cell_width();
}

namespace {

StepFunction combine(const StepFunction& f, const StepFunction& g, double (*op)(double, double)) {
    if (f.depth() != g.depth())
        throw shape_error("operands live on different grids");
    std::vector<double> out(f.cells());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = op(f.value(i), g.value(i));
    return StepFunction(f.depth(), std::move(out));
}

} // namespace

StepFunction operator+(const StepFunction& f, const StepFunction& g) {
    return combine(f, g, [](double a, double b) { return a + b; });
}

StepFunction operator-(const StepFunction& f, const StepFunction& g) {
    return combine(f, g, [](double a, double b) { return a - b; });
}

StepFunction operator*(const StepFunction& f, const StepFunction& g) {
    return combine(f, g, [](double a, double b) { return a * b; });
}

StepFunction operator*(double scalar, const StepFunction& f) {
    return map_cells(f, [scalar](double v) { return scalar * v; });
}

StepFunction haar_function(int depth, const DyadicIndex& index) {
    StepFunction zero = StepFunction::constant(depth, 0.0);
    if (index.level >= depth)
        throw no_children_error("Haar function needs children on the grid");
    zero.validate_index(index);
    std::vector<double> values(zero.cells(), 0.0);
    const std::size_t width = std::size_t{1} << (depth - index.level);
    const std::size_t first = static_cast<std::size_t>(index.position) * width;
    const double amplitude = 1.0 / std::sqrt(index.length());
    for (std::size_t i = first; i < first + width / 2; ++i)
        values[i] = amplitude;
    for (std::size_t i = first + width / 2; i < first + width; ++i)
        values[i] = -amplitude;
    return StepFunction(depth, std::move(values));
}

double haar_coefficient(const StepFunction& f, const DyadicIndex& index) {
    f.validate_index(index);
    if (index.level >= f.depth())
        throw no_children_error("Haar coefficient is undefined at the finest level");
    const double left = f.average(index.left_child());
    const double right = f.average(index.right_child());
    return 0.5 * std::sqrt(index.length()) * (left - right);
}

HaarSpectrum haar_analyze(const StepFunction& f) {
    const int depth = f.depth();
    HaarSpectrum spectrum{f.average(DyadicIndex::root()), DyadicSequence(depth)};
    for (int level = 0; level < depth; ++level) {
        const double half_sqrt = 0.5 * std::sqrt(std::exp2(-static_cast<double>(level)));
        for (std::int64_t k = 0; k < (std::int64_t{1} << level); ++k) {
            const DyadicIndex index{level, k};
            spectrum.coeffs[index] =
                half_sqrt * (f.average(index.left_child()) - f.average(index.right_child()));
        }
    }
    return spectrum;
}

StepFunction haar_synthesize(const HaarSpectrum& spectrum) {
    const int depth = spectrum.depth();
    std::vector<double> current{spectrum.mean};
    for (int level = 0; level < depth; ++level) {
        // m_{I+} = m_I + b_I / sqrt|I|, m_{I-} = m_I - b_I / sqrt|I|
        const double inv_sqrt = 1.0 / std::sqrt(std::exp2(-static_cast<double>(level)));
        std::vector<double> next(current.size() * 2);
        for (std::size_t k = 0; k < current.size(); ++k) {
            const double delta = spectrum.coeffs[{level, static_cast<std::int64_t>(k)}] * inv_sqrt;
            next[2 * k] = current[k] + delta;
            next[2 * k + 1] = current[k] - delta;
        }
        current = std::move(next);
    }
    return StepFunction(depth, std::move(current));
}

StepFunction restrict_to(const StepFunction& f, const DyadicIndex& root) {
    f.validate_index(root);
    if (root.level >= f.depth())
        throw invalid_interval_error("cannot re-root at a single cell");
    const auto [first, last] = f.cell_range(root);
    std::vector<double> values(f.values().begin() + static_cast<std::ptrdiff_t>(first),
                               f.values().begin() + static_cast<std::ptrdiff_t>(last));
    return StepFunction(f.depth() - root.level, std::move(values));
}

DyadicSequence restrict_to(const DyadicSequence& sequence, const DyadicIndex& root) {
    const int new_depth = sequence.depth() - root.level;
    if (root.level < 0 || new_depth < 1 || root.position < 0 ||
        root.position >= (std::int64_t{1} << root.level))
        throw invalid_interval_error("cannot re-root sequence at the given interval");
    DyadicSequence out(new_depth);
    for (int level = 0; level < new_depth; ++level)
        for (std::int64_t k = 0; k < (std::int64_t{1} << level); ++k) {
            const DyadicIndex local{level, k};
            const DyadicIndex global{root.level + level, (root.position << level) + k};
            out[local] = sequence[global];
        }
    return out;
}

} // namespace dyadlab
