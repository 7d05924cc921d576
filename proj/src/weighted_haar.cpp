#include "dyadlab/weighted_haar.hpp"

#include <cmath>

namespace dyadlab {

double disbalance(const Weight& w, const DyadicIndex& index) {
    w.base().validate_index(index);
    if (index.level >= w.depth())
        throw no_children_error("disbalance is undefined at the finest level");
    const double left = w.average(index.left_child());
    const double right = w.average(index.right_child());
    return (left - right) / (2.0 * w.average(index));
}

WeightedHaarFunction weighted_haar(const Weight& w, const DyadicIndex& index) {
    const double a = disbalance(w, index);
    StepFunction base = w.base();
    std::vector<double> values(base.cells(), 0.0);
    const auto [first, last] = base.cell_range(index);
    const std::size_t mid = first + (last - first) / 2;
    for (std::size_t i = first; i < mid; ++i)
        values[i] = 1.0 - a;
    for (std::size_t i = mid; i < last; ++i)
        values[i] = -1.0 - a;
    return {index, a, StepFunction(base.depth(), std::move(values))};
}

DyadicSequence weighted_haar_pairings(const Weight& w, const StepFunction& g) {
    if (g.depth() != w.depth())
        throw shape_error("weight and function live on different grids");
    // <g, w^{1/2} H_I^w> = |I| [ (m_{I+} u - m_{I-} u)/2 - A_I^w m_I u ],  u = g sqrt(w)
    const StepFunction u = g * map_cells(w.base(), [](double v) { return std::sqrt(v); });
    DyadicSequence pairings(w.depth());
    for (int level = 0; level < w.depth(); ++level) {
        const double length = std::exp2(-static_cast<double>(level));
        for (std::int64_t k = 0; k < (std::int64_t{1} << level); ++k) {
            const DyadicIndex index{level, k};
            const double a = disbalance(w, index);
            const double half_diff =
                0.5 * (u.average(index.left_child()) - u.average(index.right_child()));
            pairings[index] = length * (half_diff - a * u.average(index));
        }
    }
    return pairings;
}

double bessel_sum(const Weight& w, const StepFunction& g) {
    const DyadicSequence pairings = weighted_haar_pairings(w, g);
    double sum = 0.0;
    for (int level = 0; level < w.depth(); ++level) {
        const double length = std::exp2(-static_cast<double>(level));
        for (std::int64_t k = 0; k < (std::int64_t{1} << level); ++k) {
            const DyadicIndex index{level, k};
            const double pairing = pairings[index];
            sum += pairing * pairing / (length * w.average(index));
        }
    }
    return sum;
}

} // namespace dyadlab
