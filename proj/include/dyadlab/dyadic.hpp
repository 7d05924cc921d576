#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "dyadlab/errors.hpp"

namespace dyadlab {

/// A dyadic interval [position * 2^-level, (position + 1) * 2^-level) inside
/// [0, 1). Level 0 is the root; level N addresses single cells of a depth-N
/// grid.
struct DyadicIndex {
    int level = 0;
    std::int64_t position = 0;

    static DyadicIndex root() { return {0, 0}; }

    double length() const { return std::exp2(-static_cast<double>(level)); }
    double left_endpoint() const { return static_cast<double>(position) * length(); }
    double right_endpoint() const { return static_cast<double>(position + 1) * length(); }

    DyadicIndex left_child() const { return {level + 1, 2 * position}; }
    DyadicIndex right_child() const { return {level + 1, 2 * position + 1}; }
    DyadicIndex parent() const { return {level - 1, position / 2}; }

    bool contains(const DyadicIndex& other) const {
        return other.level >= level && (other.position >> (other.level - level)) == position;
    }

    friend bool operator==(const DyadicIndex&, const DyadicIndex&) = default;
};

/// Offset of an interval in heap (level-order) storage covering levels
/// 0..depth-1: root at 0, children of offset i at 2i+1, 2i+2.
inline std::size_t tree_offset(const DyadicIndex& index) {
    return (std::size_t{1} << index.level) - 1 + static_cast<std::size_t>(index.position);
}

/// Number of intervals with level < depth.
inline std::size_t tree_size(int depth) { return (std::size_t{1} << depth) - 1; }

/// A map DyadicIndex -> real for all intervals with level < depth.
/// Holds Haar coefficient tables, Carleson sequences and the like.
class DyadicSequence {
public:
    explicit DyadicSequence(int depth, double fill = 0.0);
    DyadicSequence(int depth, std::vector<double> entries);

    int depth() const { return depth_; }
    std::size_t size() const { return entries_.size(); }

    double operator[](const DyadicIndex& index) const { return entries_[checked_offset(index)]; }
    double& operator[](const DyadicIndex& index) { return entries_[checked_offset(index)]; }

    double at_offset(std::size_t offset) const { return entries_[offset]; }
    const std::vector<double>& entries() const { return entries_; }

private:
    std::size_t checked_offset(const DyadicIndex& index) const;

    int depth_;
    std::vector<double> entries_;
};

/// Real function constant on the 2^N finest cells of a depth-N grid over
/// [0, 1). Values are understood as exact cell averages. A pyramid of dyadic
/// averages is built on construction, so m_I f is an O(1) lookup and the
/// two-scale identity m_I f = (m_{I+} f + m_{I-} f) / 2 holds exactly in
/// floating point.
class StepFunction {
public:
    StepFunction(int depth, std::vector<double> values);
    static StepFunction constant(int depth, double value);

    int depth() const { return depth_; }
    std::size_t cells() const { return values().size(); }
    double cell_width() const { return std::exp2(-static_cast<double>(depth_)); }

    const std::vector<double>& values() const { return pyramid_[static_cast<std::size_t>(depth_)]; }
    double value(std::size_t cell) const { return values()[cell]; }

    /// m_I f for any grid interval, level <= depth.
    double average(const DyadicIndex& index) const;

    /// Integral over [0, 1).
    double integral() const { return pyramid_[0][0]; }

    /// L2([0,1)) norm.
    double norm_l2() const;

    /// Half-open cell range [first, last) covered by the interval.
    std::pair<std::size_t, std::size_t> cell_range(const DyadicIndex& index) const;

    void validate_index(const DyadicIndex& index) const;

private:
    explicit StepFunction(int depth);

    int depth_;
    std::vector<std::vector<double>> pyramid_; // pyramid_[j] = averages at level j
};

/// Unweighted L2 pairing <f, g> = 2^-N sum f_i g_i.
double inner_product(const StepFunction& f, const StepFunction& g);

StepFunction operator+(const StepFunction& f, const StepFunction& g);
StepFunction operator-(const StepFunction& f, const StepFunction& g);
StepFunction operator*(const StepFunction& f, const StepFunction& g); // cellwise
StepFunction operator*(double scalar, const StepFunction& f);

/// Cellwise map.
template <class Fn>
StepFunction map_cells(const StepFunction& f, Fn&& fn) {
    std::vector<double> out(f.cells());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = fn(f.value(i));
    return StepFunction(f.depth(), std::move(out));
}

/// The L2-normalized Haar function h_I on a depth-N grid:
/// +1/sqrt|I| on the left half of I, -1/sqrt|I| on the right half.
StepFunction haar_function(int depth, const DyadicIndex& index);

/// <f, h_I> = (sqrt|I| / 2)(m_{I+} f - m_{I-} f). Requires index.level < depth.
double haar_coefficient(const StepFunction& f, const DyadicIndex& index);

/// Global mean plus every Haar coefficient of a step function.
struct HaarSpectrum {
    double mean = 0.0;
    DyadicSequence coeffs;

    int depth() const { return coeffs.depth(); }
};

/// One bottom-up pyramid sweep producing the full spectrum in O(2^N).
HaarSpectrum haar_analyze(const StepFunction& f);

/// f = mean + sum_I coeffs(I) h_I, evaluated top-down on the finest cells.
StepFunction haar_synthesize(const HaarSpectrum& spectrum);

/// The part of f under J, rescaled to a grid over [0, 1) of depth
/// f.depth() - J.level. Averages of subintervals are preserved.
StepFunction restrict_to(const StepFunction& f, const DyadicIndex& root);

/// Subtree of entries under J, re-rooted. New depth = depth - J.level.
DyadicSequence restrict_to(const DyadicSequence& sequence, const DyadicIndex& root);

} // namespace dyadlab
