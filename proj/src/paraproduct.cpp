#include "dyadlab/paraproduct.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "dyadlab/rng.hpp"
#include "dyadlab/weighted_haar.hpp"

namespace dyadlab {

ParaproductOperator::ParaproductOperator(StepFunction symbol)
    : symbol_(std::move(symbol)), spectrum_(haar_analyze(symbol_)) {}

StepFunction ParaproductOperator::apply(const StepFunction& f) const {
    if (f.depth() != depth())
        throw shape_error("paraproduct input does not match the symbol's grid");
    HaarSpectrum out{0.0, DyadicSequence(depth())};
    for (int level = 0; level < depth(); ++level)
        for (std::int64_t k = 0; k < (std::int64_t{1} << level); ++k) {
            const DyadicIndex index{level, k};
            out.coeffs[index] = f.average(index) * spectrum_.coeffs[index];
        }
    return haar_synthesize(out);
}

StepFunction ParaproductOperator::apply_adjoint(const StepFunction& g) const {
    if (g.depth() != depth())
        throw shape_error("paraproduct input does not match the symbol's grid");
    const HaarSpectrum g_spectrum = haar_analyze(g);
    // running sum of b_I <g, h_I> / |I| over the ancestors of each cell
    std::vector<double> current{0.0};
    for (int level = 0; level < depth(); ++level) {
        const double inv_length = std::exp2(static_cast<double>(level));
        std::vector<double> next(current.size() * 2);
        for (std::size_t k = 0; k < current.size(); ++k) {
            const DyadicIndex index{level, static_cast<std::int64_t>(k)};
            const double value =
                current[k] + spectrum_.coeffs[index] * g_spectrum.coeffs[index] * inv_length;
            next[2 * k] = value;
            next[2 * k + 1] = value;
        }
        current = std::move(next);
    }
    return StepFunction(depth(), std::move(current));
}

PairingBreakdown pairing_breakdown(const StepFunction& b, const Weight& w, const StepFunction& f,
                                   const StepFunction& g) {
    const int depth = b.depth();
    if (w.depth() != depth || f.depth() != depth || g.depth() != depth)
        throw shape_error("pairing breakdown needs a shared grid depth");

    const StepFunction sqrt_w = map_cells(w.base(), [](double v) { return std::sqrt(v); });
    const StepFunction f_unweighted = f * map_cells(sqrt_w, [](double v) { return 1.0 / v; });
    const StepFunction g_weighted = g * sqrt_w;

    const HaarSpectrum b_spectrum = haar_analyze(b);
    const DyadicSequence pairings = weighted_haar_pairings(w, g);

    PairingBreakdown out;
    for (int level = 0; level < depth; ++level) {
        const double sqrt_length = std::sqrt(std::exp2(-static_cast<double>(level)));
        for (std::int64_t k = 0; k < (std::int64_t{1} << level); ++k) {
            const DyadicIndex index{level, k};
            const double factor = f_unweighted.average(index) * b_spectrum.coeffs[index];
            out.sum1 += factor * haar_coefficient(g_weighted, index);
            out.sum2 += factor * pairings[index] / sqrt_length;
            out.sum3 += factor * disbalance(w, index) * sqrt_length * g_weighted.average(index);
        }
    }

    const double scale =
        std::max({std::abs(out.sum1), std::abs(out.sum2), std::abs(out.sum3), 1e-300});
    if (std::abs(out.sum1 - out.sum2 - out.sum3) > 1e-10 * scale)
        throw std::logic_error("pairing decomposition identity violated");
    return out;
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        sum += a[i] * b[i];
    return sum;
}

/// Largest eigenvalue of T*T by power iteration from one seeded start.
/// Returns the Rayleigh quotient; fills `iterations`.
template <class MatVec>
double power_iterate(const MatVec& apply_tst, std::size_t dim, Xoshiro256& rng, double tol,
                     int max_iter, int& iterations) {
    std::vector<double> v(dim);
    for (auto& x : v)
        x = rng.symmetric(1.0);

    double rayleigh = 0.0;
    bool have_previous = false;
    for (int iter = 1; iter <= max_iter; ++iter) {
        const std::vector<double> y = apply_tst(v);
        const double vv = dot(v, v);
        const double next = dot(y, v) / vv;
        const double ynorm = std::sqrt(dot(y, y));
        iterations = iter;
        if (ynorm == 0.0)
            return 0.0; // zero operator
        if (have_previous && std::abs(next - rayleigh) <= tol * std::max(std::abs(next), 1e-300))
            return next;
        rayleigh = next;
        have_previous = true;
        for (std::size_t i = 0; i < dim; ++i)
            v[i] = y[i] / ynorm;
    }
    throw convergence_error("power iteration did not converge in " + std::to_string(max_iter) +
                                " iterations",
                            std::sqrt(std::max(rayleigh, 0.0)), iterations);
}

} // namespace

NormEstimate weighted_operator_norm(const StepFunction& b, const Weight& w, double tol,
                                    int max_iter, std::uint64_t seed) {
    if (b.depth() != w.depth())
        throw shape_error("symbol and weight live on different grids");
    if (!(tol > 0.0))
        throw std::domain_error("tolerance must be positive");

    const ParaproductOperator op(b);
    const int depth = b.depth();
    const StepFunction sqrt_w = map_cells(w.base(), [](double v) { return std::sqrt(v); });
    const StepFunction inv_sqrt_w = map_cells(sqrt_w, [](double v) { return 1.0 / v; });

    const auto apply_tst = [&](const std::vector<double>& x) {
        StepFunction fx(depth, x);
        // T x = sqrt(w) pi_b(x / sqrt(w)), then T* y = pi_b^t(sqrt(w) y) / sqrt(w)
        StepFunction tx = sqrt_w * op.apply(inv_sqrt_w * fx);
        StepFunction ttx = inv_sqrt_w * op.apply_adjoint(sqrt_w * tx);
        return ttx.values();
    };

    NormEstimate best;
    for (int restart = 0; restart < suite::kNormRestarts; ++restart) {
        Xoshiro256 rng(substream_seed(seed, static_cast<std::uint64_t>(restart)));
        int iterations = 0;
        const double rayleigh =
            power_iterate(apply_tst, std::size_t{1} << depth, rng, tol, max_iter, iterations);
        best.iterations += iterations;
        best.value = std::max(best.value, std::sqrt(std::max(rayleigh, 0.0)));
    }
    return best;
}

double dual_pairing_bound_ratio(const StepFunction& b, const Weight& w, const StepFunction& f,
                                const StepFunction& g) {
    const int depth = b.depth();
    if (w.depth() != depth || f.depth() != depth || g.depth() != depth)
        throw shape_error("dual pairing needs a shared grid depth");
    const double f_norm = f.norm_l2();
    const double g_norm = g.norm_l2();
    if (f_norm == 0.0 || g_norm == 0.0)
        throw std::domain_error("f and g must be nonzero");

    const ParaproductOperator op(b);
    const StepFunction sqrt_w = map_cells(w.base(), [](double v) { return std::sqrt(v); });
    const StepFunction inv_sqrt_w = map_cells(sqrt_w, [](double v) { return 1.0 / v; });
    const double numerator = std::abs(inner_product(op.apply(f * inv_sqrt_w), g * sqrt_w));

    const double denominator =
        a2_characteristic(w).value * bmo_norm_carleson(b) * f_norm * g_norm;
    if (denominator == 0.0) {
        if (numerator == 0.0)
            return 0.0;
        throw std::domain_error("degenerate normalization in dual pairing ratio");
    }
    return numerator / denominator;
}

std::vector<std::vector<double>> dense_operator_matrix(const StepFunction& b, const Weight& w) {
    if (b.depth() != w.depth())
        throw shape_error("symbol and weight live on different grids");
    const ParaproductOperator op(b);
    const int depth = b.depth();
    const std::size_t dim = std::size_t{1} << depth;
    const StepFunction sqrt_w = map_cells(w.base(), [](double v) { return std::sqrt(v); });
    const StepFunction inv_sqrt_w = map_cells(sqrt_w, [](double v) { return 1.0 / v; });

    std::vector<std::vector<double>> matrix(dim, std::vector<double>(dim, 0.0));
    for (std::size_t j = 0; j < dim; ++j) {
        std::vector<double> e(dim, 0.0);
        e[j] = 1.0;
        const StepFunction column = sqrt_w * op.apply(inv_sqrt_w * StepFunction(depth, std::move(e)));
        for (std::size_t i = 0; i < dim; ++i)
            matrix[i][j] = column.value(i);
    }
    return matrix;
}

} // namespace dyadlab
