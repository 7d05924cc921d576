#pragma once

#include <cstdint>
#include <vector>

#include "dyadlab/constants.hpp"
#include "dyadlab/dyadic.hpp"
#include "dyadlab/weights.hpp"

namespace dyadlab {

/// The dyadic paraproduct pi_b f = sum_I m_I f b_I h_I over all grid
/// intervals with children.
class ParaproductOperator {
public:
    explicit ParaproductOperator(StepFunction symbol);

    int depth() const { return symbol_.depth(); }
    const StepFunction& symbol() const { return symbol_; }
    const HaarSpectrum& spectrum() const { return spectrum_; }

    /// One pyramid pass for the averages of f, one synthesis pass. O(2^N).
    StepFunction apply(const StepFunction& f) const;

    /// pi_b^t g = sum_I b_I <g, h_I> chi_I / |I|; the L2 adjoint, used by the
    /// operator-norm machinery and the adjoint-consistency checks.
    StepFunction apply_adjoint(const StepFunction& g) const;

private:
    StepFunction symbol_;
    HaarSpectrum spectrum_;
};

/// The three sums of the duality decomposition: sum1 is the full pairing
/// <pi_b(f w^-1/2), g w^1/2>, sum2 routes through the weighted Haar system,
/// sum3 carries the disbalance correction. sum1 = sum2 + sum3.
struct PairingBreakdown {
    double sum1 = 0.0;
    double sum2 = 0.0;
    double sum3 = 0.0;
};

PairingBreakdown pairing_breakdown(const StepFunction& b, const Weight& w, const StepFunction& f,
                                   const StepFunction& g);

struct NormEstimate {
    double value = 0.0;
    int iterations = 0;
};

/// ||pi_b||_{L2(w) -> L2(w)} as the top singular value of
/// T: f -> w^{1/2} pi_b(w^{-1/2} f) on the cell space. Power iteration on
/// T*T with a fixed seeded start, three restarts, max taken. Throws
/// convergence_error (carrying the last iterate) after max_iter steps
/// without the Rayleigh quotient settling to relative tol.
NormEstimate weighted_operator_norm(const StepFunction& b, const Weight& w,
                                    double tol = suite::kNormTol,
                                    int max_iter = suite::kNormMaxIter,
                                    std::uint64_t seed = suite::kDefaultSeed);

/// |<pi_b(f w^-1/2), g w^1/2>| / (||w||_A2 ||b||_BMO ||f||_2 ||g||_2):
/// the constant of the dual bound witnessed by one quadruple.
double dual_pairing_bound_ratio(const StepFunction& b, const Weight& w, const StepFunction& f,
                                const StepFunction& g);

/// Dense cell-basis matrix of T: f -> w^{1/2} pi_b(w^{-1/2} f), row-major.
/// O(4^N); the slow oracle behind the power-iteration route.
std::vector<std::vector<double>> dense_operator_matrix(const StepFunction& b, const Weight& w);

} // namespace dyadlab
