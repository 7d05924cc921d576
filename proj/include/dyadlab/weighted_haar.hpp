#pragma once

#include "dyadlab/dyadic.hpp"
#include "dyadlab/weights.hpp"

namespace dyadlab {

/// H_I^w = h_I sqrt|I| - A_I^w chi_I, the Haar function corrected to have
/// w-weighted mean zero on I. Satisfies the exact norm identity
/// ||w^{1/2} H_I^w||_2^2 = |I| m_I w (1 - (A_I^w)^2).
struct WeightedHaarFunction {
    DyadicIndex interval;
    double disbalance = 0.0;
    StepFunction representation;
};

/// A_I^w = (m_{I+} w - m_{I-} w) / (2 m_I w); always in (-1, 1).
double disbalance(const Weight& w, const DyadicIndex& index);

WeightedHaarFunction weighted_haar(const Weight& w, const DyadicIndex& index);

/// <g, w^{1/2} H_I^w> for every I with level < depth, one O(2^N) pass.
DyadicSequence weighted_haar_pairings(const Weight& w, const StepFunction& g);

/// sum_I <g, w^{1/2} H_I^w>^2 / (|I| m_I w). Bounded by ||g||_2^2 since
/// {w^{1/2} H_I^w} is orthogonal with norms at most sqrt(|I| m_I w).
double bessel_sum(const Weight& w, const StepFunction& g);

} // namespace dyadlab
