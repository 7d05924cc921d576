#pragma once

#include <cstdint>

#include "dyadlab/dyadic.hpp"

namespace dyadlab {

/// Strictly positive step function together with its exact pointwise
/// reciprocal. Both directions carry average pyramids, so m_I w and
/// m_I w^-1 are O(1) lookups. For every grid interval,
/// m_I w * m_I w^-1 >= 1 (Cauchy-Schwarz on the cells).
class Weight {
public:
    /// Throws std::domain_error unless every value is finite and > 0.
    explicit Weight(StepFunction base);

    int depth() const { return base_.depth(); }
    const StepFunction& base() const { return base_; }
    const StepFunction& reciprocal() const { return reciprocal_; }

    double average(const DyadicIndex& index) const { return base_.average(index); }
    double reciprocal_average(const DyadicIndex& index) const { return reciprocal_.average(index); }

private:
    StepFunction base_;
    StepFunction reciprocal_;
};

struct A2Result {
    double value = 0.0;
    DyadicIndex argmax;
};

/// ||w||_{A2} = max over all grid intervals (levels 0..N) of
/// m_I w * m_I w^-1, together with the interval attaining it.
A2Result a2_characteristic(const Weight& w);

struct BmoResult {
    double value = 0.0;
    DyadicIndex argmax;
};

/// ||b||_{BMO} via the Carleson-sum form:
/// sqrt( max_J (1/|J|) sum_{I in D(J)} b_I^2 ).
double bmo_norm_carleson(const StepFunction& b);
BmoResult bmo_norm_carleson_detail(const StepFunction& b);

/// ||b||_{BMO} via mean-square oscillation:
/// sqrt( max_I (1/|I|) int_I |b - m_I b|^2 ). Coincides with the Carleson
/// form on a finite grid.
double bmo_norm_oscillation(const StepFunction& b);

/// Q = max_J (1/|J|) sum_{I in D(J)} s(I). Entries must be >= 0.
double carleson_constant(const DyadicSequence& sequence);

/// Cell averages of x -> x^alpha, the standard A2 test family.
/// Requires -1 < alpha < 1.
Weight gen_power_weight(double alpha, int depth);

/// Multiplicative cascade: top-down m_{I+-} w = m_I w (1 +- eps_I) with
/// eps_I uniform in [-delta, delta]. Deterministic in the seed; every
/// disbalance satisfies |A_I^w| <= delta. Requires 0 <= delta < 1.
Weight gen_cascade_weight(int depth, double delta, std::uint64_t seed);

enum class SymbolKind { single_haar, dyadic_log, random_normalized };

/// BMO test symbols:
///   single_haar       b = h_{[0,1)}, BMO norm 1
///   dyadic_log        b_I = sqrt|I| along the left-half chain (log(1/x) type)
///   random_normalized random Haar coefficients rescaled to BMO norm 1
StepFunction gen_bmo_symbol(SymbolKind kind, int depth, std::uint64_t seed);

Weight restrict_to(const Weight& w, const DyadicIndex& root);

} // namespace dyadlab
