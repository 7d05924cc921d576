#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dyadlab/constants.hpp"
#include "dyadlab/dyadic.hpp"
#include "dyadlab/weights.hpp"

namespace dyadlab {

/// Outcome of one inequality check rooted at J. `rhs` is the scale-bearing
/// right side as the statement writes it (constants excluded); the check
/// passes when lhs/rhs <= constant (+1e-10 slack). `witness` is the root
/// attaining the worst ratio when a sweep produced the report, J itself
/// otherwise.
struct CheckReport {
    std::string id;
    DyadicIndex root;
    double lhs = 0.0;
    double rhs = 0.0;
    double constant = 1.0;
    double ratio = 0.0;
    bool pass = false;
    DyadicIndex witness;
};

/// Optional precomputed scale constants. Passing them keeps a re-rooted
/// re-run comparable to the global report and saves recomputation in sweeps.
struct CheckContext {
    std::optional<double> carleson_q;
    std::optional<double> a2;
    std::optional<double> bmo;
};

// Proposition 1: (1/|J|) sum lambda_I / m_I w^-1 <= 4 Q m_J w.
CheckReport check_prop1_main(const Weight& w, const DyadicSequence& lambda, const DyadicIndex& J,
                             const CheckContext& ctx = {});

// Consequence: (1/|J|) sum m_I w lambda_I <= 4 Q ||w||_A2 m_J w.
CheckReport check_prop1_consequence(const Weight& w, const DyadicSequence& lambda,
                                    const DyadicIndex& J, const CheckContext& ctx = {});

// {b_I^2} is Carleson with constant ||b||_BMO^2: (1/|J|) sum b_I^2 <= ||b||^2.
CheckReport check_carleson_b(const StepFunction& b, const DyadicIndex& J,
                             const CheckContext& ctx = {});

// Embedding hypothesis: (1/|J|) sum m_I w^-1 b_I^2
//   <= 4 ||w||_A2 ||b||_BMO^2 m_J w^-1.
CheckReport check_embedding_hypothesis(const StepFunction& b, const Weight& w,
                                       const DyadicIndex& J, const CheckContext& ctx = {});

// Proposition 2: (1/|J|) sum ((m_{I+}w - m_{I-}w)/m_I w)^2 |I|
//   (m_I w)^{1/4} (m_I w^-1)^{1/4} <= 256 (m_J w)^{1/4} (m_J w^-1)^{1/4}.
CheckReport check_prop2(const Weight& w, const DyadicIndex& J);

// Consequence with full weights in place of the 1/4 powers; RHS ||w||_A2.
CheckReport check_prop2_consequence(const Weight& w, const DyadicIndex& J,
                                    const CheckContext& ctx = {});

// Proposition 3, essential form: (1/|J|) sum (m_{I+}w - m_{I-}w)^2 / m_I^3 w |I|
//   <= 4 m_J w^-1 (constant exact from the B3 midpoint identity).
CheckReport check_prop3_essential(const Weight& w, const DyadicIndex& J);

// Full form with m_I w^-1 inside; RHS 4 ||w||_A2 m_J w^-1.
CheckReport check_prop3(const Weight& w, const DyadicIndex& J, const CheckContext& ctx = {});

// Wittwer sum: (1/|J|) sum (A_I^w)^2 |I| m_I w vs ||w||_A2 m_J w.
// No exact constant is attached to this lemma; the pass constant is
// configurable and defaults to the calibrated freeze.
CheckReport check_wittwer(const Weight& w, const DyadicIndex& J, const CheckContext& ctx = {},
                          double constant = suite::kWittwerConstant);

// Bilinear-embedding hypotheses for alpha_I = |b_I A_I^w| sqrt|I|, against
// C ||w||_A2 (dot), C ||w||_A2 m_J w, C ||w||_A2 m_J w^-1 with
// C = 16 ||b||_BMO.
std::array<CheckReport, 3> check_bilinear_hypotheses(const StepFunction& b, const Weight& w,
                                                     const DyadicIndex& J,
                                                     const CheckContext& ctx = {});

/// All named single-root checks, re-run at every grid root; returns the
/// report with the worst ratio.
enum class CheckKind {
    prop1,
    prop1_consequence,
    carleson_b,
    embedding,
    prop2,
    prop2_consequence,
    prop3,
    prop3_essential,
    wittwer,
};

CheckReport worst_over_roots(CheckKind kind, const Weight& w, const StepFunction* b,
                             const DyadicSequence* lambda,
                             double wittwer_constant = suite::kWittwerConstant);

std::array<CheckReport, 3> worst_bilinear_over_roots(const StepFunction& b, const Weight& w);

// --- norm-versus-characteristic scans ---------------------------------------

struct ScanRecord {
    double param = 0.0;
    double a2 = 0.0;
    double bmo = 0.0;
    double norm = 0.0;
    double ratio = 0.0; // norm / (a2 * bmo)
};

struct ScanResult {
    std::vector<ScanRecord> records; // sorted by a2
    double slope = 0.0;              // OLS slope of log norm vs log a2
};

enum class WeightFamily { power, cascade };

struct ScanOptions {
    SymbolKind symbol = SymbolKind::dyadic_log;
    double tol = suite::kNormTol;
    int max_iter = suite::kNormMaxIter;
};

/// One weight per parameter (power: alpha, cascade: delta), a fixed symbol
/// normalized to BMO norm 1, operator norms by power iteration. Parameters
/// are processed in parallel; records are merged in parameter order and then
/// sorted by a2. Convergence errors propagate.
ScanResult scan_norm_vs_a2(WeightFamily family, const std::vector<double>& params, int depth,
                           std::uint64_t seed, const ScanOptions& options = {});

/// Ordinary least squares slope of log(y) against log(x). NaN with fewer
/// than two usable points.
double loglog_slope(const std::vector<std::pair<double, double>>& points);

} // namespace dyadlab
