#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace dyadlab {

/// Point of the 3-variable Bellman domain: u, v, l >= 0, uv >= 1, l <= 1.
struct BellmanPoint3 {
    double u = 0.0;
    double v = 0.0;
    double l = 0.0;
};

/// Point of the 2-variable Bellman domain: u, v >= 0, uv >= 1.
struct BellmanPoint2 {
    double u = 0.0;
    double v = 0.0;
};

/// Domain membership. Boundary cases uv = 1 are admitted with 1e-12
/// relative slack so that grid-derived points survive rounding.
bool in_domain(const BellmanPoint3& p);
bool in_domain(const BellmanPoint2& p);

// --- B1(u, v, l) = u - 1/(v(1+l)),  range 0 <= B1 <= u ---------------------

double b1_eval(const BellmanPoint3& p);

/// dB1/dl - 1/(4v) = 1/(v(1+l)^2) - 1/(4v) >= 0 on the domain.
double b1_l_derivative_slack(const BellmanPoint3& p);

/// -d^2 B1, closed form. Row/column order (u, v, l); the u row is zero.
std::array<std::array<double, 3>, 3> b1_neg_hessian(const BellmanPoint3& p);

/// Minimum eigenvalue of -d^2 B1 (zero u-block plus a 2x2 block in (v, l)).
double b1_hessian_min_eigenvalue(const BellmanPoint3& p);

/// gap - alpha/(4 v_x) for x = midpoint of (plus, minus) in (u, v) shifted
/// by alpha >= 0 in l. Nonnegative by the certificate.
double b1_midpoint_slack(const BellmanPoint3& plus, const BellmanPoint3& minus, double alpha);

// --- B2(u, v) = (uv)^{1/4} -------------------------------------------------

double b2_eval(const BellmanPoint2& p);

/// -d^2 B2, closed form: (1/16) [[3 v^{1/4} u^{-7/4}, -(uv)^{-3/4}],
///                               [-(uv)^{-3/4}, 3 u^{1/4} v^{-7/4}]].
std::array<std::array<double, 2>, 2> b2_neg_hessian(const BellmanPoint2& p);

/// min over unit directions (du, dv) of
/// -d^2B2(du, dv) - (1/8) v^{1/4} u^{-7/4} du^2; nonnegative on the domain.
double b2_hessian_lower_bound_slack(const BellmanPoint2& p);

/// [B2(x) - (B2(x+) + B2(x-))/2] / [v^{1/4} u^{-7/4} (u+ - u-)^2] at the
/// midpoint x; the bare gap when u+ = u-. Calibrated lower bound 1/256.
double b2_midpoint_gap_ratio(const BellmanPoint2& plus, const BellmanPoint2& minus);

// --- B3(u, v) = v - 1/u,  range 0 <= B3 <= v -------------------------------

double b3_eval(const BellmanPoint2& p);

/// -d^2 B3 (du, dv) = 2 u^{-3} du^2, exact.
double b3_neg_hessian_form(const BellmanPoint2& p, double du, double dv);

/// Midpoint gap; equals (u+ - u-)^2 / (2 u+ u- (u+ + u-)) exactly, hence
/// >= (1/4) u^{-3} (u+ - u-)^2 at the midpoint.
double b3_midpoint_gap(const BellmanPoint2& plus, const BellmanPoint2& minus);

// --- certificate sweeps ------------------------------------------------------

enum class BellmanId { b1, b2, b3 };

struct ConditionSlack {
    std::string condition;
    double min_slack = 0.0;
    std::array<double, 3> witness{}; // (u, v, l); l unused for 2-variable functions
};

/// Outcome of one certificate sweep: minimum slack per condition with the
/// worst-case sample point. A negative slack beyond tolerance marks failure.
struct CertificateReport {
    std::string function_id;
    long samples = 0;
    std::uint64_t seed = 0;
    std::vector<ConditionSlack> conditions;

    bool passed(double tolerance = 1e-12) const;
};

/// Sweep `samples` random domain points (u, v log-uniform over
/// [2^-20, 2^20] conditioned on uv >= 1, l uniform on [0, 1]) through every
/// condition of the chosen certificate.
CertificateReport verify_bellman(BellmanId which, long samples, std::uint64_t seed);

std::string to_string(BellmanId which);

} // namespace dyadlab
