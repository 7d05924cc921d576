#include "dyadlab/bellman.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dyadlab/rng.hpp"

namespace dyadlab {

namespace {

constexpr double kDomainSlack = 1e-12;

void require_domain(const BellmanPoint3& p) {
    if (!in_domain(p))
        throw std::domain_error("point outside the Bellman domain {u,v,l >= 0, uv >= 1, l <= 1}");
}

void require_domain(const BellmanPoint2& p) {
    if (!in_domain(p))
        throw std::domain_error("point outside the Bellman domain {u,v >= 0, uv >= 1}");
}

double min_eigenvalue_2x2(double a, double c, double d) {
    // symmetric [[a, c], [c, d]]; det/lambda_max avoids the mean - radius
    // cancellation when the diagonal entries differ by many binades
    const double mean = 0.5 * (a + d);
    const double radius = std::hypot(0.5 * (a - d), c);
    const double lambda_max = mean + radius;
    if (lambda_max <= 0.0)
        return mean - radius;
    return (a * d - c * c) / lambda_max;
}

} // namespace

bool in_domain(const BellmanPoint3& p) {
    return p.u >= 0.0 && p.v >= 0.0 && p.l >= 0.0 && p.l <= 1.0 + kDomainSlack &&
           p.u * p.v >= 1.0 - kDomainSlack;
}

bool in_domain(const BellmanPoint2& p) {
    return p.u >= 0.0 && p.v >= 0.0 && p.u * p.v >= 1.0 - kDomainSlack;
}

// --- B1 ---------------------------------------------------------------------

double b1_eval(const BellmanPoint3& p) {
    require_domain(p);
    return p.u - 1.0 / (p.v * (1.0 + p.l));
}

double b1_l_derivative_slack(const BellmanPoint3& p) {
    require_domain(p);
    const double one_plus_l = 1.0 + p.l;
    return 1.0 / (p.v * one_plus_l * one_plus_l) - 0.25 / p.v;
}

std::array<std::array<double, 3>, 3> b1_neg_hessian(const BellmanPoint3& p) {
    require_domain(p);
    const double s = 1.0 + p.l;
    const double vv = p.v * p.v;
    return {{{0.0, 0.0, 0.0},
             {0.0, 2.0 / (vv * p.v * s), 1.0 / (vv * s * s)},
             {0.0, 1.0 / (vv * s * s), 2.0 / (p.v * s * s * s)}}};
}

double b1_hessian_min_eigenvalue(const BellmanPoint3& p) {
    const auto m = b1_neg_hessian(p);
    return std::min(0.0, min_eigenvalue_2x2(m[1][1], m[1][2], m[2][2]));
}

double b1_midpoint_slack(const BellmanPoint3& plus, const BellmanPoint3& minus, double alpha) {
    if (!(alpha >= 0.0))
        throw std::domain_error("midpoint shift alpha must be nonnegative");
    const BellmanPoint3 mid{0.5 * (plus.u + minus.u), 0.5 * (plus.v + minus.v),
                            0.5 * (plus.l + minus.l) + alpha};
    require_domain(plus);
    require_domain(minus);
    require_domain(mid);
    const double gap = b1_eval(mid) - 0.5 * (b1_eval(plus) + b1_eval(minus));
    return gap - 0.25 * alpha / mid.v;
}

// --- B2 ---------------------------------------------------------------------

double b2_eval(const BellmanPoint2& p) {
    require_domain(p);
    return std::pow(p.u * p.v, 0.25);
}

std::array<std::array<double, 2>, 2> b2_neg_hessian(const BellmanPoint2& p) {
    require_domain(p);
    const double diag_u = 3.0 * std::pow(p.v, 0.25) * std::pow(p.u, -1.75) / 16.0;
    const double diag_v = 3.0 * std::pow(p.u, 0.25) * std::pow(p.v, -1.75) / 16.0;
    const double cross = -std::pow(p.u * p.v, -0.75) / 16.0;
    return {{{diag_u, cross}, {cross, diag_v}}};
}

double b2_hessian_lower_bound_slack(const BellmanPoint2& p) {
    const auto m = b2_neg_hessian(p);
    const double bound = 0.125 * std::pow(p.v, 0.25) * std::pow(p.u, -1.75);
    return min_eigenvalue_2x2(m[0][0] - bound, m[0][1], m[1][1]);
}

double b2_midpoint_gap_ratio(const BellmanPoint2& plus, const BellmanPoint2& minus) {
    const BellmanPoint2 mid{0.5 * (plus.u + minus.u), 0.5 * (plus.v + minus.v)};
    require_domain(plus);
    require_domain(minus);
    require_domain(mid);
    const double gap = b2_eval(mid) - 0.5 * (b2_eval(plus) + b2_eval(minus));
    if (plus.u == minus.u)
        return gap;
    const double du = plus.u - minus.u;
    return gap / (std::pow(mid.v, 0.25) * std::pow(mid.u, -1.75) * du * du);
}

// --- B3 ---------------------------------------------------------------------

double b3_eval(const BellmanPoint2& p) {
    require_domain(p);
    return p.v - 1.0 / p.u;
}

double b3_neg_hessian_form(const BellmanPoint2& p, double du, double /*dv*/) {
    require_domain(p);
    return 2.0 * du * du / (p.u * p.u * p.u);
}

double b3_midpoint_gap(const BellmanPoint2& plus, const BellmanPoint2& minus) {
    const BellmanPoint2 mid{0.5 * (plus.u + minus.u), 0.5 * (plus.v + minus.v)};
    require_domain(plus);
    require_domain(minus);
    require_domain(mid);
    // v-parts cancel identically; the gap lives in u alone
    const double du = plus.u - minus.u;
    return du * du / (2.0 * plus.u * minus.u * (plus.u + minus.u));
}

// --- certificate sweeps -------------------------------------------------------

namespace {

BellmanPoint2 sample_domain_point2(Xoshiro256& rng) {
    for (;;) {
        const double u = std::exp2(rng.uniform(-20.0, 20.0));
        const double v = std::exp2(rng.uniform(-20.0, 20.0));
        if (u * v >= 1.0)
            return {u, v};
    }
}

BellmanPoint3 sample_domain_point3(Xoshiro256& rng) {
    const BellmanPoint2 uv = sample_domain_point2(rng);
    return {uv.u, uv.v, rng.uniform()};
}

struct SlackTracker {
    double min_slack = std::numeric_limits<double>::infinity();
    std::array<double, 3> witness{};

    void feed(double slack, std::array<double, 3> point) {
        if (slack < min_slack) {
            min_slack = slack;
            witness = point;
        }
    }

    ConditionSlack finish(std::string name) const { return {std::move(name), min_slack, witness}; }
};

CertificateReport sweep_b1(long samples, std::uint64_t seed) {
    Xoshiro256 rng(seed);
    SlackTracker range, derivative, hessian, midpoint;
    for (long i = 0; i < samples; ++i) {
        const BellmanPoint3 p = sample_domain_point3(rng);
        const std::array<double, 3> at{p.u, p.v, p.l};
        const double value = b1_eval(p);
        range.feed(std::min(value, p.u - value), at);
        derivative.feed(b1_l_derivative_slack(p) * p.v, at); // scale-free slack
        hessian.feed(b1_hessian_min_eigenvalue(p), at);

        const BellmanPoint3 q = sample_domain_point3(rng);
        const double head_room = 1.0 - 0.5 * (p.l + q.l);
        const double alpha = rng.uniform() * head_room;
        const BellmanPoint3 mid{0.5 * (p.u + q.u), 0.5 * (p.v + q.v), 0.5 * (p.l + q.l) + alpha};
        midpoint.feed(b1_midpoint_slack(p, q, alpha) * mid.v, {mid.u, mid.v, mid.l});
    }
    return {"b1", samples, seed,
            {range.finish("range 0 <= B <= u"), derivative.finish("v (dB/dl - 1/(4v))"),
             hessian.finish("-d2B min eigenvalue"), midpoint.finish("v (gap - alpha/(4v))")}};
}

CertificateReport sweep_b2(long samples, std::uint64_t seed) {
    Xoshiro256 rng(seed);
    SlackTracker range, hessian, midpoint;
    for (long i = 0; i < samples; ++i) {
        const BellmanPoint2 p = sample_domain_point2(rng);
        const std::array<double, 3> at{p.u, p.v, 0.0};
        const double value = b2_eval(p);
        range.feed(std::min(value, std::pow(p.u * p.v, 0.25) - value), at);
        // normalize by the bound's own scale so slacks are comparable
        hessian.feed(b2_hessian_lower_bound_slack(p) /
                         (0.125 * std::pow(p.v, 0.25) * std::pow(p.u, -1.75)),
                     at);

        const BellmanPoint2 q = sample_domain_point2(rng);
        const double ratio = b2_midpoint_gap_ratio(p, q);
        midpoint.feed(ratio - 1.0 / 256.0, {0.5 * (p.u + q.u), 0.5 * (p.v + q.v), 0.0});
    }
    return {"b2", samples, seed,
            {range.finish("range 0 <= B <= (uv)^{1/4}"),
             hessian.finish("-d2B - (1/8) v^{1/4} u^{-7/4} |du|^2, min eig (scaled)"),
             midpoint.finish("midpoint ratio - 1/256")}};
}

CertificateReport sweep_b3(long samples, std::uint64_t seed) {
    Xoshiro256 rng(seed);
    SlackTracker range, hessian, midpoint;
    for (long i = 0; i < samples; ++i) {
        const BellmanPoint2 p = sample_domain_point2(rng);
        const std::array<double, 3> at{p.u, p.v, 0.0};
        const double value = b3_eval(p);
        range.feed(std::min(value, p.v - value) * p.u, at); // scale by u: range is O(1/u) tight
        hessian.feed(b3_neg_hessian_form(p, 1.0, 0.0) * p.u * p.u * p.u - 2.0, at);

        const BellmanPoint2 q = sample_domain_point2(rng);
        const BellmanPoint2 mid{0.5 * (p.u + q.u), 0.5 * (p.v + q.v)};
        const double du = p.u - q.u;
        const double bound = 0.25 * du * du / (mid.u * mid.u * mid.u);
        const double gap = b3_midpoint_gap(p, q);
        const double scale = std::max(gap, bound);
        midpoint.feed(scale > 0.0 ? (gap - bound) / scale : 0.0, {mid.u, mid.v, 0.0});
    }
    return {"b3", samples, seed,
            {range.finish("u min(B, v - B)"), hessian.finish("u^3 (-d2B)(1,0) - 2"),
             midpoint.finish("(gap - u^-3 du^2/4)/scale")}};
}

} // namespace

bool CertificateReport::passed(double tolerance) const {
    for (const auto& condition : conditions)
        if (!(condition.min_slack >= -tolerance))
            return false;
    return true;
}

CertificateReport verify_bellman(BellmanId which, long samples, std::uint64_t seed) {
    if (samples < 1)
        throw std::domain_error("sample count must be positive");
    switch (which) {
    case BellmanId::b1:
        return sweep_b1(samples, seed);
    case BellmanId::b2:
        return sweep_b2(samples, seed);
    case BellmanId::b3:
        return sweep_b3(samples, seed);
    }
    throw std::domain_error("unknown Bellman function id");
}

std::string to_string(BellmanId which) {
    switch (which) {
    case BellmanId::b1:
        return "b1";
    case BellmanId::b2:
        return "b2";
    case BellmanId::b3:
        return "b3";
    }
    return "?";
}

} // namespace dyadlab
