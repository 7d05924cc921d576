// dyadlab command line: weight/symbol generation, Bellman certificate
// verification, inequality checks over all dyadic roots, and operator-norm
// scans. Exit codes: 0 all checks passed, 1 check failure, 2 usage error,
// 3 solver did not converge.

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dyadlab/bellman.hpp"
#include "dyadlab/constants.hpp"
#include "dyadlab/inequality.hpp"
#include "dyadlab/paraproduct.hpp"
#include "dyadlab/step_io.hpp"
#include "dyadlab/weights.hpp"

namespace {

using namespace dyadlab;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNoConvergence = 3;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("DYADLAB_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw CLI::ValidationError("DYADLAB_SEED", "must be an unsigned integer");
        }
    }
    return suite::kDefaultSeed;
}

void log_run_header(const std::string& command, std::uint64_t seed) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%F %T", std::gmtime(&now));
    std::cout << "# dyadlab " << command << " at " << stamp << "Z seed=" << seed
              << " constants{version=" << suite::kVersion << " prop1=" << suite::kProp1Factor
              << " prop2=" << suite::kProp2Constant << " prop3=" << suite::kProp3Constant
              << " embed=" << suite::kEmbeddingConstant << " wittwer=" << suite::kWittwerConstant
              << " bilinear=" << suite::kBilinearFactor << "}\n";
}

nlohmann::json constants_json() {
    return {
        {"version", suite::kVersion},
        {"prop1", suite::kProp1Factor},
        {"prop2", suite::kProp2Constant},
        {"prop3", suite::kProp3Constant},
        {"embed", suite::kEmbeddingConstant},
        {"wittwer", suite::kWittwerConstant},
        {"bilinear", suite::kBilinearFactor},
    };
}

nlohmann::json report_json(const CheckReport& report) {
    return {
        {"id", report.id},
        {"lhs", report.lhs},
        {"rhs", report.rhs},
        {"constant", report.constant},
        {"ratio", report.ratio},
        {"pass", report.pass},
        {"witness", {{"level", report.witness.level}, {"position", report.witness.position}}},
    };
}

void print_report(const CheckReport& report) {
    std::cout << std::setprecision(12) << report.id << ": lhs=" << report.lhs
              << " rhs=" << report.rhs << " ratio=" << report.ratio
              << " constant=" << report.constant << " witness=(" << report.witness.level << ","
              << report.witness.position << ") " << (report.pass ? "PASS" : "FAIL") << "\n";
}

int run_gen_weight(const std::string& family, double alpha, double delta, int depth,
                   std::uint64_t seed, const std::string& out) {
    const Weight w = family == "power" ? gen_power_weight(alpha, depth)
                                       : gen_cascade_weight(depth, delta, seed);
    write_step_function(w.base(), out);
    const A2Result a2 = a2_characteristic(w);
    std::cout << "wrote " << out << " (family=" << family << " depth=" << depth
              << " a2=" << std::setprecision(12) << a2.value << ")\n";
    return kExitPass;
}

int run_gen_symbol(const std::string& kind_name, int depth, std::uint64_t seed, bool normalize,
                   const std::string& out) {
    static const std::map<std::string, SymbolKind> kinds{
        {"single_haar", SymbolKind::single_haar},
        {"dyadic_log", SymbolKind::dyadic_log},
        {"random_normalized", SymbolKind::random_normalized},
    };
    StepFunction b = gen_bmo_symbol(kinds.at(kind_name), depth, seed);
    if (normalize)
        b = (1.0 / bmo_norm_carleson(b)) * b;
    write_step_function(b, out);
    std::cout << "wrote " << out << " (kind=" << kind_name << " depth=" << depth
              << " bmo=" << std::setprecision(12) << bmo_norm_carleson(b) << ")\n";
    return kExitPass;
}

int run_verify_bellman(const std::string& function, long samples, std::uint64_t seed,
                       const std::string& out) {
    static const std::map<std::string, BellmanId> ids{
        {"b1", BellmanId::b1}, {"b2", BellmanId::b2}, {"b3", BellmanId::b3}};
    const CertificateReport report = verify_bellman(ids.at(function), samples, seed);

    std::cout << std::setprecision(12);
    for (const auto& condition : report.conditions)
        std::cout << "  " << std::left << std::setw(52) << condition.condition
                  << " min slack = " << condition.min_slack << "  at (u,v,l)=("
                  << condition.witness[0] << ", " << condition.witness[1] << ", "
                  << condition.witness[2] << ")\n";
    const bool passed = report.passed();
    std::cout << "certificate " << report.function_id << ": " << (passed ? "PASS" : "FAIL")
              << " over " << report.samples << " samples\n";

    if (!out.empty()) {
        nlohmann::json doc{{"function", report.function_id},
                           {"samples", report.samples},
                           {"seed", report.seed},
                           {"constants", constants_json()},
                           {"pass", passed}};
        for (const auto& condition : report.conditions)
            doc["conditions"].push_back({{"condition", condition.condition},
                                         {"min_slack", condition.min_slack},
                                         {"witness", condition.witness}});
        atomic_write_text(out, doc.dump(2) + "\n");
    }
    return passed ? kExitPass : kExitCheckFailed;
}

int run_check(const std::string& which, const std::string& weight_path,
              const std::string& symbol_path, double wittwer_constant, const std::string& out) {
    const Weight w = read_weight(weight_path);

    std::optional<StepFunction> b;
    std::optional<DyadicSequence> lambda;
    const bool needs_symbol = which == "prop1" || which == "prop1c" || which == "carleson-b" ||
                              which == "embed" || which == "bilinear";
    if (needs_symbol) {
        if (symbol_path.empty())
            throw CLI::ValidationError("--symbol", "required for check " + which);
        b = read_step_function(symbol_path);
        if (which == "prop1" || which == "prop1c") {
            // Proposition 1 is exercised with the sequence the proof uses:
            // lambda_I = b_I^2 of the supplied symbol.
            const HaarSpectrum spectrum = haar_analyze(*b);
            lambda.emplace(b->depth());
            for (int level = 0; level < b->depth(); ++level)
                for (std::int64_t k = 0; k < (std::int64_t{1} << level); ++k) {
                    const double c = spectrum.coeffs[{level, k}];
                    (*lambda)[{level, k}] = c * c;
                }
        }
    }

    std::vector<CheckReport> reports;
    if (which == "bilinear") {
        const auto three = worst_bilinear_over_roots(*b, w);
        reports.assign(three.begin(), three.end());
    } else {
        static const std::map<std::string, CheckKind> kinds{
            {"prop1", CheckKind::prop1},
            {"prop1c", CheckKind::prop1_consequence},
            {"carleson-b", CheckKind::carleson_b},
            {"embed", CheckKind::embedding},
            {"prop2", CheckKind::prop2},
            {"prop2c", CheckKind::prop2_consequence},
            {"prop3", CheckKind::prop3},
            {"prop3e", CheckKind::prop3_essential},
            {"wittwer", CheckKind::wittwer},
        };
        reports.push_back(worst_over_roots(kinds.at(which), w, b ? &*b : nullptr,
                                           lambda ? &*lambda : nullptr, wittwer_constant));
    }

    bool all_pass = true;
    for (const auto& report : reports) {
        print_report(report);
        all_pass = all_pass && report.pass;
    }
    if (!all_pass)
        std::cout << "worst witness printed above\n";

    if (!out.empty()) {
        nlohmann::json doc{{"which", which}, {"constants", constants_json()}};
        for (const auto& report : reports)
            doc["reports"].push_back(report_json(report));
        atomic_write_text(out, doc.dump(2) + "\n");
    }
    return all_pass ? kExitPass : kExitCheckFailed;
}

int run_scan(const std::string& family_name, std::vector<double> alphas,
             std::vector<double> deltas, int depth, std::uint64_t seed,
             const std::string& symbol_kind, const std::string& out) {
    static const std::map<std::string, SymbolKind> kinds{
        {"single_haar", SymbolKind::single_haar},
        {"dyadic_log", SymbolKind::dyadic_log},
        {"random_normalized", SymbolKind::random_normalized},
    };
    const WeightFamily family =
        family_name == "power" ? WeightFamily::power : WeightFamily::cascade;
    const std::vector<double>& params = family == WeightFamily::power ? alphas : deltas;
    if (params.empty())
        throw CLI::ValidationError("scan", family == WeightFamily::power ? "--alphas is empty"
                                                                         : "--deltas is empty");

    ScanOptions options;
    options.symbol = kinds.at(symbol_kind);
    const ScanResult result = scan_norm_vs_a2(family, params, depth, seed, options);

    std::ostringstream csv;
    csv << std::setprecision(17) << "param,a2,bmo,norm,ratio,slope_so_far\n";
    std::cout << std::setprecision(12);
    std::vector<std::pair<double, double>> points;
    for (const auto& record : result.records) {
        points.emplace_back(record.a2, record.norm);
        const double slope_so_far = loglog_slope(points);
        csv << record.param << ',' << record.a2 << ',' << record.bmo << ',' << record.norm << ','
            << record.ratio << ',' << slope_so_far << '\n';
        std::cout << "param=" << record.param << " a2=" << record.a2 << " bmo=" << record.bmo
                  << " norm=" << record.norm << " ratio=" << record.ratio << "\n";
    }
    std::cout << "loglog slope = " << result.slope << "\n";
    if (!out.empty())
        atomic_write_text(out, csv.str());
    return kExitPass;
}

int run_norm(const std::string& weight_path, const std::string& symbol_path, double tol,
             int max_iter, std::uint64_t seed, const std::string& out) {
    const Weight w = read_weight(weight_path);
    const StepFunction b = read_step_function(symbol_path);
    const NormEstimate estimate = weighted_operator_norm(b, w, tol, max_iter, seed);
    const double a2 = a2_characteristic(w).value;
    const double bmo = bmo_norm_carleson(b);
    const double ratio = bmo > 0.0 ? estimate.value / (a2 * bmo) : 0.0;

    std::cout << std::setprecision(12) << "norm=" << estimate.value << " a2=" << a2
              << " bmo=" << bmo << " ratio=" << ratio << " iterations=" << estimate.iterations
              << "\n";
    if (!out.empty()) {
        const nlohmann::json doc{{"norm", estimate.value},   {"a2", a2},
                                 {"bmo", bmo},               {"ratio", ratio},
                                 {"iterations", estimate.iterations}, {"seed", seed}};
        atomic_write_text(out, doc.dump(2) + "\n");
    }
    return kExitPass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dyadic paraproduct laboratory"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    int depth = suite::kDefaultDepth;
    const auto depth_range = CLI::Range(suite::kMinDepth, suite::kMaxDepth);

    // gen-weight
    auto* gen_weight = app.add_subcommand("gen-weight", "generate a test weight");
    std::string gw_family;
    double gw_alpha = 0.0, gw_delta = 0.0;
    std::string gw_out;
    gen_weight->add_option("--family", gw_family)->required()->check(CLI::IsMember({"power", "cascade"}));
    gen_weight->add_option("--alpha", gw_alpha, "power exponent, -1 < alpha < 1");
    gen_weight->add_option("--delta", gw_delta, "cascade disbalance bound, 0 <= delta < 1");
    gen_weight->add_option("--depth", depth)->check(depth_range);
    gen_weight->add_option("--seed", seed);
    gen_weight->add_option("--out", gw_out)->required();

    // gen-symbol
    auto* gen_symbol = app.add_subcommand("gen-symbol", "generate a BMO symbol");
    std::string gs_kind = "dyadic_log", gs_out;
    bool gs_normalize = false;
    gen_symbol->add_option("--kind", gs_kind)
        ->check(CLI::IsMember({"single_haar", "dyadic_log", "random_normalized"}));
    gen_symbol->add_option("--depth", depth)->check(depth_range);
    gen_symbol->add_option("--seed", seed);
    gen_symbol->add_flag("--normalize", gs_normalize, "rescale to BMO norm 1");
    gen_symbol->add_option("--out", gs_out)->required();

    // verify-bellman
    auto* verify = app.add_subcommand("verify-bellman", "sweep a Bellman certificate");
    std::string vb_function, vb_out;
    long vb_samples = 10000;
    verify->add_option("--function", vb_function)->required()->check(CLI::IsMember({"b1", "b2", "b3"}));
    verify->add_option("--samples", vb_samples)->check(CLI::PositiveNumber);
    verify->add_option("--seed", seed);
    verify->add_option("--out", vb_out);

    // check
    auto* check = app.add_subcommand("check", "run an inequality check over all roots");
    std::string ck_which, ck_weight, ck_symbol, ck_out;
    double ck_wittwer = suite::kWittwerConstant;
    check->add_option("--which", ck_which)
        ->required()
        ->check(CLI::IsMember({"prop1", "prop1c", "carleson-b", "embed", "prop2", "prop2c",
                               "prop3", "prop3e", "wittwer", "bilinear"}));
    check->add_option("--weight", ck_weight)->required()->check(CLI::ExistingFile);
    check->add_option("--symbol", ck_symbol)->check(CLI::ExistingFile);
    check->add_option("--constant", ck_wittwer, "pass constant for wittwer")
        ->check(CLI::PositiveNumber);
    check->add_option("--out", ck_out);

    // scan
    auto* scan = app.add_subcommand("scan", "norm versus A2 characteristic scan");
    std::string sc_family, sc_symbol_kind = "dyadic_log", sc_out;
    std::vector<double> sc_alphas, sc_deltas;
    scan->add_option("--family", sc_family)->required()->check(CLI::IsMember({"power", "cascade"}));
    scan->add_option("--alphas", sc_alphas)->delimiter(',');
    scan->add_option("--deltas", sc_deltas)->delimiter(',');
    scan->add_option("--depth", depth)->check(depth_range);
    scan->add_option("--seed", seed);
    scan->add_option("--symbol-kind", sc_symbol_kind)
        ->check(CLI::IsMember({"single_haar", "dyadic_log", "random_normalized"}));
    scan->add_option("--out", sc_out);

    // norm
    auto* norm = app.add_subcommand("norm", "weighted operator norm of the paraproduct");
    std::string nm_weight, nm_symbol, nm_out;
    double nm_tol = suite::kNormTol;
    int nm_max_iter = suite::kNormMaxIter;
    norm->add_option("--weight", nm_weight)->required()->check(CLI::ExistingFile);
    norm->add_option("--symbol", nm_symbol)->required()->check(CLI::ExistingFile);
    norm->add_option("--tol", nm_tol)->check(CLI::PositiveNumber);
    norm->add_option("--max-iter", nm_max_iter)->check(CLI::PositiveNumber);
    norm->add_option("--seed", seed);
    norm->add_option("--out", nm_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        // seed resolution: explicit flag wins, then DYADLAB_SEED, then default
        bool seed_given = false;
        for (auto* sub : {gen_weight, gen_symbol, verify, check, scan, norm})
            if (sub->parsed()) {
                const auto* option = sub->get_option_no_throw("--seed");
                if (option && option->count() > 0)
                    seed_given = true;
            }
        if (!seed_given)
            seed = default_seed();

        if (gen_weight->parsed()) {
            log_run_header("gen-weight", seed);
            if (gw_family == "power" && gen_weight->count("--delta"))
                throw CLI::ValidationError("--delta", "not a power-family parameter");
            if (gw_family == "cascade" && gen_weight->count("--alpha"))
                throw CLI::ValidationError("--alpha", "not a cascade parameter");
            return run_gen_weight(gw_family, gw_alpha, gw_delta, depth, seed, gw_out);
        }
        if (gen_symbol->parsed()) {
            log_run_header("gen-symbol", seed);
            return run_gen_symbol(gs_kind, depth, seed, gs_normalize, gs_out);
        }
        if (verify->parsed()) {
            log_run_header("verify-bellman", seed);
            return run_verify_bellman(vb_function, vb_samples, seed, vb_out);
        }
        if (check->parsed()) {
            log_run_header("check", seed);
            return run_check(ck_which, ck_weight, ck_symbol, ck_wittwer, ck_out);
        }
        if (scan->parsed()) {
            log_run_header("scan", seed);
            return run_scan(sc_family, sc_alphas, sc_deltas, depth, seed, sc_symbol_kind, sc_out);
        }
        if (norm->parsed()) {
            log_run_header("norm", seed);
            return run_norm(nm_weight, nm_symbol, nm_tol, nm_max_iter, seed, nm_out);
        }
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const convergence_error& e) {
        std::cerr << "convergence failure: " << e.what()
                  << " (last estimate " << e.last_estimate() << ")\n";
        return kExitNoConvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
