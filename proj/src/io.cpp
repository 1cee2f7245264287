#include "dms/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "dms/errors.hpp"

namespace dms {

namespace {

std::vector<std::string> split_fields(const std::string& line, bool comma) {
    std::vector<std::string> out;
    if (comma) {
        std::string field;
        std::stringstream ss(line);
        while (std::getline(ss, field, ','))
            out.push_back(field);
        if (!line.empty() && line.back() == ',')
            out.emplace_back();
    } else {
        std::stringstream ss(line);
        std::string field;
        while (ss >> field)
            out.push_back(field);
    }
    return out;
}

bool parse_double(const std::string& raw, double& value) {
    std::size_t lo = raw.find_first_not_of(" \t\r");
    if (lo == std::string::npos)
        return false;
    std::size_t hi = raw.find_last_not_of(" \t\r");
    const char* first = raw.data() + lo;
    const char* last = raw.data() + hi + 1;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    return ec == std::errc() && ptr == last;
}

std::string csv_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

} // namespace

DataMatrix read_matrix(std::istream& in, const std::string& source_name) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t last = line.find_last_not_of(" \t\r");
        if (last == std::string::npos)
            continue;
        lines.push_back(line.substr(0, last + 1));
    }
    if (lines.empty())
        throw InputError(source_name + ": no data");

    const bool comma = lines.front().find(',') != std::string::npos;

    // The first line is a header when any of its fields is not a number.
    std::size_t start = 0;
    {
        double ignored;
        for (const std::string& f : split_fields(lines.front(), comma)) {
            if (!parse_double(f, ignored)) {
                start = 1;
                break;
            }
        }
    }
    if (lines.size() <= start)
        throw InputError(source_name + ": no data rows");

    std::vector<std::vector<double>> rows;
    const std::size_t p = split_fields(lines[start], comma).size();
    for (std::size_t li = start; li < lines.size(); ++li) {
        const std::size_t r = li - start + 1; // 1-based data row
        const auto fields = split_fields(lines[li], comma);
        if (fields.size() != p)
            throw InputError(source_name + ": row " + std::to_string(r) + " has " +
                             std::to_string(fields.size()) + " columns, expected " +
                             std::to_string(p));
        std::vector<double> vals(fields.size());
        for (std::size_t c = 0; c < fields.size(); ++c) {
            if (!parse_double(fields[c], vals[c]))
                throw InputError(source_name + ": non-numeric value at row " +
                                 std::to_string(r) + ", column " + std::to_string(c + 1));
            if (!std::isfinite(vals[c]))
                throw InputError(source_name + ": non-finite value at row " +
                                 std::to_string(r) + ", column " + std::to_string(c + 1));
        }
        rows.push_back(std::move(vals));
    }

    if (rows.size() < 4)
        throw InputError(source_name + ": need at least 4 data rows, got " +
                         std::to_string(rows.size()));
    DataMatrix x(rows.size(), p);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < p; ++j)
            x(i, j) = rows[i][j];
    return x;
}

DataMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    return read_matrix(in, path);
}

void write_matrix_csv(const DataMatrix& x, std::ostream& out) {
    char buf[64];
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t j = 0; j < x.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", x(i, j));
            out << (j ? "," : "") << buf;
        }
        out << '\n';
    }
}

std::string covariance_label(CovarianceKind kind) {
    switch (kind) {
    case CovarianceKind::identity:
        return "identity";
    case CovarianceKind::ar_toeplitz:
        return "ar_toeplitz";
    case CovarianceKind::block_diag:
        return "block_diag";
    }
    return "?";
}

CovarianceKind parse_covariance(const std::string& label) {
    if (label == "identity")
        return CovarianceKind::identity;
    if (label == "ar_toeplitz")
        return CovarianceKind::ar_toeplitz;
    if (label == "block_diag")
        return CovarianceKind::block_diag;
    throw ConfigError("unknown covariance '" + label +
                      "' (expected identity, ar_toeplitz or block_diag)");
}

std::string noise_label(NoiseKind kind) {
    return kind == NoiseKind::gaussian ? "gaussian" : "student_t";
}

NoiseKind parse_noise(const std::string& label) {
    if (label == "gaussian")
        return NoiseKind::gaussian;
    if (label == "student_t")
        return NoiseKind::student_t;
    throw ConfigError("unknown noise '" + label + "' (expected gaussian or student_t)");
}

void write_results_csv(std::span<const ExperimentResult> results, std::ostream& out) {
    out << "scenario,n,p,noise,tau_frac,k,delta,method,alpha,reps,rejections,rate,"
           "stderr,errors,seconds_total\n";
    for (const ExperimentResult& res : results) {
        const ScenarioConfig& c = res.config;
        for (const MethodRates& m : res.methods) {
            out << covariance_label(c.covariance) << ',' << c.n << ',' << c.p << ','
                << noise_label(c.noise) << ',' << csv_num(c.tau_frac) << ',' << c.sparsity_k
                << ',' << csv_num(c.delta_norm_sq) << ',' << method_name(m.method) << ','
                << csv_num(res.alpha) << ',' << res.reps << ',' << m.rejections << ','
                << csv_num(m.rate) << ',' << csv_num(m.mc_stderr) << ',' << res.errors << ','
                << csv_num(res.seconds_total) << '\n';
        }
    }
}

void write_results_pretty(std::span<const ExperimentResult> results, std::ostream& out) {
    for (const ExperimentResult& res : results) {
        const ScenarioConfig& c = res.config;
        out << covariance_label(c.covariance) << " / " << noise_label(c.noise)
            << "  n=" << c.n << " p=" << c.p << " tau_frac=" << csv_num(c.tau_frac)
            << " k=" << c.sparsity_k << " delta=" << csv_num(c.delta_norm_sq)
            << "  (alpha=" << csv_num(res.alpha) << ", reps=" << res.reps
            << ", errors=" << res.errors << ", " << std::fixed << std::setprecision(2)
            << res.seconds_total << "s)\n";
        out.unsetf(std::ios::fixed);
        for (const MethodRates& m : res.methods) {
            out << "  " << std::left << std::setw(9) << method_name(m.method) << std::right
                << " rate " << std::fixed << std::setprecision(4) << m.rate << " (se "
                << std::setprecision(4) << m.mc_stderr << ", " << m.rejections
                << " rejections)\n";
            out.unsetf(std::ios::fixed);
        }
    }
}

namespace {

nlohmann::json cell_to_json(const ExperimentResult& res) {
    const ScenarioConfig& c = res.config;
    nlohmann::json methods = nlohmann::json::array();
    for (const MethodRates& m : res.methods) {
        methods.push_back({{"method", method_name(m.method)},
                           {"rejections", m.rejections},
                           {"rate", m.rate},
                           {"stderr", m.mc_stderr}});
    }
    return {{"scenario", covariance_label(c.covariance)},
            {"n", c.n},
            {"p", c.p},
            {"noise", noise_label(c.noise)},
            {"tau_frac", c.tau_frac},
            {"k", c.sparsity_k},
            {"delta", c.delta_norm_sq},
            {"alpha", res.alpha},
            {"lambda_n", res.lambda_n},
            {"seed", c.seed},
            {"reps", res.reps},
            {"errors", res.errors},
            {"seconds_total", res.seconds_total},
            {"methods", methods}};
}

} // namespace

nlohmann::json results_to_json(std::span<const ExperimentResult> results) {
    nlohmann::json arr = nlohmann::json::array();
    for (const ExperimentResult& res : results)
        arr.push_back(cell_to_json(res));
    return {{"results", arr}};
}

nlohmann::json max_report_to_json(const MaxTestReport& rep) {
    nlohmann::json j{{"test", "max"},
                     {"variant", rep.variant == MaxVariant::unweighted_gamma0 ? "max0" : "max05"},
                     {"statistic", rep.statistic},
                     {"p_value", rep.p_value},
                     {"n", rep.n},
                     {"p", rep.p},
                     {"status", "ok"}};
    if (rep.variant == MaxVariant::weighted_gamma05)
        j["lambda_n"] = rep.lambda_n;
    return j;
}

nlohmann::json sum_report_to_json(const SumTestReport& rep) {
    return {{"test", "sum"},
            {"statistic", rep.statistic},
            {"centering", rep.centering},
            {"variance", rep.variance},
            {"z", rep.z},
            {"p_value", rep.p_value},
            {"trace_r2", rep.trace_r2},
            {"eps_quad", rep.eps_quad},
            {"rule", rep.rule == DifferencingRule::literal ? "literal" : "strict"},
            {"n", rep.n},
            {"p", rep.p},
            {"status", "ok"}};
}

nlohmann::json dms_report_to_json(const DmsReport& rep) {
    return {{"test", "dms"},
            {"variant", rep.variant == DmsVariant::dms0 ? "dms0" : "dms05"},
            {"alpha", rep.alpha},
            {"p_max", rep.p_max},
            {"p_sum", rep.p_sum},
            {"fisher_stat", rep.fisher_stat},
            {"p_value", rep.p_combined},
            {"reject", rep.reject},
            {"max_component", max_report_to_json(rep.max_component)},
            {"sum_component", sum_report_to_json(rep.sum_component)},
            {"warnings", rep.warnings},
            {"status", "ok"}};
}

nlohmann::json wzwy_report_to_json(const WzwyReport& rep) {
    return {{"test", "wzwy"},
            {"statistic", rep.statistic},
            {"p_value", rep.p_value},
            {"sum_raw", rep.s},
            {"variance", rep.v},
            {"max_weighted", rep.m_dag},
            {"threshold", rep.threshold},
            {"lambda_n", rep.lambda_n},
            {"alpha", rep.alpha},
            {"reject", rep.reject},
            {"n", rep.n},
            {"p", rep.p},
            {"status", "ok"}};
}

nlohmann::json calibration_to_json(const CalibrationConfig& cfg, const CalibrationReport& rep) {
    return {{"scenario", covariance_label(cfg.scenario.covariance)},
            {"noise", noise_label(cfg.scenario.noise)},
            {"n", cfg.scenario.n},
            {"p", cfg.scenario.p},
            {"seed", cfg.scenario.seed},
            {"lambda_n", rep.lambda_n},
            {"exact_scales", cfg.exact_scales},
            {"reps", rep.reps},
            {"errors", rep.errors},
            {"ks_gumbel_unweighted", rep.ks_gumbel_unweighted},
            {"ks_gumbel_weighted", rep.ks_gumbel_weighted},
            {"ks_normal_sum", rep.ks_normal_sum},
            {"corr_max0_sum", rep.corr_max0_sum},
            {"corr_max05_sum", rep.corr_max05_sum},
            {"chi2_max0_sum", rep.chi2_max0_sum},
            {"chi2_max05_sum", rep.chi2_max05_sum},
            {"chi2_pvalue_max0_sum", rep.chi2_pvalue_max0_sum},
            {"chi2_pvalue_max05_sum", rep.chi2_pvalue_max05_sum},
            {"warnings", rep.warnings},
            {"status", "ok"}};
}

} // namespace dms
