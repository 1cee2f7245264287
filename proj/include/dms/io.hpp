#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

#include "dms/adaptive.hpp"
#include "dms/calibration.hpp"
#include "dms/experiment.hpp"
#include "dms/matrix.hpp"

namespace dms {

// Plain numeric text: one row per line, comma or whitespace separated, with an
// optional single header line (detected by failing to parse as numbers).
// Errors name the offending data row and column, 1-based.
DataMatrix read_matrix(std::istream& in, const std::string& source_name);
DataMatrix read_matrix_file(const std::string& path);

// Lossless CSV (round-trip precision), no header.
void write_matrix_csv(const DataMatrix& x, std::ostream& out);

std::string covariance_label(CovarianceKind kind);
CovarianceKind parse_covariance(const std::string& label);
std::string noise_label(NoiseKind kind);
NoiseKind parse_noise(const std::string& label);

// Result table with one row per (cell, method):
// scenario,n,p,noise,tau_frac,k,delta,method,alpha,reps,rejections,rate,
// stderr,errors,seconds_total. Identical runs produce identical bytes except
// for the seconds_total column.
void write_results_csv(std::span<const ExperimentResult> results, std::ostream& out);
void write_results_pretty(std::span<const ExperimentResult> results, std::ostream& out);
nlohmann::json results_to_json(std::span<const ExperimentResult> results);

nlohmann::json max_report_to_json(const MaxTestReport& rep);
nlohmann::json sum_report_to_json(const SumTestReport& rep);
nlohmann::json dms_report_to_json(const DmsReport& rep);
nlohmann::json wzwy_report_to_json(const WzwyReport& rep);
nlohmann::json calibration_to_json(const CalibrationConfig& cfg, const CalibrationReport& rep);

} // namespace dms
