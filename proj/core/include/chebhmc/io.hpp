#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "chebhmc/ideal.hpp"
#include "chebhmc/sampler.hpp"

namespace chebhmc {

// Shortest-round-trip decimal formatting so CSV output is bit-reproducible.
std::string format_double(double v);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// Generic CSV: one header row, then one row per entry.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

// Trace CSV: one row per iteration, one column per dimension, plus a JSON
// sidecar holding the schedule and seed.
void write_trace_csv(const std::string& csv_path,
                     const std::vector<Eigen::VectorXd>& states);
void write_trace_csv(const std::string& csv_path, const Eigen::MatrixXd& samples);
void write_trace_sidecar(const std::string& json_path,
                         const IntegrationSchedule& schedule, std::uint64_t seed);

// SHA-256 hex digest, used for content hashes in provenance sidecars.
std::string sha256_hex(const std::string& bytes);

}  // namespace chebhmc
