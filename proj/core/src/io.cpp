#include "chebhmc/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>
#include <openssl/evp.h>

namespace chebhmc {

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out << ',';
    out << header[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_double(row[i]);
    }
    out << '\n';
  }
  write_text_file(path, out.str());
}

void write_trace_csv(const std::string& csv_path,
                     const std::vector<Eigen::VectorXd>& states) {
  if (states.empty()) throw std::invalid_argument("write_trace_csv: empty trace");
  std::ostringstream out;
  const Eigen::Index d = states.front().size();
  for (Eigen::Index j = 0; j < d; ++j) {
    if (j) out << ',';
    out << 'x' << j;
  }
  out << '\n';
  for (const auto& x : states) {
    for (Eigen::Index j = 0; j < d; ++j) {
      if (j) out << ',';
      out << format_double(x[j]);
    }
    out << '\n';
  }
  write_text_file(csv_path, out.str());
}

void write_trace_csv(const std::string& csv_path, const Eigen::MatrixXd& samples) {
  std::vector<Eigen::VectorXd> states;
  states.reserve(samples.rows());
  for (Eigen::Index i = 0; i < samples.rows(); ++i) {
    states.push_back(samples.row(i).transpose());
  }
  write_trace_csv(csv_path, states);
}

void write_trace_sidecar(const std::string& json_path,
                         const IntegrationSchedule& schedule, std::uint64_t seed) {
  nlohmann::json j;
  j["schedule"] = nlohmann::json::parse(schedule_to_json(schedule));
  j["seed"] = seed;
  write_text_file(json_path, j.dump(2) + "\n");
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256_hex: digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xF]);
  }
  return out;
}

}  // namespace chebhmc
