#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "elephant/core.hpp"

namespace elephant {

/// 17 significant digits: enough to round-trip a double, fixed for the
/// byte-reproducibility contract.
std::string format_double(double x);

std::string format_real(const Real& x);

std::string format_rational(const Rational& x);

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  void row(const std::vector<std::string>& cells);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ofstream out_;
  std::size_t columns_;
};

struct RunManifest {
  std::string subcommand;
  std::vector<std::string> argv;
  std::uint64_t seed = 0;
  std::string version;
  std::vector<std::string> outputs;
  double wall_ms = 0.0;
};

void write_manifest(const RunManifest& manifest, const std::string& path);
RunManifest read_manifest(const std::string& path);

}  // namespace elephant
