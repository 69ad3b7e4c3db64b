#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "twistperiod/rdbasis.hpp"

namespace twistperiod {

using json = nlohmann::json;

// The job file does not match the schema; nothing is written.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int check_failed = 1;
inline constexpr int schema = 2;
inline constexpr int precondition = 3;
inline constexpr int numeric = 4;
}  // namespace exit_code

struct FormEntry {
  ComplexRat coeff;
  std::vector<int> powers;
};

struct JobSpec {
  int dim = 0;
  RatMatrix hyperplanes;
  std::vector<ComplexRat> exponents;
  PhaseSpec phase;  // phase.level empty means "auto"
  std::vector<FormEntry> form;
  std::vector<std::string> tasks;

  bool wants(const std::string& task) const;
};

JobSpec parse_job(const json& doc);
JobSpec load_job(const std::filesystem::path& path);
json job_to_json(const JobSpec& job);

struct RunOptions {
  std::filesystem::path out_dir = ".";
  bool plot = false;
  double tol = 1e-10;
};

struct RunResult {
  int exit_code = exit_code::ok;
  std::string reason;
  json report;
};

/// Runs every requested task and writes report.json (and chambers.svg with
/// `plot`) into out_dir. Exit codes follow the exit_code namespace.
RunResult run_job(const JobSpec& job, const RunOptions& opts);

/// Parses and runs; a schema violation returns exit_code::schema and writes nothing.
RunResult run_job_file(const std::filesystem::path& path, const RunOptions& opts);

json census_to_json(const ChamberCensus& census);
ChamberCensus census_from_json(const json& j);
json basis_to_json(const RdBasis& basis);
RdBasis basis_from_json(const json& j);

bool same_census(const ChamberCensus& a, const ChamberCensus& b);
bool same_basis(const RdBasis& a, const RdBasis& b);

/// SVG of a planar arrangement: lines, filled bounded chambers, hatched
/// truncated regions and the dashed level set {Re f = R}.
std::string plot_svg(const Arrangement& A, const ChamberCensus& census, const RdBasis& basis,
                     const PhaseSpec& phase);
void write_svg(const std::filesystem::path& path, const Arrangement& A, const ChamberCensus& census,
               const RdBasis& basis, const PhaseSpec& phase);

}  // namespace twistperiod
