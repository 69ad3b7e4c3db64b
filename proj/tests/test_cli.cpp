#include "common.hpp"

#include <fstream>
#include <regex>
#include <unistd.h>

#include "twistperiod/cli.hpp"
#include "twistperiod/errors.hpp"
#include "twistperiod/rdbasis.hpp"

using namespace twistperiod;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("twistperiod-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

const char* kKummer = R"({
  "dim": 1,
  "hyperplanes": [["0", "1"], ["1", "-1"]],
  "exponents": [["1/2", "0"], ["1/3", "0"]],
  "phase": {"kind": "linear", "f": ["0", "1"], "R": "auto"},
  "form": [{"coeff": ["1", "0"], "powers": [-1, -1]}],
  "tasks": ["chambers", "basis", "periods", "verify"]
})";

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("Kummer job end to end") {
  TempDir dir;
  const RunResult r = run_job(parse_job(json::parse(kKummer)), {dir.path});
  CHECK(r.exit_code == exit_code::ok);
  const json rep = json::parse(slurp(dir.path / "report.json"));
  CHECK(rep["basis"]["rank"] == 2);
  CHECK(rep["periods"].size() == 2);
  CHECK(rep["status"] == "ok");
  CHECK(rep["verdicts"]["genericity"]["holds"] == true);
}

TEST_CASE("report round trip") {
  TempDir dir;
  const JobSpec job = parse_job(json::parse(kKummer));
  run_job(job, {dir.path});
  const json rep = json::parse(slurp(dir.path / "report.json"));
  const Arrangement A = make_arrangement(job.dim, job.hyperplanes);
  CHECK(same_census(census_from_json(rep["census"]), enumerate_chambers(A)));
  const RdBasis b = rd_basis(A, ExponentData::scalar(job.exponents), job.phase);
  CHECK(same_basis(basis_from_json(rep["basis"]), b));
  CHECK(parse_job(job_to_json(job)).hyperplanes == job.hyperplanes);
}

TEST_CASE("reports are deterministic") {
  TempDir a, b;
  const JobSpec job = parse_job(json::parse(kKummer));
  run_job(job, {a.path});
  run_job(job, {b.path});
  CHECK(slurp(a.path / "report.json") == slurp(b.path / "report.json"));
}

TEST_CASE("exit codes") {
  TempDir dir;
  SUBCASE("non-generic exponent") {
    json doc = json::parse(kKummer);
    doc["exponents"][0] = json::array({"1", "0"});
    const RunResult r = run_job(parse_job(doc), {dir.path});
    CHECK(r.exit_code == exit_code::precondition);
    CHECK(r.reason == "genericity: integer eigenvalue at j=1");
    const json rep = json::parse(slurp(dir.path / "report.json"));
    CHECK(rep["reason"] == "genericity: integer eigenvalue at j=1");
  }
  SUBCASE("malformed JSON writes nothing") {
    std::ofstream(dir.path / "bad.json") << "{\"dim\": 1, \"hyperplanes\": [";
    const RunResult r = run_job_file(dir.path / "bad.json", {dir.path / "out"});
    CHECK(r.exit_code == exit_code::schema);
    CHECK_FALSE(std::filesystem::exists(dir.path / "out" / "report.json"));
  }
  SUBCASE("schema violations") {
    json doc = json::parse(kKummer);
    doc["hyperplanes"][0] = json::array({"0", "1", "2"});
    CHECK_THROWS_AS(parse_job(doc), SchemaError);
    doc = json::parse(kKummer);
    doc["exponents"][0] = json::array({"1/0", "0"});
    CHECK_THROWS_AS(parse_job(doc), SchemaError);
    doc = json::parse(kKummer);
    doc["phase"]["kind"] = "cubic";
    CHECK_THROWS_AS(parse_job(doc), SchemaError);
  }
  SUBCASE("plot needs a plane") {
    const RunResult r = run_job(parse_job(json::parse(kKummer)), {dir.path, true});
    CHECK(r.exit_code == exit_code::precondition);
    CHECK(r.reason == "plot: requires n=2");
  }
}

TEST_CASE("SVG output") {
  const PhaseSpec quad{PhaseKind::quadratic, {}, {}};
  const PhaseSpec lin{PhaseKind::linear, RatVector{q(0), q(1), q(2)}, {}};
  SUBCASE("three lines") {
    const Arrangement A = triangle();
    const ExponentData E = alphas({q(1, 2), q(1, 3), q(1, 5)});
    const std::string svg = plot_svg(A, enumerate_chambers(A), rd_basis(A, E, quad), quad);
    CHECK(count(svg, "class=\"bounded\"") == 1);
    CHECK(count(svg, "class=\"hyperplane\"") == 3);
    CHECK(count(svg, "class=\"truncated\"") == 6);
    CHECK(count(svg, "class=\"level\"") == 1);
    CHECK(svg == plot_svg(A, enumerate_chambers(A), rd_basis(A, E, quad), quad));
  }
  SUBCASE("four lines") {
    const Arrangement A = four_lines();
    const ExponentData E = alphas({q(1, 2), q(1, 3), q(1, 5), q(1, 7)});
    const std::string svg = plot_svg(A, enumerate_chambers(A), rd_basis(A, E, lin), lin);
    CHECK(count(svg, "class=\"bounded\"") == 3);
    CHECK(count(svg, "stroke-dasharray") == 1);
  }
  SUBCASE("a line is not a plane") {
    const Arrangement A = unit_interval();
    const PhaseSpec p{PhaseKind::linear, RatVector{q(0), q(1)}, {}};
    const ExponentData E = alphas({q(1, 2), q(1, 3)});
    CHECK_THROWS_WITH_AS(plot_svg(A, enumerate_chambers(A), rd_basis(A, E, p), p), "plot: requires n=2",
                         PreconditionError);
  }
}
