#include "twistperiod/cli.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "twistperiod/errors.hpp"
#include "twistperiod/quadrature.hpp"
#include "twistperiod/regularization.hpp"

namespace twistperiod {

namespace {

const std::set<std::string> kTasks{"chambers", "basis", "periods", "verify"};

Rat rat_field(const json& v, const std::string& where) {
  try {
    if (v.is_string()) return parse_rat(v.get<std::string>());
    if (v.is_number_integer()) return Rat(v.get<long>());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(where + ": " + e.what());
  }
  throw SchemaError(where + ": expected a rational string such as \"1/2\"");
}

ComplexRat complex_field(const json& v, const std::string& where) {
  if (v.is_array()) {
    if (v.size() != 2) throw SchemaError(where + ": complex values are [re, im]");
    return {rat_field(v[0], where), rat_field(v[1], where)};
  }
  return {rat_field(v, where), Rat(0)};
}

RatVector row_field(const json& v, std::size_t width, const std::string& where) {
  if (!v.is_array() || v.size() != width) {
    throw SchemaError(where + ": expected " + std::to_string(width) + " coefficients");
  }
  RatVector row;
  for (std::size_t k = 0; k < width; ++k) row.push_back(rat_field(v[k], where));
  return row;
}

json complex_json(const ComplexRat& c) { return json::array({format_rat(c.re), format_rat(c.im)}); }
json complex_json(cplx c) { return json::array({c.real(), c.imag()}); }

json point_json(const Point& p) {
  json a = json::array();
  for (const auto& x : p) a.push_back(format_rat(x));
  return a;
}

Point point_from(const json& j) {
  Point p;
  for (const auto& x : j) p.push_back(parse_rat(x.get<std::string>()));
  return p;
}

json chamber_json(const Chamber& c) {
  return {{"id", c.id}, {"sign", to_string(c.sign)}, {"witness", point_json(c.witness)}, {"bounded", c.bounded}};
}

Chamber chamber_from(const json& j) {
  Chamber c;
  c.id = j.at("id").get<std::uint64_t>();
  c.sign = parse_sign_vector(j.at("sign").get<std::string>());
  c.witness = point_from(j.at("witness"));
  c.bounded = j.at("bounded").get<bool>();
  return c;
}

bool same_chamber(const Chamber& a, const Chamber& b) {
  return a.id == b.id && a.sign == b.sign && a.witness == b.witness && a.bounded == b.bounded;
}

json verdict_json(const Verdict& v) {
  return {{"holds", v.holds}, {"reason", v.reason}, {"subfamily", v.subfamily}};
}

void write_report(const std::filesystem::path& dir, const json& report) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / "report.json");
  if (!out) throw std::runtime_error("cannot write " + (dir / "report.json").string());
  out << report.dump(2) << '\n';
}

json period_json(const std::string& cycle, const std::string& kind, const TwistedChain& chain,
                 const PeriodReport& rep) {
  json terms = json::array();
  for (const auto& c : rep.cells) {
    terms.push_back({{"label", c.label},
                     {"kind", c.kind},
                     {"coefficient", complex_json(c.coefficient)},
                     {"value", complex_json(c.value)},
                     {"delta", c.delta},
                     {"nodes", c.nodes}});
  }
  return {{"cycle", cycle},
          {"kind", kind},
          {"value", complex_json(rep.value)},
          {"abs_error_estimate", rep.abs_error_estimate},
          {"cells_evaluated", rep.cells_evaluated},
          {"nodes_used", rep.nodes_used},
          {"epsilon", format_rat(chain.epsilon)},
          {"terms", terms}};
}

}  // namespace

bool JobSpec::wants(const std::string& task) const {
  return std::find(tasks.begin(), tasks.end(), task) != tasks.end();
}

JobSpec parse_job(const json& doc) {
  if (!doc.is_object()) throw SchemaError("job: top level must be an object");
  JobSpec job;
  if (!doc.contains("dim") || !doc["dim"].is_number_integer() || doc["dim"].get<int>() < 1) {
    throw SchemaError("dim: expected a positive integer");
  }
  job.dim = doc["dim"].get<int>();
  const auto width = static_cast<std::size_t>(job.dim + 1);

  if (!doc.contains("hyperplanes") || !doc["hyperplanes"].is_array() || doc["hyperplanes"].empty()) {
    throw SchemaError("hyperplanes: expected a nonempty list of coefficient rows");
  }
  for (std::size_t j = 0; j < doc["hyperplanes"].size(); ++j) {
    job.hyperplanes.push_back(row_field(doc["hyperplanes"][j], width, "hyperplanes[" + std::to_string(j) + "]"));
  }
  const std::size_t N = job.hyperplanes.size();

  if (!doc.contains("exponents") || !doc["exponents"].is_array() || doc["exponents"].size() != N) {
    throw SchemaError("exponents: expected one complex rational per hyperplane");
  }
  for (std::size_t j = 0; j < N; ++j) {
    job.exponents.push_back(complex_field(doc["exponents"][j], "exponents[" + std::to_string(j) + "]"));
  }

  if (doc.contains("phase")) {
    const json& ph = doc["phase"];
    if (!ph.is_object() || !ph.contains("kind") || !ph["kind"].is_string()) {
      throw SchemaError("phase: expected {kind, f, R}");
    }
    const std::string kind = ph["kind"].get<std::string>();
    if (kind == "none") {
      job.phase.kind = PhaseKind::none;
    } else if (kind == "linear") {
      job.phase.kind = PhaseKind::linear;
      if (!ph.contains("f")) throw SchemaError("phase.f: required for a linear phase");
      job.phase.f = row_field(ph["f"], width, "phase.f");
    } else if (kind == "quadratic") {
      job.phase.kind = PhaseKind::quadratic;
    } else {
      throw SchemaError("phase.kind: expected none, linear or quadratic");
    }
    if (ph.contains("R") && !(ph["R"].is_string() && ph["R"].get<std::string>() == "auto")) {
      job.phase.level = rat_field(ph["R"], "phase.R");
      if (sgn(*job.phase.level) <= 0) throw SchemaError("phase.R: must be positive");
    }
  }

  if (doc.contains("form")) {
    if (!doc["form"].is_array()) throw SchemaError("form: expected a list of terms");
    for (std::size_t t = 0; t < doc["form"].size(); ++t) {
      const json& term = doc["form"][t];
      const std::string where = "form[" + std::to_string(t) + "]";
      if (!term.is_object() || !term.contains("powers") || !term["powers"].is_array() ||
          term["powers"].size() != N) {
        throw SchemaError(where + ": expected {coeff, powers} with one power per hyperplane");
      }
      FormEntry e;
      e.coeff = term.contains("coeff") ? complex_field(term["coeff"], where + ".coeff") : ComplexRat(1);
      for (const auto& p : term["powers"]) {
        if (!p.is_number_integer()) throw SchemaError(where + ".powers: expected integers");
        e.powers.push_back(p.get<int>());
      }
      job.form.push_back(std::move(e));
    }
  }

  if (doc.contains("tasks")) {
    if (!doc["tasks"].is_array()) throw SchemaError("tasks: expected a list");
    for (const auto& t : doc["tasks"]) {
      if (!t.is_string() || !kTasks.count(t.get<std::string>())) {
        throw SchemaError("tasks: unknown task " + t.dump());
      }
      job.tasks.push_back(t.get<std::string>());
    }
  } else {
    job.tasks.assign(kTasks.begin(), kTasks.end());
  }
  if (job.wants("periods") && job.form.empty()) throw SchemaError("form: required by the periods task");
  return job;
}

JobSpec load_job(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read job file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
  return parse_job(doc);
}

json job_to_json(const JobSpec& job) {
  json j;
  j["dim"] = job.dim;
  j["hyperplanes"] = json::array();
  for (const auto& row : job.hyperplanes) j["hyperplanes"].push_back(point_json(row));
  j["exponents"] = json::array();
  for (const auto& a : job.exponents) j["exponents"].push_back(complex_json(a));
  j["phase"] = {{"kind", to_string(job.phase.kind)}};
  if (job.phase.kind == PhaseKind::linear) j["phase"]["f"] = point_json(job.phase.f);
  if (job.phase.kind != PhaseKind::none) {
    j["phase"]["R"] = job.phase.level ? json(format_rat(*job.phase.level)) : json("auto");
  }
  j["form"] = json::array();
  for (const auto& t : job.form) j["form"].push_back({{"coeff", complex_json(t.coeff)}, {"powers", t.powers}});
  j["tasks"] = job.tasks;
  return j;
}

json census_to_json(const ChamberCensus& census) {
  json chambers = json::array();
  for (const auto& c : census.chambers) chambers.push_back(chamber_json(c));
  return {{"n_total", census.n_total},
          {"n_bounded", census.n_bounded},
          {"n_unbounded", census.n_unbounded},
          {"chambers", chambers}};
}

ChamberCensus census_from_json(const json& j) {
  ChamberCensus c;
  c.n_total = j.at("n_total").get<std::size_t>();
  c.n_bounded = j.at("n_bounded").get<std::size_t>();
  c.n_unbounded = j.at("n_unbounded").get<std::size_t>();
  for (const auto& x : j.at("chambers")) c.chambers.push_back(chamber_from(x));
  return c;
}

json basis_to_json(const RdBasis& basis) {
  json bounded = json::array();
  for (const auto& c : basis.bounded) bounded.push_back(chamber_json(c));
  json truncated = json::array();
  for (const auto& t : basis.truncated) {
    json e = chamber_json(t.chamber);
    e["slice_sign"] = to_string(t.slice_sign);
    e["slice_point"] = point_json(t.slice_point);
    truncated.push_back(e);
  }
  return {{"kind", to_string(basis.kind)},
          {"degree", basis.degree},
          {"rank", basis.rank()},
          {"level", format_rat(basis.level)},
          {"generic_level", format_rat(basis.generic_level)},
          {"checked", basis.checked},
          {"assumed", basis.assumed},
          {"bounded", bounded},
          {"truncated", truncated}};
}

RdBasis basis_from_json(const json& j) {
  RdBasis b;
  const std::string kind = j.at("kind").get<std::string>();
  b.kind = kind == "linear" ? PhaseKind::linear : kind == "quadratic" ? PhaseKind::quadratic : PhaseKind::none;
  b.degree = j.at("degree").get<int>();
  b.level = parse_rat(j.at("level").get<std::string>());
  b.generic_level = parse_rat(j.at("generic_level").get<std::string>());
  b.checked = j.at("checked").get<std::vector<std::string>>();
  b.assumed = j.at("assumed").get<std::vector<std::string>>();
  for (const auto& x : j.at("bounded")) b.bounded.push_back(chamber_from(x));
  for (const auto& x : j.at("truncated")) {
    const std::string s = x.at("slice_sign").get<std::string>();
    b.truncated.push_back({chamber_from(x), s.empty() ? SignVector{} : parse_sign_vector(s), point_from(x.at("slice_point"))});
  }
  return b;
}

bool same_census(const ChamberCensus& a, const ChamberCensus& b) {
  if (a.n_total != b.n_total || a.n_bounded != b.n_bounded || a.n_unbounded != b.n_unbounded) return false;
  return std::equal(a.chambers.begin(), a.chambers.end(), b.chambers.begin(), b.chambers.end(), same_chamber);
}

bool same_basis(const RdBasis& a, const RdBasis& b) {
  if (a.kind != b.kind || a.degree != b.degree || a.level != b.level || a.generic_level != b.generic_level ||
      a.checked != b.checked || a.assumed != b.assumed) {
    return false;
  }
  if (!std::equal(a.bounded.begin(), a.bounded.end(), b.bounded.begin(), b.bounded.end(), same_chamber)) return false;
  return std::equal(a.truncated.begin(), a.truncated.end(), b.truncated.begin(), b.truncated.end(),
                    [](const TruncatedChamber& x, const TruncatedChamber& y) {
                      return same_chamber(x.chamber, y.chamber) && x.slice_sign == y.slice_sign &&
                             x.slice_point == y.slice_point;
                    });
}

RunResult run_job(const JobSpec& job, const RunOptions& opts) {
  RunResult res;
  json& report = res.report;
  report["job"] = job_to_json(job);
  json checks = json::object();
  auto record = [&](const std::string& name, bool passed, json detail) {
    checks[name] = {{"passed", passed}, {"detail", std::move(detail)}};
  };
  try {
    const Arrangement A = make_arrangement(job.dim, job.hyperplanes);
    const ExponentData E = ExponentData::scalar(job.exponents);
    const ChamberCensus census = enumerate_chambers(A);
    if (job.wants("chambers") || opts.plot) report["census"] = census_to_json(census);

    RdBasis basis;
    const bool need_basis = job.wants("basis") || job.wants("periods") || job.wants("verify");
    if (need_basis) {
      json verdicts;
      const Verdict flat = check_flatness(A, E);
      verdicts["flatness"] = verdict_json(flat);
      verdicts["genericity"] = verdict_json(is_generic(A, E));
      if (job.phase.kind == PhaseKind::linear) {
        verdicts["asymptotic_genericity"] = verdict_json(is_asymptotically_generic(A, E, job.phase.f));
      }
      report["verdicts"] = verdicts;
      record("flatness", flat.holds, flat.reason);

      basis = rd_basis(A, E, job.phase);
      json bj = basis_to_json(basis);
      bj["level_source"] = job.phase.level ? "given" : "auto";
      if (job.phase.kind != PhaseKind::none && !job.phase.level) {
        const StabilityReport st = check_level_stability(A, E, job.phase, basis.level);
        bj["stability"] = {{"level", format_rat(st.level)}, {"doubled", format_rat(st.doubled)}, {"stable", st.stable}};
        record("level_stability", st.stable, format_rat(st.level));
      }
      report["basis"] = bj;
      try {
        const RankReport rk = rank_cross_check(A, E, job.phase);
        report["rank_check"] = {{"basis_rank", rk.basis_rank},
                                {"bounded_count", rk.bounded_count},
                                {"fiber_count", rk.fiber_count},
                                {"fiber_kind", rk.fiber_kind},
                                {"ok", rk.ok}};
        record("rank_cross_check", rk.ok, rk.fiber_kind);
      } catch (const ConsistencyError& e) {
        record("rank_cross_check", false, e.what());
      }
    }

    if (job.wants("periods")) {
      PhaseSpec phase = job.phase;
      if (phase.kind != PhaseKind::none) phase.level = basis.level;
      std::vector<FormTerm> form;
      for (const auto& t : job.form) form.push_back({t.coeff.to_complex(), t.powers});
      const TwistedIntegrand I(A, E, phase, form);
      json periods = json::array();
      json validation = json::array();
      auto one = [&](const Chamber& C, const std::string& kind) {
        const TwistedChain chain = regularize(C, phase, A, E);
        const PeriodReport rep = integrate_chain(I, chain, opts.tol);
        periods.push_back(period_json(to_string(C.sign), kind, chain, rep));
        if (!job.wants("verify")) return;
        RegularizationOptions half;
        half.epsilon_scale = Rat(1, 2);
        const PeriodReport rep2 = integrate_chain(I, regularize(C, phase, A, E, half), opts.tol);
        const double diff = std::abs(rep.value - rep2.value);
        const double bound = 10 * std::max(opts.tol * std::abs(rep.value), rep.abs_error_estimate + rep2.abs_error_estimate);
        const bool ok = diff <= bound;
        validation.push_back({{"cycle", to_string(C.sign)},
                              {"check", "epsilon_halving"},
                              {"value_half_epsilon", complex_json(rep2.value)},
                              {"difference", diff},
                              {"bound", bound},
                              {"passed", ok}});
        record("epsilon_halving " + to_string(C.sign), ok, diff);
      };
      for (const auto& C : basis.bounded) one(C, "bounded");
      for (const auto& T : basis.truncated) one(T.chamber, "truncated");
      report["periods"] = periods;
      if (job.wants("verify")) report["validation"] = validation;
    }

    if (opts.plot) {
      if (job.dim != 2) throw PreconditionError("plot: requires n=2");
      write_svg(opts.out_dir / "chambers.svg", A, census, basis, job.phase);
      report["plot"] = "chambers.svg";
    }

    if (job.wants("verify")) {
      report["checks"] = checks;
      for (const auto& [name, c] : checks.items()) {
        if (!c["passed"].get<bool>()) {
          res.exit_code = exit_code::check_failed;
          res.reason = "check failed: " + name;
        }
      }
    }
  } catch (const PreconditionError& e) {
    res.exit_code = exit_code::precondition;
    res.reason = e.reason();
  } catch (const NumericError& e) {
    res.exit_code = exit_code::numeric;
    res.reason = e.what();
  } catch (const ConsistencyError& e) {
    res.exit_code = exit_code::check_failed;
    res.reason = std::string("consistency: ") + e.what();
  }
  static const char* kStatus[] = {"ok", "check_failed", "schema_error", "precondition_failed", "numeric_failure"};
  report["status"] = kStatus[res.exit_code];
  report["exit_code"] = res.exit_code;
  if (!res.reason.empty()) report["reason"] = res.reason;
  write_report(opts.out_dir, report);
  return res;
}

RunResult run_job_file(const std::filesystem::path& path, const RunOptions& opts) {
  JobSpec job;
  try {
    job = load_job(path);
  } catch (const SchemaError& e) {
    RunResult r;
    r.exit_code = exit_code::schema;
    r.reason = e.what();
    return r;
  }
  return run_job(job, opts);
}

}  // namespace twistperiod
