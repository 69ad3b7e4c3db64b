#include "twistperiod/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "twistperiod/cli.hpp"
#include "twistperiod/errors.hpp"
#include "twistperiod/oracles.hpp"
#include "twistperiod/validation.hpp"

namespace twistperiod {

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (passed) detail.str("");
      passed = false;
      detail << what << "; ";
    }
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

Rat random_noninteger(std::mt19937_64& rng, int den, int max_num) {
  std::uniform_int_distribution<int> d(-max_num, max_num);
  for (;;) {
    const int k = d(rng);
    if (k % den != 0) return Rat(k, den);
  }
}

std::vector<ComplexRat> generic_exponents(std::mt19937_64& rng, const Arrangement& A) {
  for (;;) {
    std::vector<ComplexRat> a;
    for (std::size_t j = 0; j < A.size(); ++j) a.emplace_back(random_noninteger(rng, 7, 20));
    if (is_generic(A, ExponentData::scalar(a))) return a;
  }
}

// The level sets of f meet every flat of A transversally: each n-1 normals of
// A together with the linear part of f are independent.
bool transversal(const RatMatrix& rows, const RatVector& f, int n) {
  std::vector<std::size_t> pick;
  std::function<bool(std::size_t)> rec = [&](std::size_t from) {
    if (static_cast<int>(pick.size()) == n - 1) {
      RatMatrix M{RatVector(f.begin() + 1, f.end())};
      for (std::size_t j : pick) M.emplace_back(rows[j].begin() + 1, rows[j].end());
      return sgn(oracle::det(M)) != 0;
    }
    for (std::size_t j = from; j < rows.size(); ++j) {
      pick.push_back(j);
      const bool ok = rec(j + 1);
      pick.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  return rec(0);
}

// ---------------------------------------------------------------------------

void chamber_oracle(Outcome& o) {
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<int> dim(1, 3), count(1, 8);
  int compared = 0;
  const auto start = Clock::now();
  while (compared < 50) {
    const int n = dim(rng), N = count(rng);
    const RatMatrix rows = oracle::random_rows(rng, n, N, false, 3);
    const Arrangement A = make_arrangement(n, rows);
    const auto census = enumerate_chambers(A);
    std::vector<SignVector> lib;
    for (const auto& c : census.chambers) {
      lib.push_back(c.sign);
      o.require(sign_vector_at(A, c.witness) == c.sign, "witness does not realize " + to_string(c.sign));
    }
    auto ref = oracle::brute_force_chambers(n, rows);
    std::sort(lib.begin(), lib.end());
    std::sort(ref.begin(), ref.end());
    o.require(lib == ref, "chamber sets differ for n=" + std::to_string(n) + " N=" + std::to_string(N));
    ++compared;
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  o.require(secs < 30, "runtime " + std::to_string(secs) + " s exceeds 30 s");
  o.detail << compared << " arrangements match the 2^N scan";
}

void general_position_counts(Outcome& o) {
  std::mt19937_64 rng(2002);
  std::uniform_int_distribution<int> dim(1, 3);
  for (int i = 0; i < 20; ++i) {
    const int n = dim(rng);
    std::uniform_int_distribution<int> count(n + 1, 7);
    const int N = count(rng);
    const Arrangement A = make_arrangement(n, oracle::random_rows(rng, n, N, true));
    const auto c = enumerate_chambers(A);
    std::size_t total = 0;
    for (int k = 0; k <= n; ++k) total += oracle::binomial(N, k);
    o.require(c.n_total == total, "n_total " + std::to_string(c.n_total) + " != " + std::to_string(total));
    o.require(c.n_bounded == oracle::binomial(N - 1, n), "n_bounded mismatch");
  }
  o.detail << "20 general-position instances match sum C(N,i) and C(N-1,n)";
}

void schlafli(Outcome& o) {
  std::mt19937_64 rng(3003);
  for (int N = 2; N <= 6; ++N) {
    const RatMatrix rows = oracle::random_rows(rng, 2, N, true);
    const Arrangement A = make_arrangement(2, rows);
    const Rat R = default_level(A, {PhaseKind::quadratic, {}, {}});
    const int arcs = oracle::arcs_on_circle(rows, R.get_d());
    o.require(schlafli_bounded_count(N, 2) == static_cast<std::size_t>(arcs),
              "N=" + std::to_string(N) + ": M=" + std::to_string(schlafli_bounded_count(N, 2)) + " arcs=" + std::to_string(arcs));
    o.require(arcs == 2 * N, "arc count is not 2N");
  }
  o.require(schlafli_bounded_count(3, 2) == 6, "M(3,2) != 6");
  o.require(schlafli_bounded_count(1, 1) == 2, "M(1,1) != 2");
  o.detail << "M(N,2) = 2N = arc count for N = 2..6";
}

void rank_identities(Outcome& o) {
  std::mt19937_64 rng(4004);
  int instances = 0;
  for (int i = 0; i < 12; ++i) {
    const int n = 1 + i % 2;
    const int N = n + 1 + i % 3;
    const RatMatrix rows = oracle::random_rows(rng, n, N, true);
    const Arrangement A = make_arrangement(n, rows);
    const auto E = ExponentData::scalar(generic_exponents(rng, A));
    std::size_t total = 0;
    for (int k = 0; k <= n; ++k) total += oracle::binomial(N, k);
    const std::size_t b = oracle::binomial(N - 1, n);
    std::uniform_int_distribution<int> coef(1, 5);
    for (int attempt = 0;; ++attempt) {
      RatVector f{Rat(0)};
      for (int k = 0; k < n; ++k) f.push_back(Rat(coef(rng) * (attempt % 2 ? -1 : 1)));
      if (!transversal(rows, f, n)) continue;
      try {
        const RdBasis lin = rd_basis_linear(A, E, f);
        const RankReport rk = rank_cross_check(A, E, {PhaseKind::linear, f, {}});
        o.require(lin.rank() == b + oracle::binomial(N - 1, n - 1), "linear rank differs from b(A) + b(slice)");
        o.require(rk.ok, "linear rank cross-check failed");
        break;
      } catch (const PreconditionError&) {
        if (attempt > 20) throw;
      }
    }
    const RdBasis quad = rd_basis_quadratic(A, E);
    o.require(quad.rank() == total, "quadratic rank differs from n_total");
    o.require(quad.rank() == b + schlafli_bounded_count(N, n), "quadratic rank differs from b(A) + M(N,n)");
    ++instances;
  }
  const Arrangement K = make_arrangement(1, {{Rat(0), Rat(1)}, {Rat(1), Rat(-1)}});
  const auto EK = ExponentData::scalar({ComplexRat(Rat(1, 2)), ComplexRat(Rat(1, 3))});
  const RdBasis kb = rd_basis_linear(K, EK, RatVector{Rat(0), Rat(1)});
  o.require(kb.rank() == 2, "Kummer configuration rank " + std::to_string(kb.rank()));
  o.detail << instances << " instances (linear and quadratic), Kummer rank " << kb.rank();
}

void morse_count(Outcome& o) {
  std::mt19937_64 rng(5005);
  std::uniform_real_distribution<double> w(0.5, 2.0);
  const auto start = Clock::now();
  double worst = 0;
  for (int i = 0; i < 10; ++i) {
    const int n = 1 + i % 2;
    const int N = n + 2 + i % 2;
    const Arrangement A = make_arrangement(n, oracle::random_rows(rng, n, N, true));
    std::vector<double> eta;
    for (int j = 0; j < N; ++j) eta.push_back(w(rng));
    const auto census = enumerate_chambers(A);
    const auto crit = morse_critical_points(A, eta);
    o.require(crit.size() == census.n_bounded, "critical points " + std::to_string(crit.size()) + " != bounded " +
                                                   std::to_string(census.n_bounded));
    std::set<std::uint64_t> seen;
    for (const auto& c : crit) {
      worst = std::max(worst, c.gradient_norm);
      o.require(c.gradient_norm < 1e-12, "gradient norm " + sci(c.gradient_norm));
      seen.insert(c.chamber_id);
      for (std::size_t j = 0; j < A.size(); ++j) {
        double l = A[j].coeffs[0].get_d();
        for (int k = 0; k < n; ++k) l += A[j].coeffs[static_cast<std::size_t>(k + 1)].get_d() * c.point[static_cast<std::size_t>(k)];
        o.require(l != 0, "critical point on a hyperplane");
      }
    }
    o.require(seen.size() == crit.size(), "two critical points in one chamber");
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  o.require(secs < 10, "runtime exceeds 10 s");
  o.detail << "10 instances, max |grad F| " << sci(worst);
}

void euler(Outcome& o) {
  const auto start = Clock::now();
  const Residual base = verify_euler_integral({Rat(1, 2), Rat(1, 3), Rat(3, 2), Rat(1, 4)});
  o.require(base.residual < 1e-8, "base residual " + sci(base.residual));
  const Residual neg = verify_euler_integral({Rat(-1, 2), Rat(1, 3), Rat(3, 2), Rat(1, 4)});
  o.require(neg.residual < 1e-8, "negative-exponent residual " + sci(neg.residual));
  std::mt19937_64 rng(6006);
  std::uniform_int_distribution<int> xs(-8, 8);
  double worst = 0;
  for (int i = 0; i < 10; ++i) {
    HgParams p;
    for (;;) {
      const Rat a = random_noninteger(rng, 12, 18), ca = random_noninteger(rng, 12, 18);
      const Rat g = a + ca;
      if (is_integer(g) && g <= 0) continue;
      p = {a, random_noninteger(rng, 12, 18), g, Rat(xs(rng), 16)};
      break;
    }
    const Residual r = verify_euler_integral(p);
    worst = std::max(worst, r.residual);
  }
  o.require(worst < 1e-8, "sweep residual " + sci(worst));
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  o.require(secs < 20, "runtime exceeds 20 s");
  o.detail << "base " << sci(base.residual) << ", alpha=-1/2 " << sci(neg.residual) << ", sweep max " << sci(worst);
}

void kummer(Outcome& o) {
  const KummerReport k = verify_kummer_integral(Rat(1, 2), Rat(3, 2), Rat(1));
  o.require(k.bounded.residual < 1e-8, "bounded residual " + sci(k.bounded.residual));
  o.require(std::abs(k.determinant) > 1e-10, "period matrix is singular");
  o.detail << "residual " << sci(k.bounded.residual) << ", |det| " << sci(std::abs(k.determinant));
}

void ode_systems(Outcome& o) {
  const HgParams p{Rat(1, 2), Rat(1, 3), Rat(3, 2), Rat(1, 4)};
  const std::pair<OdeSystem, Rat> systems[] = {
      {OdeSystem::gauss, Rat(1, 4)}, {OdeSystem::kummer, Rat(1)}, {OdeSystem::kummer_unbounded, Rat(1)}};
  const char* names[] = {"gauss", "kummer", "kummer ray"};
  for (int s = 0; s < 3; ++s) {
    const auto [sys, x0] = systems[s];
    const double r = ode_residual(sys, p, x0, Rat(1, 1000));
    o.require(r < 1e-6, std::string(names[s]) + " residual " + sci(r));
    const double r1 = ode_residual(sys, p, x0, Rat(2, 25));
    const double r2 = ode_residual(sys, p, x0, Rat(1, 25));
    const double r3 = ode_residual(sys, p, x0, Rat(1, 50));
    const double o1 = std::log2(r1 / r2), o2 = std::log2(r2 / r3);
    o.require(o1 > 3.5 && o1 < 4.5 && o2 > 3.5 && o2 < 4.5,
              std::string(names[s]) + " observed order " + std::to_string(o1) + ", " + std::to_string(o2));
    o.detail << names[s] << " " << sci(r) << " order " << std::round(o2 * 100) / 100 << "; ";
  }
}

void monodromy(Outcome& o) {
  const Arrangement A = make_arrangement(1, {{Rat(0), Rat(1)}, {Rat(1), Rat(-1)}});
  double worst = 0;
  for (const Rat& a : {Rat(1, 2), Rat(1, 3), Rat(1, 4)}) {
    const auto E = ExponentData::scalar({ComplexRat(a), ComplexRat(a)});
    const TwistedChain chain = regularize_bounded(*enumerate_chambers(A).find(sign_vector_at(A, std::vector<Rat>{Rat(1, 2)})), A, E);
    const TwistedIntegrand I(A, E, {}, {{1.0, {0, 0}}});
    for (const auto& t : chain.terms) {
      if (t.cell.kind != CellKind::loop) continue;
      const cplx ratio = loop_monodromy(I, t.cell);
      const cplx expect = std::exp(cplx(0, 2 * std::numbers::pi * a.get_d()));
      worst = std::max(worst, std::abs(ratio - expect));
    }
  }
  o.require(worst < 1e-12, "monodromy error " + sci(worst));
  o.detail << "max |ratio - exp(2 pi i alpha)| " << sci(worst);
}

void robustness(Outcome& o) {
  const double tol = 1e-11;
  struct Case {
    std::string name;
    Arrangement A;
    ExponentData E;
    PhaseSpec phase;
    std::vector<int> powers;
    SignVector sign;
  };
  const Arrangement L = make_arrangement(1, {{Rat(0), Rat(1)}, {Rat(1), Rat(-1)}, {Rat(1), Rat(-1, 4)}});
  const Arrangement K = make_arrangement(1, {{Rat(0), Rat(1)}, {Rat(1), Rat(-1)}});
  const Arrangement T = make_arrangement(2, {{Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(1)}, {Rat(1), Rat(-1), Rat(-1)}});
  const std::vector<Case> cases{
      {"euler", L, ExponentData::scalar({Rat(1, 2), Rat(1), Rat(-1, 3)}), {}, {-1, -1, 0}, sign_vector_at(L, std::vector<Rat>{Rat(1, 2)})},
      {"euler alpha<0", L, ExponentData::scalar({Rat(-1, 2), Rat(2), Rat(-1, 3)}), {}, {-1, -1, 0}, sign_vector_at(L, std::vector<Rat>{Rat(1, 2)})},
      {"kummer (1,inf)", K, ExponentData::scalar({Rat(1, 2), Rat(1)}), {PhaseKind::linear, {Rat(0), Rat(1)}, {}}, {-1, -1},
       sign_vector_at(K, std::vector<Rat>{Rat(2)})},
      {"triangle", T, ExponentData::scalar({Rat(1, 2), Rat(-1, 3), Rat(1, 4)}), {}, {-1, -1, -1},
       sign_vector_at(T, std::vector<Rat>{Rat(1, 4), Rat(1, 4)})},
  };
  double worst = 0;
  for (const auto& c : cases) {
    const auto census = enumerate_chambers(c.A);
    const Chamber* C = census.find(c.sign);
    const TwistedIntegrand I(c.A, c.E, c.phase, {{1.0, c.powers}});
    const PeriodReport ref = integrate_chain(I, regularize(*C, c.phase, c.A, c.E), tol);
    std::vector<std::pair<std::string, RegularizationOptions>> variants;
    RegularizationOptions half;
    half.epsilon_scale = Rat(1, 2);
    variants.emplace_back("eps/2", half);
    if (c.A.dim == 1) {
      RegularizationOptions turn;
      turn.loop_start_angle = 1.0;
      variants.emplace_back("start angle 1", turn);
    }
    for (const auto& [label, opts] : variants) {
      const PeriodReport alt = integrate_chain(I, regularize(*C, c.phase, c.A, c.E, opts), tol);
      const double diff = std::abs(alt.value - ref.value);
      const double bound = 10 * std::max(tol * std::abs(ref.value), ref.abs_error_estimate + alt.abs_error_estimate);
      worst = std::max(worst, diff / std::abs(ref.value));
      o.require(diff <= bound, c.name + " " + label + ": difference " + sci(diff) + " > " + sci(bound));
    }
  }
  o.detail << "max relative change " << sci(worst);
}

void confluence(Outcome& o) {
  const auto rep = confluence_check(Rat(1, 2), Rat(3, 2), Rat(1), {Rat(1, 16), Rat(1, 64), Rat(1, 256)});
  o.require(rep.strictly_decreasing, "gaps do not decrease strictly");
  o.detail << "gaps";
  for (double g : rep.gaps) o.detail << " " << sci(g);
}

void cli_end_to_end(Outcome& o) {
  const auto dir = std::filesystem::temp_directory_path() / ("twistperiod-acceptance-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const json kummer_job = json::parse(R"({
    "dim": 1,
    "hyperplanes": [["0", "1"], ["1", "-1"]],
    "exponents": [["1/2", "0"], ["1/3", "0"]],
    "phase": {"kind": "linear", "f": ["0", "1"], "R": "auto"},
    "form": [{"coeff": ["1", "0"], "powers": [-1, -1]}],
    "tasks": ["chambers", "basis", "periods", "verify"]
  })");
  json bad_job = kummer_job;
  bad_job["exponents"][0] = json::array({"1", "0"});
  std::ofstream(dir / "kummer.json") << kummer_job.dump(2);
  std::ofstream(dir / "bad.json") << bad_job.dump(2);

  const RunResult ok = run_job_file(dir / "kummer.json", {dir / "kummer"});
  o.require(ok.exit_code == 0, "Kummer job exit " + std::to_string(ok.exit_code) + " " + ok.reason);
  std::ifstream in(dir / "kummer" / "report.json");
  const json rep = json::parse(in);
  for (const char* key : {"census", "verdicts", "basis", "rank_check", "periods", "validation", "checks"}) {
    o.require(rep.contains(key), std::string("report lacks ") + key);
  }
  o.require(rep.contains("basis") && rep["basis"]["rank"] == 2, "report rank is not 2");
  o.require(rep.contains("periods") && rep["periods"].size() == 2, "report does not hold two period rows");

  const RunResult bad = run_job_file(dir / "bad.json", {dir / "bad"});
  o.require(bad.exit_code == 3, "genericity-violating job exit " + std::to_string(bad.exit_code));
  o.require(bad.reason == "genericity: integer eigenvalue at j=1", "reason was '" + bad.reason + "'");
  std::filesystem::remove_all(dir);
  o.detail << "Kummer exit " << ok.exit_code << ", rank 2; bad job exit " << bad.exit_code << " (" << bad.reason << ")";
}

struct Entry {
  const char* name;
  std::function<void(Outcome&)> fn;
};

const Entry kEntries[kCriterionCount] = {
    {"chamber oracle equivalence", chamber_oracle},
    {"general-position counts", general_position_counts},
    {"Schlafli count", schlafli},
    {"rank identities", rank_identities},
    {"Morse count", morse_count},
    {"Euler integral (2F1)", euler},
    {"Kummer integral (1F1)", kummer},
    {"ODE systems", ode_systems},
    {"monodromy / branch test", monodromy},
    {"regularization robustness", robustness},
    {"confluence", confluence},
    {"CLI end-to-end", cli_end_to_end},
};

}  // namespace

CriterionResult run_criterion(int id) {
  CriterionResult r;
  r.id = id;
  if (id < 1 || id > kCriterionCount) {
    r.detail = "no such criterion";
    return r;
  }
  const Entry& e = kEntries[id - 1];
  r.name = e.name;
  Outcome o;
  const auto start = Clock::now();
  try {
    e.fn(o);
  } catch (const std::exception& ex) {
    o.require(false, std::string("exception: ") + ex.what());
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  r.passed = o.passed;
  r.detail = o.detail.str();
  return r;
}

std::vector<CriterionResult> run_acceptance() {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id));
  return out;
}

std::string format_result(const CriterionResult& r) {
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.2f", r.seconds);
  return std::string(r.passed ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.name + ": " + r.detail + " (" +
         secs + " s)";
}

}  // namespace twistperiod
