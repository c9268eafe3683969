// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance            run all criteria
//   acceptance 3 7        run the listed ones

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qdo/closed_form.hpp"
#include "qdo/experiments.hpp"
#include "qdo/integrator.hpp"
#include "qdo/lindblad_dynamics.hpp"
#include "qdo/simon_model.hpp"
#include "qdo/state_space.hpp"

using namespace qdo;
namespace fs = std::filesystem;

namespace {

constexpr double kRuntimeLimitSeconds = 1.0;
constexpr double kHandTol = 1e-5;            // 2: five-decimal values
constexpr double kOracleTol = 1e-9;          // 2: agreement with the linear-solve oracle
constexpr double kClosedFormTol = 1e-6;      // 3
constexpr double kInconsistencyTol = 1e-6;   // 4
constexpr double kMinimumDisagreement = 1e-3;  // 4: below this the two would "silently agree"
constexpr double kConservationTol = 1e-9;    // 6
constexpr double kOrderLow = 12.0, kOrderHigh = 20.0;  // 7
constexpr double kFdStep = 1e-3, kFdTol = 1e-6;        // 8
constexpr int kFdStates = 100;                          // 8
constexpr double kCrossingTarget = 0.6, kCrossingTol = 0.2;  // 9
constexpr double kSettleFraction = 0.01;                     // 9

struct Outcome {
  bool pass = true;
  std::vector<std::string> lines;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    lines.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
  void info(const std::string& what) { lines.push_back("info " + what); }
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof buf, f, args);
  va_end(args);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

IntegratorConfig fixed(double dt, double t_end, std::size_t stride = 1) {
  IntegratorConfig cfg;
  cfg.dt = dt;
  cfg.t_end = t_end;
  cfg.sample_stride = stride;
  return cfg;
}

// Linear-solve oracle: probe the affine right-hand side column by column on
// the given coefficient indices (others held at zero) and solve with Eigen.
Eigen::VectorXd probe_solve(const std::vector<std::size_t>& idx) {
  const OscillatorParams osc = figure_oscillator();
  const LindbladCouplings h = figure_couplings();
  const std::size_t n = idx.size();
  const StateVector d0 = simplified_rhs(CovarianceState{}, osc, h);
  Eigen::MatrixXd m(n, n);
  Eigen::VectorXd b(n);
  for (std::size_t j = 0; j < n; ++j) {
    StateVector e{};
    e[idx[j]] = 1.0;
    const StateVector col = simplified_rhs(CovarianceState::from_vector(e), osc, h);
    for (std::size_t i = 0; i < n; ++i) m(i, j) = col[idx[i]] - d0[idx[i]];
  }
  for (std::size_t i = 0; i < n; ++i) b(i) = -d0[idx[i]];
  return m.fullPivLu().solve(b);
}

double det_of(const CrossBlock& c) { return c.A12 * c.C12 - c.B12 * c.B21; }

Outcome criterion_1() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const RunConfig cfg = figure_config(FigureId::Fig1);
  const Trajectory a = integrate(to_covariance_state(cfg.initial), cfg.oscillator, cfg.couplings,
                                 fixed(1e-3, 1.0), cfg.model);
  const CovarianceState& s = a.samples.front();
  o.check(s.A11 == 0.5 && s.A22 == 0.5, fmt("A11 = %.17g, A22 = %.17g", s.A11, s.A22));
  o.check(s.C11 == 0.5 && s.C22 == 0.5, fmt("C11 = %.17g, C22 = %.17g", s.C11, s.C22));
  o.check(s.B11 == 0 && s.B22 == 0 && s.B12 == 0 && s.B21 == 0, "B entries are 0");

  const CsvTable f1 = figure_table(FigureId::Fig1, cfg);
  o.check(f1.rows[0][1] == 0.5 && f1.rows[0][2] == 0.5, "figure 1 first row (0.5, 0.5)");

  const ClosedFormParams p = ClosedFormParams::from(cfg.oscillator, cfg.couplings, cfg.initial);
  const CovarianceState c = closed_form_state(0.0, p);
  o.check(c.A11 == 0.5 && c.A22 == 0.5 && c.C11 == 0.5 && c.C22 == 0.5 && c.B11 == 0.0 && c.B22 == 0.0,
          "closed form at tau = 0 matches");

  const double det_b = entanglement_test(to_covariance_state(simon_case_b())).det_cs;
  o.check(det_b == -0.25, fmt("case B det C_s(0) = %.17g", det_b));
  const CsvTable f4 = figure_table(FigureId::Fig4, figure_config(FigureId::Fig4));
  o.check(f4.rows[0][2] == -0.25, "figure 4 case B first row -0.25");

  const double elapsed = seconds_since(t0);
  o.check(elapsed < kRuntimeLimitSeconds, fmt("runtime %.3f s", elapsed));
  return o;
}

Outcome criterion_2() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const CovarianceState st =
      stationary_state(figure_oscillator(), figure_couplings(), Model::Simplified);
  const ClosedFormParams p =
      ClosedFormParams::from(figure_oscillator(), figure_couplings(), simon_case_a());
  const OscillatorBlock late = a_block(200.0, p);
  const Eigen::VectorXd oracle = probe_solve({0, 1, 2});
  const double exact[3] = {292.0 / 65.0, -4.0 / 65.0, 228.0 / 65.0};
  const double hand[3] = {4.49231, -0.06154, 3.50769};
  const double ours[3] = {st.A11, st.B11, st.C11};
  const double closed[3] = {late.p2, late.xp, late.x2};
  const char* names[3] = {"A11", "B11", "C11"};
  for (int i = 0; i < 3; ++i) {
    o.check(std::abs(ours[i] - hand[i]) <= kHandTol,
            fmt("stationary %s = %.9f vs %.5f", names[i], ours[i], hand[i]));
    o.check(std::abs(closed[i] - hand[i]) <= kHandTol,
            fmt("a_block(200) %s = %.9f vs %.5f", names[i], closed[i], hand[i]));
    o.check(std::abs(ours[i] - oracle(i)) <= kOracleTol && std::abs(closed[i] - oracle(i)) <= kOracleTol,
            fmt("%s: |stationary - oracle| = %.1e, |a_block - oracle| = %.1e", names[i],
                std::abs(ours[i] - oracle(i)), std::abs(closed[i] - oracle(i))));
    o.check(std::abs(oracle(i) - exact[i]) <= kOracleTol,
            fmt("%s oracle vs exact rational: %.1e", names[i], std::abs(oracle(i) - exact[i])));
  }
  const double elapsed = seconds_since(t0);
  o.check(elapsed < kRuntimeLimitSeconds, fmt("runtime %.3f s", elapsed));
  return o;
}

Outcome criterion_3() {
  Outcome o;
  const SimonParams init = simon_case_a();
  const Trajectory t = integrate(to_covariance_state(init), figure_oscillator(), figure_couplings(),
                                 fixed(1e-4, 10.0), Model::Simplified);
  const ComparisonReport rep =
      compare_closed_form(t, ClosedFormParams::from(figure_oscillator(), figure_couplings(), init));
  for (std::size_t k = 0; k < 6; ++k)
    o.check(rep.max_abs_diff[k] <= kClosedFormTol,
            fmt("max |closed - rk4| %s = %.2e", std::string(kStateNames[k]).c_str(), rep.max_abs_diff[k]));
  return o;
}

Outcome criterion_4() {
  Outcome o;
  const CovarianceState st =
      stationary_state(figure_oscillator(), figure_couplings(), Model::Simplified);
  const CrossBlock asym = cross_block_asymptote(
      ClosedFormParams::from(figure_oscillator(), figure_couplings(), simon_case_a()));
  const double det_asym =
      det_cs_asymptotic(ClosedFormParams::from(figure_oscillator(), figure_couplings(), simon_case_a()))
          .value;
  const double det_st = entanglement_test(st).det_cs;

  const Eigen::VectorXd oracle = probe_solve({6, 7, 8, 9});
  const double stat_exact[4] = {82.0 / 1105, 396.0 / 1105, -124.0 / 1105, 48.0 / 1105};
  const double asym_exact[4] = {82.0 / 1105, 116.0 / 1105, 20.0 / 1105, 24.0 / 1105};
  const double det_asym_exact = -352.0 / (1105.0 * 1105.0);
  const double stat_quoted[4] = {0.074208, 0.358373, -0.112209, 0.043437};
  const double asym_quoted[4] = {0.074208, 0.104978, 0.018100, 0.021719};
  const double stat[4] = {st.A12, st.B12, st.B21, st.C12};
  const double as[4] = {asym.A12, asym.B12, asym.B21, asym.C12};
  const char* names[4] = {"A12", "B12", "B21", "C12"};

  for (int i = 0; i < 4; ++i) {
    o.check(std::abs(stat[i] - stat_exact[i]) <= kInconsistencyTol &&
                std::abs(stat[i] - oracle(i)) <= kInconsistencyTol,
            fmt("stationary %s = %.9f (exact %.9f, linear solve %.9f)", names[i], stat[i],
                stat_exact[i], oracle(i)));
    o.check(std::abs(as[i] - asym_exact[i]) <= kInconsistencyTol &&
                std::abs(as[i] - asym_quoted[i]) <= kInconsistencyTol,
            fmt("asymptotic %s = %.9f (exact %.9f, quoted %.6f)", names[i], as[i], asym_exact[i],
                asym_quoted[i]));
  }
  o.check(std::abs(det_st - stat_exact[3]) <= kInconsistencyTol,
          fmt("stationary det C_s = %+.9f (exact 48/1105)", det_st));
  o.check(std::abs(det_asym - det_asym_exact) <= kInconsistencyTol &&
              std::abs(det_asym - -2.883e-4) <= kInconsistencyTol,
          fmt("asymptotic det C_s = %+.6e (exact -352/1105^2, quoted -2.883e-4)", det_asym));
  o.check(std::abs(det_of(asym) - det_asym) <= 1e-15, "asymptotic det equals det of asymptotic block");

  double gap = 0.0;
  for (int i = 0; i < 4; ++i) gap = std::max(gap, std::abs(stat[i] - as[i]));
  o.check(gap > kMinimumDisagreement && (det_st > 0.0) != (det_asym > 0.0),
          fmt("the two cross blocks disagree: max gap %.6f, det signs %+d / %+d", gap,
              det_st > 0 ? 1 : -1, det_asym > 0 ? 1 : -1));

  // Rounded hand values quoted for the stationary block, against the exact solution.
  for (int i = 0; i < 4; ++i)
    o.info(fmt("quoted stationary %s %.6f differs from exact by %.1e", names[i], stat_quoted[i],
               std::abs(stat_quoted[i] - stat_exact[i])));
  return o;
}

Outcome criterion_5() {
  Outcome o;
  for (double gamma : {0.1, 0.5, 2.0}) {
    OscillatorParams osc = figure_oscillator();
    osc.omega_b = osc.omega_a;
    LindbladCouplings h = figure_couplings();
    h.h12.re = 1.0;
    set_damping(h, osc, gamma, gamma);
    const ClosedFormParams p = ClosedFormParams::from(osc, h, simon_case_a());
    const AsymptoticDeterminant d = det_cs_asymptotic(p);
    o.check(d.value < 0.0 && d.entangled && std::abs(p.rates.gamma - gamma) < 1e-15,
            fmt("r = 1, Gamma = %.1f: det = %+.6e", gamma, d.value));
  }
  return o;
}

Outcome criterion_6() {
  Outcome o;
  std::vector<std::pair<std::string, CovarianceState>> starts = {
      {"case A", to_covariance_state(simon_case_a())},
      {"case B", to_covariance_state(simon_case_b())},
      {"squeezed", to_covariance_state(SimonParams{0.25, 1.0, 2.0, 0.125, 0.1, -0.05})},
      {"stationary", stationary_state(figure_oscillator(), figure_couplings(), Model::Simplified)}};
  for (const auto& [name, s] : starts) {
    for (Model model : {Model::Simplified, Model::General}) {
      const Trajectory t = integrate(s, figure_oscillator(), LindbladCouplings{}, fixed(1e-3, 10.0), model);
      const SampleMetrics m0 = sample_metrics(t.samples.front());
      double drift_a = 0.0, drift_b = 0.0;
      for (const CovarianceState& x : t.samples) {
        const SampleMetrics m = sample_metrics(x);
        drift_a = std::max(drift_a, std::abs(m.omega_sq_a - m0.omega_sq_a));
        drift_b = std::max(drift_b, std::abs(m.omega_sq_b - m0.omega_sq_b));
      }
      o.check(drift_a < kConservationTol && drift_b < kConservationTol,
              fmt("%s, %s model: drift %.2e / %.2e", name.c_str(),
                  std::string(to_string(model)).c_str(), drift_a, drift_b));
    }
  }
  return o;
}

Outcome criterion_7() {
  Outcome o;
  const double dt = 0.1;
  const auto final_state = [](double step, const SimonParams& init) {
    return integrate(to_covariance_state(init), figure_oscillator(), figure_couplings(),
                     fixed(step, 10.0, 1000000), Model::Simplified)
        .samples.back()
        .to_vector();
  };
  for (const auto& [name, init] : {std::pair{"case A", simon_case_a()}, std::pair{"case B", simon_case_b()}}) {
    const StateVector coarse = final_state(dt, init), half = final_state(dt / 2, init),
                      ref = final_state(dt / 4, init);
    double e1 = 0.0, e2 = 0.0;
    for (std::size_t k = 0; k < kStateDim; ++k) {
      e1 = std::max(e1, std::abs(coarse[k] - ref[k]));
      e2 = std::max(e2, std::abs(half[k] - ref[k]));
    }
    const double ratio = e1 / e2;
    o.check(ratio >= kOrderLow && ratio <= kOrderHigh,
            fmt("%s: err(dt=%.3g) = %.3e, err(dt=%.3g) = %.3e, ratio %.3f", name, dt, e1, dt / 2, e2, ratio));
  }
  return o;
}

// Second differences of A(Q, r) at the origin, coordinates (Q1, Q2, r1, r2).
double second_difference(const CovarianceState& s, int i, int j) {
  const double h = kFdStep;
  const auto eval = [&](double di, double dj) {
    double z[4] = {0, 0, 0, 0};
    z[i] += di;
    z[j] += dj;
    return ambiguity_eval(s, Vec2(z[0], z[1]), Vec2(z[2], z[3]));
  };
  if (i == j) return (eval(h, 0) - 2.0 * eval(0, 0) + eval(-h, 0)) / (h * h);
  return (eval(h, h) - eval(h, -h) - eval(-h, h) + eval(-h, -h)) / (4.0 * h * h);
}

Outcome criterion_8() {
  Outcome o;
  std::mt19937_64 rng(20240607);
  std::uniform_real_distribution<double> u(-0.35, 0.35);
  double worst = 0.0;
  int valid = 0;
  for (int n = 0; n < kFdStates; ++n) {
    Eigen::Matrix4d g;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g(i, j) = u(rng);
    const Eigen::Matrix4d sigma = g * g.transpose() + 0.5 * Eigen::Matrix4d::Identity();
    CovarianceState s;
    s.C11 = sigma(0, 0), s.C12 = sigma(0, 1), s.C22 = sigma(1, 1);
    s.A11 = sigma(2, 2), s.A12 = sigma(2, 3), s.A22 = sigma(3, 3);
    s.B11 = sigma(2, 0), s.B12 = sigma(2, 1), s.B21 = sigma(3, 0), s.B22 = sigma(3, 1);
    if (validate_state(s).all_passed()) ++valid;
    const std::pair<std::pair<int, int>, double> cases[10] = {
        {{0, 0}, s.C11}, {{1, 1}, s.C22}, {{0, 1}, s.C12}, {{2, 2}, s.A11}, {{3, 3}, s.A22},
        {{2, 3}, s.A12}, {{0, 2}, s.B11}, {{1, 3}, s.B22}, {{1, 2}, s.B12}, {{0, 3}, s.B21}};
    for (const auto& [ij, expected] : cases)
      worst = std::max(worst, std::abs(-second_difference(s, ij.first, ij.second) - expected));
  }
  o.check(valid == kFdStates, fmt("%d of %d random states pass validate_state", valid, kFdStates));
  o.check(worst <= kFdTol, fmt("max |-d2A - covariance| over 10 entries x %d states = %.2e", kFdStates, worst));
  return o;
}

// First tau > 0 where the sign of (a - b) flips, by linear interpolation.
double first_crossing(const CsvTable& t, std::size_t ca, std::size_t cb) {
  int sign = 0;
  for (std::size_t i = 1; i < t.rows.size(); ++i) {
    const double d = t.rows[i][ca] - t.rows[i][cb];
    if (std::abs(d) < 1e-12) continue;
    const int now = d > 0 ? 1 : -1;
    if (sign != 0 && now != sign) {
      const double d0 = t.rows[i - 1][ca] - t.rows[i - 1][cb];
      const double t0 = t.rows[i - 1][0], t1 = t.rows[i][0];
      return t0 + (t1 - t0) * d0 / (d0 - d);
    }
    sign = now;
  }
  return NAN;
}

double settle_time(const CsvTable& t, std::size_t col, double target) {
  double last = 0.0;
  for (const auto& row : t.rows)
    if (std::abs(row[col] - target) > kSettleFraction * std::abs(target)) last = row[0];
  return last;
}

Outcome criterion_9() {
  Outcome o;
  const CsvTable f2 = figure_table(FigureId::Fig2, figure_config(FigureId::Fig2));
  const std::size_t da = f2.column("d_decoh_A"), db = f2.column("d_decoh_B");
  o.check(std::abs(f2.rows[0][da] - 1.0) < 1e-12 && std::abs(f2.rows[0][db] - 1.0) < 1e-12,
          fmt("figure 2 starts at (%.6g, %.6g)", f2.rows[0][da], f2.rows[0][db]));
  const double cross = first_crossing(f2, da, db);
  o.check(std::abs(cross - kCrossingTarget) <= kCrossingTol,
          fmt("figure 2 curves first cross at tau = %.4f (expected %.1f +- %.1f)", cross,
              kCrossingTarget, kCrossingTol));
  // Diagnostics for the crossing: the decoherence lengths are monotone here.
  for (double tau : {0.3, 0.6, 0.9}) {
    for (const auto& row : f2.rows)
      if (std::abs(row[0] - tau) < 1e-9)
        o.info(fmt("tau = %.1f: d_decoh_A^2 = %.6f, d_decoh_B^2 = %.6f", tau, row[da], row[db]));
  }

  const CsvTable f4 = figure_table(FigureId::Fig4, figure_config(FigureId::Fig4));
  const std::size_t cb = f4.column("det_cs_B");
  std::vector<double> taus, dets;
  for (const auto& row : f4.rows) {
    taus.push_back(row[0]);
    dets.push_back(row[cb]);
  }
  const EntanglementWindows w = entanglement_windows(taus, dets);
  std::string where;
  for (double c : w.crossing_taus) where += fmt(" %.3f", c);
  o.check(!w.crossing_taus.empty(),
          fmt("figure 4 case B: %zu sign changes at tau =%s", w.crossing_taus.size(), where.c_str()));

  RunConfig long_run = figure_config(FigureId::Fig1);
  long_run.integrator.t_end = 40.0;
  const CsvTable f1 = figure_table(FigureId::Fig1, long_run);
  const CovarianceState st =
      stationary_state(long_run.oscillator, long_run.couplings, long_run.model);
  const double settle_a = settle_time(f1, f1.column("p2_A"), st.A11);
  const double settle_b = settle_time(f1, f1.column("p2_B"), st.A22);
  o.check(settle_b < settle_a,
          fmt("figure 1 within 1%% of asymptote: B from tau = %.2f, A from tau = %.2f", settle_b, settle_a));
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion_10() {
  Outcome o;
  const fs::path base = fs::temp_directory_path() / "qdo_acceptance_determinism";
  fs::remove_all(base);
  std::string contents[2];
  for (int run = 0; run < 2; ++run) {
    const fs::path dir = base / ("run" + std::to_string(run));
    const std::string cmd =
        std::string(QDO_CLI_PATH) + " figure 4 --out " + dir.string() + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    o.check(status == 0, fmt("run %d exit status %d", run + 1, status));
    contents[run] = slurp(dir / "figure_4.csv");
  }
  o.check(!contents[0].empty() && contents[0] == contents[1],
          fmt("figure_4.csv byte-identical (%zu bytes)", contents[0].size()));
  fs::remove_all(base);
  return o;
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "initial-value anchors", criterion_1},
      {2, "stationary A-block", criterion_2},
      {3, "closed form vs RK4, oscillator blocks", criterion_3},
      {4, "cross-block inconsistency reported", criterion_4},
      {5, "equal-frequency asymptotic classification", criterion_5},
      {6, "unitary-limit conservation", criterion_6},
      {7, "RK4 order", criterion_7},
      {8, "covariances from the ambiguity function", criterion_8},
      {9, "qualitative figure features", criterion_9},
      {10, "figure 4 determinism", criterion_10},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
  bool all_pass = true;
  for (const Criterion& c : criteria()) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    for (const auto& line : o.lines) std::printf("    %s\n", line.c_str());
    std::printf("%s criterion %d: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title);
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}
