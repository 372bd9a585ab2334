// Acceptance run: one PASS/FAIL line per check. --extended adds word
// lengths 6 and 7 to the census and 5..7 to the error table.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wordavg/experiments.hpp"

using namespace wordavg;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("failed: " + what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Monomial mono(int m, unsigned j, unsigned a = 0, unsigned b = 0, unsigned e = 0, unsigned p = 0) {
  Monomial x;
  x.m = m;
  x.j = j;
  x.a = a;
  x.b = b;
  x.e = e;
  x.p = p;
  return x;
}

ExactPoly term(long num, long den, const Monomial& mo) { return ExactPoly::monomial(GaussRat::rational(num, den), mo); }

// ---------------------------------------------------------------------------

Outcome census_exactness(bool extended) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = run_census(ModelParams{}, 5, CensusMode::exact);
  const double exact_time = seconds_since(t0);
  const std::size_t expected[] = {7, 35, 217, 1407, 9345, 62951, 427889};
  for (const auto& r : rows) {
    o.require(r.count == expected[r.n - 1], "n=" + std::to_string(r.n) + " count " + std::to_string(r.count));
  }
  o.require(exact_time < 120.0, "exact census took " + fmt("%.1f s", exact_time));
  o.note("exact n<=5 in " + fmt("%.2f s", exact_time));
  if (extended) {
    const auto t1 = std::chrono::steady_clock::now();
    const auto frows = run_census(ModelParams{}, 7, CensusMode::floating, std::thread::hardware_concurrency());
    const double float_time = seconds_since(t1);
    for (const auto& r : frows) {
      o.require(r.count == expected[r.n - 1], "float n=" + std::to_string(r.n) + " count " + std::to_string(r.count));
    }
    o.require(float_time < 1800.0, "float census took " + fmt("%.1f s", float_time));
    o.note("float n<=7: 62951, 427889 checked in " + fmt("%.2f s", float_time));
  }
  return o;
}

Outcome symbolic_golden(const std::string& golden_dir) {
  Outcome o;
  const ExactAveraged sys = build_averaged_exact(build_exact_model(), 2);
  ExactPoly y = term(1, 2, mono(1, 0, 1)) + term(1, 2, mono(-1, 0, 1));
  y += term(1, 1, mono(0, 1)) - term(3, 2, mono(0, 1, 0, 2)) - term(1, 1, mono(0, 3));
  y += term(1, 1, mono(0, 0, 0, 1, 0, 1)) - term(13, 6, mono(0, 0, 0, 3, 0, 1)) + term(1, 1, mono(0, 0, 0, 5, 0, 1));
  y += term(-5, 2, mono(0, 2, 0, 3, 0, 1)) + term(3, 1, mono(0, 4, 0, 1, 0, 1));
  y += term(3, 1, mono(1, 1, 1, 1, 0, 1)) + term(3, 1, mono(-1, 1, 1, 1, 0, 1));
  const ExactPoly phi = term(1, 1, mono(0, 0, 0, 0, 1));
  o.require(sys.field[kY] == y, "Y-equation differs from the two-letter averaged system");
  o.require(sys.field[kPhi] == phi, "Phi-equation is not nu");

  std::ifstream in(golden_dir + "/average_n2.txt");
  std::stringstream ss;
  ss << in.rdbuf();
  o.require(in.good() || !ss.str().empty(), "golden file missing");
  o.require(ss.str() == to_canonical_text(sys), "canonical text differs from the golden file");
  o.note(std::to_string(sys.field[kY].size()) + " Y terms, exact equality");
  return o;
}

Outcome error_table(bool extended) {
  Outcome o;
  ExperimentConfig cfg;
  cfg.letters = extended ? 7 : 4;
  const auto t0 = std::chrono::steady_clock::now();
  const ErrorTable t = run_errors(cfg);
  const double targets[7][2] = {{0.241, 0.431}, {0.080, 0.481}, {0.026, 0.251}, {0.018, 0.036},
                                {0.009, 0.015}, {0.004, 0.008}, {0.003, 0.005}};
  std::string row_text;
  for (std::size_t r = 0; r < t.n.size(); ++r) {
    const std::size_t n = t.n[r];
    for (std::size_t c = 0; c < 2; ++c) {
      const double got = t.error[r][c];
      const double want = targets[n - 1][c];
      const double rel = std::abs(got - want) / want;
      const bool ok = n <= 4 ? rel <= 0.20 : (rel <= 0.30 || std::abs(got - want) <= 0.002);
      o.require(ok, "n=" + std::to_string(n) + " B=" + fmt("%.2f", t.B[c]) + " error " + fmt("%.4f", got) +
                        " vs " + fmt("%.3f", want));
    }
    row_text += (r ? " " : "") + std::to_string(n) + ":" + fmt("%.4f", t.error[r][0]) + "/" + fmt("%.4f", t.error[r][1]);
  }
  o.note(row_text);
  o.note(fmt("%.1f s", seconds_since(t0)));
  return o;
}

Outcome figure_dynamics() {
  Outcome o;
  const auto series = run_figure(ExperimentConfig{});
  const double period = 20 * std::numbers::pi;
  for (const auto& s : series) {
    const auto& t = s.traj.t;
    const auto& y = s.traj.column("Y");
    double ymax = -1e9;
    for (std::size_t j = 0; j < t.size(); ++j) {
      if (t[j] >= 100.0) ymax = std::max(ymax, y[j]);
    }
    const auto shift = static_cast<std::size_t>(std::llround(period / s.traj.h_out));
    double drift = 0.0;
    for (std::size_t j = 0; j + shift < t.size(); ++j) {
      if (t[j] >= 150.0 && t[j] <= 400.0 - period) drift = std::max(drift, std::abs(y[j + shift] - y[j]));
    }
    if (std::abs(s.B - 0.52) < 1e-12) {
      o.require(ymax < 0.0, "B=0.52 reaches Y=" + fmt("%.3f", ymax));
    } else {
      o.require(ymax > 0.5, "B=0.53 only reaches Y=" + fmt("%.3f", ymax));
    }
    o.require(drift < 1e-3, "B=" + fmt("%.2f", s.B) + " period drift " + fmt("%.2e", drift));
    o.note("B=" + fmt("%.2f", s.B) + " max Y " + fmt("%.3f", ymax) + ", drift " + fmt("%.1e", drift));
  }
  return o;
}

Outcome coefficient_properties() {
  Outcome o;
  const std::vector<Letter> letters{-3, -2, -1, 0, 1, 2, 3};
  BetaBarExact beta;
  std::size_t shuffles = 0;
  bool inf_char = true;
  for (std::size_t a = 1; a <= 3; ++a) {
    for (std::size_t b = 1; a + b <= 4; ++b) {
      for (const Word& u : words_of_length(letters, a)) {
        for (const Word& v : words_of_length(letters, b)) {
          GaussRat sum;
          for (const Word& w : shuffle(u, v)) sum += beta.coefficient(w);
          inf_char = inf_char && sum == GaussRat();
          ++shuffles;
        }
      }
    }
  }
  o.require(inf_char, "beta_bar shuffle sums are not all zero");

  const auto idx = std::make_shared<WordIndex>(letters, 4);
  bool scaling = true;
  for (std::uint64_t r = 1; r < idx->size(); ++r) {
    const Word w = idx->word(r);
    mpq_class f = 1;
    for (std::size_t i = 1; i < w.size(); ++i) f /= 2;
    scaling = scaling && beta.at_omega(w, mpq_class(10)) == beta.at_omega(w, mpq_class(5)) * GaussRat(f);
  }
  o.require(scaling, "beta_bar(2 omega) != 2^(1-n) beta_bar(omega)");

  AlphaTable alpha(5.0, 0.0);
  const auto kap = kappa(idx, 0.77, 0.0, 5.0);
  double alpha_dev = 0.0;
  double kappa_dev = 0.0;
  for (std::size_t a = 1; a <= 2; ++a) {
    for (std::size_t b = 1; a + b <= 4; ++b) {
      for (const Word& u : words_of_length(letters, a)) {
        for (const Word& v : words_of_length(letters, b)) {
          Complex sa{};
          Complex sk{};
          for (const Word& w : shuffle(u, v)) {
            sa += alpha(w)(0.77);
            sk += kap.at(w);
          }
          alpha_dev = std::max(alpha_dev, std::abs(sa - alpha(u)(0.77) * alpha(v)(0.77)));
          kappa_dev = std::max(kappa_dev, std::abs(sk - kap.at(u) * kap.at(v)));
        }
      }
    }
  }
  o.require(alpha_dev < 1e-10, "alpha shuffle defect " + fmt("%.2e", alpha_dev));
  o.require(kappa_dev < 1e-10, "kappa shuffle defect " + fmt("%.2e", kappa_dev));

  const double period = 2 * std::numbers::pi / 5.0;
  double strobe = 0.0;
  for (int l = 0; l <= 3; ++l) {
    const auto k = kappa(idx, l * period, 0.0, 5.0);
    strobe = std::max(strobe, std::abs(k[0] - 1.0));
    for (std::uint64_t r = 1; r < idx->size(); ++r) strobe = std::max(strobe, std::abs(k[r]));
  }
  const auto shifted = kappa(idx, 0.77 + period, 0.0, 5.0);
  double periodic = 0.0;
  for (std::uint64_t r = 0; r < idx->size(); ++r) periodic = std::max(periodic, std::abs(shifted[r] - kap[r]));
  o.require(strobe < 1e-9, "stroboscopic kappa deviation " + fmt("%.2e", strobe));
  o.require(periodic < 1e-9, "kappa periodicity defect " + fmt("%.2e", periodic));

  const auto delta = conv_exp(beta_bar_map_exact(idx, mpq_class(5)), GaussRat::rational(3, 7));
  const auto eps = CoeffMap<GaussRat>::unit(idx);
  o.require(conv(conv_inverse(delta), delta).values() == eps.values(), "conv_inverse * delta != unit");
  o.require(conv(delta, conv_inverse(delta)).values() == eps.values(), "delta * conv_inverse != unit");

  o.note(std::to_string(shuffles) + " exact shuffle pairs; alpha " + fmt("%.1e", alpha_dev) + ", kappa " +
         fmt("%.1e", kappa_dev) + ", strobe " + fmt("%.1e", strobe) + ", period " + fmt("%.1e", periodic));
  return o;
}

double stroboscopic_error(double omega, std::size_t n) {
  ModelParams p;
  p.omega = omega;
  const double period = 2 * std::numbers::pi / omega;
  const double ts = period * std::ceil(10.0 / period - 1e-12);
  const double h = aligned_step(omega, 40);
  const Trajectory ref = integrate_reference(p, ts + 1e-9, h, 1e-12);
  const Trajectory avg = integrate_averaged(build_averaged(build_float_model(p), n), {0.0, p.z0}, ts + 1e-9, h, 1e-12);
  const auto j = static_cast<std::size_t>(std::llround(ts / h));
  return std::abs(ref.column("z")[j] - avg.column("Y")[j]);
}

Outcome convergence_order() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::string text;
  for (std::size_t n = 1; n <= 3; ++n) {
    const double ratio = stroboscopic_error(5.0, n) / stroboscopic_error(10.0, n);
    const double lo = std::pow(2.0, static_cast<double>(n)) / 2;
    const double hi = std::pow(2.0, static_cast<double>(n) + 1);
    o.require(ratio >= lo && ratio <= hi, "n=" + std::to_string(n) + " ratio " + fmt("%.2f", ratio));
    text += (n > 1 ? " " : "") + std::string("n=") + std::to_string(n) + ":" + fmt("%.2f", ratio);
  }
  const double elapsed = seconds_since(t0);
  o.require(elapsed < 60.0, "took " + fmt("%.1f s", elapsed));
  o.note("error ratios " + text);
  return o;
}

Outcome potential_analysis() {
  Outcome o;
  ModelParams p;
  p.B = 0.0;
  const WellReport flat = well_analysis(effective_potential(p, 1));
  std::vector<double> minima;
  for (const auto& c : flat.points) {
    if (c.type != CriticalType::minimum) continue;
    minima.push_back(c.y);
    o.require(std::abs(c.depth - 0.25) < 1e-10, "depth " + fmt("%.12f", c.depth));
  }
  o.require(minima.size() == 2 && std::abs(minima[0] + 1) < 1e-10 && std::abs(minima[1] - 1) < 1e-10,
            "B=0 minima not at -1 and 1");
  const double threshold = std::sqrt(2.0 / 3.0);
  for (double B : {threshold + 1e-6, 0.9, 1.2, 1.5}) {
    p.B = B;
    const WellReport w = well_analysis(effective_potential(p, 1));
    o.require(w.minima() == 1 && w.merged(), "B=" + fmt("%.7f", B) + " not merged");
  }
  for (double B : {0.0, 0.3, 0.52, 0.53, threshold - 1e-3}) {
    p.B = B;
    const WellReport w = well_analysis(effective_potential(p, 1));
    o.require(w.minima() == 2 && !w.merged(), "B=" + fmt("%.7f", B) + " not a double well");
  }
  return o;
}

Outcome numerical_hygiene(bool extended) {
  Outcome o;
  // derivatives against central differences, on the basis functions themselves
  const ModelParams params;
  const FloatModel model = build_float_model(params);
  std::mt19937_64 rng(0x5eed2016u);
  std::uniform_real_distribution<double> ang(0, 2 * std::numbers::pi), yv(-1.5, 1.5);
  const double h = 1e-5;
  double fd = 0.0;
  BasisLevel<Complex> level = first_level(model);
  for (std::size_t n = 1; n <= 4; ++n) {
    if (n > 1) level = extend_level(level, model);
    for (std::size_t i = 0; i < level.entries.size(); i += 1 + level.entries.size() / 40) {
      const auto jac = jacobian(level.entries[i].field);
      for (std::size_t c = 0; c < kDim; ++c) {
        const auto& f = level.entries[i].field[c];
        const double phi = ang(rng);
        const double y = yv(rng);
        const Complex dy = jac[c][kY].eval(phi, y, {});
        const Complex dphi = jac[c][kPhi].eval(phi, y, {});
        const Complex fy = (f.eval(phi, y + h, {}) - f.eval(phi, y - h, {})) / (2 * h);
        const Complex fphi = (f.eval(phi + h, y, {}) - f.eval(phi - h, y, {})) / (2 * h);
        fd = std::max({fd, std::abs(dy - fy) / (1 + std::abs(dy)), std::abs(dphi - fphi) / (1 + std::abs(dphi))});
      }
    }
  }
  o.require(fd < 1e-6, "finite-difference mismatch " + fmt("%.2e", fd));

  // imaginary residues of every real-state evaluation path
  double residue = 0.0;
  for (std::size_t n = 1; n <= (extended ? 6u : 4u); ++n) {
    const RealField field(build_averaged(model, n).field, params.values());
    for (int i = 0; i < 50; ++i) {
      const auto v = field.complex_value(ang(rng), yv(rng));
      residue = std::max({residue, std::abs(v[kPhi].imag()), std::abs(v[kY].imag())});
    }
  }
  for (int i = 0; i < 50; ++i) {
    const auto v = oscillatory_field(model, ang(rng), yv(rng), 40 * ang(rng));
    residue = std::max({residue, std::abs(v[kPhi].imag()), std::abs(v[kY].imag())});
  }
  ExperimentConfig cfg;
  cfg.letters = 4;
  cfg.T = 40.0;
  residue = std::max(residue, run_errors(cfg).max_imag_residue);
  o.require(residue < 1e-10, "imaginary residue " + fmt("%.2e", residue));

  const Trajectory z = integrate_reference(params, 20.0, 0.01, 1e-12);
  const Trajectory y = integrate_frame(params, 20.0, 0.01, 1e-12);
  double frame = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j) {
    frame = std::max(frame, std::abs(z.column("z")[j] - frame_to_z(y.column("y")[j], z.t[j], params)));
  }
  o.require(frame < 1e-6, "frame mismatch " + fmt("%.2e", frame));
  o.note("fd " + fmt("%.1e", fd) + ", residue " + fmt("%.1e", residue) + ", frame " + fmt("%.1e", frame));
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance run"};
  bool extended = false;
  std::string golden_dir = WORDAVG_GOLDEN_DIR;
  app.add_flag("--extended", extended, "Include word lengths 6 and 7");
  app.add_option("--golden", golden_dir, "Directory of golden files")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"census exactness", [&] { return census_exactness(extended); }},
      {"symbolic golden", [&] { return symbolic_golden(golden_dir); }},
      {"error table", [&] { return error_table(extended); }},
      {"figure dynamics", figure_dynamics},
      {"coefficient properties", coefficient_properties},
      {"convergence order", convergence_order},
      {"potential analysis", potential_analysis},
      {"numerical hygiene", [&] { return numerical_hygiene(extended); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out.pass = false;
      out.notes.push_back(std::string("exception: ") + e.what());
    }
    std::string detail;
    for (const auto& n : out.notes) detail += (detail.empty() ? "" : "; ") + n;
    std::printf("%s %zu %s%s%s\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                detail.empty() ? "" : " | ", detail.c_str());
    std::fflush(stdout);
    failures += out.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
