#include "dualcs/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "dualcs/errors.hpp"
#include "dualcs/measure.hpp"
#include "dualcs/statistics.hpp"
#include "dualcs/thermal.hpp"

namespace dualcs::cli {

namespace {

double parse_real(std::string_view s, std::string_view what) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("invalid " + std::string(what) + ": '" + std::string(s) + "'");
  }
  return v;
}

std::string list_repr(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += format_double(v[i]);
  }
  return s + "]";
}

std::string json_number(double v) {
  return std::isfinite(v) ? format_double(v) : "null";
}

std::string json_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return json_number(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return nlohmann::json(std::get<std::string>(c)).dump();
}

std::string csv_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  const std::string& v = std::get<std::string>(c);
  if (v.find_first_of(",\"\n") == std::string::npos) return v;
  std::string q = "\"";
  for (char ch : v) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

struct Settings {
  Preset preset;
  std::string family = "bg";
  std::string z = "1";
  std::string z2 = "0";
  std::size_t n = 0;  // 0: automatic
  std::string grid;
  double beta = 1.0;
  double e0 = 0.0;
  std::size_t nodes = 200;
  std::size_t identity_dim = 15;
  std::string format = "csv";
  unsigned threads = 1;
  bool allow_boundary = false;
};

Family family_of(const Settings& s) { return s.family == "kp" ? Family::KP : Family::BG; }

StateOptions state_options(const Settings& s) {
  StateOptions o;
  if (s.n > 0) o.truncation = s.n;
  o.allow_near_boundary = s.allow_boundary;
  return o;
}

std::string base_comment(const Settings& s, const ModelParams& m) {
  const StateOptions o = state_options(s);
  std::string c = "preset=" + s.preset.name;
  if (s.preset.name == "su11") c += " k=" + format_double(s.preset.k);
  c += " a=" + list_repr(m.a) + " b=" + list_repr(m.b);
  c += " family=" + s.family;
  c += " truncation=" + (s.n > 0 ? std::to_string(s.n) : std::string("auto"));
  c += " tail_target=" + format_double(o.tail_target);
  c += " series_rel_tol=" + format_double(o.series.rel_tol);
  return c;
}

std::vector<double> grid_or_single(const Settings& s) {
  if (!s.grid.empty()) return parse_grid(s.grid);
  return {std::abs(parse_complex(s.z))};
}

void emit(std::ostream& out, const Settings& s, const Table& t) {
  if (s.format == "json") {
    write_json(out, t);
  } else {
    write_csv(out, t);
  }
}

int cmd_state(const Settings& s, std::ostream& out) {
  const ModelParams m = model_from_preset(s.preset);
  const CoherentState st = coherent_state(m, family_of(s), parse_complex(s.z), state_options(s));
  Table t;
  t.comment = base_comment(s, m) + " z=" + s.z;
  t.columns = {"n", "re", "im", "prob"};
  double norm2 = 0.0;
  for (Eigen::Index k = 0; k < st.coeffs.size(); ++k) {
    const std::complex<double> c = st.coeffs[k];
    t.rows.push_back({static_cast<long long>(k), c.real(), c.imag(), std::norm(c)});
    norm2 += std::norm(c);
  }
  t.footer = {{"truncation", static_cast<long long>(st.truncation)},
              {"norm", std::sqrt(norm2)},
              {"normalization_function", st.norm_value},
              {"log_normalization_function", st.log_norm_value},
              {"tail", st.tail}};
  emit(out, s, t);
  return kOk;
}

int cmd_mandel(const Settings& s, std::ostream& out) {
  const ModelParams m = model_from_preset(s.preset);
  const Family fam = family_of(s);
  const std::vector<double> grid = grid_or_single(s);
  const StateOptions opts = state_options(s);
  const auto rows = parallel_map<std::vector<Cell>>(
      grid.size(), s.threads, [&](std::size_t i) -> std::vector<Cell> {
        const CoherentState st = coherent_state(m, fam, {grid[i], 0.0}, opts);
        const PhotonStatistics ps = photon_distribution(st);
        if (ps.degenerate) {
          return {grid[i], static_cast<long long>(st.truncation), ps.mean, ps.second_moment, NAN,
                  std::string("poissonian-limit")};
        }
        const double q = mandel_q(st);
        return {grid[i], static_cast<long long>(st.truncation), ps.mean, ps.second_moment, q,
                std::string(to_string(classify(q)))};
      });
  Table t;
  t.comment = base_comment(s, m) + " poissonian_threshold=" + format_double(kPoissonianThreshold);
  t.columns = {"abs_z", "truncation", "mean", "second_moment", "mandel_q", "classification"};
  t.rows = rows;
  emit(out, s, t);
  return kOk;
}

int cmd_thermal(const Settings& s, std::ostream& out) {
  const ModelParams m = model_from_preset(s.preset);
  const Family fam = family_of(s);
  const ThermalEnsemble ens{1.0, s.e0, s.beta};
  const double z_part = partition_function(ens);
  const double n_bar = ens.n_bar();
  double q_th = NAN;
  std::string status = "ok";
  try {
    q_th = thermal_mandel(ens);
  } catch (const DegenerateError&) {
    status = "degenerate";
  }

  Table t;
  t.comment = base_comment(s, m) + " beta=" + format_double(s.beta) + " e0=" + format_double(s.e0) +
              " hbar_omega=1 thermal_tail=1e-12";
  t.columns = {"beta", "partition_function", "n_bar", "mandel_q_th", "status"};
  if (s.grid.empty()) {
    t.rows.push_back({s.beta, z_part, n_bar, q_th, status});
    emit(out, s, t);
    return kOk;
  }

  const std::vector<double> grid = parse_grid(s.grid);
  const StateOptions opts = state_options(s);
  const RadialWeight w = weight_for(m, fam);
  t.columns.insert(t.columns.end(),
                   {"abs_z", "husimi_q", "husimi_q_kernel", "p_function"});
  t.rows = parallel_map<std::vector<Cell>>(
      grid.size(), s.threads, [&](std::size_t i) -> std::vector<Cell> {
        const double r = grid[i];
        const HusimiRoutes h = husimi_q(m, fam, {r, 0.0}, ens, opts);
        const double p = p_function(w, r * r, n_bar);
        return {s.beta, z_part, n_bar, q_th, status, r, h.direct, h.kernel, p};
      });
  emit(out, s, t);
  return kOk;
}

int cmd_overlap(const Settings& s, std::ostream& out) {
  const ModelParams m = model_from_preset(s.preset);
  const Family fam = family_of(s);
  const std::complex<double> z1 = parse_complex(s.z);
  const std::complex<double> z2 = parse_complex(s.z2);
  StateOptions opts = state_options(s);
  if (!opts.truncation) {
    opts.truncation =
        std::max(auto_truncation(m, fam, z1, opts), auto_truncation(m, fam, z2, opts));
  }
  const CoherentState s1 = coherent_state(m, fam, z1, opts);
  const CoherentState s2 = coherent_state(m, fam, z2, opts);
  const std::complex<double> ov = overlap(s1, s2);
  const std::complex<double> kern = overlap_kernel(s1, s2);
  Table t;
  t.comment = base_comment(s, m) + " z=" + s.z + " z2=" + s.z2;
  t.columns = {"truncation", "re", "im", "abs2", "kernel_re", "kernel_im"};
  t.rows.push_back({static_cast<long long>(*opts.truncation), ov.real(), ov.imag(), std::norm(ov),
                    kern.real(), kern.imag()});
  emit(out, s, t);
  return kOk;
}

int cmd_radius(const Settings& s, std::ostream& out) {
  const ModelParams m = model_from_preset(s.preset);
  Table t;
  t.comment = base_comment(s, m);
  t.columns = {"family", "p", "q", "radius", "moment_problem", "boundary_note"};
  for (Family f : {Family::BG, Family::KP}) {
    const HypergeometricSpec spec = family_series(m, f);
    const ConvergenceDomain d = radius(m, f);
    t.rows.push_back({std::string(to_string(f)), static_cast<long long>(spec.p()),
                      static_cast<long long>(spec.q()), std::string(to_string(d.radius)),
                      std::string(to_string(d.moment_problem)), d.boundary_note});
  }
  emit(out, s, t);
  return kOk;
}

int cmd_verify(const Settings& s, std::ostream& out) {
  const ModelParams m = model_from_preset(s.preset);
  VerifyOptions vo;
  vo.identity_dim = s.n > 0 ? s.n : s.identity_dim;
  vo.nodes = s.nodes;
  vo.beta = s.beta;
  const std::vector<Check> checks = run_checks(m, family_of(s), vo);
  Table t;
  t.comment = base_comment(s, m) + " identity_dim=" + std::to_string(vo.identity_dim) +
              " nodes=" + std::to_string(vo.nodes) + " beta=" + format_double(vo.beta);
  t.columns = {"check", "max_error", "tolerance", "status", "note"};
  bool ok = true;
  for (const Check& c : checks) {
    t.rows.push_back({c.name, c.error, c.tolerance, c.status, c.note});
    if (c.status == "fail") ok = false;
  }
  t.footer = {{"result", std::string(ok ? "pass" : "fail")}};
  emit(out, s, t);
  return ok ? kOk : kVerifyFailure;
}

}  // namespace

std::complex<double> parse_complex(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != ' ') s += c;
  }
  if (s.empty()) throw std::invalid_argument("empty complex number");
  if (s.back() != 'i') return {parse_real(s, "complex number"), 0.0};
  s.pop_back();
  // split at the last sign that is not a leading sign or part of an exponent
  std::size_t pos = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      pos = i;
      break;
    }
  }
  const std::string re = pos == std::string::npos ? "" : s.substr(0, pos);
  std::string im = pos == std::string::npos ? s : s.substr(pos);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  return {re.empty() ? 0.0 : parse_real(re, "complex number"), parse_real(im, "complex number")};
}

std::vector<double> parse_grid(std::string_view text) {
  const std::size_t c1 = text.find(':');
  const std::size_t c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string_view::npos || text.find(':', c2 + 1) != std::string_view::npos) {
    throw std::invalid_argument("grid must be start:stop:steps");
  }
  const double start = parse_real(text.substr(0, c1), "grid start");
  const double stop = parse_real(text.substr(c1 + 1, c2 - c1 - 1), "grid stop");
  const double steps_d = parse_real(text.substr(c2 + 1), "grid steps");
  if (!(steps_d >= 0.0) || steps_d != std::floor(steps_d)) {
    throw std::invalid_argument("grid steps must be a nonnegative integer");
  }
  if (start < 0.0 || stop < 0.0) throw std::invalid_argument("grid values are |z| and must be >= 0");
  const auto steps = static_cast<std::size_t>(steps_d);
  std::vector<double> g(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    g[i] = steps == 1 ? start
                      : start + (stop - start) * static_cast<double>(i) /
                                    static_cast<double>(steps - 1);
  }
  return g;
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  if (text.find_first_not_of(' ') == std::string_view::npos) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_real(text.substr(start, comma - start), "parameter list"));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const Table& t) {
  os << "# " << t.comment << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << '\n';
  }
  for (const auto& [key, value] : t.footer) os << "# " << key << "=" << csv_cell(value) << '\n';
}

void write_json(std::ostream& os, const Table& t) {
  os << "{\n  \"comment\": " << nlohmann::json(t.comment).dump() << ",\n  \"columns\": [";
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    os << (i ? ", " : "") << nlohmann::json(t.columns[i]).dump();
  }
  os << "],\n  \"rows\": [";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    os << (r ? ",\n    [" : "\n    [");
    for (std::size_t i = 0; i < t.rows[r].size(); ++i) os << (i ? ", " : "") << json_cell(t.rows[r][i]);
    os << "]";
  }
  os << (t.rows.empty() ? "]" : "\n  ]") << ",\n  \"footer\": {";
  for (std::size_t i = 0; i < t.footer.size(); ++i) {
    os << (i ? ", " : "") << nlohmann::json(t.footer[i].first).dump() << ": "
       << json_cell(t.footer[i].second);
  }
  os << "}\n}\n";
}

ModelParams model_from_preset(const Preset& p) {
  ModelParams m;
  if (p.name == "ho1d") {
  } else if (p.name == "su11") {
    if (!(p.k > 0.0)) throw DomainError("su11 requires k > 0");
    m.b = {2.0 * p.k};
  } else if (p.name == "geometric") {
    m.a = {p.a.empty() ? 3.0 : parse_real(p.a, "--a")};
  } else if (p.name == "custom") {
    m.a = parse_list(p.a);
    m.b = parse_list(p.b);
  } else {
    throw std::invalid_argument("unknown preset '" + p.name + "'");
  }
  m.validate();
  return m;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const DivergenceError*>(&e) || dynamic_cast<const TruncationError*>(&e) ||
      dynamic_cast<const NonConvergenceError*>(&e)) {
    return kDivergence;
  }
  if (dynamic_cast<const SupportError*>(&e) || dynamic_cast<const UnsupportedClassError*>(&e) ||
      dynamic_cast<const ParameterError*>(&e)) {
    return kSupportDomain;
  }
  if (dynamic_cast<const DomainError*>(&e) || dynamic_cast<const std::invalid_argument*>(&e) ||
      dynamic_cast<const MismatchError*>(&e)) {
    return kUsage;
  }
  return kVerifyFailure;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dual Barut-Girardello / Klauder-Perelomov coherent states"};
  app.name("dualcs");
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a file of key = value lines");

  Settings s;
  app.add_option("--preset", s.preset.name, "Model preset")
      ->check(CLI::IsMember({"ho1d", "su11", "geometric", "custom"}))
      ->capture_default_str();
  app.add_option("--k", s.preset.k, "su11 index: b = [2k]")->capture_default_str();
  app.add_option("--a", s.preset.a, "geometric: a value; custom: comma list of a_i");
  app.add_option("--b", s.preset.b, "custom: comma list of b_j");
  app.add_option("--family", s.family, "State family")
      ->check(CLI::IsMember({"bg", "kp"}))
      ->capture_default_str();
  app.add_option("--z", s.z, "Complex label RE+IMi")->capture_default_str();
  app.add_option("--z2", s.z2, "Second label (overlap)")->capture_default_str();
  app.add_option("--N", s.n, "Truncation (0 = automatic)");
  app.add_option("--z-abs-grid", s.grid, "|z| grid start:stop:steps (phase 0)");
  app.add_option("--beta", s.beta, "Inverse temperature (hbar omega = 1)")->capture_default_str();
  app.add_option("--e0", s.e0, "Spectrum offset")->capture_default_str();
  app.add_option("--nodes", s.nodes, "Radial quadrature nodes")->capture_default_str();
  app.add_option("--format", s.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--threads", s.threads, "Worker threads for grid evaluation (env DUALCS_THREADS)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--allow-boundary", s.allow_boundary,
               "Allow 0.95 < |z| < 1 on unit-radius families");

  struct Sub {
    const char* name;
    const char* help;
    int (*fn)(const Settings&, std::ostream&);
  };
  const Sub subs[] = {
      {"state", "Coefficients of a coherent state", cmd_state},
      {"mandel", "Photon statistics over a |z| grid", cmd_mandel},
      {"thermal", "Thermal averages, Husimi Q and P function", cmd_thermal},
      {"verify", "Run the invariant checks; exit 1 on failure", cmd_verify},
      {"overlap", "Overlap of two coherent states", cmd_overlap},
      {"radius", "Convergence radius of both families", cmd_radius},
  };
  for (const Sub& sub : subs) app.add_subcommand(sub.name, sub.help)->fallthrough();

  // DUALCS_THREADS; --threads overrides it
  if (const char* env = std::getenv("DUALCS_THREADS"); env && *env) {
    const std::string_view v(env);
    unsigned n = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
    if (ec != std::errc() || ptr != v.data() + v.size() || n == 0) {
      err << "dualcs: DUALCS_THREADS must be a positive integer, got '" << v << "'\n";
      return kUsage;
    }
    s.threads = n;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    for (const Sub& sub : subs) {
      if (app.got_subcommand(sub.name)) return sub.fn(s, out);
    }
  } catch (const std::exception& e) {
    err << "dualcs: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kUsage;
}

}  // namespace dualcs::cli
