#include "fraclaw/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>

#include "fraclaw/errors.hpp"

namespace fraclaw {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

void insert(std::map<std::string, std::string>& out, const std::string& key,
            const std::string& value, int line) {
  const auto& keys = config_keys();
  if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
    throw InvalidParameter("config line " + std::to_string(line) + ": unknown key '" + key + "'");
  }
  if (value.empty()) {
    throw InvalidParameter("config line " + std::to_string(line) + ": key '" + key +
                           "' has no value");
  }
  if (!out.emplace(key, value).second) {
    throw InvalidParameter("config line " + std::to_string(line) + ": duplicate key '" + key +
                           "'");
  }
}

// Body of an initial { ... } block: key = value pairs separated by blanks,
// newlines, commas or semicolons.
void parse_block(const std::string& body, std::map<std::string, std::string>& out, int line) {
  std::string flat = body;
  for (char& c : flat) {
    if (c == ',' || c == ';' || c == '\n') c = ' ';
  }
  // Normalise "a=b", "a = b" and "a =b" into three tokens.
  std::string spaced;
  for (char c : flat) {
    if (c == '=') {
      spaced += " = ";
    } else {
      spaced += c;
    }
  }
  std::istringstream in(spaced);
  std::string key, eq, value;
  while (in >> key) {
    if (!(in >> eq) || eq != "=" || !(in >> value)) {
      throw InvalidParameter("config line " + std::to_string(line) +
                             ": expected 'name = value' inside the initial block");
    }
    insert(out, "initial." + key, value, line);
  }
}

double number(const std::map<std::string, std::string>& e, const std::string& key,
              double fallback) {
  const auto it = e.find(key);
  if (it == e.end()) return fallback;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(it->second, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != it->second.size() || !std::isfinite(v)) {
    throw InvalidParameter("config: key '" + key + "' expects a number, got '" + it->second +
                           "'");
  }
  return v;
}

std::vector<double> numbers(const std::map<std::string, std::string>& e, const std::string& key,
                            const std::vector<double>& fallback) {
  const auto it = e.find(key);
  if (it == e.end()) return fallback;
  std::string text = it->second;
  std::replace(text.begin(), text.end(), ',', ' ');
  std::istringstream in(text);
  std::vector<double> out;
  std::string token;
  while (in >> token) {
    out.push_back(number({{key, token}}, key, 0.0));
  }
  if (out.empty()) throw InvalidParameter("config: key '" + key + "' needs at least one value");
  return out;
}

void require_increasing_positive(const std::vector<double>& v, const std::string& key) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0) || (i > 0 && !(v[i] > v[i - 1]))) {
      throw InvalidParameter("config: " + key + " must be positive and strictly increasing");
    }
  }
}

FractionalOperatorSpec operator_from(const std::map<std::string, std::string>& e) {
  const bool has_alpha = e.count("alpha") > 0;
  const bool has_beta = e.count("beta") > 0;
  const bool has_gamma = e.count("gamma") > 0;
  if (!has_beta && !has_gamma) {
    return FractionalOperatorSpec::dx_weyl_marchaud(number(e, "alpha", 0.5));
  }
  if (!has_alpha) {
    if (!has_beta) throw InvalidParameter("config: gamma given without beta");
    return FractionalOperatorSpec::riesz_feller(number(e, "beta", 1.5), number(e, "gamma", 0.0));
  }
  // alpha together with beta or gamma: they must describe the same operator.
  const double alpha = number(e, "alpha", 0.5);
  const double beta = number(e, "beta", 1.0 + alpha);
  const double gamma = number(e, "gamma", 1.0 - alpha);
  FractionalOperatorSpec::riesz_feller(beta, gamma);  // range check first
  if (std::abs(beta - (1.0 + alpha)) > 1e-12 || std::abs(gamma - (1.0 - alpha)) > 1e-12) {
    throw InvalidParameter(
        "config: alpha fixes beta = 1 + alpha and gamma = 1 - alpha; give either alpha or "
        "(beta, gamma)");
  }
  return FractionalOperatorSpec::dx_weyl_marchaud(alpha);
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_number(v[i]);
  }
  return out;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "q",         "alpha",          "beta",         "gamma",          "n",
      "half_width", "dt",            "t_end",        "scheme",         "delta",
      "epsilon",   "lambda_list",    "snapshot_times", "radius",       "tail_radii",
      "initial.kind", "initial.mass", "initial.width", "initial.center"};
  return keys;
}

std::map<std::string, std::string> parse_entries(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw.substr(0, raw.find('#')));
    if (s.empty()) continue;

    const auto brace = s.find('{');
    if (brace != std::string::npos) {
      const std::string name = trim(s.substr(0, brace));
      if (name != "initial") {
        throw InvalidParameter("config line " + std::to_string(line) + ": unknown block '" +
                               name + "'");
      }
      const int start = line;
      std::string body = s.substr(brace + 1);
      while (body.find('}') == std::string::npos) {
        if (!std::getline(in, raw)) {
          throw InvalidParameter("config line " + std::to_string(start) +
                                 ": initial block is not closed");
        }
        ++line;
        body += "\n" + raw.substr(0, raw.find('#'));
      }
      const auto close = body.find('}');
      if (!trim(body.substr(close + 1)).empty()) {
        throw InvalidParameter("config line " + std::to_string(line) +
                               ": text after the closing brace");
      }
      parse_block(body.substr(0, close), out, start);
      continue;
    }

    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw InvalidParameter("config line " + std::to_string(line) + ": expected 'key = value'");
    }
    insert(out, trim(s.substr(0, eq)), trim(s.substr(eq + 1)), line);
  }
  return out;
}

void apply_env_overrides(std::map<std::string, std::string>& entries,
                         const std::function<const char*(const char*)>& getenv) {
  for (const auto& key : config_keys()) {
    std::string name = "FRACLAW_";
    for (char c : key) name += c == '.' ? '_' : static_cast<char>(std::toupper(c));
    const char* v = getenv(name.c_str());
    if (v && !trim(v).empty()) entries[key] = trim(v);
  }
}

RunOptions build_options(const std::map<std::string, std::string>& e) {
  RunOptions o;
  SolverConfig& c = o.solver;
  c.q = number(e, "q", c.q);
  c.spec = operator_from(e);

  const double n = number(e, "n", 4096.0);
  if (n != std::floor(n) || n < 4.0 || n > static_cast<double>(1u << 30)) {
    throw InvalidParameter("config: n must be a power of two >= 4");
  }
  c.grid = Grid(static_cast<std::size_t>(n), number(e, "half_width", 100.0));
  c.dt = number(e, "dt", c.dt);
  c.t_end = number(e, "t_end", c.t_end);
  if (e.count("scheme")) c.scheme = scheme_from_string(e.at("scheme"));
  c.delta = number(e, "delta", c.delta);
  c.epsilon = number(e, "epsilon", c.epsilon);
  c.validate();

  o.lambda_list = numbers(e, "lambda_list", o.lambda_list);
  for (double l : o.lambda_list) {
    if (!(l >= 1.0)) throw InvalidParameter("config: lambda_list entries must be >= 1");
  }
  o.snapshot_times = numbers(e, "snapshot_times", o.snapshot_times);
  require_increasing_positive(o.snapshot_times, "snapshot_times");
  if (o.snapshot_times.back() > c.t_end + 1e-12) {
    throw InvalidParameter("config: snapshot_times must not exceed t_end");
  }
  o.radius = number(e, "radius", o.radius);
  o.tail_radii = numbers(e, "tail_radii", o.tail_radii);
  require_increasing_positive(o.tail_radii, "tail_radii");
  if (!(o.radius > 0.0) || !(2.0 * o.radius < c.grid.half_width())) {
    throw InvalidParameter("config: 0 < 2 radius < half_width violated");
  }
  if (!(2.0 * o.tail_radii.back() < c.grid.half_width())) {
    throw InvalidParameter("config: 2 R < half_width violated by tail_radii");
  }

  const auto kind =
      e.count("initial.kind") ? profile_kind_from_string(e.at("initial.kind"))
                              : InitialProfile::Kind::gaussian;
  const double mass = number(e, "initial.mass", 1.0);
  const double width = number(e, "initial.width", 1.0);
  const double center = number(e, "initial.center", 0.0);
  if (!(mass > 0.0)) throw InvalidParameter("config: initial mass > 0 violated");
  if (!(width > 0.0)) throw InvalidParameter("config: initial width > 0 violated");
  if (!(std::abs(center) + 4.0 * width < c.grid.half_width())) {
    throw InvalidParameter("config: initial data must sit inside the box (|center| + 4 width < L)");
  }
  o.initial = kind == InitialProfile::Kind::gaussian ? InitialProfile::gaussian(mass, width, center)
                                                     : InitialProfile::box(mass, width, center);

  if (!c.subcritical()) {
    std::ostringstream beta;
    beta << c.spec.stability_index();
    o.warnings.push_back("supercritical: q >= beta = " + beta.str() +
                         " lies outside the regime 1 < q < beta where the N-wave is the "
                         "large-time profile");
  }
  return o;
}

RunOptions parse_config(const std::string& text) { return build_options(parse_entries(text)); }

std::string format_config(const RunOptions& o) {
  const SolverConfig& c = o.solver;
  std::ostringstream out;
  out << "q = " << format_number(c.q) << "\n";
  if (c.spec.kind == OperatorKind::dx_weyl_marchaud) {
    out << "alpha = " << format_number(c.spec.alpha) << "\n";
  } else {
    out << "beta = " << format_number(c.spec.beta) << "\n";
    out << "gamma = " << format_number(c.spec.gamma) << "\n";
  }
  out << "n = " << c.grid.size() << "\n"
      << "half_width = " << format_number(c.grid.half_width()) << "\n"
      << "dt = " << format_number(c.dt) << "\n"
      << "t_end = " << format_number(c.t_end) << "\n"
      << "scheme = " << to_string(c.scheme) << "\n"
      << "delta = " << format_number(c.delta) << "\n"
      << "epsilon = " << format_number(c.epsilon) << "\n"
      << "lambda_list = " << join(o.lambda_list) << "\n"
      << "snapshot_times = " << join(o.snapshot_times) << "\n"
      << "radius = " << format_number(o.radius) << "\n"
      << "tail_radii = " << join(o.tail_radii) << "\n"
      << "initial {\n"
      << "  kind = " << to_string(o.initial.kind) << "\n"
      << "  mass = " << format_number(o.initial.mass) << "\n"
      << "  width = " << format_number(o.initial.width) << "\n"
      << "  center = " << format_number(o.initial.center) << "\n"
      << "}\n";
  return out.str();
}

std::string format_number(double v) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << std::setprecision(17) << v;
  return out.str();
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << "\n";
  for (const auto& row : rows) {
    if (row.size() != header.size()) {
      throw std::logic_error("write_csv: row width differs from the header in " + path);
    }
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << "\n";
  }
}

}  // namespace fraclaw
