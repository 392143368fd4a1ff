#include "bwembed/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "bwembed/common.hpp"

namespace bwembed {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    fail(ErrorKind::invalid_input, "config key '" + key + "' expects a number, got '" + v + "'");
  }
}

template <class Int>
Int to_int(const std::string& key, const std::string& v) {
  Int x{};
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc{} || p != v.data() + v.size())
    fail(ErrorKind::invalid_input, "config key '" + key + "' expects an integer, got '" + v + "'");
  return x;
}

using Setter = std::function<void(Config&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    auto real = [&](const char* name, double Config::*field) {
      t[name] = [field](Config& c, const std::string& k, const std::string& v) { c.*field = to_double(k, v); };
    };
    auto integer = [&](const char* name, int Config::*field) {
      t[name] = [field](Config& c, const std::string& k, const std::string& v) { c.*field = to_int<int>(k, v); };
    };
    real("lambda", &Config::lambda);
    real("xi", &Config::xi);
    real("eps_prime", &Config::eps_prime);
    real("eps", &Config::eps);
    real("d", &Config::d);
    real("d_prime", &Config::d_prime);
    real("nu", &Config::nu);
    real("tau", &Config::tau);
    real("eta", &Config::eta);
    real("tally_slack", &Config::tally_slack);
    integer("n0", &Config::n0);
    integer("k1", &Config::k1);
    integer("m1", &Config::m1);
    integer("m2", &Config::m2);
    integer("k2", &Config::k2);
    integer("max_retries", &Config::max_retries);
    integer("pair_exact_cap", &Config::pair_exact_cap);
    integer("pair_random_seeds", &Config::pair_random_seeds);
    integer("expander_exact_cap", &Config::expander_exact_cap);
    integer("embed_budget_factor", &Config::embed_budget_factor);
    t["expander_trials"] = [](Config& c, const std::string& k, const std::string& v) { c.expander_trials = to_int<std::int64_t>(k, v); };
    return t;
  }();
  return table;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

void Config::validate() const {
  auto need = [](bool ok, const std::string& what) {
    if (!ok) fail(ErrorKind::parameter, "parameter hierarchy violated: " + what);
  };
  need(n0 >= 1, "n0 >= 1");
  need(lambda > 0, "lambda > 0");
  need(lambda <= xi, "lambda <= xi");
  need(eps_prime > 0, "eps_prime > 0");
  need(eps_prime <= eps, "eps_prime <= eps");
  need(eps < 1, "eps < 1");
  need(d > 0, "d > 0");
  need(d <= d_prime, "d <= d_prime");
  need(d_prime <= 1, "d_prime <= 1");
  need(nu > 0, "nu > 0");
  need(nu <= tau, "nu <= tau");
  need(tau < eta, "tau < eta");
  need(eta < 1, "eta < 1");
  need(max_retries >= 1, "max_retries >= 1");
  need(tally_slack >= 0, "tally_slack >= 0");
  need(k1 >= 0 && m1 >= 0 && m2 >= 0 && k2 >= 0, "schedule sizes are non-negative");
  need(pair_exact_cap >= 1 && pair_exact_cap <= 24, "1 <= pair_exact_cap <= 24");
  need(expander_exact_cap >= 1 && expander_exact_cap <= 30, "1 <= expander_exact_cap <= 30");
  need(embed_budget_factor >= 1, "embed_budget_factor >= 1");
}

Config Config::parse(const std::string& text) {
  Config c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty() || line.front() == '[') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) fail(ErrorKind::invalid_input, "config line " + std::to_string(lineno) + " is not 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    auto it = setters().find(key);
    if (it == setters().end()) fail(ErrorKind::invalid_input, "config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    it->second(c, key, value);
  }
  c.validate();
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorKind::invalid_input, "cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

std::map<std::string, std::string> Config::to_map() const {
  return {{"n0", std::to_string(n0)},
          {"lambda", fmt(lambda)},
          {"xi", fmt(xi)},
          {"eps_prime", fmt(eps_prime)},
          {"eps", fmt(eps)},
          {"d", fmt(d)},
          {"d_prime", fmt(d_prime)},
          {"nu", fmt(nu)},
          {"tau", fmt(tau)},
          {"eta", fmt(eta)},
          {"tally_slack", fmt(tally_slack)},
          {"k1", std::to_string(k1)},
          {"m1", std::to_string(m1)},
          {"m2", std::to_string(m2)},
          {"k2", std::to_string(k2)},
          {"max_retries", std::to_string(max_retries)},
          {"pair_exact_cap", std::to_string(pair_exact_cap)},
          {"pair_random_seeds", std::to_string(pair_random_seeds)},
          {"expander_exact_cap", std::to_string(expander_exact_cap)},
          {"expander_trials", std::to_string(expander_trials)},
          {"embed_budget_factor", std::to_string(embed_budget_factor)}};
}

}  // namespace bwembed
