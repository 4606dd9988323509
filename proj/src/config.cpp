#include "unimodal/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "unimodal/errors.hpp"

namespace unimodal {

namespace {

[[noreturn]] void bad(const std::string& key, const std::string& what) {
  throw Error(ErrorKind::config, "config key '" + key + "': " + what);
}

long to_long(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  long x = std::strtol(v.c_str(), &end, 10);
  if (v.empty() || *end != '\0' || errno != 0) bad(key, "expected an integer, got '" + v + "'");
  return x;
}

double to_double(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  double x = std::strtod(v.c_str(), &end);
  if (v.empty() || *end != '\0' || errno != 0 || !std::isfinite(x)) bad(key, "expected a number, got '" + v + "'");
  return x;
}

std::vector<long> to_list(const std::string& key, const std::string& v) {
  std::istringstream is(v);
  std::vector<long> out;
  std::string tok;
  while (is >> tok) out.push_back(to_long(key, tok));
  return out;
}

std::string hex(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", x);
  return buf;
}

std::string join(const std::vector<long>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? " " : "") + std::to_string(xs[i]);
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Field {
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, const std::string&, const std::string&)> set;
};

// Serialization order is the order of this table.
const std::vector<std::pair<std::string, Field>>& fields() {
  static const std::vector<std::pair<std::string, Field>> table = [] {
    std::vector<std::pair<std::string, Field>> t;
    auto str = [&](const char* k, std::string RunConfig::*m) {
      t.push_back({k, {[m](const RunConfig& c) { return c.*m; },
                       [m](RunConfig& c, const std::string&, const std::string& v) { c.*m = v; }}});
    };
    auto num = [&](const char* k, long RunConfig::*m) {
      t.push_back({k, {[m](const RunConfig& c) { return std::to_string(c.*m); },
                       [m](RunConfig& c, const std::string& key, const std::string& v) { c.*m = to_long(key, v); }}});
    };
    auto real = [&](const char* k, double RunConfig::*m) {
      t.push_back({k, {[m](const RunConfig& c) { return hex(c.*m); },
                       [m](RunConfig& c, const std::string& key, const std::string& v) { c.*m = to_double(key, v); }}});
    };
    auto list = [&](const char* k, std::vector<long> RunConfig::*m) {
      t.push_back({k, {[m](const RunConfig& c) { return join(c.*m); },
                       [m](RunConfig& c, const std::string& key, const std::string& v) { c.*m = to_list(key, v); }}});
    };
    str("command", &RunConfig::command);
    str("param", &RunConfig::param);
    real("ell", &RunConfig::ell);
    str("preset", &RunConfig::preset);
    str("cover", &RunConfig::cover);
    num("cutting_times", &RunConfig::cutting_times);
    num("n_max", &RunConfig::n_max);
    num("n_orbit", &RunConfig::n_orbit);
    num("budget_iterate", &RunConfig::budget_iterate);
    num("budget_transition", &RunConfig::budget_transition);
    num("budget_branch", &RunConfig::budget_branch);
    num("precision_start", &RunConfig::precision_start);
    num("precision_max", &RunConfig::precision_max);
    num("depth", &RunConfig::depth);
    real("tol", &RunConfig::tol);
    num("r0", &RunConfig::r0);
    num("t0", &RunConfig::t0);
    t.push_back({"bisect", {[](const RunConfig& c) { return std::string(c.bisect ? "true" : "false"); },
                            [](RunConfig& c, const std::string& key, const std::string& v) {
                              if (v == "true") c.bisect = true;
                              else if (v == "false") c.bisect = false;
                              else bad(key, "expected true or false");
                            }}});
    list("target_S", &RunConfig::target_S);
    list("alpha", &RunConfig::alpha);
    str("out", &RunConfig::out);
    return t;
  }();
  return table;
}

}  // namespace

void RunConfig::validate() const {
  static const char* commands[] = {"kneading", "complexity", "wild-verify", "odometer", "bisect", "nest"};
  if (std::find(std::begin(commands), std::end(commands), command) == std::end(commands))
    bad("command", "unknown command '" + command + "'");
  if (!(ell > 1)) bad("ell", "must exceed 1");
  auto positive = [](const char* key, long v) {
    if (v <= 0) bad(key, "must be positive");
  };
  positive("cutting_times", cutting_times);
  positive("n_max", n_max);
  positive("n_orbit", n_orbit);
  positive("budget_iterate", budget_iterate);
  positive("budget_transition", budget_transition);
  positive("budget_branch", budget_branch);
  positive("precision_start", precision_start);
  positive("precision_max", precision_max);
  positive("depth", depth);
  positive("r0", r0);
  positive("t0", t0);
  if (precision_start > precision_max) bad("precision_start", "exceeds precision_max");
  if (!(tol > 0)) bad("tol", "must be positive");
  for (long p : alpha)
    if (p < 2) bad("alpha", "every entry must be at least 2");
  if (cover != "seed" && cover.rfind("nest:", 0) != 0 && cover.rfind("renorm:", 0) != 0)
    bad("cover", "expected seed, nest:<k> or renorm:<k>");
}

std::string RunConfig::serialize() const {
  std::string out;
  for (const auto& [key, f] : fields()) out += key + " = " + f.get(*this) + "\n";
  return out;
}

RunConfig RunConfig::parse(const std::string& text) {
  RunConfig c;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::config, "config line " + std::to_string(lineno) + " has no '='");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    auto it = std::find_if(fields().begin(), fields().end(), [&](const auto& kv) { return kv.first == key; });
    if (it == fields().end()) throw Error(ErrorKind::config, "unknown config key '" + key + "'");
    it->second.set(c, key, value);
  }
  return c;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::config, "cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

}  // namespace unimodal
