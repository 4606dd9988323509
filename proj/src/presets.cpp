#include "unimodal/presets.hpp"

namespace unimodal {

namespace {

std::vector<long> fibonacci_S(long limit) {
  std::vector<long> S{1, 2};
  while (S.back() + S[S.size() - 2] <= limit) S.push_back(S.back() + S[S.size() - 2]);
  return S;
}

std::vector<long> doubling_S(long limit) {
  std::vector<long> S{1};
  while (2 * S.back() <= limit) S.push_back(2 * S.back());
  return S;
}

std::vector<long> wild_S(long limit) {
  std::vector<long> S = wild_cutting_times(wild_combinatorics(40));
  while (S.back() > limit) S.pop_back();
  return S;
}

// Witnesses from parameter_bisection at ell = 2: the upper end of the final
// bracket, an exact binary fraction.
constexpr const char* kFibonacciWitness = "0xf.a64e0537d8d5279e0ac971da37128624c65d8b0f6100c59ada38416fd6863a1d114p-4";
constexpr const char* kFeigenbaumWitness = "0xe.479fd694bcp-4";
constexpr const char* kWildWitness = "0xf.a910231277ede9fd5cfd5b015788b0de2a7cd0a2d06c5089577140763622a87f3cc0c7c90fade8f774b731160caa6e79a841f6b92d69769e815bb3d98507be73ff9abf2d1909513be3b6ee00fc30671f6d91741bc024feda29b11d72911827f8eba31f0ca769a789e88816691abp-4";

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"fibonacci", "feigenbaum", "wild", "chebyshev"};
  return names;
}

Preset preset(const std::string& name) {
  if (name == "fibonacci")
    return {name, {kFibonacciWitness, 2.0}, fibonacci_S(514229), {512, 4096},
            "cutting times 1, 2, 3, 5, 8, ... (Q(k) = k - 2)"};
  if (name == "feigenbaum")
    return {name, {kFeigenbaumWitness, 2.0}, doubling_S(524288), {64, 4096},
            "cutting times 2^k, period-doubling limit"};
  if (name == "wild")
    return {name, {kWildWitness, 2.0}, wild_S(590490), {1024, 8192},
            "cutting times 1, 2, 3, 5, 8, 10, 15, 25, 30, ... from r_0 = 3, t_0 = 2"};
  if (name == "chebyshev") return {name, {"1", 2.0}, {}, {64, 4096}, "full map a = 1"};
  throw Error(ErrorKind::config, "unknown preset '" + name + "'");
}

bool verify_preset(const Preset& p) {
  if (p.target_S.empty()) return true;
  Word target = symbols_from_cutting_times(p.target_S);
  try {
    return compare_to_target(p.map, target, p.precision) == 0;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::precision_exhausted || e.kind() == ErrorKind::superattracting) return false;
    throw;
  }
}

ParameterEnclosure recompute_preset(const Preset& p, int max_steps) {
  if (p.target_S.empty()) throw Error(ErrorKind::invalid_argument, "preset " + p.name + " has no target");
  BisectionOptions opts;
  opts.precision = p.precision;
  opts.max_steps = max_steps;
  return parameter_bisection(p.map.ell, BisectionTarget::from_S(p.target_S), 1e-10, opts);
}

}  // namespace unimodal
