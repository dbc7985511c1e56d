#include "dyadic/io.hpp"

#include "dyadic/errors.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace dyadic {

namespace {

template <class Fn>
auto guarded(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

std::string full_precision(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Json to_json(const DyadicInterval& interval) { return {{"j", interval.level}, {"k", interval.position}}; }

Json to_json(const HaarExpansion& f) {
  Json coeffs = Json::array();
  for (const auto& [key, c] : f) coeffs.push_back({{"j", key.level}, {"k", key.position}, {"c", c}});
  return {{"coeffs", coeffs}};
}

Json to_json(const Multiplier& m) {
  Json base = Json::array();
  for (const auto& [k, v] : m.base()) base.push_back({{"k", k}, {"v", v}});
  return {{"base", base}, {"default", m.default_value()}};
}

Json to_json(const GradientField& g) {
  Json comps = Json::array();
  for (const auto& [i, f] : g.components) comps.push_back({{"i", i}, {"expansion", to_json(f)}});
  return {{"components", comps}};
}

Json to_json(const EnergyReport& r) {
  return {{"s", r.s}, {"integral", r.integral}, {"spectral", r.spectral}, {"gradient", r.gradient}, {"c", r.constant}};
}

Json to_json(const CzReport& r) {
  return {{"c0_witness", r.c0_witness},
          {"max_delta_knorm", r.max_delta_knorm},
          {"regularity_violations", r.regularity_violations},
          {"trials", r.trials},
          {"seed", r.seed},
          {"size_violations", r.size_violations},
          {"regularity_checks", r.regularity_checks},
          {"c1", r.c1},
          {"worst_pair", {r.worst_x, r.worst_y}},
          {"passed", r.passed()}};
}

Json to_json(const SweepReport& r) {
  Json per_p = Json::array();
  for (const auto& e : r.per_p) {
    per_p.push_back({{"p", e.p},
                     {"max_ratio", e.max_ratio},
                     {"min_ratio", e.min_ratio},
                     {"mean_ratio", e.mean_ratio},
                     {"argmax_index", e.argmax_index}});
  }
  return {{"s", r.s}, {"trials", r.trials}, {"seed", r.seed}, {"per_p", per_p}};
}

Json to_json(const SuiteReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"worst", c.worst}, {"detail", c.detail}});
  }
  return {{"suite", r.suite}, {"passed", r.passed()}, {"seconds", r.seconds}, {"checks", checks}};
}

Json to_json(const KernelVector& k) {
  Json entries = Json::array();
  for (const auto& [i, v] : k.entries) entries.push_back({{"i", i}, {"value", v.str()}, {"approx", v.to_double()}});
  return {{"delta", k.delta_xy.str()},
          {"entries", entries},
          {"norm_squared", k.norm_squared().str()},
          {"norm", k.norm()}};
}

Json to_json(const PairingResult& r) { return {{"lhs", r.lhs}, {"rhs", r.rhs}, {"abs_diff", std::abs(r.lhs - r.rhs)}}; }

namespace {

std::uint64_t as_index(const Json& v, const char* what) {
  if (!v.is_number_unsigned()) throw ParseError(std::string(what) + " must be a nonnegative integer");
  return v.get<std::uint64_t>();
}

double as_real(const Json& v, const char* what) {
  if (!v.is_number()) throw ParseError(std::string(what) + " must be a number");
  return v.get<double>();
}

}  // namespace

DyadicInterval interval_from_json(const Json& j) {
  return guarded("interval", [&] {
    if (!j.at("j").is_number_integer()) throw ParseError("level j must be an integer");
    return DyadicInterval{j.at("j").get<std::int64_t>(), as_index(j.at("k"), "position k")};
  });
}

HaarExpansion expansion_from_json(const Json& j) {
  return guarded("HaarExpansion", [&] {
    HaarExpansion f;
    std::set<DyadicInterval> seen;
    for (const auto& entry : j.at("coeffs")) {
      const auto key = interval_from_json(entry);
      if (!seen.insert(key).second) throw ParseError("duplicate Haar key in expansion");
      f.set(key, as_real(entry.at("c"), "coefficient c"));
    }
    return f;
  });
}

Multiplier multiplier_from_json(const Json& j) {
  return guarded("Multiplier", [&] {
    std::map<std::uint64_t, double> base;
    for (const auto& entry : j.at("base")) {
      const auto k = as_index(entry.at("k"), "position k");
      if (base.contains(k)) throw ParseError("duplicate multiplier position");
      base[k] = as_real(entry.at("v"), "value v");
    }
    return Multiplier(std::move(base), j.contains("default") ? as_real(j.at("default"), "default") : 0.0);
  });
}

GradientField gradient_from_json(const Json& j) {
  return guarded("GradientField", [&] {
    GradientField g;
    for (const auto& entry : j.at("components")) {
      g.components[as_index(entry.at("i"), "component i")] = expansion_from_json(entry.at("expansion"));
    }
    return g;
  });
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_csv(std::ostream& os, const StepFunction& g) {
  os << "j=" << g.grid_level << ",M=" << g.window << '\n';
  for (const double v : g.values) os << full_precision(v) << '\n';
}

StepFunction read_csv(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw ParseError("empty step function CSV");
  long long level = 0;
  long long window = 0;
  if (std::sscanf(header.c_str(), "j=%lld,M=%lld", &level, &window) != 2) {
    throw ParseError("step function CSV header must read j=J,M=M");
  }
  StepFunction g(level, window);
  std::string line;
  std::size_t n = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (n >= g.values.size()) throw ParseError("step function CSV has too many values");
    try {
      std::size_t used = 0;
      g.values[n] = std::stod(line, &used);
      if (used != line.size() && line.find_first_not_of(" \r\t", used) != std::string::npos) throw ParseError("");
    } catch (const std::exception&) {
      throw ParseError("bad step function value: '" + line + "'");
    }
    ++n;
  }
  if (n != g.values.size()) throw ParseError("step function CSV has " + std::to_string(n) + " values, expected " +
                                             std::to_string(g.values.size()));
  return g;
}

void write_csv(std::ostream& os, const SweepReport& r) {
  os << "s,p,trials,seed,max_ratio,min_ratio,mean_ratio,argmax_index\n";
  for (const auto& e : r.per_p) {
    os << full_precision(r.s) << ',' << full_precision(e.p) << ',' << r.trials << ',' << r.seed << ','
       << full_precision(e.max_ratio) << ',' << full_precision(e.min_ratio) << ',' << full_precision(e.mean_ratio)
       << ',' << e.argmax_index << '\n';
  }
}

}  // namespace dyadic
