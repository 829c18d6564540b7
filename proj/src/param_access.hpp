#pragma once

// Typed access to ParamMap entries, shared by the check engine and the CLI.

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "conefourier/multivariate.hpp"
#include "conefourier/verify.hpp"

namespace conefourier::detail {

inline void require_keys(const std::string& owner, const ParamMap& p, const std::vector<std::string>& required,
                         const std::vector<std::string>& optional) {
  for (const auto& r : required) {
    if (!p.contains(r)) throw ParameterError(owner + ": missing parameter '" + r + "'");
  }
  for (const auto& [name, v] : p) {
    const bool known = std::find(required.begin(), required.end(), name) != required.end() ||
                       std::find(optional.begin(), optional.end(), name) != optional.end();
    if (!known) throw ParameterError(owner + ": unknown parameter '" + name + "'");
    if (v.empty()) throw ParameterError(owner + ": parameter '" + name + "' has no value");
    for (double x : v) {
      if (!std::isfinite(x)) throw ParameterError(owner + ": parameter '" + name + "' is not finite");
    }
  }
}

inline const std::vector<double>& lookup(const ParamMap& p, const std::string& key) {
  const auto it = p.find(key);
  if (it == p.end()) throw ParameterError("missing parameter '" + key + "'");
  return it->second;
}

inline double scalar(const ParamMap& p, const std::string& key) {
  const auto& v = lookup(p, key);
  if (v.size() != 1) throw ParameterError("parameter '" + key + "' must be a single number");
  return v[0];
}

inline double scalar_or(const ParamMap& p, const std::string& key, double fallback) {
  return p.contains(key) ? scalar(p, key) : fallback;
}

inline int integer(double v, const std::string& key) {
  if (v != std::round(v) || std::abs(v) > 1e6) throw ParameterError("parameter '" + key + "' must be an integer");
  return static_cast<int>(v);
}

inline int integer(const ParamMap& p, const std::string& key) { return integer(scalar(p, key), key); }

inline MultiIndex multi_index(const ParamMap& p, const std::string& key) {
  std::vector<int> k;
  for (double v : lookup(p, key)) {
    const int c = integer(v, key);
    if (c < 0) throw DomainError("multi-index '" + key + "' must have nonnegative components");
    k.push_back(c);
  }
  MultiIndex mi(k);
  if (p.contains("d") && integer(p, "d") != mi.dim()) {
    throw ParameterError("parameter 'd' does not match the length of '" + key + "'");
  }
  return mi;
}

inline std::vector<double> vec(const ParamMap& p, const std::string& key, std::size_t size) {
  const auto& v = lookup(p, key);
  if (v.size() != size) {
    std::ostringstream os;
    os << "parameter '" << key << "' must have " << size << " components";
    throw ParameterError(os.str());
  }
  return v;
}

inline std::vector<double> vec_or_zero(const ParamMap& p, const std::string& key, std::size_t size) {
  return p.contains(key) ? vec(p, key, size) : std::vector<double>(size, 0.0);
}

}  // namespace conefourier::detail
