// Independent oracles for the derived expectations. Everything here
// re-derives values straight from definitions — numeric tree evaluation,
// central finite differences, and a from-scratch assembly of the deformed
// differential — sharing no code with the engine's polynomial pipeline.
#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "exoform/form.hpp"
#include "exoform/geometry.hpp"

namespace oracle {

using exoform::Connection;
using exoform::Expr;
using exoform::Form;
using exoform::NodeKind;

using Params = std::map<std::string, double>;

inline double eval(const Expr& e, const std::vector<double>& point, const Params& params = {}) {
  switch (e.kind()) {
    case NodeKind::constant:
      return exoform::to_double(e.constant_value());
    case NodeKind::variable:
      return point.at(static_cast<std::size_t>(e.variable_index()));
    case NodeKind::parameter:
      return params.at(e.parameter_name());
    case NodeKind::sum: {
      double acc = 0;
      for (const Expr& child : e.children()) acc += eval(child, point, params);
      return acc;
    }
    case NodeKind::product: {
      double acc = 1;
      for (const Expr& child : e.children()) acc *= eval(child, point, params);
      return acc;
    }
    case NodeKind::power:
      return std::pow(eval(e.children().front(), point, params),
                      static_cast<double>(e.exponent()));
    case NodeKind::negate:
      return -eval(e.children().front(), point, params);
    case NodeKind::call: {
      double arg = eval(e.children().front(), point, params);
      switch (e.call_function()) {
        case exoform::Func::sin: return std::sin(arg);
        case exoform::Func::cos: return std::cos(arg);
        case exoform::Func::exp: return std::exp(arg);
        case exoform::Func::log: return std::log(arg);
      }
      return NAN;
    }
  }
  return NAN;
}

// Central finite difference of e with respect to variable `var`.
inline double fd_partial(const Expr& e, std::vector<double> point, int var,
                         const Params& params = {}) {
  const double h = 1e-5 * std::max(1.0, std::fabs(point[static_cast<std::size_t>(var)]));
  point[static_cast<std::size_t>(var)] += h;
  double hi = eval(e, point, params);
  point[static_cast<std::size_t>(var)] -= 2 * h;
  double lo = eval(e, point, params);
  return (hi - lo) / (2 * h);
}

// Insertion sort with swap parity; nullopt on a repeated index.
inline std::optional<std::pair<std::vector<int>, int>> sort_index(std::vector<int> idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t j = i; j > 0 && idx[j] <= idx[j - 1]; --j) {
      if (idx[j] == idx[j - 1]) return std::nullopt;
      std::swap(idx[j], idx[j - 1]);
      sign = -sign;
    }
  return std::make_pair(std::move(idx), sign);
}

// Numeric value table of a form at a point: sorted index -> coefficient value.
inline std::map<std::vector<int>, double> values(const Form& f, const std::vector<double>& point,
                                                 const Params& params = {}) {
  std::map<std::vector<int>, double> out;
  for (const auto& [index, coeff] : f.terms()) out[index.indices()] = eval(coeff, point, params);
  return out;
}

// Deformed differential assembled from the definition: the flat part by
// finite differences, the deformation by the graded Leibniz expansion of
// d(dx^I) with torsion values T^s_ab = G[s][b][a] - G[s][a][b].
inline std::map<std::vector<int>, double> evolutionary_values(const Form& f,
                                                              const Connection& connection,
                                                              const std::vector<double>& point,
                                                              const Params& params = {}) {
  const int n = f.dimension();
  std::map<std::vector<int>, double> out;
  auto put = [&](const std::vector<int>& raw, double value) {
    if (value == 0) return;
    auto sorted = sort_index(raw);
    if (!sorted) return;
    out[sorted->first] += sorted->second * value;
  };

  for (const auto& [index, coeff] : f.terms()) {
    // flat part: sum_v (d coeff / d x_v) dx^v ^ dx^I
    for (int v = 0; v < n; ++v) {
      std::vector<int> raw{v};
      raw.insert(raw.end(), index.indices().begin(), index.indices().end());
      put(raw, fd_partial(coeff, point, v, params));
    }
    // deformation: a_I * sum_pos (-1)^pos sum_{a<b} T^{i_pos}_ab dx^a ^ dx^b ^ dx^{I\pos}
    const double a_val = eval(coeff, point, params);
    const auto& idx = index.indices();
    for (std::size_t pos = 0; pos < idx.size(); ++pos) {
      const int sigma = idx[pos];
      const int leibniz = pos % 2 == 0 ? 1 : -1;
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
          double torsion = eval(connection.gamma(sigma, b, a), point, params) -
                           eval(connection.gamma(sigma, a, b), point, params);
          if (torsion == 0) continue;
          std::vector<int> raw{a, b};
          for (std::size_t k = 0; k < idx.size(); ++k)
            if (k != pos) raw.push_back(idx[k]);
          put(raw, leibniz * a_val * torsion);
        }
    }
  }
  return out;
}

inline bool close(double a, double b, double tolerance = 1e-6) {
  return std::fabs(a - b) <= tolerance * std::max({1.0, std::fabs(a), std::fabs(b)});
}

inline bool tables_match(const std::map<std::vector<int>, double>& a,
                         const std::map<std::vector<int>, double>& b,
                         double tolerance = 1e-6) {
  for (const auto& [idx, value] : a) {
    auto it = b.find(idx);
    if (!close(value, it == b.end() ? 0.0 : it->second, tolerance)) return false;
  }
  for (const auto& [idx, value] : b) {
    auto it = a.find(idx);
    if (!close(it == a.end() ? 0.0 : it->second, value, tolerance)) return false;
  }
  return true;
}

}  // namespace oracle
