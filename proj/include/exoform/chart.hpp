#pragma once

#include <memory>
#include <string>
#include <vector>

#include "exoform/error.hpp"

namespace exoform {

// A coordinate chart: an ordered list of variable names. Desk-scale bound of
// eight dimensions for user charts; induced charts of pseudostructures may be
// smaller, down to zero-dimensional.
class Chart {
 public:
  static constexpr int max_dimension = 8;

  explicit Chart(std::vector<std::string> names) : names_(std::move(names)) {
    if (static_cast<int>(names_.size()) > max_dimension)
      throw Error(ErrorKind::dimension, "chart dimension exceeds " +
                                            std::to_string(max_dimension));
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i].empty())
        throw Error(ErrorKind::dimension, "empty chart variable name");
      for (std::size_t j = i + 1; j < names_.size(); ++j)
        if (names_[i] == names_[j])
          throw Error(ErrorKind::dimension,
                      "duplicate chart variable '" + names_[i] + "'");
    }
    // A name of the shape d<var> would collide with the differential tokens
    // of the DSL, so reject it up front.
    for (const auto& n : names_)
      for (const auto& m : names_)
        if (n == "d" + m)
          throw Error(ErrorKind::dimension,
                      "chart variable '" + n + "' collides with differential d" + m);
  }

  int dimension() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int i) const { return names_.at(static_cast<std::size_t>(i)); }

  // Index of a named variable, or -1.
  int index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return static_cast<int>(i);
    return -1;
  }

  bool operator==(const Chart& other) const { return names_ == other.names_; }
  bool operator!=(const Chart& other) const { return !(*this == other); }

 private:
  std::vector<std::string> names_;
};

using ChartPtr = std::shared_ptr<const Chart>;

inline ChartPtr make_chart(std::vector<std::string> names) {
  auto chart = std::make_shared<Chart>(std::move(names));
  if (chart->dimension() < 1)
    throw Error(ErrorKind::dimension, "chart must have at least one variable");
  return chart;
}

// Charts compare structurally: forms built on equal charts interoperate.
inline bool same_chart(const ChartPtr& a, const ChartPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

inline void require_same_chart(const ChartPtr& a, const ChartPtr& b,
                               const char* what) {
  if (!same_chart(a, b))
    throw Error(ErrorKind::chart, std::string("chart mismatch in ") + what);
}

}  // namespace exoform
