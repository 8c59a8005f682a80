#pragma once

#include <cstdint>
#include <string>

namespace exoform {

// Zero-testing on the transcendental part of the expression class is
// probabilistic, so every downstream answer (closure, relation kind,
// equilibrium) carries a confidence tag instead of silently guessing.
enum class Certainty : std::uint8_t { exact, probable };

enum class ZeroState : std::uint8_t { zero, nonzero, indeterminate };

struct ZeroVerdict {
  ZeroState state = ZeroState::indeterminate;
  // Meaningful for zero/nonzero. A nonzero verdict is always exact: it is
  // witnessed either symbolically or by a finite nonzero sample value.
  Certainty certainty = Certainty::exact;

  bool is_zero_exact() const {
    return state == ZeroState::zero && certainty == Certainty::exact;
  }
  bool is_zero() const { return state == ZeroState::zero; }
  bool is_nonzero() const { return state == ZeroState::nonzero; }
  bool is_indeterminate() const { return state == ZeroState::indeterminate; }

  static ZeroVerdict exact_zero() { return {ZeroState::zero, Certainty::exact}; }
  static ZeroVerdict probable_zero() { return {ZeroState::zero, Certainty::probable}; }
  static ZeroVerdict nonzero() { return {ZeroState::nonzero, Certainty::exact}; }
  static ZeroVerdict indeterminate() { return {ZeroState::indeterminate, Certainty::probable}; }
};

// Conjunction for "all of these vanish" checks (closure of a whole
// coefficient table). Any nonzero coefficient decides the question; an
// indeterminate one poisons a zero answer; probable weakens exact.
inline ZeroVerdict combine_all_zero(ZeroVerdict acc, ZeroVerdict next) {
  if (acc.state == ZeroState::nonzero || next.state == ZeroState::nonzero)
    return ZeroVerdict::nonzero();
  if (acc.state == ZeroState::indeterminate || next.state == ZeroState::indeterminate)
    return ZeroVerdict::indeterminate();
  Certainty c = (acc.certainty == Certainty::exact && next.certainty == Certainty::exact)
                    ? Certainty::exact
                    : Certainty::probable;
  return {ZeroState::zero, c};
}

inline const char* to_string(Certainty c) {
  return c == Certainty::exact ? "exact" : "probable";
}

inline std::string confidence_label(const ZeroVerdict& v) {
  if (v.state == ZeroState::indeterminate) return "indeterminate";
  return to_string(v.certainty);
}

// Options for the sampling side of is_zero. The seed is part of the input:
// identical expressions and seeds sample identical points, which keeps
// probable verdicts (and whole CLI reports) reproducible.
struct ZeroTestOptions {
  std::uint64_t seed = 0x45584FULL;  // default sampler seed
  int samples = 32;                  // required count of valid sample points
};

}  // namespace exoform
