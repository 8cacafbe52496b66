#pragma once

#include <cmath>
#include <numbers>

#include <doctest.h>

#include "../support/oracles.hpp"
#include "crem/error.hpp"
#include "crem/paths.hpp"

inline constexpr double kLn2 = std::numbers::ln2;

inline crem::StepPath to_step(const oracle::Path& p) { return crem::StepPath(p.zetas, p.values); }

inline oracle::Path to_oracle(const crem::StepPath& p) {
  return {{p.zetas().begin(), p.zetas().end()}, {p.values().begin(), p.values().end()}};
}

#define CHECK_ERROR_KIND(expr, expected_kind)                       \
  do {                                                              \
    bool thrown_ = false;                                           \
    try {                                                           \
      (void)(expr);                                                 \
    } catch (const crem::Error& e_) {                               \
      thrown_ = true;                                               \
      CHECK(e_.kind() == (expected_kind));                          \
    }                                                               \
    CHECK_MESSAGE(thrown_, "expected crem::Error from " #expr);     \
  } while (0)
