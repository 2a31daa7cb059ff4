// Copyright 2026 The qbbt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Swap Test round counts that bound the type II error of a whole check.
//
// With q = 1 - (1 - alpha2)^(1/k) the per-point failure budget:
//   EQ: s >= (8 / eps^2) ln(2 / q)
//   UN: s >= (2 / eps^2) log2(1 / q)

#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "qbbt/errors.hpp"

namespace qbbt {

enum class Task { EQ, ID, UN };

inline std::string_view task_name(Task t) {
  switch (t) {
    case Task::EQ: return "EQ";
    case Task::ID: return "ID";
    case Task::UN: return "UN";
  }
  return "?";
}

inline Task parse_task(std::string_view s) {
  if (s == "EQ" || s == "eq") return Task::EQ;
  if (s == "ID" || s == "id") return Task::ID;
  if (s == "UN" || s == "un") return Task::UN;
  throw DomainError("unknown task '" + std::string(s) + "'");
}

struct RoundBudget {
  std::uint64_t s;
  Task task;
  int k;
  double epsilon;
  double alpha2;
};

inline constexpr double kRoundingSnap = 1e-9;

namespace detail {

inline void check_budget_domain(int k, int min_k, double epsilon, double alpha2) {
  if (k < min_k) throw DomainError("round budget: k must be at least " + std::to_string(min_k));
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("round budget: epsilon must lie in (0, 1)");
  if (!(alpha2 > 0.0 && alpha2 < 1.0)) throw DomainError("round budget: alpha2 must lie in (0, 1)");
}

/// 1 - (1 - alpha2)^(1/k) without cancellation.
inline double per_point_budget(int k, double alpha2) {
  return -std::expm1(std::log1p(-alpha2) / static_cast<double>(k));
}

inline std::uint64_t snapped_ceil(double x) {
  const double r = std::round(x);
  const double v = std::abs(x - r) < kRoundingSnap ? r : std::ceil(x);
  return v < 1.0 ? 1 : static_cast<std::uint64_t>(v);
}

}  // namespace detail

inline double eq_round_bound(int k, double epsilon, double alpha2) {
  detail::check_budget_domain(k, 1, epsilon, alpha2);
  return 8.0 / (epsilon * epsilon) * std::log(2.0 / detail::per_point_budget(k, alpha2));
}

inline double un_round_bound(int k, double epsilon, double alpha2) {
  detail::check_budget_domain(k, 2, epsilon, alpha2);
  return 2.0 / (epsilon * epsilon) * std::log2(1.0 / detail::per_point_budget(k, alpha2));
}

inline std::uint64_t eq_min_rounds(int k, double epsilon, double alpha2) {
  return detail::snapped_ceil(eq_round_bound(k, epsilon, alpha2));
}

inline std::uint64_t un_min_rounds(int k, double epsilon, double alpha2) {
  return detail::snapped_ceil(un_round_bound(k, epsilon, alpha2));
}

inline RoundBudget min_rounds(Task task, int k, double epsilon, double alpha2) {
  switch (task) {
    case Task::EQ: return {eq_min_rounds(k, epsilon, alpha2), task, k, epsilon, alpha2};
    case Task::UN: return {un_min_rounds(k, epsilon, alpha2), task, k, epsilon, alpha2};
    case Task::ID: break;
  }
  throw DomainError("round budget: identity checks run no Swap Test");
}

/// (k / -ln(1 - alpha2), k / alpha2), which brackets 1 / (1 - (1 - alpha2)^(1/k)).
inline std::pair<double, double> budget_bounds(int k, double alpha2) {
  if (k < 1) throw DomainError("budget_bounds: k must be at least 1");
  if (!(alpha2 > 0.0 && alpha2 < 1.0)) throw DomainError("budget_bounds: alpha2 must lie in (0, 1)");
  return {static_cast<double>(k) / -std::log1p(-alpha2), static_cast<double>(k) / alpha2};
}

/// The exact quantity bracketed by budget_bounds.
inline double inverse_point_budget(int k, double alpha2) {
  return 1.0 / detail::per_point_budget(k, alpha2);
}

}  // namespace qbbt
