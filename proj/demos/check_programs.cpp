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


// Runs the three checkers on a few small programs and prints the verdicts next
// to the exact oracle's answer.

#include <cstdio>
#include <string>

#include "qbbt/qbbt.hpp"

namespace {

using namespace qbbt;

void show(const char* what, const Verdict& v, bool truth) {
  std::printf("  %-34s %s  (oracle: %s, shots %llu", what, std::string(outcome_name(v.outcome)).c_str(),
              truth ? "PASS" : "FAIL", static_cast<unsigned long long>(v.stats.shots));
  if (v.failing_point)
    std::printf(", point %d by %s", v.failing_point->point_index,
                std::string(rule_name(v.failing_point->rule)).c_str());
  std::printf(")\n");
}

}  // namespace

int main() {
  CheckConfig cfg;
  cfg.k = 4;
  cfg.epsilon = 0.15;
  cfg.seed = 2024;

  const Program a = programs::cir1a(), b = programs::cir1b();
  const Program bad = ProgramBuilder("Cir1B+T", 2).cx(1, 0).t(0).build();
  cfg.s = eq_min_rounds(cfg.k, cfg.epsilon, 0.1);
  std::printf("equivalence (s=%llu, t=%llu)\n", static_cast<unsigned long long>(cfg.s),
              static_cast<unsigned long long>(cfg.t));
  show("Cir1A vs Cir1B, original", eq_check_original(2, cfg, a, b), exact_equivalent(a, b));
  show("Cir1A vs Cir1B, optimized", eq_check_optimized(2, cfg, a, b), exact_equivalent(a, b));
  show("Cir1A vs Cir1B+T, original", eq_check_original(2, cfg, a, bad), exact_equivalent(a, bad));
  show("Cir1A vs Cir1B+T, optimized", eq_check_optimized(2, cfg, a, bad), exact_equivalent(a, bad));

  std::printf("identity (k=20)\n");
  const Program tele = programs::teleport_aba();
  const Program s_gate = ProgramBuilder("S", 1).s(0).build();
  show("TeleportABA", id_check(1, 20, tele, cfg.seed), exact_equivalent(tele, Program::empty(1)));
  show("S", id_check(1, 20, s_gate, cfg.seed), exact_equivalent(s_gate, Program::empty(1)));

  cfg.s = un_min_rounds(cfg.k, cfg.epsilon, 0.1);
  std::printf("unitarity (s=%llu)\n", static_cast<unsigned long long>(cfg.s));
  const Program qft = programs::qft(3), reset = programs::reset(2);
  show("QFT(3), optimized", un_check_optimized(3, cfg, qft), exact_unitary(qft));
  show("Reset(2), original", un_check_original(2, cfg, reset), exact_unitary(reset));
  show("Reset(2), optimized", un_check_optimized(2, cfg, reset), exact_unitary(reset));
}
