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

// Program <-> JSON:
//   {"name", "n_qubits", "n_ancilla",
//    "instructions": [{"kind", "gate", "params", "targets", "controls", "slot", "cond"}]}
// kind is one of "gate", "measure", "reset", "cond". Doubles are written in
// shortest round-trip form, so reading back reproduces every bit.

#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "qbbt/circuit.hpp"

namespace qbbt {

using Json = nlohmann::json;

namespace detail {

inline Json gate_json(const GateOp& g) {
  return Json{{"gate", gate_name(g.gate)}, {"params", g.params}, {"targets", g.targets},
              {"controls", g.controls}};
}

inline GateOp gate_from_json(const Json& j) {
  GateOp g;
  g.gate = parse_gate(j.at("gate").get<std::string>());
  g.params = j.value("params", std::vector<double>{});
  g.targets = j.at("targets").get<std::vector<int>>();
  g.controls = j.value("controls", std::vector<int>{});
  return g;
}

}  // namespace detail

inline Json to_json(const Program& p) {
  Json ins = Json::array();
  for (const auto& i : p.instructions()) {
    std::visit(
        [&](const auto& op) {
          using T = std::decay_t<decltype(op)>;
          if constexpr (std::is_same_v<T, GateOp>) {
            Json j = detail::gate_json(op);
            j["kind"] = "gate";
            ins.push_back(std::move(j));
          } else if constexpr (std::is_same_v<T, MeasureOp>) {
            ins.push_back(Json{{"kind", "measure"}, {"targets", op.targets}, {"slot", op.slot}});
          } else if constexpr (std::is_same_v<T, ResetOp>) {
            ins.push_back(Json{{"kind", "reset"}, {"targets", op.targets}});
          } else {
            Json j = detail::gate_json(op.inner);
            j["kind"] = "cond";
            j["slot"] = op.slot;
            j["cond"] = op.value;
            ins.push_back(std::move(j));
          }
        },
        i);
  }
  return Json{{"name", p.name()},
              {"n_qubits", p.n_qubits()},
              {"n_ancilla", p.n_ancilla()},
              {"instructions", std::move(ins)}};
}

inline Program program_from_json(const Json& j) {
  try {
    std::vector<Instruction> ops;
    for (const auto& i : j.at("instructions")) {
      const auto kind = i.at("kind").get<std::string>();
      if (kind == "gate") {
        ops.emplace_back(detail::gate_from_json(i));
      } else if (kind == "measure") {
        ops.emplace_back(MeasureOp{i.at("targets").get<std::vector<int>>(), i.at("slot").get<int>()});
      } else if (kind == "reset") {
        ops.emplace_back(ResetOp{i.at("targets").get<std::vector<int>>()});
      } else if (kind == "cond") {
        ops.emplace_back(ConditionalOp{i.at("slot").get<int>(), i.at("cond").get<std::uint64_t>(),
                                       detail::gate_from_json(i)});
      } else {
        throw FormatError("unknown instruction kind '" + kind + "'");
      }
    }
    return Program(j.at("name").get<std::string>(), j.at("n_qubits").get<int>(),
                   j.value("n_ancilla", 0), std::move(ops));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("program JSON: ") + e.what());
  }
}

inline Program program_from_string(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("program JSON: ") + e.what());
  }
  return program_from_json(j);
}

inline Program load_program(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return program_from_string(text);
}

inline void save_program(const Program& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  out << to_json(p).dump(2) << '\n';
  if (!out) throw FormatError("write failed for " + path);
}

}  // namespace qbbt
