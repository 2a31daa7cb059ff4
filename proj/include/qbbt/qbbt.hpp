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

// Umbrella header.

#pragma once

#include "qbbt/bench.hpp"
#include "qbbt/checkers.hpp"
#include "qbbt/circuit.hpp"
#include "qbbt/circuit_json.hpp"
#include "qbbt/errors.hpp"
#include "qbbt/harness.hpp"
#include "qbbt/oracle.hpp"
#include "qbbt/params.hpp"
#include "qbbt/qnum.hpp"
#include "qbbt/rng.hpp"
#include "qbbt/sim.hpp"
#include "qbbt/states.hpp"
#include "qbbt/swaptest.hpp"
