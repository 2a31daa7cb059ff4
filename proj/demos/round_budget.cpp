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


// Prints the Swap Test round counts for a grid of k and epsilon.

#include <cstdio>
#include <cstdlib>

#include "qbbt/qbbt.hpp"

int main(int argc, char** argv) {
  using namespace qbbt;
  const double alpha2 = argc > 1 ? std::atof(argv[1]) : 0.1;
  const int ks[] = {1, 2, 3, 4, 6, 10, 50, 1000};
  const double eps[] = {0.05, 0.10, 0.15, 0.20};
  std::printf("alpha2 = %g\n%6s |", alpha2, "k");
  for (double e : eps) std::printf(" EQ %-5.2f", e);
  std::printf(" |");
  for (double e : eps) std::printf(" UN %-5.2f", e);
  std::printf("\n");
  for (int k : ks) {
    std::printf("%6d |", k);
    for (double e : eps) std::printf(" %8llu", static_cast<unsigned long long>(eq_min_rounds(k, e, alpha2)));
    std::printf(" |");
    for (double e : eps) {
      if (k < 2) std::printf(" %8s", "-");
      else std::printf(" %8llu", static_cast<unsigned long long>(un_min_rounds(k, e, alpha2)));
    }
    std::printf("\n");
  }
}
