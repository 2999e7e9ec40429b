// Copyright 2026 The bifact Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BIFACT_PAIR_KEY_H_
#define BIFACT_PAIR_KEY_H_

#include <compare>
#include <string>

namespace bifact {

// Identifies one gold/predicted pair: the gold intent id plus the model that
// produced the prediction.
struct PairKey {
  std::string id;
  std::string model;

  std::string ToString() const { return id + "@" + model; }

  friend auto operator<=>(const PairKey&, const PairKey&) = default;
  friend bool operator==(const PairKey&, const PairKey&) = default;
};

}  // namespace bifact

#endif  // BIFACT_PAIR_KEY_H_
