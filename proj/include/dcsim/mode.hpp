// Copyright 2026 The dcsim Authors
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

#pragma once

#include <compare>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "dcsim/errors.hpp"

namespace dcsim {

/// Symbolic name of an optical mode (s1, s2, s, s', i1, i2, i, i', ...).
///
/// The primed forms may be spelled with an ASCII apostrophe or with U+2032;
/// both are stored as the apostrophe so that comparisons stay exact.
class ModeLabel {
 public:
  ModeLabel() = default;

  explicit ModeLabel(std::string name) : name_(canonical(std::move(name))) {
    if (name_.empty()) {
      throw BasisError("mode label must not be empty");
    }
  }

  const std::string& name() const noexcept { return name_; }

  friend bool operator==(const ModeLabel&, const ModeLabel&) = default;
  friend std::strong_ordering operator<=>(const ModeLabel&, const ModeLabel&) = default;

  friend std::ostream& operator<<(std::ostream& os, const ModeLabel& m) { return os << m.name_; }

 private:
  static std::string canonical(std::string s) {
    static constexpr std::string_view kPrime = "\xE2\x80\xB2";  // U+2032
    for (auto pos = s.find(kPrime); pos != std::string::npos; pos = s.find(kPrime, pos)) {
      s.replace(pos, kPrime.size(), "'");
    }
    return s;
  }

  std::string name_;
};

namespace modes {

inline const ModeLabel s1{"s1"};
inline const ModeLabel s2{"s2"};
inline const ModeLabel s{"s"};
inline const ModeLabel s_prime{"s'"};
inline const ModeLabel i1{"i1"};
inline const ModeLabel i2{"i2"};
inline const ModeLabel i{"i"};
inline const ModeLabel i_prime{"i'"};

}  // namespace modes

}  // namespace dcsim
