// Copyright 2026 The Many-Hypercube Authors
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

#include "mhc/bits.h"

#include <cctype>
#include <stdexcept>

namespace mhc {

std::vector<uint8_t> parse_bits(const std::string &text) {
    std::vector<uint8_t> out;
    out.reserve(text.size());
    for (char c : text) {
        if (c == '0' || c == '1') {
            out.push_back(static_cast<uint8_t>(c - '0'));
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            throw std::invalid_argument(std::string("not a bit character: '") + c + "'");
        }
    }
    return out;
}

std::string format_bits(const std::vector<uint8_t> &bits) {
    std::string s;
    s.reserve(bits.size());
    for (uint8_t b : bits) {
        s.push_back(b ? '1' : '0');
    }
    return s;
}

}  // namespace mhc
