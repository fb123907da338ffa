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
// limitations under the License

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <didself/errors.hpp>

namespace didself::base64url {

/// URL-safe alphabet, no padding (RFC 7515 appendix C).
std::string encode(std::span<const std::uint8_t> data);
std::string encode(std::string_view text);

/// Rejects padding, whitespace and any character outside the URL-safe
/// alphabet.
Result<std::vector<std::uint8_t>> decode(std::string_view text);

/// True if every character is in the URL-safe alphabet (no length check).
bool is_base64url(std::string_view text);

} // namespace didself::base64url
