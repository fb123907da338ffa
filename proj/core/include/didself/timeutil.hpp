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
#include <string>
#include <string_view>

#include <didself/errors.hpp>

namespace didself {

/// Seconds since the Unix epoch, UTC. All validity windows and `at`
/// parameters use this representation.
using UnixSeconds = std::int64_t;

/// Parses "YYYY-MM-DDThh:mm:ssZ" (RFC 3339, UTC only) or a plain integer
/// epoch value.
Result<UnixSeconds> parse_instant(std::string_view text);

/// Formats as "YYYY-MM-DDThh:mm:ssZ".
std::string format_instant(UnixSeconds at);

} // namespace didself
