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

#include <optional>
#include <string>
#include <string_view>

#include <didself/errors.hpp>
#include <didself/jwk.hpp>

namespace didself {

/// Parsed did:self identifier: key thumbprint plus an optional suffix that
/// distinguishes holders sharing one controller.
///
///   did:self:<thumbprint>           (bare)
///   did:self:<thumbprint>/<suffix>
struct Did {
    std::string thumbprint;            // base64url, 43 characters
    std::optional<std::string> suffix; // single path segment, 1-128 chars

    [[nodiscard]] bool bare() const noexcept { return !suffix.has_value(); }

    friend bool operator==(const Did &, const Did &) = default;
};

inline constexpr std::string_view kDidPrefix = "did:self:";
inline constexpr std::size_t kThumbprintLength = 43; // 32-byte digest in base64url

/// Suffix grammar: 1-128 characters from the URI-unreserved set
/// [A-Za-z0-9._~-]; a single path segment, so '/' is rejected.
bool valid_suffix(std::string_view suffix);

/// Accepts exactly the did:self grammar; any other string yields an error
/// and never a partially filled Did.
Result<Did> parse_did(std::string_view text);

/// Inverse of parse_did on the accepted grammar (byte-identical round trip).
std::string format_did(const Did &did);

/// DID whose thumbprint part is jwk_thumbprint(key).
Result<Did> did_from_key(const Jwk &key, std::optional<std::string> suffix = std::nullopt);

} // namespace didself
