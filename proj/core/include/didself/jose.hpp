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

#include <nlohmann/json.hpp>

#include <didself/errors.hpp>
#include <didself/keys.hpp>

namespace didself::jose {

/// The three base64url segments of a compact JWS/JWT.
struct CompactParts {
    std::string header;
    std::string payload;
    std::string signature;

    [[nodiscard]] std::string signing_input() const { return header + "." + payload; }
    [[nodiscard]] std::string compact() const { return header + "." + payload + "." + signature; }
};

/// Splits "h.p.s"; every segment must be non-empty base64url.
Result<CompactParts> split_compact(std::string_view token);

/// Signs header/payload with the pair's key; the serialized header is used
/// byte-for-byte as the first segment.
Result<std::string> sign_compact(const nlohmann::ordered_json &header, std::span<const std::uint8_t> payload,
                                 const KeyPair &signer);

/// Decodes and parses the protected header segment.
Result<nlohmann::json> decode_header(const CompactParts &parts);

/// Extracts the `jwk` header member as a validated key and rejects headers
/// whose `alg` is inconsistent with the key type (algorithm confusion).
Result<Jwk> header_key(const nlohmann::json &header);

/// Reads the `alg` value of a compact token without verifying anything.
Result<std::string> peek_alg(std::string_view token);

} // namespace didself::jose
