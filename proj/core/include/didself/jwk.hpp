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

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include <didself/errors.hpp>

namespace didself {

/// Key types accepted by this method. ES256 (P-256) is the mandatory
/// algorithm, EdDSA (Ed25519) is supported behind the same interfaces.
enum class KeyType {
    ec_p256,
    okp_ed25519,
};

std::string_view kty_label(KeyType type);     // "EC" / "OKP"
std::string_view crv_label(KeyType type);     // "P-256" / "Ed25519"
std::string_view jose_alg_label(KeyType type); // "ES256" / "EdDSA"

/// Validated public key. For P-256 both coordinates decode to 32 bytes, for
/// Ed25519 only `x` is present.
struct Jwk {
    KeyType type = KeyType::ec_p256;
    std::string x; // base64url, no padding
    std::string y; // base64url, empty for Ed25519

    friend bool operator==(const Jwk &, const Jwk &) = default;
};

/// Validates member names, labels and decoded coordinate lengths.
Result<Jwk> jwk_from_json(const nlohmann::json &json);
Result<Jwk> jwk_from_text(std::string_view text);

/// RFC 7517 member names, emitted in kty, crv, x, y order.
nlohmann::ordered_json jwk_to_json(const Jwk &key);

/// RFC 7638 thumbprint: base64url(SHA-256(canonical JSON of the required
/// members)). Deterministic; 43 characters.
std::string jwk_thumbprint(const Jwk &key);

/// Thumbprint of an arbitrary JSON JWK. Knows the required members for the
/// EC, OKP, RSA and oct key types, so conformance vectors outside this
/// method's key profile can be checked too.
Result<std::string> jwk_thumbprint(const nlohmann::json &jwk);

} // namespace didself
