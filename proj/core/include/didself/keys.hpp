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
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include <didself/errors.hpp>
#include <didself/jwk.hpp>

namespace didself {

/// Opaque signing capability; the crypto backend stays out of public headers.
class PrivateKey;

/// Public half plus signing capability. Copies share the underlying key.
/// Verification is pure; the signer itself is stateless, so a KeyPair may be
/// used from multiple threads.
struct KeyPair {
    Jwk public_key;
    std::shared_ptr<const PrivateKey> secret;
};

Result<KeyPair> generate_keypair(KeyType type);

/// Private JWK (RFC 7517 with the `d` member). For EC keys the public
/// coordinates must be present and are checked against the private scalar.
Result<KeyPair> keypair_from_private_jwk(const nlohmann::json &jwk);
Result<KeyPair> keypair_from_private_jwk_text(std::string_view text);

/// kty, crv, x, y, d — suitable for a key file.
nlohmann::ordered_json private_jwk(const KeyPair &pair);

/// Signs in JOSE signature format: ES256 is the raw 64-byte R||S encoding,
/// EdDSA the raw 64-byte Ed25519 signature.
Result<std::vector<std::uint8_t>> sign_message(const KeyPair &pair, std::span<const std::uint8_t> message);

/// Verifies a JOSE-format signature under a public key.
bool verify_message(const Jwk &key, std::span<const std::uint8_t> message, std::span<const std::uint8_t> signature);

} // namespace didself
