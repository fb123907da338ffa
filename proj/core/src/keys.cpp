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

#include <didself/keys.hpp>

#include <didself/base64url.hpp>

#include "evp_bridge.hpp"

namespace didself {

Result<KeyPair> generate_keypair(KeyType type) {
    auto pkey = detail::evp_generate(type);
    if (!pkey.ok()) {
        return pkey.error();
    }
    auto public_key = detail::jwk_from_evp(pkey.value().get());
    if (!public_key.ok()) {
        return public_key.error();
    }
    KeyPair pair;
    pair.public_key = std::move(public_key).value();
    pair.secret = std::make_shared<PrivateKey>(std::move(pkey).value(), type);
    return pair;
}

Result<KeyPair> keypair_from_private_jwk(const nlohmann::json &jwk) {
    auto public_key = jwk_from_json(jwk);
    if (!public_key.ok()) {
        return public_key.error();
    }
    const auto d_it = jwk.find("d");
    if (d_it == jwk.end() || !d_it->is_string()) {
        return make_error(Errc::invalid_jwk, "JWK member 'd' missing or not a string (not a private key?)");
    }
    auto d = base64url::decode(d_it->get<std::string>());
    if (!d.ok()) {
        return make_error(Errc::invalid_jwk, "JWK member 'd' is not base64url");
    }
    auto pkey = detail::evp_from_private_jwk(public_key.value(), d.value());
    if (!pkey.ok()) {
        return pkey.error();
    }
    KeyPair pair;
    pair.public_key = std::move(public_key).value();
    pair.secret = std::make_shared<PrivateKey>(std::move(pkey).value(), pair.public_key.type);
    return pair;
}

Result<KeyPair> keypair_from_private_jwk_text(std::string_view text) {
    const auto parsed = nlohmann::json::parse(text, nullptr, false);
    if (parsed.is_discarded()) {
        return make_error(Errc::invalid_jwk, "private JWK is not valid JSON");
    }
    return keypair_from_private_jwk(parsed);
}

nlohmann::ordered_json private_jwk(const KeyPair &pair) {
    auto out = jwk_to_json(pair.public_key);
    auto d = detail::evp_private_scalar(pair.secret->handle(), pair.public_key.type);
    // A KeyPair always holds a complete private key, so this cannot fail for
    // keys produced by this library.
    out["d"] = d.ok() ? base64url::encode(std::span<const std::uint8_t>(d.value())) : "";
    return out;
}

Result<std::vector<std::uint8_t>> sign_message(const KeyPair &pair, std::span<const std::uint8_t> message) {
    if (!pair.secret) {
        return make_error(Errc::signing_failure, "key pair has no private half");
    }
    return detail::evp_sign_jose(pair.secret->handle(), pair.public_key.type, message);
}

bool verify_message(const Jwk &key, std::span<const std::uint8_t> message, std::span<const std::uint8_t> signature) {
    auto pkey = detail::evp_from_public_jwk(key);
    if (!pkey.ok()) {
        return false;
    }
    return detail::evp_verify_jose(pkey.value().get(), key.type, message, signature);
}

} // namespace didself
