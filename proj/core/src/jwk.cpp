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

#include <didself/jwk.hpp>

#include <array>

#include <openssl/evp.h>

#include <didself/base64url.hpp>

namespace didself {

namespace {

// base64url(SHA-256(input))
std::string sha256_b64url(std::string_view input) {
    std::array<std::uint8_t, 32> digest{};
    unsigned int len = 0;
    EVP_Digest(input.data(), input.size(), digest.data(), &len, EVP_sha256(), nullptr);
    return base64url::encode(std::span<const std::uint8_t>(digest.data(), len));
}

Result<std::string> required_string(const nlohmann::json &jwk, const char *member) {
    const auto it = jwk.find(member);
    if (it == jwk.end() || !it->is_string()) {
        return make_error(Errc::invalid_jwk, std::string("JWK member '") + member + "' missing or not a string");
    }
    return it->get<std::string>();
}

// Coordinates must be unpadded base64url of exactly `bytes` bytes.
Status check_coordinate(const std::string &value, const char *member, std::size_t bytes) {
    auto decoded = base64url::decode(value);
    if (!decoded.ok()) {
        return make_error(Errc::invalid_jwk, std::string("JWK member '") + member + "' is not base64url");
    }
    if (decoded.value().size() != bytes) {
        return make_error(Errc::invalid_jwk, std::string("JWK member '") + member + "' decodes to " +
                                                 std::to_string(decoded.value().size()) + " bytes, expected " +
                                                 std::to_string(bytes));
    }
    return {};
}

// RFC 7638 canonical form: required members only, lexicographic order, no
// whitespace. Member values here are base64url or fixed labels, so no JSON
// string escaping can arise.
std::string canonical_members(std::initializer_list<std::pair<std::string_view, std::string_view>> members) {
    std::string out = "{";
    bool first = true;
    for (const auto &[name, value] : members) {
        if (!first) {
            out += ',';
        }
        first = false;
        out += '"';
        out += name;
        out += "\":\"";
        out += value;
        out += '"';
    }
    out += '}';
    return out;
}

} // namespace

std::string_view kty_label(KeyType type) {
    return type == KeyType::ec_p256 ? "EC" : "OKP";
}

std::string_view crv_label(KeyType type) {
    return type == KeyType::ec_p256 ? "P-256" : "Ed25519";
}

std::string_view jose_alg_label(KeyType type) {
    return type == KeyType::ec_p256 ? "ES256" : "EdDSA";
}

Result<Jwk> jwk_from_json(const nlohmann::json &json) {
    if (!json.is_object()) {
        return make_error(Errc::invalid_jwk, "JWK is not a JSON object");
    }
    auto kty = required_string(json, "kty");
    if (!kty.ok()) {
        return kty.error();
    }
    auto crv = required_string(json, "crv");
    if (!crv.ok()) {
        return crv.error();
    }
    auto x = required_string(json, "x");
    if (!x.ok()) {
        return x.error();
    }

    Jwk key;
    if (kty.value() == "EC") {
        if (crv.value() != "P-256") {
            return make_error(Errc::invalid_jwk, "unsupported EC curve '" + crv.value() + "', expected P-256");
        }
        auto y = required_string(json, "y");
        if (!y.ok()) {
            return y.error();
        }
        if (auto s = check_coordinate(x.value(), "x", 32); !s.ok()) {
            return s.error();
        }
        if (auto s = check_coordinate(y.value(), "y", 32); !s.ok()) {
            return s.error();
        }
        key.type = KeyType::ec_p256;
        key.x = std::move(x).value();
        key.y = std::move(y).value();
        return key;
    }
    if (kty.value() == "OKP") {
        if (crv.value() != "Ed25519") {
            return make_error(Errc::invalid_jwk, "unsupported OKP curve '" + crv.value() + "', expected Ed25519");
        }
        if (auto s = check_coordinate(x.value(), "x", 32); !s.ok()) {
            return s.error();
        }
        key.type = KeyType::okp_ed25519;
        key.x = std::move(x).value();
        return key;
    }
    return make_error(Errc::invalid_jwk, "unsupported kty '" + kty.value() + "'");
}

Result<Jwk> jwk_from_text(std::string_view text) {
    const auto parsed = nlohmann::json::parse(text, nullptr, false);
    if (parsed.is_discarded()) {
        return make_error(Errc::invalid_jwk, "JWK is not valid JSON");
    }
    return jwk_from_json(parsed);
}

nlohmann::ordered_json jwk_to_json(const Jwk &key) {
    nlohmann::ordered_json out;
    out["kty"] = kty_label(key.type);
    out["crv"] = crv_label(key.type);
    out["x"] = key.x;
    if (key.type == KeyType::ec_p256) {
        out["y"] = key.y;
    }
    return out;
}

std::string jwk_thumbprint(const Jwk &key) {
    if (key.type == KeyType::ec_p256) {
        return sha256_b64url(canonical_members({{"crv", "P-256"}, {"kty", "EC"}, {"x", key.x}, {"y", key.y}}));
    }
    return sha256_b64url(canonical_members({{"crv", "Ed25519"}, {"kty", "OKP"}, {"x", key.x}}));
}

Result<std::string> jwk_thumbprint(const nlohmann::json &jwk) {
    if (!jwk.is_object()) {
        return make_error(Errc::invalid_jwk, "JWK is not a JSON object");
    }
    auto kty = required_string(jwk, "kty");
    if (!kty.ok()) {
        return kty.error();
    }

    // Required members per key type, already in lexicographic order.
    std::vector<const char *> required;
    if (kty.value() == "EC") {
        required = {"crv", "kty", "x", "y"};
    } else if (kty.value() == "OKP") {
        required = {"crv", "kty", "x"};
    } else if (kty.value() == "RSA") {
        required = {"e", "kty", "n"};
    } else if (kty.value() == "oct") {
        required = {"k", "kty"};
    } else {
        return make_error(Errc::invalid_jwk, "unsupported kty '" + kty.value() + "'");
    }

    std::vector<std::pair<std::string_view, std::string_view>> members;
    std::vector<std::string> storage;
    storage.reserve(required.size());
    for (const char *name : required) {
        auto value = required_string(jwk, name);
        if (!value.ok()) {
            return value.error();
        }
        if (!base64url::is_base64url(value.value()) && std::string_view(name) != "kty") {
            return make_error(Errc::invalid_jwk, std::string("JWK member '") + name + "' is not base64url");
        }
        storage.push_back(std::move(value).value());
    }
    std::string canonical = "{";
    for (std::size_t i = 0; i < required.size(); ++i) {
        if (i > 0) {
            canonical += ',';
        }
        canonical += '"';
        canonical += required[i];
        canonical += "\":\"";
        canonical += storage[i];
        canonical += '"';
    }
    canonical += '}';
    return sha256_b64url(canonical);
}

} // namespace didself
