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

#include <didself/jose.hpp>

#include <didself/base64url.hpp>

namespace didself::jose {

Result<CompactParts> split_compact(std::string_view token) {
    const std::size_t first = token.find('.');
    if (first == std::string_view::npos) {
        return make_error(Errc::malformed_jws, "compact serialization needs three dot-separated segments");
    }
    const std::size_t second = token.find('.', first + 1);
    if (second == std::string_view::npos || token.find('.', second + 1) != std::string_view::npos) {
        return make_error(Errc::malformed_jws, "compact serialization needs exactly three segments");
    }
    CompactParts parts{
        std::string(token.substr(0, first)),
        std::string(token.substr(first + 1, second - first - 1)),
        std::string(token.substr(second + 1)),
    };
    if (parts.header.empty() || parts.payload.empty() || parts.signature.empty()) {
        return make_error(Errc::malformed_jws, "compact serialization has an empty segment");
    }
    for (const auto *segment : {&parts.header, &parts.payload, &parts.signature}) {
        if (!base64url::is_base64url(*segment)) {
            return make_error(Errc::malformed_jws, "compact segment contains non-base64url characters");
        }
    }
    return parts;
}

Result<std::string> sign_compact(const nlohmann::ordered_json &header, std::span<const std::uint8_t> payload,
                                 const KeyPair &signer) {
    CompactParts parts;
    parts.header = base64url::encode(header.dump());
    parts.payload = base64url::encode(payload);
    const std::string input = parts.signing_input();
    auto signature =
        sign_message(signer, std::span(reinterpret_cast<const std::uint8_t *>(input.data()), input.size()));
    if (!signature.ok()) {
        return signature.error();
    }
    parts.signature = base64url::encode(std::span<const std::uint8_t>(signature.value()));
    return parts.compact();
}

Result<nlohmann::json> decode_header(const CompactParts &parts) {
    auto bytes = base64url::decode(parts.header);
    if (!bytes.ok()) {
        return make_error(Errc::malformed_jws, "header segment is not base64url");
    }
    auto json = nlohmann::json::parse(bytes.value(), nullptr, false);
    if (json.is_discarded() || !json.is_object()) {
        return make_error(Errc::malformed_jws, "header segment is not a JSON object");
    }
    return json;
}

Result<Jwk> header_key(const nlohmann::json &header) {
    const auto jwk = header.find("jwk");
    if (jwk == header.end()) {
        return make_error(Errc::missing_header_jwk, "JWS header lacks the 'jwk' member");
    }
    auto key = jwk_from_json(*jwk);
    if (!key.ok()) {
        return make_error(Errc::missing_header_jwk, "JWS header 'jwk' is unusable: " + key.error().message);
    }
    const auto alg = header.find("alg");
    if (alg == header.end() || !alg->is_string()) {
        return make_error(Errc::malformed_jws, "JWS header lacks a string 'alg'");
    }
    if (alg->get<std::string>() != jose_alg_label(key.value().type)) {
        return make_error(Errc::algorithm_mismatch,
                          "header alg '" + alg->get<std::string>() + "' does not match the embedded key type");
    }
    return key;
}

Result<std::string> peek_alg(std::string_view token) {
    auto parts = split_compact(token);
    if (!parts.ok()) {
        return parts.error();
    }
    auto header = decode_header(parts.value());
    if (!header.ok()) {
        return header.error();
    }
    const auto alg = header.value().find("alg");
    if (alg == header.value().end() || !alg->is_string()) {
        return make_error(Errc::malformed_jws, "header lacks a string 'alg'");
    }
    return alg->get<std::string>();
}

} // namespace didself::jose
