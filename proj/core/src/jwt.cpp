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

#include <didself/jwt.hpp>

#include <didself/base64url.hpp>
#include <didself/jose.hpp>

namespace didself {

namespace {

// x5c per RFC 7515: standard base64 (with padding) of each DER certificate.
const char kStdAlphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::string base64_std_encode(std::span<const std::uint8_t> data) {
    std::string out;
    out.reserve((data.size() + 2) / 3 * 4);
    std::size_t i = 0;
    for (; i + 3 <= data.size(); i += 3) {
        const std::uint32_t n = (static_cast<std::uint32_t>(data[i]) << 16) |
                                (static_cast<std::uint32_t>(data[i + 1]) << 8) | data[i + 2];
        out.push_back(kStdAlphabet[(n >> 18) & 0x3f]);
        out.push_back(kStdAlphabet[(n >> 12) & 0x3f]);
        out.push_back(kStdAlphabet[(n >> 6) & 0x3f]);
        out.push_back(kStdAlphabet[n & 0x3f]);
    }
    const std::size_t rest = data.size() - i;
    if (rest == 1) {
        const std::uint32_t n = static_cast<std::uint32_t>(data[i]) << 16;
        out.push_back(kStdAlphabet[(n >> 18) & 0x3f]);
        out.push_back(kStdAlphabet[(n >> 12) & 0x3f]);
        out += "==";
    } else if (rest == 2) {
        const std::uint32_t n =
            (static_cast<std::uint32_t>(data[i]) << 16) | (static_cast<std::uint32_t>(data[i + 1]) << 8);
        out.push_back(kStdAlphabet[(n >> 18) & 0x3f]);
        out.push_back(kStdAlphabet[(n >> 12) & 0x3f]);
        out.push_back(kStdAlphabet[(n >> 6) & 0x3f]);
        out.push_back('=');
    }
    return out;
}

Result<std::vector<std::uint8_t>> base64_std_decode(std::string_view text) {
    static const auto reverse = [] {
        std::array<std::int8_t, 256> table{};
        table.fill(-1);
        for (int i = 0; i < 64; ++i) {
            table[static_cast<unsigned char>(kStdAlphabet[i])] = static_cast<std::int8_t>(i);
        }
        return table;
    }();
    while (!text.empty() && text.back() == '=') {
        text.remove_suffix(1);
    }
    if (text.size() % 4 == 1) {
        return make_error(Errc::malformed_jwt, "x5c entry has impossible base64 length");
    }
    std::vector<std::uint8_t> out;
    std::uint32_t acc = 0;
    int bits = 0;
    for (const char c : text) {
        const std::int8_t v = reverse[static_cast<unsigned char>(c)];
        if (v < 0) {
            return make_error(Errc::malformed_jwt, "x5c entry contains invalid base64");
        }
        acc = (acc << 6) | static_cast<std::uint32_t>(v);
        bits += 6;
        if (bits >= 8) {
            bits -= 8;
            out.push_back(static_cast<std::uint8_t>((acc >> bits) & 0xff));
        }
    }
    return out;
}

Result<std::optional<UnixSeconds>> optional_time_claim(const nlohmann::json &claims, const char *name) {
    const auto it = claims.find(name);
    if (it == claims.end()) {
        return std::optional<UnixSeconds>{};
    }
    if (!it->is_number_integer() && !it->is_number_unsigned()) {
        return make_error(Errc::malformed_jwt, std::string("claim '") + name + "' is not an integer");
    }
    return std::optional<UnixSeconds>{it->get<std::int64_t>()};
}

/// (i) of the three steps: the verification key from `jwk`, or from the
/// first certificate of a validated embedded chain.
Result<Jwk> extract_header_key(const nlohmann::json &header, UnixSeconds at, UnixSeconds clock_skew) {
    if (header.contains("jwk")) {
        return jose::header_key(header);
    }
    const auto x5c = header.find("x5c");
    if (x5c == header.end()) {
        return make_error(Errc::missing_header_jwk, "JWS header carries neither 'jwk' nor 'x5c'");
    }
    if (!x5c->is_array() || x5c->empty()) {
        return make_error(Errc::malformed_jwt, "x5c header is not a non-empty array");
    }
    CertChain chain;
    for (const auto &entry : *x5c) {
        if (!entry.is_string()) {
            return make_error(Errc::malformed_jwt, "x5c entry is not a string");
        }
        auto der = base64_std_decode(entry.get<std::string>());
        if (!der.ok()) {
            return der.error();
        }
        auto cert = Certificate::from_der(der.value());
        if (!cert.ok()) {
            return make_error(cert.error().code, "embedded x5c chain: " + cert.error().message);
        }
        chain.certs.push_back(std::move(cert).value());
    }
    auto verdict = verify_chain(chain, at, clock_skew);
    if (!verdict.ok()) {
        return make_error(verdict.error().code, "embedded x5c chain: " + verdict.error().message);
    }
    const Jwk key = verdict.value().controller_key;

    const auto alg = header.find("alg");
    if (alg == header.end() || !alg->is_string()) {
        return make_error(Errc::malformed_jws, "JWS header lacks a string 'alg'");
    }
    if (alg->get<std::string>() != jose_alg_label(key.type)) {
        return make_error(Errc::algorithm_mismatch,
                          "header alg does not match the embedded chain's controller key type");
    }
    return key;
}

} // namespace

Result<std::string> issue_jwt(const KeyPair &controller, const std::optional<std::string> &suffix,
                              const Jwk &holder_key, const JwtIssueOptions &options) {
    if (suffix && !valid_suffix(*suffix)) {
        return make_error(Errc::invalid_did_suffix, "suffix must be 1-128 characters from [A-Za-z0-9._~-]");
    }
    auto bare = did_from_key(controller.public_key);
    if (!bare.ok()) {
        return bare.error();
    }

    nlohmann::ordered_json header;
    header["alg"] = jose_alg_label(controller.public_key.type);
    if (options.x5c) {
        if (options.x5c->certs.empty() || options.x5c->certs.front().public_key() != controller.public_key) {
            return make_error(Errc::thumbprint_mismatch,
                              "x5c chain root key must be the signing controller key");
        }
        auto &entries = header["x5c"] = nlohmann::ordered_json::array();
        for (const auto &cert : options.x5c->certs) {
            entries.push_back(base64_std_encode(cert.der()));
        }
    } else {
        header["jwk"] = jwk_to_json(controller.public_key);
    }

    nlohmann::ordered_json payload;
    payload["iss"] = format_did(bare.value());
    if (suffix) {
        payload["sub"] = *suffix;
    }
    payload["cnf"] = nlohmann::ordered_json{{"jwk", jwk_to_json(holder_key)}};
    if (options.issued_at) {
        payload["iat"] = *options.issued_at;
    }
    if (options.expires_at) {
        payload["exp"] = *options.expires_at;
    }

    const std::string text = payload.dump();
    return jose::sign_compact(header, std::span(reinterpret_cast<const std::uint8_t *>(text.data()), text.size()),
                              controller);
}

Result<ImplicitJwtClaims> verify_jwt(std::string_view token, UnixSeconds at, UnixSeconds clock_skew) {
    auto parts = jose::split_compact(token);
    if (!parts.ok()) {
        return make_error(Errc::malformed_jwt, parts.error().message);
    }

    auto payload_bytes = base64url::decode(parts.value().payload);
    if (!payload_bytes.ok()) {
        return make_error(Errc::malformed_jwt, "payload segment is not base64url");
    }
    const auto claims_json = nlohmann::json::parse(payload_bytes.value(), nullptr, false);
    if (claims_json.is_discarded() || !claims_json.is_object()) {
        return make_error(Errc::malformed_jwt, "payload is not a JSON object");
    }

    const auto iss = claims_json.find("iss");
    if (iss == claims_json.end() || !iss->is_string()) {
        return make_error(Errc::malformed_jwt, "token lacks a string 'iss' claim");
    }
    auto issuer = parse_did(iss->get<std::string>());
    if (!issuer.ok()) {
        return make_error(Errc::malformed_jwt, "iss claim is not a did:self DID: " + issuer.error().message);
    }
    if (issuer.value().suffix) {
        return make_error(Errc::malformed_jwt, "iss claim must carry the DID without any suffix");
    }

    ImplicitJwtClaims claims;
    claims.issuer = std::move(issuer).value();

    if (const auto sub = claims_json.find("sub"); sub != claims_json.end()) {
        if (!sub->is_string() || !valid_suffix(sub->get<std::string>())) {
            return make_error(Errc::malformed_jwt, "sub claim is not a valid suffix");
        }
        claims.subject_suffix = sub->get<std::string>();
    }

    const auto cnf = claims_json.find("cnf");
    if (cnf == claims_json.end() || !cnf->is_object() || !cnf->contains("jwk")) {
        return make_error(Errc::malformed_jwt, "token lacks a cnf.jwk confirmation claim");
    }
    auto holder = jwk_from_json(cnf->at("jwk"));
    if (!holder.ok()) {
        return make_error(Errc::malformed_jwt, "cnf.jwk is unusable: " + holder.error().message);
    }
    claims.holder_key = std::move(holder).value();

    auto iat = optional_time_claim(claims_json, "iat");
    if (!iat.ok()) {
        return iat.error();
    }
    auto exp = optional_time_claim(claims_json, "exp");
    if (!exp.ok()) {
        return exp.error();
    }
    claims.issued_at = iat.value();
    claims.expires_at = exp.value();

    // step (i): verification key from the header
    auto header = jose::decode_header(parts.value());
    if (!header.ok()) {
        return make_error(Errc::malformed_jwt, header.error().message);
    }
    auto key = extract_header_key(header.value(), at, clock_skew);
    if (!key.ok()) {
        return key.error();
    }

    // step (ii): thumbprint binding to iss
    if (jwk_thumbprint(key.value()) != claims.issuer.thumbprint) {
        return make_error(Errc::thumbprint_mismatch,
                          "header key thumbprint does not match the iss claim thumbprint");
    }

    // step (iii): signature over the token's signing input
    const std::string input = parts.value().signing_input();
    auto signature = base64url::decode(parts.value().signature);
    if (!signature.ok()) {
        return make_error(Errc::malformed_jwt, "signature segment is not base64url");
    }
    if (!verify_message(key.value(), std::span(reinterpret_cast<const std::uint8_t *>(input.data()), input.size()),
                        signature.value())) {
        return make_error(Errc::signature_invalid, "JWT signature does not verify");
    }

    // validity window; expiry is this method's revocation mechanism
    if (claims.issued_at && at < *claims.issued_at - clock_skew) {
        return make_error(Errc::not_yet_valid, "token not valid before " + format_instant(*claims.issued_at));
    }
    if (claims.expires_at && at >= *claims.expires_at + clock_skew) {
        return make_error(Errc::expired, "token expired at " + format_instant(*claims.expires_at));
    }

    return claims;
}

DidDocument reconstruct_from_jwt(const ImplicitJwtClaims &claims) {
    DidDocument doc;
    doc.id = Did{claims.issuer.thumbprint, claims.subject_suffix};
    doc.verification_methods.push_back(
        VerificationMethod{"#key1", std::string(kJsonWebKey2020), claims.holder_key});
    doc.authentication = {"#key1"};
    doc.assertion = {"#key1"};
    return doc;
}

} // namespace didself
