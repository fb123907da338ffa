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

#include <didself/resolver.hpp>

#include <limits>

#include <didself/base64url.hpp>
#include <didself/jose.hpp>

namespace didself {

namespace {

constexpr int kEnvelopeVersion = 1;

Status check_algorithm(const ResolverPolicy &policy, const std::string &alg, const std::string &where) {
    if (!policy.allowed_algorithms.contains(alg)) {
        return make_error(Errc::algorithm_not_allowed, "algorithm '" + alg + "' not allowed by policy (" + where + ")");
    }
    return {};
}

Result<Resolution> resolve_explicit(const Did &did, const ExplicitBody &body, UnixSeconds at,
                                    const ResolverPolicy &policy) {
    auto alg = jose::peek_alg(body.proof);
    if (!alg.ok()) {
        return alg.error();
    }
    if (auto s = check_algorithm(policy, alg.value(), "proof JWS"); !s.ok()) {
        return s.error();
    }
    if (policy.require_expiry) {
        return make_error(Errc::missing_expiry,
                          "policy requires an expiry but explicit proofs carry no validity window");
    }
    auto doc = verify_proof(did, body.document, ProofJws{body.proof});
    if (!doc.ok()) {
        return doc.error();
    }
    return Resolution{std::move(doc).value(), AttestationKind::explicit_document, at, std::nullopt};
}

Result<Resolution> resolve_jwt(const Did &did, const JwtBody &body, UnixSeconds at, const ResolverPolicy &policy) {
    auto alg = jose::peek_alg(body.token);
    if (!alg.ok()) {
        return make_error(Errc::malformed_jwt, alg.error().message);
    }
    if (auto s = check_algorithm(policy, alg.value(), "JWT"); !s.ok()) {
        return s.error();
    }
    auto claims = verify_jwt(body.token, at, policy.clock_skew);
    if (!claims.ok()) {
        return claims.error();
    }
    if (policy.require_expiry && !claims.value().expires_at) {
        return make_error(Errc::missing_expiry, "policy requires an expiry but the token has no exp claim");
    }
    DidDocument doc = reconstruct_from_jwt(claims.value());
    if (doc.id != did) {
        return make_error(Errc::id_mismatch, "token reconstructs document for '" + format_did(doc.id) +
                                                 "', not the queried '" + format_did(did) + "'");
    }
    std::optional<Validity> validity;
    if (claims.value().issued_at || claims.value().expires_at) {
        validity = Validity{claims.value().issued_at.value_or(0),
                            claims.value().expires_at.value_or(std::numeric_limits<UnixSeconds>::max())};
    }
    return Resolution{std::move(doc), AttestationKind::jwt, at, validity};
}

Result<Resolution> resolve_x509(const Did &did, const X509Body &body, UnixSeconds at, const ResolverPolicy &policy) {
    auto chain = chain_from_pem(body.chain_pem);
    if (!chain.ok()) {
        return chain.error();
    }
    for (std::size_t i = 0; i < chain.value().certs.size(); ++i) {
        if (auto s = check_algorithm(policy, std::string(chain.value().certs[i].signature_alg()),
                                     "certificate " + std::to_string(i));
            !s.ok()) {
            return s.error();
        }
    }
    auto verdict = verify_chain(chain.value(), at, policy.clock_skew);
    if (!verdict.ok()) {
        return verdict.error();
    }
    DidDocument doc = reconstruct_from_chain(verdict.value());
    if (doc.id != did) {
        return make_error(Errc::id_mismatch, "chain attests '" + format_did(doc.id) + "', not the queried '" +
                                                 format_did(did) + "'");
    }
    return Resolution{std::move(doc), AttestationKind::x509, at, verdict.value().window};
}

} // namespace

std::string_view attestation_kind_name(AttestationKind kind) {
    switch (kind) {
    case AttestationKind::explicit_document:
        return "explicit";
    case AttestationKind::jwt:
        return "jwt";
    case AttestationKind::x509:
        return "x509";
    }
    return "unknown";
}

Result<Resolution> resolve(std::string_view did, const Bundle &bundle, UnixSeconds at, const ResolverPolicy &policy) {
    auto queried = parse_did(did);
    if (!queried.ok()) {
        return queried.error();
    }
    auto declared = parse_did(bundle.did);
    if (!declared.ok()) {
        return make_error(Errc::malformed_bundle, "bundle DID does not parse: " + declared.error().message);
    }
    if (declared.value() != queried.value()) {
        return make_error(Errc::id_mismatch, "bundle is for '" + bundle.did + "', not the queried '" +
                                                 std::string(did) + "'");
    }

    if (const auto *body = std::get_if<ExplicitBody>(&bundle.body)) {
        return resolve_explicit(queried.value(), *body, at, policy);
    }
    if (const auto *body = std::get_if<JwtBody>(&bundle.body)) {
        return resolve_jwt(queried.value(), *body, at, policy);
    }
    return resolve_x509(queried.value(), std::get<X509Body>(bundle.body), at, policy);
}

std::string encode_bundle(const Bundle &bundle) {
    nlohmann::ordered_json out;
    out["v"] = kEnvelopeVersion;
    out["did"] = bundle.did;
    out["kind"] = attestation_kind_name(bundle.kind());
    if (const auto *body = std::get_if<ExplicitBody>(&bundle.body)) {
        out["body"] = nlohmann::ordered_json{
            {"document", base64url::encode(std::span<const std::uint8_t>(body->document))},
            {"proof", body->proof},
        };
    } else if (const auto *body = std::get_if<JwtBody>(&bundle.body)) {
        out["body"] = body->token;
    } else {
        out["body"] = std::get<X509Body>(bundle.body).chain_pem;
    }
    if (bundle.meta) {
        out["meta"] = *bundle.meta;
    }
    return out.dump();
}

Result<Bundle> decode_bundle_text(std::string_view text) {
    const auto json = nlohmann::ordered_json::parse(text, nullptr, false);
    if (json.is_discarded() || !json.is_object()) {
        return make_error(Errc::malformed_bundle, "bundle is not a JSON object");
    }
    const auto version = json.find("v");
    if (version == json.end() || !version->is_number_integer() || version->get<int>() != kEnvelopeVersion) {
        return make_error(Errc::malformed_bundle, "bundle envelope version missing or unsupported");
    }
    const auto did = json.find("did");
    if (did == json.end() || !did->is_string()) {
        return make_error(Errc::malformed_bundle, "bundle lacks a string 'did'");
    }
    const auto kind = json.find("kind");
    if (kind == json.end() || !kind->is_string()) {
        return make_error(Errc::malformed_bundle, "bundle lacks a string 'kind'");
    }
    const auto body = json.find("body");
    if (body == json.end()) {
        return make_error(Errc::malformed_bundle, "bundle lacks 'body'");
    }

    Bundle out;
    out.did = did->get<std::string>();

    const std::string kind_name = kind->get<std::string>();
    if (kind_name == "explicit") {
        if (!body->is_object() || !body->contains("document") || !body->contains("proof") ||
            !(*body)["document"].is_string() || !(*body)["proof"].is_string()) {
            return make_error(Errc::malformed_bundle, "explicit body needs string members 'document' and 'proof'");
        }
        auto doc = base64url::decode((*body)["document"].get<std::string>());
        if (!doc.ok()) {
            return make_error(Errc::malformed_bundle, "explicit body 'document' is not base64url");
        }
        out.body = ExplicitBody{std::move(doc).value(), (*body)["proof"].get<std::string>()};
    } else if (kind_name == "jwt") {
        if (!body->is_string()) {
            return make_error(Errc::malformed_bundle, "jwt body must be the compact token string");
        }
        out.body = JwtBody{body->get<std::string>()};
    } else if (kind_name == "x509") {
        if (!body->is_string()) {
            return make_error(Errc::malformed_bundle, "x509 body must be the PEM chain string");
        }
        out.body = X509Body{body->get<std::string>()};
    } else {
        return make_error(Errc::unknown_kind, "unknown bundle kind '" + kind_name + "'");
    }

    if (const auto meta = json.find("meta"); meta != json.end()) {
        out.meta = *meta;
    }
    return out;
}

Result<Bundle> decode_bundle(std::span<const std::uint8_t> bytes) {
    return decode_bundle_text(std::string_view(reinterpret_cast<const char *>(bytes.data()), bytes.size()));
}

} // namespace didself
