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
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include <didself/document.hpp>
#include <didself/errors.hpp>
#include <didself/jwt.hpp>
#include <didself/proof.hpp>
#include <didself/timeutil.hpp>
#include <didself/x509.hpp>

namespace didself {

enum class AttestationKind {
    explicit_document,
    jwt,
    x509,
};

std::string_view attestation_kind_name(AttestationKind kind); // "explicit" / "jwt" / "x509"

/// Kind-dependent attestation bodies. The variant keeps "kind matches body
/// shape" true by construction.
struct ExplicitBody {
    std::vector<std::uint8_t> document; // exact disseminated bytes
    std::string proof;                  // compact JWS
};
struct JwtBody {
    std::string token; // compact JWT
};
struct X509Body {
    std::string chain_pem; // PEM blocks, root to leaf
};

/// Self-contained dissemination unit: a DID plus one attestation for it.
/// Bundles travel over untrusted channels; nothing in them is trusted until
/// resolve() verifies it.
struct Bundle {
    std::string did;
    std::variant<ExplicitBody, JwtBody, X509Body> body;
    std::optional<nlohmann::ordered_json> meta;

    [[nodiscard]] AttestationKind kind() const noexcept {
        return static_cast<AttestationKind>(body.index());
    }
};

/// Everything deployments decide: freshness requirements, clock tolerance
/// and the acceptable algorithm set.
struct ResolverPolicy {
    bool require_expiry = false;
    UnixSeconds clock_skew = 0;
    std::set<std::string> allowed_algorithms{"ES256", "EdDSA"};
};

struct Resolution {
    DidDocument document;
    AttestationKind kind;
    UnixSeconds verified_at = 0;
    std::optional<Validity> validity; // iat/exp or certificate window intersection
};

/// Pure function of its arguments: dispatches on the attestation kind,
/// enforces document.id == did and the policy, and never performs I/O.
/// Underlying verification errors keep their step identity.
Result<Resolution> resolve(std::string_view did, const Bundle &bundle, UnixSeconds at,
                           const ResolverPolicy &policy = {});

/// Versioned JSON envelope ("v": 1) with members did, kind, body, meta.
/// decode_bundle(encode_bundle(b)) reproduces b exactly.
std::string encode_bundle(const Bundle &bundle);
Result<Bundle> decode_bundle(std::span<const std::uint8_t> bytes);
Result<Bundle> decode_bundle_text(std::string_view text);

} // namespace didself
