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
#include <vector>

#include <nlohmann/json.hpp>

#include <didself/did.hpp>
#include <didself/errors.hpp>
#include <didself/jwk.hpp>

namespace didself {

inline constexpr std::string_view kJsonWebKey2020 = "JsonWebKey2020";

/// A public key usable for a verification relationship. `id` is a fragment
/// reference ("#key1").
struct VerificationMethod {
    std::string id;
    std::string type_label{kJsonWebKey2020};
    Jwk public_key;

    friend bool operator==(const VerificationMethod &, const VerificationMethod &) = default;
};

/// DID document data model. Relationship entries are fragment references
/// into `verification_methods`; members this library does not model are kept
/// verbatim in `extra` and re-emitted on serialization.
struct DidDocument {
    Did id;
    std::vector<VerificationMethod> verification_methods;
    std::vector<std::string> authentication;
    std::vector<std::string> assertion;
    nlohmann::ordered_json extra = nlohmann::ordered_json::object();

    friend bool operator==(const DidDocument &, const DidDocument &) = default;
};

/// Checks referential integrity (every relationship fragment resolves to
/// exactly one method) and method id uniqueness.
Result<DidDocument> build_document(Did id, std::vector<VerificationMethod> methods,
                                   std::vector<std::string> authentication, std::vector<std::string> assertion);

/// Deterministic UTF-8 JSON: members in the order id, verificationMethod,
/// authentication, assertion, then preserved unknown members; no
/// insignificant whitespace. serialize . parse . serialize is a fixed point.
///
/// Proofs always sign exact disseminated bytes; this serializer exists so
/// documents created by this library have stable bytes. Verification never
/// re-serializes.
std::vector<std::uint8_t> serialize_document(const DidDocument &doc);
std::string serialize_document_text(const DidDocument &doc);

/// Accepts any JSON carrying the required members, independent of key order
/// and whitespace. Absent relationship arrays are treated as empty; unknown
/// top-level members are preserved.
Result<DidDocument> parse_document(std::span<const std::uint8_t> bytes);
Result<DidDocument> parse_document_text(std::string_view text);

} // namespace didself
