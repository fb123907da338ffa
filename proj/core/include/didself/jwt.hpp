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
#include <string>
#include <string_view>

#include <didself/did.hpp>
#include <didself/document.hpp>
#include <didself/errors.hpp>
#include <didself/keys.hpp>
#include <didself/timeutil.hpp>
#include <didself/x509.hpp>

namespace didself {

/// Claims of a JWT standing in for a single-method DID document:
///   iss — the bare DID (never a suffix),
///   sub — the suffix, when the DID has one,
///   cnf — the holder's public key under the "jwk" confirmation member,
///   iat / exp — optional validity window; expiry doubles as revocation.
struct ImplicitJwtClaims {
    Did issuer; // suffix-less
    std::optional<std::string> subject_suffix;
    Jwk holder_key;
    std::optional<UnixSeconds> issued_at;
    std::optional<UnixSeconds> expires_at;

    friend bool operator==(const ImplicitJwtClaims &, const ImplicitJwtClaims &) = default;
};

struct JwtIssueOptions {
    std::optional<UnixSeconds> issued_at;
    std::optional<UnixSeconds> expires_at;
    /// When set, the header carries this chain as `x5c` instead of `jwk`.
    /// The chain's root key must be the signing controller key.
    std::optional<CertChain> x5c;
};

/// Controller-signed JWT carrying the claims above. Issuance is
/// time-agnostic: an already-expired window is accepted here and rejected at
/// verification.
Result<std::string> issue_jwt(const KeyPair &controller, const std::optional<std::string> &suffix,
                              const Jwk &holder_key, const JwtIssueOptions &options = {});

/// Three-step verification:
///   (i)   extract the public key from the header — `jwk` directly, or the
///         first certificate's key after validating an embedded `x5c` chain,
///   (ii)  its thumbprint must equal the thumbprint in `iss`,
///   (iii) the signature must verify,
/// then the iat/exp window must contain `at` (when claims are present).
Result<ImplicitJwtClaims> verify_jwt(std::string_view token, UnixSeconds at, UnixSeconds clock_skew = 0);

/// Document implied by verified claims: id = iss plus "/" + sub when
/// present; one "#key1" JsonWebKey2020 method holding the cnf key;
/// authentication and assertion both reference it.
DidDocument reconstruct_from_jwt(const ImplicitJwtClaims &claims);

} // namespace didself
