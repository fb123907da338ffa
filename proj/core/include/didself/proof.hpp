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

#include <didself/did.hpp>
#include <didself/document.hpp>
#include <didself/errors.hpp>
#include <didself/keys.hpp>

namespace didself {

/// Controller-signed proof binding a DID document to its identifier: a
/// compact JWS whose header carries the controller's public key and whose
/// payload is the document bytes.
struct ProofJws {
    std::string compact;

    friend bool operator==(const ProofJws &, const ProofJws &) = default;
};

/// Signs the exact document bytes. The header contains `alg` and `jwk`
/// (the controller's public key).
Result<ProofJws> sign_document(std::span<const std::uint8_t> doc_bytes, const KeyPair &controller);

/// Verifies a proof against a DID and the disseminated document bytes, in
/// order:
///   (i)   extract the public key from the JWS header,
///   (ii)  its thumbprint must equal the DID's thumbprint,
///   (iii) the JWS signature must verify over the document bytes,
/// then the parsed document's id must equal `did` (full DID, suffix
/// included). Hostile inputs are expected; every failure names its step.
Result<DidDocument> verify_proof(const Did &did, std::span<const std::uint8_t> doc_bytes, const ProofJws &proof);

} // namespace didself
