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
#include <string>
#include <vector>

#include <didself/did.hpp>
#include <didself/document.hpp>
#include <didself/errors.hpp>
#include <didself/keys.hpp>
#include <didself/timeutil.hpp>

namespace didself {

/// [not_before, not_after): the end instant itself is already outside the
/// window, so expiry-as-revocation flips exactly at not_after.
struct Validity {
    UnixSeconds not_before = 0;
    UnixSeconds not_after = 0;

    [[nodiscard]] bool contains(UnixSeconds at, UnixSeconds skew = 0) const noexcept {
        return at >= not_before - skew && at < not_after + skew;
    }
};

namespace detail {
struct CertificateImpl;
}

/// Parsed X.509 certificate. Immutable; copies share the parsed state.
class Certificate {
  public:
    Certificate() = default;

    [[nodiscard]] const std::vector<std::uint8_t> &der() const;
    [[nodiscard]] std::string to_pem() const;

    /// The single did:self URI from the Subject Alternative Name, if present
    /// and well formed. SAN entries of other types are ignored.
    [[nodiscard]] const std::optional<Did> &san_did() const;
    /// Raw SAN URI entries (for diagnostics).
    [[nodiscard]] const std::vector<std::string> &san_uris() const;

    [[nodiscard]] const Jwk &public_key() const;
    [[nodiscard]] const Validity &validity() const;
    [[nodiscard]] bool is_ca() const;
    [[nodiscard]] std::string_view signature_alg() const; // "ES256" / "EdDSA"

    /// Signature check under an issuer public key (no chain logic).
    [[nodiscard]] bool verify_signed_by(const Jwk &issuer_key) const;

    static Result<Certificate> from_der(std::span<const std::uint8_t> der);

  private:
    explicit Certificate(std::shared_ptr<const detail::CertificateImpl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const detail::CertificateImpl> impl_;

    friend Result<Certificate> make_root_cert(const KeyPair &, Validity);
    friend Result<Certificate> issue_cert(const KeyPair &, const Certificate &, const Jwk &, const Did &, bool,
                                          Validity);
};

/// Ordered root-to-leaf: index 0 is the controller's self-signed
/// certificate, the last entry is the holder's.
struct CertChain {
    std::vector<Certificate> certs;
};

/// Output of a successful chain validation.
struct ChainVerdict {
    Did did;            // from the leaf SAN
    Jwk holder_key;     // leaf public key
    Jwk controller_key; // root public key; thumbprint equals did.thumbprint
    Validity window;    // intersection of all certificate windows
};

/// Self-signed controller certificate: SAN carries the bare DID as its only
/// URI entry, CA constraint asserted.
Result<Certificate> make_root_cert(const KeyPair &controller, Validity validity);

/// Certificate signed by `issuer`. The SAN DID must carry the thumbprint of
/// the issuer certificate's SAN; intermediates get a suffix-less SAN and the
/// CA constraint, leaves may carry a suffix.
Result<Certificate> issue_cert(const KeyPair &issuer, const Certificate &issuer_cert, const Jwk &subject_key,
                               const Did &san_did, bool is_intermediate, Validity validity);

/// Validates the did:self chain profile, in order:
///   (1) each certificate verifies under its predecessor's key (the root
///       under itself),
///   (2) every validity window contains `at`,
///   (3) non-leaf certificates assert the CA constraint,
///   (4) every SAN URI parses as did:self, all share one thumbprint and
///       non-leaf SANs are suffix-less,
///   (5) the root key's JWK thumbprint equals that shared thumbprint.
Result<ChainVerdict> verify_chain(const CertChain &chain, UnixSeconds at, UnixSeconds clock_skew = 0);

/// Same single-method mapping as the JWT form: id from the leaf SAN, one
/// "#key1" method holding the holder key, authentication and assertion both
/// referencing it.
DidDocument reconstruct_from_chain(const ChainVerdict &verdict);

/// Chain file format: concatenated PEM blocks in root-to-leaf order.
std::string chain_to_pem(const CertChain &chain);
Result<CertChain> chain_from_pem(std::string_view pem);

} // namespace didself
