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

// Internal OpenSSL 3 bridge. Signatures cross this boundary in JOSE format:
// ES256 as raw R||S (64 bytes), EdDSA as the raw Ed25519 signature.

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include <openssl/evp.h>

#include <didself/errors.hpp>
#include <didself/jwk.hpp>

namespace didself::detail {

struct EvpPkeyFree {
    void operator()(EVP_PKEY *p) const noexcept { EVP_PKEY_free(p); }
};
using EvpPkeyPtr = std::unique_ptr<EVP_PKEY, EvpPkeyFree>;

Result<EvpPkeyPtr> evp_generate(KeyType type);

/// Import a public key; EC points are checked to lie on the curve.
Result<EvpPkeyPtr> evp_from_public_jwk(const Jwk &key);

/// Import a private key and check it against the public coordinates.
Result<EvpPkeyPtr> evp_from_private_jwk(const Jwk &public_part, std::span<const std::uint8_t> d);

/// Public half of an EVP key as a validated Jwk (P-256 / Ed25519 only).
Result<Jwk> jwk_from_evp(EVP_PKEY *pkey);

/// Private scalar / seed, 32 bytes.
Result<std::vector<std::uint8_t>> evp_private_scalar(EVP_PKEY *pkey, KeyType type);

Result<std::vector<std::uint8_t>> evp_sign_jose(EVP_PKEY *pkey, KeyType type, std::span<const std::uint8_t> message);

bool evp_verify_jose(EVP_PKEY *pkey, KeyType type, std::span<const std::uint8_t> message,
                     std::span<const std::uint8_t> signature);

/// Signing capability behind the public KeyPair type.
class PrivateKeyImpl {
  public:
    PrivateKeyImpl(EvpPkeyPtr pkey, KeyType type) : pkey_(std::move(pkey)), type_(type) {}

    [[nodiscard]] EVP_PKEY *handle() const noexcept { return pkey_.get(); }
    [[nodiscard]] KeyType type() const noexcept { return type_; }

  private:
    EvpPkeyPtr pkey_;
    KeyType type_;
};

} // namespace didself::detail

namespace didself {

/// Defined here so every core TU that signs can reach the EVP handle; the
/// public header only forward-declares it.
class PrivateKey : public detail::PrivateKeyImpl {
  public:
    using detail::PrivateKeyImpl::PrivateKeyImpl;
};

} // namespace didself
