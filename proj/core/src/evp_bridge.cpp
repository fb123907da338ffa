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

#include "evp_bridge.hpp"

#include <openssl/bn.h>
#include <openssl/core_names.h>
#include <openssl/ecdsa.h>
#include <openssl/err.h>
#include <openssl/param_build.h>

#include <didself/base64url.hpp>

namespace didself::detail {

namespace {

constexpr const char *kP256GroupName = "prime256v1";
constexpr std::size_t kCoordinateBytes = 32;
constexpr std::size_t kJoseSignatureBytes = 64;

struct BnFree {
    void operator()(BIGNUM *bn) const noexcept { BN_free(bn); }
};
using BnPtr = std::unique_ptr<BIGNUM, BnFree>;

struct PkeyCtxFree {
    void operator()(EVP_PKEY_CTX *ctx) const noexcept { EVP_PKEY_CTX_free(ctx); }
};
using PkeyCtxPtr = std::unique_ptr<EVP_PKEY_CTX, PkeyCtxFree>;

struct MdCtxFree {
    void operator()(EVP_MD_CTX *ctx) const noexcept { EVP_MD_CTX_free(ctx); }
};
using MdCtxPtr = std::unique_ptr<EVP_MD_CTX, MdCtxFree>;

struct ParamBldFree {
    void operator()(OSSL_PARAM_BLD *bld) const noexcept { OSSL_PARAM_BLD_free(bld); }
};
struct ParamFree {
    void operator()(OSSL_PARAM *params) const noexcept { OSSL_PARAM_free(params); }
};

struct EcdsaSigFree {
    void operator()(ECDSA_SIG *sig) const noexcept { ECDSA_SIG_free(sig); }
};
using EcdsaSigPtr = std::unique_ptr<ECDSA_SIG, EcdsaSigFree>;

Error openssl_error(Errc code, const std::string &what) {
    char buf[256] = {};
    ERR_error_string_n(ERR_peek_last_error(), buf, sizeof(buf));
    ERR_clear_error();
    return make_error(code, what + " (" + buf + ")");
}

Result<std::vector<std::uint8_t>> decode_coordinate(const std::string &value, const char *member) {
    auto decoded = base64url::decode(value);
    if (!decoded.ok() || decoded.value().size() != kCoordinateBytes) {
        return make_error(Errc::invalid_jwk, std::string("JWK member '") + member + "' must decode to 32 bytes");
    }
    return std::move(decoded).value();
}

Result<EvpPkeyPtr> ec_fromdata(const Jwk &key, std::span<const std::uint8_t> priv) {
    auto x = decode_coordinate(key.x, "x");
    if (!x.ok()) {
        return x.error();
    }
    auto y = decode_coordinate(key.y, "y");
    if (!y.ok()) {
        return y.error();
    }
    std::vector<std::uint8_t> point;
    point.reserve(1 + 2 * kCoordinateBytes);
    point.push_back(0x04); // uncompressed
    point.insert(point.end(), x.value().begin(), x.value().end());
    point.insert(point.end(), y.value().begin(), y.value().end());

    std::unique_ptr<OSSL_PARAM_BLD, ParamBldFree> bld(OSSL_PARAM_BLD_new());
    BnPtr d;
    if (!bld || !OSSL_PARAM_BLD_push_utf8_string(bld.get(), OSSL_PKEY_PARAM_GROUP_NAME, kP256GroupName, 0) ||
        !OSSL_PARAM_BLD_push_octet_string(bld.get(), OSSL_PKEY_PARAM_PUB_KEY, point.data(), point.size())) {
        return openssl_error(Errc::signing_failure, "cannot assemble EC key parameters");
    }
    if (!priv.empty()) {
        d.reset(BN_bin2bn(priv.data(), static_cast<int>(priv.size()), nullptr));
        if (!d || !OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_PRIV_KEY, d.get())) {
            return openssl_error(Errc::signing_failure, "cannot assemble EC private parameter");
        }
    }
    std::unique_ptr<OSSL_PARAM, ParamFree> params(OSSL_PARAM_BLD_to_param(bld.get()));
    PkeyCtxPtr ctx(EVP_PKEY_CTX_new_from_name(nullptr, "EC", nullptr));
    if (!params || !ctx || EVP_PKEY_fromdata_init(ctx.get()) <= 0) {
        return openssl_error(Errc::signing_failure, "cannot initialize EC import");
    }
    EVP_PKEY *raw = nullptr;
    const int selection = priv.empty() ? EVP_PKEY_PUBLIC_KEY : EVP_PKEY_KEYPAIR;
    if (EVP_PKEY_fromdata(ctx.get(), &raw, selection, params.get()) <= 0 || raw == nullptr) {
        return openssl_error(Errc::invalid_jwk, "EC key rejected by crypto backend");
    }
    EvpPkeyPtr pkey(raw);

    // Hostile coordinates must not pass: require the point on the curve, and
    // for private keys require d*G to match the public point.
    PkeyCtxPtr check(EVP_PKEY_CTX_new_from_pkey(nullptr, pkey.get(), nullptr));
    if (!check) {
        return openssl_error(Errc::signing_failure, "cannot create EC check context");
    }
    if (priv.empty()) {
        if (EVP_PKEY_public_check(check.get()) <= 0) {
            ERR_clear_error();
            return make_error(Errc::invalid_jwk, "EC public point is not on P-256");
        }
    } else {
        if (EVP_PKEY_check(check.get()) <= 0) {
            ERR_clear_error();
            return make_error(Errc::invalid_jwk, "EC private key does not match its public coordinates");
        }
    }
    return pkey;
}

} // namespace

Result<EvpPkeyPtr> evp_generate(KeyType type) {
    const char *name = type == KeyType::ec_p256 ? "EC" : "ED25519";
    PkeyCtxPtr ctx(EVP_PKEY_CTX_new_from_name(nullptr, name, nullptr));
    if (!ctx || EVP_PKEY_keygen_init(ctx.get()) <= 0) {
        return openssl_error(Errc::signing_failure, "cannot initialize key generation");
    }
    if (type == KeyType::ec_p256 && EVP_PKEY_CTX_set_group_name(ctx.get(), kP256GroupName) <= 0) {
        return openssl_error(Errc::signing_failure, "cannot select P-256");
    }
    EVP_PKEY *raw = nullptr;
    if (EVP_PKEY_generate(ctx.get(), &raw) <= 0 || raw == nullptr) {
        return openssl_error(Errc::signing_failure, "key generation failed");
    }
    return EvpPkeyPtr(raw);
}

Result<EvpPkeyPtr> evp_from_public_jwk(const Jwk &key) {
    if (key.type == KeyType::ec_p256) {
        return ec_fromdata(key, {});
    }
    auto x = decode_coordinate(key.x, "x");
    if (!x.ok()) {
        return x.error();
    }
    EVP_PKEY *raw = EVP_PKEY_new_raw_public_key(EVP_PKEY_ED25519, nullptr, x.value().data(), x.value().size());
    if (raw == nullptr) {
        return openssl_error(Errc::invalid_jwk, "Ed25519 public key rejected by crypto backend");
    }
    return EvpPkeyPtr(raw);
}

Result<EvpPkeyPtr> evp_from_private_jwk(const Jwk &public_part, std::span<const std::uint8_t> d) {
    if (d.size() != kCoordinateBytes) {
        return make_error(Errc::invalid_jwk, "JWK member 'd' must decode to 32 bytes");
    }
    if (public_part.type == KeyType::ec_p256) {
        return ec_fromdata(public_part, d);
    }
    EVP_PKEY *raw = EVP_PKEY_new_raw_private_key(EVP_PKEY_ED25519, nullptr, d.data(), d.size());
    if (raw == nullptr) {
        return openssl_error(Errc::invalid_jwk, "Ed25519 private key rejected by crypto backend");
    }
    EvpPkeyPtr pkey(raw);
    // The JWK's x must be the public key this seed derives.
    std::uint8_t derived[kCoordinateBytes];
    std::size_t len = sizeof(derived);
    if (EVP_PKEY_get_raw_public_key(pkey.get(), derived, &len) <= 0 || len != kCoordinateBytes) {
        return openssl_error(Errc::signing_failure, "cannot derive Ed25519 public key");
    }
    if (base64url::encode(std::span<const std::uint8_t>(derived, len)) != public_part.x) {
        return make_error(Errc::invalid_jwk, "Ed25519 private key does not match its public coordinate");
    }
    return pkey;
}

Result<Jwk> jwk_from_evp(EVP_PKEY *pkey) {
    const int base = EVP_PKEY_get_base_id(pkey);
    if (base == EVP_PKEY_EC) {
        char group[64] = {};
        std::size_t group_len = 0;
        if (EVP_PKEY_get_group_name(pkey, group, sizeof(group), &group_len) <= 0 ||
            std::string_view(group, group_len) != kP256GroupName) {
            return make_error(Errc::invalid_jwk, "unsupported EC group, expected P-256");
        }
        BIGNUM *x_raw = nullptr;
        BIGNUM *y_raw = nullptr;
        if (EVP_PKEY_get_bn_param(pkey, OSSL_PKEY_PARAM_EC_PUB_X, &x_raw) <= 0 ||
            EVP_PKEY_get_bn_param(pkey, OSSL_PKEY_PARAM_EC_PUB_Y, &y_raw) <= 0) {
            BN_free(x_raw);
            return openssl_error(Errc::signing_failure, "cannot read EC public coordinates");
        }
        BnPtr x(x_raw), y(y_raw);
        std::uint8_t xb[kCoordinateBytes], yb[kCoordinateBytes];
        if (BN_bn2binpad(x.get(), xb, kCoordinateBytes) != kCoordinateBytes ||
            BN_bn2binpad(y.get(), yb, kCoordinateBytes) != kCoordinateBytes) {
            return make_error(Errc::invalid_jwk, "EC coordinate does not fit 32 bytes");
        }
        Jwk key;
        key.type = KeyType::ec_p256;
        key.x = base64url::encode(std::span<const std::uint8_t>(xb, sizeof(xb)));
        key.y = base64url::encode(std::span<const std::uint8_t>(yb, sizeof(yb)));
        return key;
    }
    if (base == EVP_PKEY_ED25519) {
        std::uint8_t raw[kCoordinateBytes];
        std::size_t len = sizeof(raw);
        if (EVP_PKEY_get_raw_public_key(pkey, raw, &len) <= 0 || len != kCoordinateBytes) {
            return openssl_error(Errc::signing_failure, "cannot read Ed25519 public key");
        }
        Jwk key;
        key.type = KeyType::okp_ed25519;
        key.x = base64url::encode(std::span<const std::uint8_t>(raw, len));
        return key;
    }
    return make_error(Errc::invalid_jwk, "unsupported key type (only P-256 and Ed25519 are in profile)");
}

Result<std::vector<std::uint8_t>> evp_private_scalar(EVP_PKEY *pkey, KeyType type) {
    std::vector<std::uint8_t> out(kCoordinateBytes);
    if (type == KeyType::ec_p256) {
        BIGNUM *d_raw = nullptr;
        if (EVP_PKEY_get_bn_param(pkey, OSSL_PKEY_PARAM_PRIV_KEY, &d_raw) <= 0) {
            return openssl_error(Errc::signing_failure, "cannot read EC private scalar");
        }
        BnPtr d(d_raw);
        if (BN_bn2binpad(d.get(), out.data(), kCoordinateBytes) != kCoordinateBytes) {
            return make_error(Errc::signing_failure, "EC private scalar does not fit 32 bytes");
        }
        return out;
    }
    std::size_t len = out.size();
    if (EVP_PKEY_get_raw_private_key(pkey, out.data(), &len) <= 0 || len != kCoordinateBytes) {
        return openssl_error(Errc::signing_failure, "cannot read Ed25519 private key");
    }
    return out;
}

Result<std::vector<std::uint8_t>> evp_sign_jose(EVP_PKEY *pkey, KeyType type, std::span<const std::uint8_t> message) {
    MdCtxPtr ctx(EVP_MD_CTX_new());
    if (!ctx) {
        return openssl_error(Errc::signing_failure, "cannot create signing context");
    }
    const EVP_MD *md = type == KeyType::ec_p256 ? EVP_sha256() : nullptr;
    if (EVP_DigestSignInit(ctx.get(), nullptr, md, nullptr, pkey) <= 0) {
        return openssl_error(Errc::signing_failure, "cannot initialize signer");
    }
    std::size_t sig_len = 0;
    if (EVP_DigestSign(ctx.get(), nullptr, &sig_len, message.data(), message.size()) <= 0) {
        return openssl_error(Errc::signing_failure, "cannot size signature");
    }
    std::vector<std::uint8_t> sig(sig_len);
    if (EVP_DigestSign(ctx.get(), sig.data(), &sig_len, message.data(), message.size()) <= 0) {
        return openssl_error(Errc::signing_failure, "signing failed");
    }
    sig.resize(sig_len);

    if (type == KeyType::okp_ed25519) {
        return sig; // already the raw 64-byte JOSE form
    }

    // ES256: convert the DER ECDSA-Sig-Value to raw R||S.
    const std::uint8_t *p = sig.data();
    EcdsaSigPtr parsed(d2i_ECDSA_SIG(nullptr, &p, static_cast<long>(sig.size())));
    if (!parsed) {
        return openssl_error(Errc::signing_failure, "cannot parse ECDSA signature");
    }
    std::vector<std::uint8_t> raw(kJoseSignatureBytes);
    if (BN_bn2binpad(ECDSA_SIG_get0_r(parsed.get()), raw.data(), kCoordinateBytes) != kCoordinateBytes ||
        BN_bn2binpad(ECDSA_SIG_get0_s(parsed.get()), raw.data() + kCoordinateBytes, kCoordinateBytes) !=
            kCoordinateBytes) {
        return make_error(Errc::signing_failure, "ECDSA signature component does not fit 32 bytes");
    }
    return raw;
}

bool evp_verify_jose(EVP_PKEY *pkey, KeyType type, std::span<const std::uint8_t> message,
                     std::span<const std::uint8_t> signature) {
    std::vector<std::uint8_t> der;
    std::span<const std::uint8_t> sig = signature;
    if (type == KeyType::ec_p256) {
        if (signature.size() != kJoseSignatureBytes) {
            return false;
        }
        BnPtr r(BN_bin2bn(signature.data(), kCoordinateBytes, nullptr));
        BnPtr s(BN_bin2bn(signature.data() + kCoordinateBytes, kCoordinateBytes, nullptr));
        EcdsaSigPtr ecdsa(ECDSA_SIG_new());
        if (!r || !s || !ecdsa || ECDSA_SIG_set0(ecdsa.get(), r.get(), s.get()) != 1) {
            return false;
        }
        // ECDSA_SIG_set0 took ownership
        r.release();
        s.release();
        const int der_len = i2d_ECDSA_SIG(ecdsa.get(), nullptr);
        if (der_len <= 0) {
            return false;
        }
        der.resize(static_cast<std::size_t>(der_len));
        std::uint8_t *out = der.data();
        if (i2d_ECDSA_SIG(ecdsa.get(), &out) != der_len) {
            return false;
        }
        sig = der;
    } else if (signature.size() != kJoseSignatureBytes) {
        return false;
    }

    MdCtxPtr ctx(EVP_MD_CTX_new());
    if (!ctx) {
        return false;
    }
    const EVP_MD *md = type == KeyType::ec_p256 ? EVP_sha256() : nullptr;
    if (EVP_DigestVerifyInit(ctx.get(), nullptr, md, nullptr, pkey) <= 0) {
        ERR_clear_error();
        return false;
    }
    const int rc = EVP_DigestVerify(ctx.get(), sig.data(), sig.size(), message.data(), message.size());
    ERR_clear_error();
    return rc == 1;
}

} // namespace didself::detail
