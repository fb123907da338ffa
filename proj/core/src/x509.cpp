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

#include <didself/x509.hpp>

#include <openssl/asn1.h>
#include <openssl/bio.h>
#include <openssl/bn.h>
#include <openssl/err.h>
#include <openssl/pem.h>
#include <openssl/rand.h>
#include <openssl/x509.h>
#include <openssl/x509v3.h>

#include <cstring>
#include <ctime>

#include "evp_bridge.hpp"

namespace didself {

namespace detail {

struct X509Free {
    void operator()(X509 *cert) const noexcept { X509_free(cert); }
};
using X509Ptr = std::unique_ptr<X509, X509Free>;

/// Everything verify_chain needs, extracted once at parse time. The raw
/// handle is kept for signature checks.
struct CertificateImpl {
    std::vector<std::uint8_t> der;
    X509Ptr handle;
    Jwk public_key;
    Validity validity;
    bool ca = false;
    KeyType sig_key_type = KeyType::ec_p256; // key type implied by the signature algorithm
    std::vector<std::string> san_uris;
    std::optional<Did> san_did;
};

} // namespace detail

namespace {

using detail::CertificateImpl;
using detail::X509Ptr;

Error openssl_error(Errc code, const std::string &what) {
    char buf[256] = {};
    ERR_error_string_n(ERR_peek_last_error(), buf, sizeof(buf));
    ERR_clear_error();
    return make_error(code, what + " (" + buf + ")");
}

Result<UnixSeconds> asn1_time_to_unix(const ASN1_TIME *time) {
    std::tm tm{};
    if (ASN1_TIME_to_tm(time, &tm) != 1) {
        return make_error(Errc::malformed_certificate, "cannot decode certificate validity time");
    }
    return static_cast<UnixSeconds>(timegm(&tm));
}

Result<KeyType> signature_key_type(const X509 *cert) {
    const int nid = X509_get_signature_nid(cert);
    if (nid == NID_ecdsa_with_SHA256) {
        return KeyType::ec_p256;
    }
    if (nid == NID_ED25519) {
        return KeyType::okp_ed25519;
    }
    return make_error(Errc::malformed_certificate,
                      std::string("unsupported certificate signature algorithm: ") + OBJ_nid2sn(nid));
}

bool read_ca_flag(X509 *cert) {
    BASIC_CONSTRAINTS *bc =
        static_cast<BASIC_CONSTRAINTS *>(X509_get_ext_d2i(cert, NID_basic_constraints, nullptr, nullptr));
    if (bc == nullptr) {
        return false;
    }
    const bool ca = bc->ca != 0;
    BASIC_CONSTRAINTS_free(bc);
    return ca;
}

std::vector<std::string> read_san_uris(X509 *cert) {
    std::vector<std::string> uris;
    GENERAL_NAMES *names =
        static_cast<GENERAL_NAMES *>(X509_get_ext_d2i(cert, NID_subject_alt_name, nullptr, nullptr));
    if (names == nullptr) {
        return uris;
    }
    for (int i = 0; i < sk_GENERAL_NAME_num(names); ++i) {
        const GENERAL_NAME *name = sk_GENERAL_NAME_value(names, i);
        if (name->type != GEN_URI) {
            continue; // other SAN entry types are ignored by this profile
        }
        const ASN1_IA5STRING *uri = name->d.uniformResourceIdentifier;
        uris.emplace_back(reinterpret_cast<const char *>(ASN1_STRING_get0_data(uri)),
                          static_cast<std::size_t>(ASN1_STRING_length(uri)));
    }
    GENERAL_NAMES_free(names);
    return uris;
}

Result<std::shared_ptr<const CertificateImpl>> parse_impl(X509Ptr handle, std::vector<std::uint8_t> der) {
    auto impl = std::make_shared<CertificateImpl>();
    impl->der = std::move(der);

    EVP_PKEY *pub = X509_get0_pubkey(handle.get());
    if (pub == nullptr) {
        return openssl_error(Errc::malformed_certificate, "certificate has no readable public key");
    }
    auto jwk = detail::jwk_from_evp(pub);
    if (!jwk.ok()) {
        return make_error(Errc::malformed_certificate, "certificate key out of profile: " + jwk.error().message);
    }
    impl->public_key = std::move(jwk).value();

    auto sig_type = signature_key_type(handle.get());
    if (!sig_type.ok()) {
        return sig_type.error();
    }
    impl->sig_key_type = sig_type.value();

    auto not_before = asn1_time_to_unix(X509_get0_notBefore(handle.get()));
    if (!not_before.ok()) {
        return not_before.error();
    }
    auto not_after = asn1_time_to_unix(X509_get0_notAfter(handle.get()));
    if (!not_after.ok()) {
        return not_after.error();
    }
    impl->validity = Validity{not_before.value(), not_after.value()};

    impl->ca = read_ca_flag(handle.get());
    impl->san_uris = read_san_uris(handle.get());

    std::optional<Did> san_did;
    int did_uris = 0;
    for (const auto &uri : impl->san_uris) {
        if (auto did = parse_did(uri); did.ok()) {
            ++did_uris;
            san_did = std::move(did).value();
        }
    }
    // "exactly one did:self URI": ambiguity voids the binding
    impl->san_did = (did_uris == 1) ? san_did : std::nullopt;

    impl->handle = std::move(handle);
    return std::shared_ptr<const CertificateImpl>(std::move(impl));
}

Result<X509Ptr> build_cert(const Jwk &subject_key, const std::string &san_uri, bool ca, Validity validity,
                           X509 *issuer_cert, EVP_PKEY *issuer_key, KeyType issuer_type) {
    X509Ptr cert(X509_new());
    if (!cert || X509_set_version(cert.get(), X509_VERSION_3) != 1) {
        return openssl_error(Errc::signing_failure, "cannot create certificate");
    }

    // random positive 64-bit serial
    std::uint8_t serial_bytes[8];
    if (RAND_bytes(serial_bytes, sizeof(serial_bytes)) != 1) {
        return openssl_error(Errc::signing_failure, "cannot draw certificate serial");
    }
    serial_bytes[0] &= 0x7f;
    BIGNUM *serial_bn = BN_bin2bn(serial_bytes, sizeof(serial_bytes), nullptr);
    BN_to_ASN1_INTEGER(serial_bn, X509_get_serialNumber(cert.get()));
    BN_free(serial_bn);

    if (ASN1_TIME_set(X509_getm_notBefore(cert.get()), static_cast<time_t>(validity.not_before)) == nullptr ||
        ASN1_TIME_set(X509_getm_notAfter(cert.get()), static_cast<time_t>(validity.not_after)) == nullptr) {
        return openssl_error(Errc::signing_failure, "cannot set certificate validity");
    }

    auto pub = detail::evp_from_public_jwk(subject_key);
    if (!pub.ok()) {
        return pub.error();
    }
    if (X509_set_pubkey(cert.get(), pub.value().get()) != 1) {
        return openssl_error(Errc::signing_failure, "cannot set subject key");
    }

    // Subject CN = subject key thumbprint: unique per key and short enough
    // for a common name. Path building tools chain on these names.
    const std::string cn = jwk_thumbprint(subject_key);
    X509_NAME *subject = X509_get_subject_name(cert.get());
    if (X509_NAME_add_entry_by_txt(subject, "CN", MBSTRING_ASC, reinterpret_cast<const unsigned char *>(cn.c_str()),
                                   -1, -1, 0) != 1) {
        return openssl_error(Errc::signing_failure, "cannot set subject name");
    }
    X509_NAME *issuer_name = issuer_cert != nullptr ? X509_get_subject_name(issuer_cert) : subject;
    if (X509_set_issuer_name(cert.get(), issuer_name) != 1) {
        return openssl_error(Errc::signing_failure, "cannot set issuer name");
    }

    X509V3_CTX ctx;
    X509V3_set_ctx_nodb(&ctx);
    X509V3_set_ctx(&ctx, issuer_cert != nullptr ? issuer_cert : cert.get(), cert.get(), nullptr, nullptr, 0);
    const std::string bc = ca ? "critical,CA:TRUE" : "critical,CA:FALSE";
    const std::string san = "URI:" + san_uri;
    for (const auto &[nid, value] : {std::pair{NID_basic_constraints, bc}, std::pair{NID_subject_alt_name, san}}) {
        X509_EXTENSION *ext = X509V3_EXT_nconf_nid(nullptr, &ctx, nid, value.c_str());
        if (ext == nullptr || X509_add_ext(cert.get(), ext, -1) != 1) {
            X509_EXTENSION_free(ext);
            return openssl_error(Errc::signing_failure, "cannot add certificate extension");
        }
        X509_EXTENSION_free(ext);
    }

    const EVP_MD *md = issuer_type == KeyType::ec_p256 ? EVP_sha256() : nullptr;
    if (X509_sign(cert.get(), issuer_key, md) == 0) {
        return openssl_error(Errc::signing_failure, "certificate signing failed");
    }
    return cert;
}

Result<Certificate> finish_cert(X509Ptr handle) {
    const int len = i2d_X509(handle.get(), nullptr);
    if (len <= 0) {
        return openssl_error(Errc::signing_failure, "cannot encode certificate");
    }
    std::vector<std::uint8_t> der(static_cast<std::size_t>(len));
    std::uint8_t *out = der.data();
    if (i2d_X509(handle.get(), &out) != len) {
        return openssl_error(Errc::signing_failure, "cannot encode certificate");
    }
    return Certificate::from_der(der);
}

std::string pem_encode(const std::vector<std::uint8_t> &der) {
    BIO *bio = BIO_new(BIO_s_mem());
    const std::uint8_t *p = der.data();
    X509 *cert = d2i_X509(nullptr, &p, static_cast<long>(der.size()));
    std::string out;
    if (cert != nullptr && PEM_write_bio_X509(bio, cert) == 1) {
        char *data = nullptr;
        const long len = BIO_get_mem_data(bio, &data);
        out.assign(data, static_cast<std::size_t>(len));
    }
    X509_free(cert);
    BIO_free(bio);
    return out;
}

} // namespace

const std::vector<std::uint8_t> &Certificate::der() const {
    return impl_->der;
}

std::string Certificate::to_pem() const {
    return pem_encode(impl_->der);
}

const std::optional<Did> &Certificate::san_did() const {
    return impl_->san_did;
}

const std::vector<std::string> &Certificate::san_uris() const {
    return impl_->san_uris;
}

const Jwk &Certificate::public_key() const {
    return impl_->public_key;
}

const Validity &Certificate::validity() const {
    return impl_->validity;
}

bool Certificate::is_ca() const {
    return impl_->ca;
}

std::string_view Certificate::signature_alg() const {
    return jose_alg_label(impl_->sig_key_type);
}

bool Certificate::verify_signed_by(const Jwk &issuer_key) const {
    auto pkey = detail::evp_from_public_jwk(issuer_key);
    if (!pkey.ok()) {
        return false;
    }
    const int rc = X509_verify(impl_->handle.get(), pkey.value().get());
    ERR_clear_error();
    return rc == 1;
}

Result<Certificate> Certificate::from_der(std::span<const std::uint8_t> der) {
    if (der.empty()) {
        return make_error(Errc::malformed_certificate, "empty DER buffer");
    }
    const std::uint8_t *p = der.data();
    X509Ptr handle(d2i_X509(nullptr, &p, static_cast<long>(der.size())));
    if (!handle || p != der.data() + der.size()) {
        return openssl_error(Errc::malformed_certificate, "certificate DER does not parse");
    }
    auto impl = parse_impl(std::move(handle), std::vector<std::uint8_t>(der.begin(), der.end()));
    if (!impl.ok()) {
        return impl.error();
    }
    return Certificate(std::move(impl).value());
}

Result<Certificate> make_root_cert(const KeyPair &controller, Validity validity) {
    auto did = did_from_key(controller.public_key);
    if (!did.ok()) {
        return did.error();
    }
    auto handle = build_cert(controller.public_key, format_did(did.value()), /*ca=*/true, validity,
                             /*issuer_cert=*/nullptr, controller.secret->handle(), controller.public_key.type);
    if (!handle.ok()) {
        return handle.error();
    }
    return finish_cert(std::move(handle).value());
}

Result<Certificate> issue_cert(const KeyPair &issuer, const Certificate &issuer_cert, const Jwk &subject_key,
                               const Did &san_did, bool is_intermediate, Validity validity) {
    if (!issuer_cert.san_did()) {
        return make_error(Errc::san_missing, "issuer certificate carries no did:self SAN URI");
    }
    if (issuer_cert.san_did()->thumbprint != san_did.thumbprint) {
        return make_error(Errc::thumbprint_mismatch,
                          "subject DID thumbprint does not match the issuer chain thumbprint");
    }
    if (is_intermediate && san_did.suffix) {
        return make_error(Errc::san_invalid, "intermediate certificates carry the suffix-less DID");
    }
    auto handle = build_cert(subject_key, format_did(san_did), /*ca=*/is_intermediate, validity,
                             issuer_cert.impl_->handle.get(), issuer.secret->handle(), issuer.public_key.type);
    if (!handle.ok()) {
        return handle.error();
    }
    return finish_cert(std::move(handle).value());
}

Result<ChainVerdict> verify_chain(const CertChain &chain, UnixSeconds at, UnixSeconds clock_skew) {
    const auto &certs = chain.certs;
    if (certs.size() < 2) {
        return make_error(Errc::malformed_chain,
                          "chain needs at least a controller root and a holder leaf, got " +
                              std::to_string(certs.size()) + " certificate(s)");
    }

    // (1) signature links, root under itself
    for (std::size_t i = 0; i < certs.size(); ++i) {
        const Jwk &issuer_key = i == 0 ? certs[0].public_key() : certs[i - 1].public_key();
        if (!certs[i].verify_signed_by(issuer_key)) {
            return make_error(Errc::broken_chain_link,
                              "certificate " + std::to_string(i) + " does not verify under its issuer key");
        }
    }

    // (2) validity windows
    Validity window{certs[0].validity().not_before, certs[0].validity().not_after};
    for (std::size_t i = 0; i < certs.size(); ++i) {
        const Validity &v = certs[i].validity();
        if (at < v.not_before - clock_skew) {
            return make_error(Errc::not_yet_valid, "certificate " + std::to_string(i) + " is not yet valid");
        }
        if (at >= v.not_after + clock_skew) {
            return make_error(Errc::expired, "certificate " + std::to_string(i) + " is expired");
        }
        window.not_before = std::max(window.not_before, v.not_before);
        window.not_after = std::min(window.not_after, v.not_after);
    }

    // (3) CA constraint on every issuing certificate
    for (std::size_t i = 0; i + 1 < certs.size(); ++i) {
        if (!certs[i].is_ca()) {
            return make_error(Errc::missing_ca_constraint,
                              "certificate " + std::to_string(i) + " lacks the CA basic constraint");
        }
    }

    // (4) SAN DIDs: present, one shared thumbprint, suffix-less except the leaf
    for (std::size_t i = 0; i < certs.size(); ++i) {
        const auto &san = certs[i].san_did();
        if (!san) {
            return make_error(Errc::san_missing, "certificate " + std::to_string(i) +
                                                     " carries no single did:self SAN URI");
        }
        if (san->thumbprint != certs[0].san_did()->thumbprint) {
            return make_error(Errc::thumbprint_mismatch,
                              "certificate " + std::to_string(i) + " SAN thumbprint differs from the chain's");
        }
        if (i + 1 < certs.size() && san->suffix) {
            return make_error(Errc::san_invalid,
                              "certificate " + std::to_string(i) + " is not a leaf but its SAN carries a suffix");
        }
    }

    // (5) the chain thumbprint must be the root key's thumbprint
    const Certificate &root = certs.front();
    const Certificate &leaf = certs.back();
    if (jwk_thumbprint(root.public_key()) != root.san_did()->thumbprint) {
        return make_error(Errc::thumbprint_mismatch,
                          "root key thumbprint does not match the SAN DID thumbprint");
    }

    return ChainVerdict{*leaf.san_did(), leaf.public_key(), root.public_key(), window};
}

DidDocument reconstruct_from_chain(const ChainVerdict &verdict) {
    DidDocument doc;
    doc.id = verdict.did;
    doc.verification_methods.push_back(VerificationMethod{"#key1", std::string(kJsonWebKey2020), verdict.holder_key});
    doc.authentication = {"#key1"};
    doc.assertion = {"#key1"};
    return doc;
}

std::string chain_to_pem(const CertChain &chain) {
    std::string out;
    for (const auto &cert : chain.certs) {
        out += cert.to_pem();
    }
    return out;
}

Result<CertChain> chain_from_pem(std::string_view pem) {
    BIO *bio = BIO_new_mem_buf(pem.data(), static_cast<int>(pem.size()));
    if (bio == nullptr) {
        return make_error(Errc::malformed_chain, "cannot read PEM data");
    }
    CertChain chain;
    while (true) {
        X509 *raw = PEM_read_bio_X509(bio, nullptr, nullptr, nullptr);
        if (raw == nullptr) {
            ERR_clear_error();
            break;
        }
        X509Ptr handle(raw);
        const int len = i2d_X509(handle.get(), nullptr);
        std::vector<std::uint8_t> der(static_cast<std::size_t>(len > 0 ? len : 0));
        if (len > 0) {
            std::uint8_t *out = der.data();
            i2d_X509(handle.get(), &out);
        }
        auto cert = Certificate::from_der(der);
        if (!cert.ok()) {
            BIO_free(bio);
            return cert.error();
        }
        chain.certs.push_back(std::move(cert).value());
    }
    BIO_free(bio);
    if (chain.certs.empty()) {
        return make_error(Errc::malformed_chain, "no certificates found in PEM data");
    }
    return chain;
}

} // namespace didself
