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

#include <didself/proof.hpp>

#include <didself/base64url.hpp>
#include <didself/jose.hpp>

namespace didself {

Result<ProofJws> sign_document(std::span<const std::uint8_t> doc_bytes, const KeyPair &controller) {
    nlohmann::ordered_json header;
    header["alg"] = jose_alg_label(controller.public_key.type);
    header["jwk"] = jwk_to_json(controller.public_key);
    auto compact = jose::sign_compact(header, doc_bytes, controller);
    if (!compact.ok()) {
        return compact.error();
    }
    return ProofJws{std::move(compact).value()};
}

Result<DidDocument> verify_proof(const Did &did, std::span<const std::uint8_t> doc_bytes, const ProofJws &proof) {
    // step (i): structure and header key
    auto parts = jose::split_compact(proof.compact);
    if (!parts.ok()) {
        return parts.error();
    }
    auto header = jose::decode_header(parts.value());
    if (!header.ok()) {
        return header.error();
    }
    auto key = jose::header_key(header.value());
    if (!key.ok()) {
        return key.error();
    }

    // step (ii): thumbprint binding
    if (jwk_thumbprint(key.value()) != did.thumbprint) {
        return make_error(Errc::thumbprint_mismatch,
                          "header key thumbprint does not match the DID thumbprint");
    }

    // step (iii): signature over the presented document bytes
    const std::string input = parts.value().header + "." + base64url::encode(doc_bytes);
    auto signature = base64url::decode(parts.value().signature);
    if (!signature.ok()) {
        return make_error(Errc::malformed_jws, "signature segment is not base64url");
    }
    if (!verify_message(key.value(), std::span(reinterpret_cast<const std::uint8_t *>(input.data()), input.size()),
                        signature.value())) {
        return make_error(Errc::signature_invalid, "JWS signature does not verify over the document bytes");
    }

    // The compact form must actually carry those bytes as its payload.
    if (parts.value().payload != base64url::encode(doc_bytes)) {
        return make_error(Errc::malformed_jws, "JWS payload segment differs from the presented document bytes");
    }

    auto doc = parse_document(doc_bytes);
    if (!doc.ok()) {
        return doc.error();
    }
    if (doc.value().id != did) {
        return make_error(Errc::id_mismatch, "document id '" + format_did(doc.value().id) +
                                                 "' does not match the queried DID '" + format_did(did) + "'");
    }
    return doc;
}

} // namespace didself
