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

#include <didself/document.hpp>

#include <algorithm>
#include <unordered_set>

namespace didself {

namespace {

constexpr const char *kKnownMembers[] = {"id", "verificationMethod", "authentication", "assertion"};

bool known_member(const std::string &name) {
    return std::find(std::begin(kKnownMembers), std::end(kKnownMembers), name) != std::end(kKnownMembers);
}

Status check_invariants(const DidDocument &doc) {
    std::unordered_set<std::string> ids;
    for (const auto &method : doc.verification_methods) {
        if (method.id.size() < 2 || method.id.front() != '#') {
            return make_error(Errc::malformed_document,
                              "verification method id must be a '#'-prefixed fragment: " + method.id);
        }
        if (!ids.insert(method.id).second) {
            return make_error(Errc::duplicate_method_id, "duplicate verification method id: " + method.id);
        }
    }
    for (const auto *relationship : {&doc.authentication, &doc.assertion}) {
        for (const auto &fragment : *relationship) {
            if (!ids.contains(fragment)) {
                return make_error(Errc::dangling_reference,
                                  "relationship references unknown verification method: " + fragment);
            }
        }
    }
    return {};
}

Result<VerificationMethod> method_from_json(const nlohmann::ordered_json &json) {
    if (!json.is_object()) {
        return make_error(Errc::malformed_document, "verificationMethod entry is not an object");
    }
    const auto id = json.find("id");
    if (id == json.end() || !id->is_string()) {
        return make_error(Errc::missing_member, "verification method lacks a string 'id'");
    }
    const auto type = json.find("type");
    if (type == json.end() || !type->is_string()) {
        return make_error(Errc::missing_member, "verification method lacks a string 'type'");
    }
    if (type->get<std::string>() != kJsonWebKey2020) {
        return make_error(Errc::malformed_document,
                          "unsupported verification method type: " + type->get<std::string>());
    }
    const auto jwk = json.find("publicKeyJwk");
    if (jwk == json.end()) {
        return make_error(Errc::missing_member, "verification method lacks 'publicKeyJwk'");
    }
    auto key = jwk_from_json(*jwk);
    if (!key.ok()) {
        return key.error();
    }
    VerificationMethod method;
    method.id = id->get<std::string>();
    method.public_key = std::move(key).value();
    return method;
}

Result<std::vector<std::string>> fragments_from_json(const nlohmann::ordered_json &json, const char *member) {
    std::vector<std::string> out;
    if (!json.is_array()) {
        return make_error(Errc::malformed_document, std::string("'") + member + "' is not an array");
    }
    for (const auto &entry : json) {
        if (!entry.is_string()) {
            return make_error(Errc::malformed_document, std::string("'") + member + "' entry is not a string");
        }
        out.push_back(entry.get<std::string>());
    }
    return out;
}

} // namespace

Result<DidDocument> build_document(Did id, std::vector<VerificationMethod> methods,
                                   std::vector<std::string> authentication, std::vector<std::string> assertion) {
    DidDocument doc;
    doc.id = std::move(id);
    doc.verification_methods = std::move(methods);
    doc.authentication = std::move(authentication);
    doc.assertion = std::move(assertion);
    if (auto s = check_invariants(doc); !s.ok()) {
        return s.error();
    }
    return doc;
}

std::string serialize_document_text(const DidDocument &doc) {
    nlohmann::ordered_json out;
    out["id"] = format_did(doc.id);
    auto &methods = out["verificationMethod"] = nlohmann::ordered_json::array();
    for (const auto &method : doc.verification_methods) {
        nlohmann::ordered_json entry;
        entry["id"] = method.id;
        entry["type"] = method.type_label;
        entry["publicKeyJwk"] = jwk_to_json(method.public_key);
        methods.push_back(std::move(entry));
    }
    out["authentication"] = doc.authentication;
    out["assertion"] = doc.assertion;
    for (const auto &[name, value] : doc.extra.items()) {
        out[name] = value;
    }
    return out.dump();
}

std::vector<std::uint8_t> serialize_document(const DidDocument &doc) {
    const std::string text = serialize_document_text(doc);
    return {text.begin(), text.end()};
}

Result<DidDocument> parse_document_text(std::string_view text) {
    const auto json = nlohmann::ordered_json::parse(text, nullptr, false);
    if (json.is_discarded()) {
        return make_error(Errc::malformed_document, "document is not valid JSON");
    }
    if (!json.is_object()) {
        return make_error(Errc::malformed_document, "document is not a JSON object");
    }

    const auto id = json.find("id");
    if (id == json.end()) {
        return make_error(Errc::missing_member, "document lacks required member 'id'");
    }
    if (!id->is_string()) {
        return make_error(Errc::malformed_document, "document 'id' is not a string");
    }
    auto did = parse_did(id->get<std::string>());
    if (!did.ok()) {
        return did.error();
    }

    DidDocument doc;
    doc.id = std::move(did).value();

    if (const auto methods = json.find("verificationMethod"); methods != json.end()) {
        if (!methods->is_array()) {
            return make_error(Errc::malformed_document, "'verificationMethod' is not an array");
        }
        for (const auto &entry : *methods) {
            auto method = method_from_json(entry);
            if (!method.ok()) {
                return method.error();
            }
            doc.verification_methods.push_back(std::move(method).value());
        }
    }
    if (const auto auth = json.find("authentication"); auth != json.end()) {
        auto fragments = fragments_from_json(*auth, "authentication");
        if (!fragments.ok()) {
            return fragments.error();
        }
        doc.authentication = std::move(fragments).value();
    }
    if (const auto assertion = json.find("assertion"); assertion != json.end()) {
        auto fragments = fragments_from_json(*assertion, "assertion");
        if (!fragments.ok()) {
            return fragments.error();
        }
        doc.assertion = std::move(fragments).value();
    }

    // Future properties pass through untouched.
    for (const auto &[name, value] : json.items()) {
        if (!known_member(name)) {
            doc.extra[name] = value;
        }
    }

    if (auto s = check_invariants(doc); !s.ok()) {
        return s.error();
    }
    return doc;
}

Result<DidDocument> parse_document(std::span<const std::uint8_t> bytes) {
    return parse_document_text(std::string_view(reinterpret_cast<const char *>(bytes.data()), bytes.size()));
}

} // namespace didself
