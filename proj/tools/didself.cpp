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

// didself — controller and verifier workflows for the did:self method.
//
// All verification commands take --at so runs are reproducible; the wall
// clock is only the default. This is the one layer that touches files: the
// library below it is pure.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <didself/didself.hpp>

namespace {

using namespace didself;

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;

// Verification failures leave a machine-readable record on stderr.
int fail(const Error &error) {
    nlohmann::ordered_json out;
    out["error"] = errc_name(error.code);
    out["message"] = error.message;
    std::cerr << out.dump() << "\n";
    return kExitVerification;
}

int fail_usage(const std::string &message) {
    nlohmann::ordered_json out;
    out["error"] = "usage";
    out["message"] = message;
    std::cerr << out.dump() << "\n";
    return kExitUsage;
}

Result<std::string> read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return make_error(Errc::io_error, "cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

Status write_file(const std::string &path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        return make_error(Errc::io_error, "cannot open " + path + " for writing");
    }
    out << contents;
    out.flush();
    if (!out) {
        return make_error(Errc::io_error, "short write to " + path);
    }
    return {};
}

std::string strip_trailing_newlines(std::string text) {
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) {
        text.pop_back();
    }
    return text;
}

Result<KeyPair> load_keypair(const std::string &path) {
    auto text = read_file(path);
    if (!text.ok()) {
        return text.error();
    }
    return keypair_from_private_jwk_text(text.value());
}

Result<Jwk> load_public_jwk(const std::string &path) {
    auto text = read_file(path);
    if (!text.ok()) {
        return text.error();
    }
    return jwk_from_text(text.value());
}

UnixSeconds now_seconds() {
    return std::chrono::duration_cast<std::chrono::seconds>(std::chrono::system_clock::now().time_since_epoch())
        .count();
}

Result<UnixSeconds> resolve_at(const std::string &at_flag) {
    if (at_flag.empty()) {
        return now_seconds();
    }
    return parse_instant(at_flag);
}

Result<Validity> parse_window(const std::string &not_before, const std::string &not_after) {
    auto begin = parse_instant(not_before);
    if (!begin.ok()) {
        return begin.error();
    }
    auto end = parse_instant(not_after);
    if (!end.ok()) {
        return end.error();
    }
    if (end.value() <= begin.value()) {
        return make_error(Errc::io_error, "--not-after must be later than --not-before");
    }
    return Validity{begin.value(), end.value()};
}

// Document output goes through the deterministic serializer so identical
// inputs give identical stdout.
void print_document(const DidDocument &doc) {
    std::cout << serialize_document_text(doc) << "\n";
}

int cmd_keygen(const std::string &alg, const std::string &out_path) {
    KeyType type;
    if (alg == "ES256") {
        type = KeyType::ec_p256;
    } else if (alg == "EdDSA") {
        type = KeyType::okp_ed25519;
    } else {
        return fail_usage("--alg must be ES256 or EdDSA");
    }
    auto pair = generate_keypair(type);
    if (!pair.ok()) {
        return fail(pair.error());
    }
    const std::string jwk_text = private_jwk(pair.value()).dump();
    if (out_path.empty()) {
        std::cout << jwk_text << "\n";
    } else {
        if (auto s = write_file(out_path, jwk_text + "\n"); !s.ok()) {
            return fail(s.error());
        }
        // keep private keys private; JWK files carry `d`
        std::error_code ec;
        std::filesystem::permissions(out_path,
                                     std::filesystem::perms::owner_read | std::filesystem::perms::owner_write,
                                     std::filesystem::perm_options::replace, ec);
        std::cout << format_did(did_from_key(pair.value().public_key).value()) << "\n";
    }
    return kExitOk;
}

int cmd_did(const std::string &key_path, const std::string &suffix) {
    auto text = read_file(key_path);
    if (!text.ok()) {
        return fail(text.error());
    }
    // accept either a public or a private JWK file
    auto key = jwk_from_text(text.value());
    if (!key.ok()) {
        return fail(key.error());
    }
    auto did = did_from_key(key.value(), suffix.empty() ? std::nullopt : std::optional(suffix));
    if (!did.ok()) {
        return fail(did.error());
    }
    std::cout << format_did(did.value()) << "\n";
    return kExitOk;
}

int cmd_thumbprint(const std::string &key_path) {
    auto text = read_file(key_path);
    if (!text.ok()) {
        return fail(text.error());
    }
    const auto json = nlohmann::json::parse(text.value(), nullptr, false);
    if (json.is_discarded()) {
        return fail(make_error(Errc::invalid_jwk, "JWK file is not valid JSON"));
    }
    auto thumbprint = jwk_thumbprint(json);
    if (!thumbprint.ok()) {
        return fail(thumbprint.error());
    }
    std::cout << thumbprint.value() << "\n";
    return kExitOk;
}

int cmd_doc_create(const std::string &did_text, const std::vector<std::string> &key_paths,
                   const std::string &out_path) {
    auto did = parse_did(did_text);
    if (!did.ok()) {
        return fail(did.error());
    }
    std::vector<VerificationMethod> methods;
    std::vector<std::string> fragments;
    for (std::size_t i = 0; i < key_paths.size(); ++i) {
        auto key = load_public_jwk(key_paths[i]);
        if (!key.ok()) {
            return fail(key.error());
        }
        const std::string id = "#key" + std::to_string(i + 1);
        methods.push_back(VerificationMethod{id, std::string(kJsonWebKey2020), std::move(key).value()});
        fragments.push_back(id);
    }
    auto doc = build_document(std::move(did).value(), std::move(methods), fragments, fragments);
    if (!doc.ok()) {
        return fail(doc.error());
    }
    const std::string text = serialize_document_text(doc.value());
    if (out_path.empty()) {
        std::cout << text << "\n";
    } else if (auto s = write_file(out_path, text); !s.ok()) {
        return fail(s.error());
    }
    return kExitOk;
}

int cmd_doc_sign(const std::string &doc_path, const std::string &key_path, const std::string &out_path) {
    auto doc = read_file(doc_path);
    if (!doc.ok()) {
        return fail(doc.error());
    }
    auto controller = load_keypair(key_path);
    if (!controller.ok()) {
        return fail(controller.error());
    }
    auto proof = sign_document(std::span(reinterpret_cast<const std::uint8_t *>(doc.value().data()),
                                         doc.value().size()),
                               controller.value());
    if (!proof.ok()) {
        return fail(proof.error());
    }
    if (out_path.empty()) {
        std::cout << proof.value().compact << "\n";
    } else if (auto s = write_file(out_path, proof.value().compact + "\n"); !s.ok()) {
        return fail(s.error());
    }
    return kExitOk;
}

int cmd_doc_verify(const std::string &did_text, const std::string &doc_path, const std::string &proof_path) {
    auto did = parse_did(did_text);
    if (!did.ok()) {
        return fail(did.error());
    }
    auto doc_bytes = read_file(doc_path);
    if (!doc_bytes.ok()) {
        return fail(doc_bytes.error());
    }
    auto proof_text = read_file(proof_path);
    if (!proof_text.ok()) {
        return fail(proof_text.error());
    }
    auto doc = verify_proof(did.value(),
                            std::span(reinterpret_cast<const std::uint8_t *>(doc_bytes.value().data()),
                                      doc_bytes.value().size()),
                            ProofJws{strip_trailing_newlines(proof_text.value())});
    if (!doc.ok()) {
        return fail(doc.error());
    }
    print_document(doc.value());
    return kExitOk;
}

int cmd_jwt_issue(const std::string &key_path, const std::string &suffix, const std::string &holder_path,
                  const std::string &iat, const std::string &exp, const std::string &x5c_path,
                  const std::string &out_path) {
    auto controller = load_keypair(key_path);
    if (!controller.ok()) {
        return fail(controller.error());
    }
    auto holder = load_public_jwk(holder_path);
    if (!holder.ok()) {
        return fail(holder.error());
    }
    JwtIssueOptions options;
    if (!iat.empty()) {
        auto t = parse_instant(iat);
        if (!t.ok()) {
            return fail_usage(t.error().message);
        }
        options.issued_at = t.value();
    }
    if (!exp.empty()) {
        auto t = parse_instant(exp);
        if (!t.ok()) {
            return fail_usage(t.error().message);
        }
        options.expires_at = t.value();
    }
    if (!x5c_path.empty()) {
        auto pem = read_file(x5c_path);
        if (!pem.ok()) {
            return fail(pem.error());
        }
        auto chain = chain_from_pem(pem.value());
        if (!chain.ok()) {
            return fail(chain.error());
        }
        options.x5c = std::move(chain).value();
    }
    auto token = issue_jwt(controller.value(), suffix.empty() ? std::nullopt : std::optional(suffix), holder.value(),
                           options);
    if (!token.ok()) {
        return fail(token.error());
    }
    if (out_path.empty()) {
        std::cout << token.value() << "\n";
    } else if (auto s = write_file(out_path, token.value() + "\n"); !s.ok()) {
        return fail(s.error());
    }
    return kExitOk;
}

int cmd_jwt_verify(const std::string &token_path, const std::string &at_flag, UnixSeconds skew) {
    auto token = read_file(token_path);
    if (!token.ok()) {
        return fail(token.error());
    }
    auto at = resolve_at(at_flag);
    if (!at.ok()) {
        return fail_usage(at.error().message);
    }
    auto claims = verify_jwt(strip_trailing_newlines(token.value()), at.value(), skew);
    if (!claims.ok()) {
        return fail(claims.error());
    }
    nlohmann::ordered_json out;
    out["iss"] = format_did(claims.value().issuer);
    if (claims.value().subject_suffix) {
        out["sub"] = *claims.value().subject_suffix;
    }
    out["cnf"] = nlohmann::ordered_json{{"jwk", jwk_to_json(claims.value().holder_key)}};
    if (claims.value().issued_at) {
        out["iat"] = *claims.value().issued_at;
    }
    if (claims.value().expires_at) {
        out["exp"] = *claims.value().expires_at;
    }
    std::cout << out.dump() << "\n";
    return kExitOk;
}

int cmd_x509_root(const std::string &key_path, const std::string &not_before, const std::string &not_after,
                  const std::string &out_path) {
    auto controller = load_keypair(key_path);
    if (!controller.ok()) {
        return fail(controller.error());
    }
    auto window = parse_window(not_before, not_after);
    if (!window.ok()) {
        return fail_usage(window.error().message);
    }
    auto cert = make_root_cert(controller.value(), window.value());
    if (!cert.ok()) {
        return fail(cert.error());
    }
    if (out_path.empty()) {
        std::cout << cert.value().to_pem();
    } else if (auto s = write_file(out_path, cert.value().to_pem()); !s.ok()) {
        return fail(s.error());
    }
    return kExitOk;
}

int cmd_x509_issue(const std::string &issuer_key_path, const std::string &issuer_cert_path,
                   const std::string &subject_key_path, const std::string &suffix, bool intermediate,
                   const std::string &not_before, const std::string &not_after, const std::string &out_path) {
    auto issuer = load_keypair(issuer_key_path);
    if (!issuer.ok()) {
        return fail(issuer.error());
    }
    auto issuer_pem = read_file(issuer_cert_path);
    if (!issuer_pem.ok()) {
        return fail(issuer_pem.error());
    }
    auto issuer_chain = chain_from_pem(issuer_pem.value());
    if (!issuer_chain.ok()) {
        return fail(issuer_chain.error());
    }
    const Certificate &issuer_cert = issuer_chain.value().certs.back();
    if (!issuer_cert.san_did()) {
        return fail(make_error(Errc::san_missing, "issuer certificate carries no did:self SAN URI"));
    }
    auto subject_key = load_public_jwk(subject_key_path);
    if (!subject_key.ok()) {
        return fail(subject_key.error());
    }
    auto window = parse_window(not_before, not_after);
    if (!window.ok()) {
        return fail_usage(window.error().message);
    }
    if (intermediate && !suffix.empty()) {
        return fail_usage("--intermediate certificates carry the suffix-less DID; drop --suffix");
    }
    Did san_did{issuer_cert.san_did()->thumbprint, suffix.empty() ? std::nullopt : std::optional(suffix)};
    auto cert = issue_cert(issuer.value(), issuer_cert, subject_key.value(), san_did, intermediate, window.value());
    if (!cert.ok()) {
        return fail(cert.error());
    }
    if (out_path.empty()) {
        std::cout << cert.value().to_pem();
    } else if (auto s = write_file(out_path, cert.value().to_pem()); !s.ok()) {
        return fail(s.error());
    }
    return kExitOk;
}

int cmd_x509_verify(const std::string &chain_path, const std::string &at_flag, UnixSeconds skew) {
    auto pem = read_file(chain_path);
    if (!pem.ok()) {
        return fail(pem.error());
    }
    auto chain = chain_from_pem(pem.value());
    if (!chain.ok()) {
        return fail(chain.error());
    }
    auto at = resolve_at(at_flag);
    if (!at.ok()) {
        return fail_usage(at.error().message);
    }
    auto verdict = verify_chain(chain.value(), at.value(), skew);
    if (!verdict.ok()) {
        return fail(verdict.error());
    }
    nlohmann::ordered_json out;
    out["did"] = format_did(verdict.value().did);
    out["holderKey"] = jwk_to_json(verdict.value().holder_key);
    out["controllerKey"] = jwk_to_json(verdict.value().controller_key);
    out["notBefore"] = format_instant(verdict.value().window.not_before);
    out["notAfter"] = format_instant(verdict.value().window.not_after);
    std::cout << out.dump() << "\n";
    return kExitOk;
}

int cmd_bundle_pack(const std::string &did_text, const std::string &kind, const std::string &doc_path,
                    const std::string &proof_path, const std::string &token_path, const std::string &chain_path,
                    const std::string &out_path) {
    Bundle bundle;
    bundle.did = did_text;
    if (kind == "explicit") {
        if (doc_path.empty() || proof_path.empty()) {
            return fail_usage("kind explicit needs --doc and --proof");
        }
        auto doc = read_file(doc_path);
        if (!doc.ok()) {
            return fail(doc.error());
        }
        auto proof = read_file(proof_path);
        if (!proof.ok()) {
            return fail(proof.error());
        }
        bundle.body = ExplicitBody{std::vector<std::uint8_t>(doc.value().begin(), doc.value().end()),
                                   strip_trailing_newlines(proof.value())};
    } else if (kind == "jwt") {
        if (token_path.empty()) {
            return fail_usage("kind jwt needs --token");
        }
        auto token = read_file(token_path);
        if (!token.ok()) {
            return fail(token.error());
        }
        bundle.body = JwtBody{strip_trailing_newlines(token.value())};
    } else if (kind == "x509") {
        if (chain_path.empty()) {
            return fail_usage("kind x509 needs --chain");
        }
        auto pem = read_file(chain_path);
        if (!pem.ok()) {
            return fail(pem.error());
        }
        bundle.body = X509Body{pem.value()};
    } else {
        return fail_usage("--kind must be explicit, jwt or x509");
    }
    const std::string text = encode_bundle(bundle);
    if (out_path.empty()) {
        std::cout << text << "\n";
    } else if (auto s = write_file(out_path, text); !s.ok()) {
        return fail(s.error());
    }
    return kExitOk;
}

int cmd_bundle_unpack(const std::string &bundle_path, const std::string &out_doc) {
    auto text = read_file(bundle_path);
    if (!text.ok()) {
        return fail(text.error());
    }
    auto bundle = decode_bundle_text(text.value());
    if (!bundle.ok()) {
        return fail(bundle.error());
    }
    nlohmann::ordered_json out;
    out["did"] = bundle.value().did;
    out["kind"] = attestation_kind_name(bundle.value().kind());
    if (const auto *body = std::get_if<ExplicitBody>(&bundle.value().body)) {
        out["document"] = std::string(body->document.begin(), body->document.end());
        out["proof"] = body->proof;
        if (!out_doc.empty()) {
            if (auto s = write_file(out_doc, std::string(body->document.begin(), body->document.end())); !s.ok()) {
                return fail(s.error());
            }
        }
    } else if (const auto *body = std::get_if<JwtBody>(&bundle.value().body)) {
        out["token"] = body->token;
    } else {
        out["chain"] = std::get<X509Body>(bundle.value().body).chain_pem;
    }
    std::cout << out.dump() << "\n";
    return kExitOk;
}

int cmd_resolve(const std::string &did_text, const std::string &bundle_path, const std::string &at_flag,
                UnixSeconds skew, bool require_expiry) {
    auto text = read_file(bundle_path);
    if (!text.ok()) {
        return fail(text.error());
    }
    auto bundle = decode_bundle_text(text.value());
    if (!bundle.ok()) {
        return fail(bundle.error());
    }
    auto at = resolve_at(at_flag);
    if (!at.ok()) {
        return fail_usage(at.error().message);
    }
    ResolverPolicy policy;
    policy.clock_skew = skew;
    policy.require_expiry = require_expiry;
    auto resolution = resolve(did_text, bundle.value(), at.value(), policy);
    if (!resolution.ok()) {
        return fail(resolution.error());
    }
    print_document(resolution.value().document);
    return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"did:self controller and verifier tool"};
    app.require_subcommand(1);

    // keygen
    std::string keygen_alg = "ES256", keygen_out;
    auto *keygen = app.add_subcommand("keygen", "Generate a key pair as a private JWK file");
    keygen->add_option("--alg", keygen_alg, "ES256 or EdDSA")->capture_default_str();
    keygen->add_option("--out", keygen_out, "Output path (stdout if omitted)");

    // did
    std::string did_key, did_suffix;
    auto *did_cmd = app.add_subcommand("did", "Print the DID for a key");
    did_cmd->add_option("--key", did_key, "JWK file (public or private)")->required();
    did_cmd->add_option("--suffix", did_suffix, "Optional suffix");

    // thumbprint
    std::string tp_key;
    auto *tp_cmd = app.add_subcommand("thumbprint", "Print the RFC 7638 thumbprint of a JWK");
    tp_cmd->add_option("--key", tp_key, "JWK file")->required();

    // doc create|sign|verify
    auto *doc_cmd = app.add_subcommand("doc", "DID document workflows");
    doc_cmd->require_subcommand(1);
    std::string dc_did, dc_out;
    std::vector<std::string> dc_keys;
    auto *doc_create = doc_cmd->add_subcommand("create", "Build a document from holder keys");
    doc_create->add_option("--did", dc_did, "Document id")->required();
    doc_create->add_option("--key", dc_keys, "Holder public JWK file (repeatable; becomes #key1, #key2, ...)")
        ->required();
    doc_create->add_option("--out", dc_out, "Output path (stdout if omitted)");
    std::string ds_doc, ds_key, ds_out;
    auto *doc_sign = doc_cmd->add_subcommand("sign", "Sign document bytes with the controller key");
    doc_sign->add_option("--doc", ds_doc, "Document file")->required();
    doc_sign->add_option("--key", ds_key, "Controller private JWK file")->required();
    doc_sign->add_option("--out", ds_out, "Output path (stdout if omitted)");
    std::string dv_did, dv_doc, dv_proof;
    auto *doc_verify = doc_cmd->add_subcommand("verify", "Verify a document proof against a DID");
    doc_verify->add_option("--did", dv_did, "Queried DID")->required();
    doc_verify->add_option("--doc", dv_doc, "Document file (exact signed bytes)")->required();
    doc_verify->add_option("--proof", dv_proof, "Compact JWS file")->required();

    // jwt issue|verify
    auto *jwt_cmd = app.add_subcommand("jwt", "Implicit DID documents as JWTs");
    jwt_cmd->require_subcommand(1);
    std::string ji_key, ji_suffix, ji_holder, ji_iat, ji_exp, ji_x5c, ji_out;
    auto *jwt_issue = jwt_cmd->add_subcommand("issue", "Issue a controller-signed JWT");
    jwt_issue->add_option("--key", ji_key, "Controller private JWK file")->required();
    jwt_issue->add_option("--suffix", ji_suffix, "DID suffix (becomes sub)");
    jwt_issue->add_option("--holder", ji_holder, "Holder public JWK file (becomes cnf.jwk)")->required();
    jwt_issue->add_option("--iat", ji_iat, "Issue instant (RFC 3339 or epoch seconds)");
    jwt_issue->add_option("--exp", ji_exp, "Expiry instant");
    jwt_issue->add_option("--x5c", ji_x5c, "PEM chain to embed instead of the jwk header");
    jwt_issue->add_option("--out", ji_out, "Output path (stdout if omitted)");
    std::string jv_token, jv_at;
    UnixSeconds jv_skew = 0;
    auto *jwt_verify_cmd = jwt_cmd->add_subcommand("verify", "Verify a JWT and print its claims");
    jwt_verify_cmd->add_option("--token", jv_token, "Token file")->required();
    jwt_verify_cmd->add_option("--at", jv_at, "Verification instant (default: now)");
    jwt_verify_cmd->add_option("--clock-skew", jv_skew, "Accepted clock skew in seconds");

    // x509 root|issue|verify
    auto *x509_cmd = app.add_subcommand("x509", "Implicit DID documents as certificate chains");
    x509_cmd->require_subcommand(1);
    std::string xr_key, xr_nb, xr_na, xr_out;
    auto *x509_root = x509_cmd->add_subcommand("root", "Create the controller's self-signed certificate");
    x509_root->add_option("--key", xr_key, "Controller private JWK file")->required();
    x509_root->add_option("--not-before", xr_nb, "Window start")->required();
    x509_root->add_option("--not-after", xr_na, "Window end")->required();
    x509_root->add_option("--out", xr_out, "Output path (stdout if omitted)");
    std::string xi_ikey, xi_icert, xi_skey, xi_suffix, xi_nb, xi_na, xi_out;
    bool xi_intermediate = false;
    auto *x509_issue = x509_cmd->add_subcommand("issue", "Issue an intermediate or holder certificate");
    x509_issue->add_option("--issuer-key", xi_ikey, "Issuer private JWK file")->required();
    x509_issue->add_option("--issuer-cert", xi_icert, "Issuer certificate PEM")->required();
    x509_issue->add_option("--subject-key", xi_skey, "Subject public JWK file")->required();
    x509_issue->add_option("--suffix", xi_suffix, "Leaf DID suffix");
    x509_issue->add_flag("--intermediate", xi_intermediate, "Issue an intermediate (CA) certificate");
    x509_issue->add_option("--not-before", xi_nb, "Window start")->required();
    x509_issue->add_option("--not-after", xi_na, "Window end")->required();
    x509_issue->add_option("--out", xi_out, "Output path (stdout if omitted)");
    std::string xv_chain, xv_at;
    UnixSeconds xv_skew = 0;
    auto *x509_verify = x509_cmd->add_subcommand("verify", "Validate a chain and print the verdict");
    x509_verify->add_option("--chain", xv_chain, "PEM chain file (root to leaf)")->required();
    x509_verify->add_option("--at", xv_at, "Verification instant (default: now)");
    x509_verify->add_option("--clock-skew", xv_skew, "Accepted clock skew in seconds");

    // bundle pack|unpack
    auto *bundle_cmd = app.add_subcommand("bundle", "Dissemination envelopes");
    bundle_cmd->require_subcommand(1);
    std::string bp_did, bp_kind, bp_doc, bp_proof, bp_token, bp_chain, bp_out;
    auto *bundle_pack = bundle_cmd->add_subcommand("pack", "Pack an attestation into a bundle file");
    bundle_pack->add_option("--did", bp_did, "Subject DID")->required();
    bundle_pack->add_option("--kind", bp_kind, "explicit, jwt or x509")->required();
    bundle_pack->add_option("--doc", bp_doc, "Document file (kind explicit)");
    bundle_pack->add_option("--proof", bp_proof, "Proof JWS file (kind explicit)");
    bundle_pack->add_option("--token", bp_token, "Token file (kind jwt)");
    bundle_pack->add_option("--chain", bp_chain, "PEM chain file (kind x509)");
    bundle_pack->add_option("--out", bp_out, "Output path (stdout if omitted)");
    std::string bu_bundle, bu_out_doc;
    auto *bundle_unpack = bundle_cmd->add_subcommand("unpack", "Show (and optionally extract) bundle contents");
    bundle_unpack->add_option("--bundle", bu_bundle, "Bundle file")->required();
    bundle_unpack->add_option("--out-doc", bu_out_doc, "Write the explicit document bytes here");

    // resolve
    std::string rs_did, rs_bundle, rs_at;
    UnixSeconds rs_skew = 0;
    bool rs_require_expiry = false;
    auto *resolve_cmd = app.add_subcommand("resolve", "Resolve a DID against a bundle");
    resolve_cmd->add_option("--did", rs_did, "Queried DID")->required();
    resolve_cmd->add_option("--bundle", rs_bundle, "Bundle file")->required();
    resolve_cmd->add_option("--at", rs_at, "Verification instant (default: now)");
    resolve_cmd->add_option("--clock-skew", rs_skew, "Accepted clock skew in seconds");
    resolve_cmd->add_flag("--require-expiry", rs_require_expiry, "Reject attestations without an expiry");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e); // --help
        }
        app.exit(e);
        return kExitUsage;
    }

    if (keygen->parsed()) {
        return cmd_keygen(keygen_alg, keygen_out);
    }
    if (did_cmd->parsed()) {
        return cmd_did(did_key, did_suffix);
    }
    if (tp_cmd->parsed()) {
        return cmd_thumbprint(tp_key);
    }
    if (doc_cmd->parsed()) {
        if (doc_create->parsed()) {
            return cmd_doc_create(dc_did, dc_keys, dc_out);
        }
        if (doc_sign->parsed()) {
            return cmd_doc_sign(ds_doc, ds_key, ds_out);
        }
        return cmd_doc_verify(dv_did, dv_doc, dv_proof);
    }
    if (jwt_cmd->parsed()) {
        if (jwt_issue->parsed()) {
            return cmd_jwt_issue(ji_key, ji_suffix, ji_holder, ji_iat, ji_exp, ji_x5c, ji_out);
        }
        return cmd_jwt_verify(jv_token, jv_at, jv_skew);
    }
    if (x509_cmd->parsed()) {
        if (x509_root->parsed()) {
            return cmd_x509_root(xr_key, xr_nb, xr_na, xr_out);
        }
        if (x509_issue->parsed()) {
            return cmd_x509_issue(xi_ikey, xi_icert, xi_skey, xi_suffix, xi_intermediate, xi_nb, xi_na, xi_out);
        }
        return cmd_x509_verify(xv_chain, xv_at, xv_skew);
    }
    if (bundle_cmd->parsed()) {
        if (bundle_pack->parsed()) {
            return cmd_bundle_pack(bp_did, bp_kind, bp_doc, bp_proof, bp_token, bp_chain, bp_out);
        }
        return cmd_bundle_unpack(bu_bundle, bu_out_doc);
    }
    if (resolve_cmd->parsed()) {
        return cmd_resolve(rs_did, rs_bundle, rs_at, rs_skew, rs_require_expiry);
    }
    return kExitUsage;
}
