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

#include <didself/did.hpp>

#include <didself/base64url.hpp>

namespace didself {

namespace {

constexpr std::size_t kMaxSuffixLength = 128;

bool suffix_char(char c) {
    // URI-unreserved: ALPHA / DIGIT / "-" / "." / "_" / "~"
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' || c == '.' ||
           c == '_' || c == '~';
}

bool valid_thumbprint(std::string_view text) {
    return text.size() == kThumbprintLength && base64url::is_base64url(text);
}

} // namespace

bool valid_suffix(std::string_view suffix) {
    if (suffix.empty() || suffix.size() > kMaxSuffixLength) {
        return false;
    }
    for (const char c : suffix) {
        if (!suffix_char(c)) {
            return false;
        }
    }
    return true;
}

Result<Did> parse_did(std::string_view text) {
    if (text.substr(0, kDidPrefix.size()) != kDidPrefix) {
        return make_error(Errc::invalid_did_method,
                          "expected a did:self identifier, got: " + std::string(text.substr(0, 32)));
    }
    const std::string_view rest = text.substr(kDidPrefix.size());

    const std::size_t slash = rest.find('/');
    const std::string_view thumbprint = rest.substr(0, slash);
    if (!valid_thumbprint(thumbprint)) {
        return make_error(Errc::invalid_did_thumbprint,
                          "thumbprint must be 43 base64url characters, got " + std::to_string(thumbprint.size()));
    }

    Did did;
    did.thumbprint = std::string(thumbprint);
    if (slash != std::string_view::npos) {
        if (rest.find('/', slash + 1) != std::string_view::npos) {
            return make_error(Errc::invalid_did_path, "suffix must be a single path segment");
        }
        const std::string_view suffix = rest.substr(slash + 1);
        if (!valid_suffix(suffix)) {
            return make_error(Errc::invalid_did_suffix, "suffix must be 1-128 characters from [A-Za-z0-9._~-]");
        }
        did.suffix = std::string(suffix);
    }
    return did;
}

std::string format_did(const Did &did) {
    std::string out(kDidPrefix);
    out += did.thumbprint;
    if (did.suffix) {
        out += '/';
        out += *did.suffix;
    }
    return out;
}

Result<Did> did_from_key(const Jwk &key, std::optional<std::string> suffix) {
    if (suffix && !valid_suffix(*suffix)) {
        return make_error(Errc::invalid_did_suffix, "suffix must be 1-128 characters from [A-Za-z0-9._~-]");
    }
    Did did;
    did.thumbprint = jwk_thumbprint(key);
    did.suffix = std::move(suffix);
    return did;
}

} // namespace didself
