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

#include <didself/errors.hpp>

namespace didself {

std::string_view errc_name(Errc code) {
    switch (code) {
    case Errc::invalid_jwk:
        return "invalid_jwk";
    case Errc::invalid_did_method:
        return "invalid_did_method";
    case Errc::invalid_did_thumbprint:
        return "invalid_did_thumbprint";
    case Errc::invalid_did_suffix:
        return "invalid_did_suffix";
    case Errc::invalid_did_path:
        return "invalid_did_path";
    case Errc::malformed_document:
        return "malformed_document";
    case Errc::missing_member:
        return "missing_member";
    case Errc::duplicate_method_id:
        return "duplicate_method_id";
    case Errc::dangling_reference:
        return "dangling_reference";
    case Errc::malformed_jws:
        return "malformed_jws";
    case Errc::malformed_jwt:
        return "malformed_jwt";
    case Errc::malformed_certificate:
        return "malformed_certificate";
    case Errc::malformed_chain:
        return "malformed_chain";
    case Errc::malformed_bundle:
        return "malformed_bundle";
    case Errc::unknown_kind:
        return "unknown_kind";
    case Errc::missing_header_jwk:
        return "missing_header_jwk";
    case Errc::algorithm_mismatch:
        return "algorithm_mismatch";
    case Errc::thumbprint_mismatch:
        return "thumbprint_mismatch";
    case Errc::signature_invalid:
        return "signature_invalid";
    case Errc::id_mismatch:
        return "id_mismatch";
    case Errc::broken_chain_link:
        return "broken_chain_link";
    case Errc::missing_ca_constraint:
        return "missing_ca_constraint";
    case Errc::san_missing:
        return "san_missing";
    case Errc::san_invalid:
        return "san_invalid";
    case Errc::expired:
        return "expired";
    case Errc::not_yet_valid:
        return "not_yet_valid";
    case Errc::missing_expiry:
        return "missing_expiry";
    case Errc::algorithm_not_allowed:
        return "algorithm_not_allowed";
    case Errc::signing_failure:
        return "signing_failure";
    case Errc::io_error:
        return "io_error";
    }
    return "unknown_error";
}

} // namespace didself
