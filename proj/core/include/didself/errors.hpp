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

#include <cassert>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

namespace didself {

/// Stable error identifiers. Every verification failure carries the code of
/// the step that rejected the input, so callers (and the CLI) can react to
/// the step identity rather than parsing messages.
enum class Errc {
    // structural / parsing
    invalid_jwk,
    invalid_did_method,
    invalid_did_thumbprint,
    invalid_did_suffix,
    invalid_did_path,
    malformed_document,
    missing_member,
    duplicate_method_id,
    dangling_reference,
    malformed_jws,
    malformed_jwt,
    malformed_certificate,
    malformed_chain,
    malformed_bundle,
    unknown_kind,
    // binding / verification steps
    missing_header_jwk,
    algorithm_mismatch,
    thumbprint_mismatch,
    signature_invalid,
    id_mismatch,
    broken_chain_link,
    missing_ca_constraint,
    san_missing,
    san_invalid,
    // time window
    expired,
    not_yet_valid,
    // resolver policy
    missing_expiry,
    algorithm_not_allowed,
    // environment
    signing_failure,
    io_error,
};

/// Machine-readable snake_case name for an error code (e.g. "expired").
std::string_view errc_name(Errc code);

struct Error {
    Errc code;
    std::string message;
};

inline Error make_error(Errc code, std::string message) {
    return Error{code, std::move(message)};
}

/// Minimal expected-style result. Verification entry points return Result so
/// hostile inputs surface as values, never as exceptions.
template <typename T> class [[nodiscard]] Result {
  public:
    Result(T value) : v_(std::in_place_index<0>, std::move(value)) {}
    Result(Error error) : v_(std::in_place_index<1>, std::move(error)) {}

    [[nodiscard]] bool ok() const noexcept { return v_.index() == 0; }
    explicit operator bool() const noexcept { return ok(); }

    [[nodiscard]] const T &value() const & {
        assert(ok());
        return std::get<0>(v_);
    }
    [[nodiscard]] T &value() & {
        assert(ok());
        return std::get<0>(v_);
    }
    [[nodiscard]] T &&value() && {
        assert(ok());
        return std::get<0>(std::move(v_));
    }

    [[nodiscard]] const Error &error() const {
        assert(!ok());
        return std::get<1>(v_);
    }

  private:
    std::variant<T, Error> v_;
};

/// Result for operations with no payload.
class [[nodiscard]] Status {
  public:
    Status() = default;
    Status(Error error) : error_(std::move(error)), failed_(true) {}

    [[nodiscard]] bool ok() const noexcept { return !failed_; }
    explicit operator bool() const noexcept { return ok(); }

    [[nodiscard]] const Error &error() const {
        assert(failed_);
        return error_;
    }

  private:
    Error error_{};
    bool failed_ = false;
};

} // namespace didself
