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

#include <didself/timeutil.hpp>

#include <cctype>
#include <charconv>
#include <cstdio>
#include <ctime>

namespace didself {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (i == 0 && (c == '-' || c == '+') && s.size() > 1) {
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

} // namespace

Result<UnixSeconds> parse_instant(std::string_view text) {
    if (all_digits(text)) {
        UnixSeconds value = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || ptr != text.data() + text.size()) {
            return make_error(Errc::io_error, "cannot parse epoch seconds: " + std::string(text));
        }
        return value;
    }

    int year = 0, month = 0, day = 0, hour = 0, minute = 0, second = 0;
    char z = 0;
    const std::string owned(text);
    if (std::sscanf(owned.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%c", &year, &month, &day, &hour, &minute, &second, &z) !=
            7 ||
        z != 'Z') {
        return make_error(Errc::io_error, "expected YYYY-MM-DDThh:mm:ssZ or epoch seconds, got: " + owned);
    }
    if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 23 || minute > 59 || second > 60) {
        return make_error(Errc::io_error, "instant out of range: " + owned);
    }
    std::tm tm{};
    tm.tm_year = year - 1900;
    tm.tm_mon = month - 1;
    tm.tm_mday = day;
    tm.tm_hour = hour;
    tm.tm_min = minute;
    tm.tm_sec = second;
    const time_t t = timegm(&tm);
    if (t == static_cast<time_t>(-1)) {
        return make_error(Errc::io_error, "instant out of range: " + owned);
    }
    return static_cast<UnixSeconds>(t);
}

std::string format_instant(UnixSeconds at) {
    std::tm tm{};
    const time_t t = static_cast<time_t>(at);
    gmtime_r(&t, &tm);
    char buf[72];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday,
                  tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

} // namespace didself
