// SPDX-License-Identifier: Apache-2.0
#include "text_io.hpp"

#include "isacaf/error.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

namespace isacaf::detail {

std::string_view strip_comment(std::string_view line) {
    const auto pos = line.find('#');
    return pos == std::string_view::npos ? line : line.substr(0, pos);
}

std::vector<std::string> split_tokens(std::string_view line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',') {
            if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

double parse_real(const std::string& token) {
    double v = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v))
        throw Error(ErrorCode::Parse, "not a finite number: '" + token + "'");
    return v;
}

cplx parse_complex(const std::string& token) {
    if (token.empty()) throw Error(ErrorCode::Parse, "empty complex literal");
    const char last = static_cast<char>(std::tolower(static_cast<unsigned char>(token.back())));
    if (last != 'j' && last != 'i') return {parse_real(token), 0.0};

    const std::string body = token.substr(0, token.size() - 1);
    // Split at the last sign that is not the leading sign and not an exponent sign.
    std::size_t split = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') &&
            std::tolower(static_cast<unsigned char>(body[i - 1])) != 'e') {
            split = i;
            break;
        }
    }
    auto imag_of = [&](const std::string& s) {
        if (s.empty() || s == "+") return 1.0;
        if (s == "-") return -1.0;
        return parse_real(s);
    };
    if (split == std::string::npos) return {0.0, imag_of(body)};
    return {parse_real(body.substr(0, split)), imag_of(body.substr(split))};
}

}  // namespace isacaf::detail
