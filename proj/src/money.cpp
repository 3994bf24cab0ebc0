// SPDX-License-Identifier: MIT
#include "slc/money.hpp"

#include <stdexcept>

namespace slc {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto fail = [&] { throw std::invalid_argument("not a number: '" + s + "'"); };
    if (s.empty()) fail();

    std::string_view body = s;
    bool neg = false;
    if (body.front() == '-' || body.front() == '+') {
        neg = body.front() == '-';
        body.remove_prefix(1);
    }

    Rational out;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        auto num = body.substr(0, slash), den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) fail();
        mpz_class n{std::string(num)}, d{std::string(den)};
        if (d == 0) fail();
        out = Rational(n, d);
    } else {
        // decimal with optional exponent
        int exp10 = 0;
        if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
            auto es = body.substr(e + 1);
            bool eneg = false;
            if (!es.empty() && (es.front() == '-' || es.front() == '+')) {
                eneg = es.front() == '-';
                es.remove_prefix(1);
            }
            if (!all_digits(es) || es.size() > 4) fail();
            exp10 = std::stoi(std::string(es)) * (eneg ? -1 : 1);
            body = body.substr(0, e);
        }
        std::string digits;
        if (auto dot = body.find('.'); dot != std::string_view::npos) {
            auto ip = body.substr(0, dot), fp = body.substr(dot + 1);
            if (ip.empty() && fp.empty()) fail();
            if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) fail();
            digits = std::string(ip) + std::string(fp);
            exp10 -= static_cast<int>(fp.size());
        } else {
            if (!all_digits(body)) fail();
            digits = std::string(body);
        }
        mpz_class n(digits.empty() ? std::string("0") : digits);
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
        out = exp10 >= 0 ? Rational(n * scale) : Rational(n, scale);
    }
    out.canonicalize();
    return neg ? Rational(-out) : out;
}

std::string to_string(const Rational& q) {
    Rational c(q);
    c.canonicalize();
    return c.get_str();
}

}  // namespace slc
