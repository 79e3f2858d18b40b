#include "burnside/rational.hpp"

#include <algorithm>
#include <cctype>

namespace burnside {

namespace {

bool all_digits(const std::string& s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

Rat parse_rational(const std::string& text) {
    std::string s = text;
    bool negative = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        negative = s[0] == '-';
        s.erase(0, 1);
    }
    if (s.empty()) throw std::invalid_argument("parse_rational: empty input");

    Rat value;
    if (auto slash = s.find('/'); slash != std::string::npos) {
        const std::string num = s.substr(0, slash);
        const std::string den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw std::invalid_argument("parse_rational: bad fraction '" + text + "'");
        mpz_class p(num, 10), q(den, 10);
        if (q == 0) throw std::invalid_argument("parse_rational: zero denominator");
        value = Rat(p, q);
        value.canonicalize();
    } else if (auto dot = s.find('.'); dot != std::string::npos) {
        const std::string whole = dot == 0 ? "0" : s.substr(0, dot);
        const std::string frac = s.substr(dot + 1);
        if (!all_digits(whole) || (!frac.empty() && !all_digits(frac)))
            throw std::invalid_argument("parse_rational: bad decimal '" + text + "'");
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        mpz_class digits(whole + frac, 10);
        value = Rat(digits, scale);
        value.canonicalize();
    } else {
        if (!all_digits(s))
            throw std::invalid_argument("parse_rational: bad integer '" + text + "'");
        value = Rat(mpz_class(s, 10));
    }
    return negative ? Rat(-value) : value;
}

}  // namespace burnside
