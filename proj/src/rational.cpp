#include "mixmean/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <string>

#include <mpfr.h>

#include "mixmean/error.hpp"

namespace mixmean {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

[[noreturn]] void malformed(std::string_view token) {
    throw Error(ErrorCode::MalformedInput, "not a number: '" + std::string(token) + "'");
}

mpz_class mpz_from_digits(std::string_view digits) {
    return mpz_class(std::string(digits), 10);
}

mpz_class pow10(unsigned long e) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, e);
    return p;
}

// decimal := digits [ "." [digits] ] | "." digits, with optional exponent.
Rational parse_decimal(std::string_view body, std::string_view token) {
    std::string_view mantissa = body;
    long exp10 = 0;
    if (auto epos = body.find_first_of("eE"); epos != std::string_view::npos) {
        mantissa = body.substr(0, epos);
        std::string_view es = body.substr(epos + 1);
        bool eneg = false;
        if (!es.empty() && (es.front() == '+' || es.front() == '-')) {
            eneg = es.front() == '-';
            es.remove_prefix(1);
        }
        if (!all_digits(es) || es.size() > 9) malformed(token);
        exp10 = std::strtol(std::string(es).c_str(), nullptr, 10);
        if (eneg) exp10 = -exp10;
    }

    std::string_view ipart = mantissa;
    std::string_view fpart;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
        ipart = mantissa.substr(0, dot);
        fpart = mantissa.substr(dot + 1);
        if (fpart.find('.') != std::string_view::npos) malformed(token);
    }
    if (ipart.empty() && fpart.empty()) malformed(token);
    if (!ipart.empty() && !all_digits(ipart)) malformed(token);
    if (!fpart.empty() && !all_digits(fpart)) malformed(token);

    std::string digits;
    digits.reserve(ipart.size() + fpart.size());
    digits.append(ipart);
    digits.append(fpart);
    mpz_class num = digits.empty() ? mpz_class(0) : mpz_from_digits(digits);
    long e = exp10 - static_cast<long>(fpart.size());

    Rational q;
    if (e >= 0)
        q = Rational(num * pow10(static_cast<unsigned long>(e)));
    else
        q = Rational(num, pow10(static_cast<unsigned long>(-e)));
    q.canonicalize();
    return q;
}

Rational parse_fraction(std::string_view body, std::string_view token) {
    auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) malformed(token);
    mpz_class d = mpz_from_digits(den);
    if (d == 0) malformed(token);
    Rational q(mpz_from_digits(num), d);
    q.canonicalize();
    return q;
}

} // namespace

Rational rational_from_text(std::string_view token) {
    std::string_view body = token;
    bool negative = false;
    if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    if (body.empty()) malformed(token);

    Rational q = body.find('/') != std::string_view::npos ? parse_fraction(body, token)
                                                          : parse_decimal(body, token);
    if (negative) q = -q;
    return q;
}

Rational rational_from_double(double x) {
    Rational q(x);
    q.canonicalize();
    return q;
}

double rational_to_double(const Rational& q) {
    mpfr_t t;
    mpfr_init2(t, 53);
    mpfr_set_q(t, q.get_mpq_t(), MPFR_RNDN);
    double d = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    return d;
}

std::string rational_to_text(const Rational& q) {
    if (q == 0) return "0";

    mpz_class num = q.get_num();
    mpz_class den = q.get_den();

    // Strip the decimal part of the denominator: den = 2^a * 5^b * rest.
    mpz_class rest = den;
    unsigned long a = 0, b = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), 2)) {
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), 2);
        ++a;
    }
    while (mpz_divisible_ui_p(rest.get_mpz_t(), 5)) {
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), 5);
        ++b;
    }
    if (rest != 1)
        return num.get_str() + "/" + den.get_str();

    unsigned long shift = a > b ? a : b;
    if (shift == 0)
        return num.get_str();

    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, shift - a);
    mpz_class scale5;
    mpz_ui_pow_ui(scale5.get_mpz_t(), 5, shift - b);
    mpz_class scaled = num * scale * scale5;

    bool negative = scaled < 0;
    if (negative) scaled = -scaled;
    std::string digits = scaled.get_str();
    if (digits.size() <= shift)
        digits.insert(0, shift + 1 - digits.size(), '0');
    digits.insert(digits.size() - shift, ".");
    while (digits.back() == '0') digits.pop_back();
    if (digits.back() == '.') digits.pop_back();
    return negative ? "-" + digits : digits;
}

} // namespace mixmean
