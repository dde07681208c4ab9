#include "mixmean/enclosure.hpp"

#include "mixmean/error.hpp"

namespace mixmean::oracle {

Enclosure::Enclosure(mpfr_prec_t precision) {
    mpfr_init2(lo_, precision);
    mpfr_init2(hi_, precision);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Enclosure::Enclosure(const Enclosure& other) {
    mpfr_init2(lo_, mpfr_get_prec(other.lo_));
    mpfr_init2(hi_, mpfr_get_prec(other.hi_));
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Enclosure& Enclosure::operator=(const Enclosure& other) {
    if (this != &other) {
        mpfr_set_prec(lo_, mpfr_get_prec(other.lo_));
        mpfr_set_prec(hi_, mpfr_get_prec(other.hi_));
        mpfr_set(lo_, other.lo_, MPFR_RNDD);
        mpfr_set(hi_, other.hi_, MPFR_RNDU);
    }
    return *this;
}

Enclosure::~Enclosure() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Enclosure Enclosure::exact(const Rational& q, mpfr_prec_t precision) {
    Enclosure e(precision);
    mpfr_set_q(e.lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(e.hi_, q.get_mpq_t(), MPFR_RNDU);
    return e;
}

Enclosure Enclosure::nth_root(const Rational& q, unsigned long n, mpfr_prec_t precision) {
    if (q < 0)
        throw Error(ErrorCode::InvalidArgument, "root of a negative rational");
    Enclosure e = exact(q, precision);
    mpfr_rootn_ui(e.lo_, e.lo_, n, MPFR_RNDD);
    mpfr_rootn_ui(e.hi_, e.hi_, n, MPFR_RNDU);
    return e;
}

Enclosure Enclosure::pow(const Rational& q, double exponent, mpfr_prec_t precision) {
    if (q <= 0)
        throw Error(ErrorCode::InvalidArgument, "power of a nonpositive rational");
    Enclosure e = exact(q, precision);
    mpfr_t ex;
    mpfr_init2(ex, 53);
    mpfr_set_d(ex, exponent, MPFR_RNDN); // doubles are exact in 53 bits
    // x^e is monotone in x for e >= 0 and antitone for e < 0.
    if (exponent >= 0.0) {
        mpfr_pow(e.lo_, e.lo_, ex, MPFR_RNDD);
        mpfr_pow(e.hi_, e.hi_, ex, MPFR_RNDU);
    } else {
        mpfr_t tmp;
        mpfr_init2(tmp, precision);
        mpfr_set(tmp, e.lo_, MPFR_RNDD);
        mpfr_pow(e.lo_, e.hi_, ex, MPFR_RNDD);
        mpfr_pow(e.hi_, tmp, ex, MPFR_RNDU);
        mpfr_clear(tmp);
    }
    mpfr_clear(ex);
    return e;
}

Enclosure Enclosure::log(const Rational& q, mpfr_prec_t precision) {
    if (q <= 0)
        throw Error(ErrorCode::InvalidArgument, "log of a nonpositive rational");
    Enclosure e = exact(q, precision);
    mpfr_log(e.lo_, e.lo_, MPFR_RNDD);
    mpfr_log(e.hi_, e.hi_, MPFR_RNDU);
    return e;
}

void Enclosure::add(const Enclosure& other) {
    mpfr_add(lo_, lo_, other.lo_, MPFR_RNDD);
    mpfr_add(hi_, hi_, other.hi_, MPFR_RNDU);
}

void Enclosure::sub(const Enclosure& other) {
    mpfr_sub(lo_, lo_, other.hi_, MPFR_RNDD);
    mpfr_sub(hi_, hi_, other.lo_, MPFR_RNDU);
}

void Enclosure::div(unsigned long n) {
    mpfr_div_ui(lo_, lo_, n, MPFR_RNDD);
    mpfr_div_ui(hi_, hi_, n, MPFR_RNDU);
}

double Enclosure::lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Enclosure::upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }

bool Enclosure::strictly_above(const Enclosure& other) const {
    return mpfr_cmp(lo_, other.hi_) > 0;
}

bool Enclosure::strictly_below(const Enclosure& other) const {
    return mpfr_cmp(hi_, other.lo_) < 0;
}

} // namespace mixmean::oracle
