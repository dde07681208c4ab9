#pragma once

#include <mpfr.h>

#include "mixmean/rational.hpp"

namespace mixmean::oracle {

// Interval arithmetic on [lower, upper] with directed rounding: every
// operation rounds the lower bound down and the upper bound up, so the true
// real result always stays inside.  Only the operations the oracles need.
class Enclosure {
public:
    explicit Enclosure(mpfr_prec_t precision);
    Enclosure(const Enclosure& other);
    Enclosure& operator=(const Enclosure& other);
    ~Enclosure();

    static Enclosure exact(const Rational& q, mpfr_prec_t precision);
    // n-th root of a nonnegative rational.
    static Enclosure nth_root(const Rational& q, unsigned long n, mpfr_prec_t precision);
    // q^e for rational q > 0 and finite double e.
    static Enclosure pow(const Rational& q, double e, mpfr_prec_t precision);
    // Natural log of a positive rational.
    static Enclosure log(const Rational& q, mpfr_prec_t precision);

    void add(const Enclosure& other);
    void sub(const Enclosure& other);
    void div(unsigned long n);

    double lower() const; // rounded toward -inf
    double upper() const; // rounded toward +inf

    bool strictly_above(const Enclosure& other) const;
    bool strictly_below(const Enclosure& other) const;

private:
    mpfr_t lo_;
    mpfr_t hi_;
};

} // namespace mixmean::oracle
