#include "mixmean/matrix.hpp"

#include <algorithm>

namespace mixmean {

bool is_constant(const NonnegMatrix& B, const ScalarBackend& backend) {
    auto [lo, hi] = std::minmax_element(B.entries().begin(), B.entries().end());
    return *hi - *lo <= backend.equality_tolerance * *hi;
}

bool is_constant(const RationalMatrix& B) {
    const Rational& first = B.entries().front();
    return std::all_of(B.entries().begin(), B.entries().end(),
                       [&](const Rational& v) { return v == first; });
}

RationalMatrix to_rational(const NonnegMatrix& B) {
    std::vector<Rational> entries;
    entries.reserve(B.size());
    for (double v : B.entries())
        entries.push_back(rational_from_double(v));
    return RationalMatrix(B.rows(), B.cols(), std::move(entries));
}

NonnegMatrix to_double(const RationalMatrix& B) {
    std::vector<double> entries;
    entries.reserve(B.size());
    for (const Rational& v : B.entries())
        entries.push_back(rational_to_double(v));
    return NonnegMatrix(B.rows(), B.cols(), std::move(entries));
}

} // namespace mixmean
