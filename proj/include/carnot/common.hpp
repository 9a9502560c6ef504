#ifndef CARNOT_COMMON_HPP_
#define CARNOT_COMMON_HPP_

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace carnot {

using Vec = std::vector<double>;

// Error taxonomy mirrored by the CLI exit codes:
//   FormatError -> 2, InadmissibleError -> 3, UnsupportedError -> 4,
//   NumericError -> 5.  Contract violations inside the library throw
//   std::invalid_argument.
struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

struct InadmissibleError : std::runtime_error {
    explicit InadmissibleError(const std::string& msg) : std::runtime_error(msg) {}
};

struct UnsupportedError : std::runtime_error {
    explicit UnsupportedError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

inline Vec zeros(std::size_t n) { return Vec(n, 0.0); }

inline void axpy(double a, const Vec& x, Vec& y) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

inline Vec add(const Vec& x, const Vec& y) {
    Vec r(x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += y[i];
    return r;
}

inline Vec sub(const Vec& x, const Vec& y) {
    Vec r(x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
    return r;
}

inline Vec scale(double a, const Vec& x) {
    Vec r(x);
    for (double& v : r) v *= a;
    return r;
}

inline Vec negate(const Vec& x) { return scale(-1.0, x); }

inline double dot(const Vec& x, const Vec& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

inline double norm2(const Vec& x) { return std::sqrt(dot(x, x)); }

inline double sup_norm(const Vec& x) {
    double s = 0.0;
    for (double v : x) s = std::max(s, std::fabs(v));
    return s;
}

inline double max_abs_diff(const Vec& x, const Vec& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s = std::max(s, std::fabs(x[i] - y[i]));
    return s;
}

}  // namespace carnot

#endif  // CARNOT_COMMON_HPP_
