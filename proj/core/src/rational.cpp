#include "rpt/rational.hpp"

#include <cmath>
#include <numeric>

namespace rpt {

namespace {
using i128 = __int128;

long long checked_ll(i128 v, const char* what) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error(std::string("rational overflow in ") + what);
    return static_cast<long long>(v);
}
}  // namespace

Rat::Rat(long long num, long long den) {
    if (den == 0) throw input_error("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g == 0) g = 1;
    num_ = num / g;
    den_ = den / g;
}

Rat Rat::parse(const std::string& s) {
    auto slash = s.find('/');
    try {
        size_t pos = 0;
        if (slash == std::string::npos) {
            long long p = std::stoll(s, &pos);
            if (pos != s.size()) throw input_error("trailing characters in rational: " + s);
            return Rat(p, 1);
        }
        long long p = std::stoll(s.substr(0, slash), &pos);
        if (pos != slash) throw input_error("bad numerator in rational: " + s);
        long long q = std::stoll(s.substr(slash + 1), &pos);
        if (pos != s.size() - slash - 1) throw input_error("bad denominator in rational: " + s);
        return Rat(p, q);
    } catch (const std::invalid_argument&) {
        throw input_error("cannot parse rational: " + s);
    } catch (const std::out_of_range&) {
        throw input_error("rational out of range: " + s);
    }
}

std::string Rat::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rat Rat::operator+(const Rat& o) const {
    i128 n = i128(num_) * o.den_ + i128(o.num_) * den_;
    i128 d = i128(den_) * o.den_;
    i128 a = n < 0 ? -n : n, b = d;
    while (b) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    if (a == 0) a = 1;
    return Rat(checked_ll(n / a, "+"), checked_ll(d / a, "+"));
}

Rat Rat::operator-(const Rat& o) const { return *this + Rat(-o.num_, o.den_); }

Rat Rat::operator*(const Rat& o) const {
    long long g1 = std::gcd(num_ < 0 ? -num_ : num_, o.den_);
    long long g2 = std::gcd(o.num_ < 0 ? -o.num_ : o.num_, den_);
    i128 n = i128(num_ / (g1 ? g1 : 1)) * (o.num_ / (g2 ? g2 : 1));
    i128 d = i128(den_ / (g2 ? g2 : 1)) * (o.den_ / (g1 ? g1 : 1));
    return Rat(checked_ll(n, "*"), checked_ll(d, "*"));
}

Rat Rat::operator/(const Rat& o) const {
    if (o.num_ == 0) throw input_error("rational division by zero");
    return *this * Rat(o.den_, o.num_);
}

bool Rat::operator<(const Rat& o) const { return i128(num_) * o.den_ < i128(o.num_) * den_; }
bool Rat::operator<=(const Rat& o) const { return i128(num_) * o.den_ <= i128(o.num_) * den_; }

bool Rat::leq_times(long long value, long long scale) const {
    return i128(num_) * scale <= i128(value) * den_;
}

bool Rat::geq_times(long long value, long long scale) const {
    return i128(num_) * scale >= i128(value) * den_;
}

bool Rat::cube_leq(long long value, long long scale) const {
    // value^3 <= r * scale^3  <=>  value^3 * den <= num * scale^3
    if (value < 0) return true;
    i128 v3 = i128(value) * value * value;
    i128 s3 = i128(scale) * scale * scale;
    // both sides can exceed 128 bits only for absurd inputs; graphs here have n <= ~10^4
    return v3 * den_ <= s3 * num_;
}

Rat Rat::floor_sqrt() const {
    if (num_ < 0) throw input_error("floor_sqrt of negative rational");
    // sqrt(p/q) = sqrt(p*q)/q; take the integer floor of sqrt(p*q).
    i128 pq = i128(num_) * den_;
    long long r = static_cast<long long>(std::sqrt(static_cast<double>((long long)pq)));
    while (i128(r) * r > pq) --r;
    while (i128(r + 1) * (r + 1) <= pq) ++r;
    return Rat(r, den_);
}

}  // namespace rpt
