#ifndef RPT_RATIONAL_HPP
#define RPT_RATIONAL_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rpt {

/// Error hierarchy shared across the library. The CLI maps these to exit codes.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct capability_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct precondition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct contract_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct refinement_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact rational with int64 numerator/denominator, always normalized
/// (den > 0, gcd(|num|, den) = 1). All graph thresholds are compared through
/// this type; no floating point is used anywhere in a verdict.
class Rat {
  public:
    Rat() : num_(0), den_(1) {}
    Rat(long long num, long long den);

    static Rat parse(const std::string& s);  // "p/q" or "p"

    long long num() const { return num_; }
    long long den() const { return den_; }

    std::string str() const;

    Rat operator+(const Rat& o) const;
    Rat operator-(const Rat& o) const;
    Rat operator*(const Rat& o) const;
    Rat operator/(const Rat& o) const;

    bool operator==(const Rat& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rat& o) const { return !(*this == o); }
    bool operator<(const Rat& o) const;
    bool operator<=(const Rat& o) const;
    bool operator>(const Rat& o) const { return o < *this; }
    bool operator>=(const Rat& o) const { return o <= *this; }

    /// value >= (*this) * scale, exactly.
    bool leq_times(long long value, long long scale) const;  // this*scale <= value
    bool geq_times(long long value, long long scale) const;  // this*scale >= value
    bool lt_times(long long value, long long scale) const { return !geq_times(value, scale); }
    bool gt_times(long long value, long long scale) const { return !leq_times(value, scale); }

    /// value^3 <= (*this) * scale^3, exactly (for thresholds of the form r^{1/3}*scale).
    bool cube_leq(long long value, long long scale) const;

    /// Largest rational s = a/den with s*s <= *this (integer sqrt of num*den over den).
    Rat floor_sqrt() const;

    double approx() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  private:
    long long num_, den_;
};

inline Rat min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

}  // namespace rpt

#endif
