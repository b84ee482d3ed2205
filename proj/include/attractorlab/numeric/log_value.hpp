#ifndef ATTRACTORLAB_NUMERIC_LOG_VALUE_HPP
#define ATTRACTORLAB_NUMERIC_LOG_VALUE_HPP

#include <cmath>
#include <limits>
#include <stdexcept>

namespace attractorlab {

/// A positive quantity held as its natural logarithm.
///
/// Return times of the exact biangle model grow like Lambda^k and leave the
/// double range after ~500 turns; all timeline arithmetic therefore runs in
/// the log domain.  Multiplication is exact (addition of logs); addition is
/// the usual stable log-sum-exp, so combining two values whose logs differ by
/// more than ~745 leaves the larger one unchanged.
class LogValue {
  public:
    LogValue() : log_(-std::numeric_limits<double>::infinity()) {}  // value 0

    static LogValue from_log(double log_of_value) { return LogValue(log_of_value); }

    static LogValue from_value(double value) {
        if (value < 0.0) throw std::domain_error("LogValue: negative value");
        return LogValue(std::log(value));
    }

    double log() const { return log_; }

    /// The plain value; +inf when out of double range.
    double value() const { return std::exp(log_); }

    bool is_zero() const { return std::isinf(log_) && log_ < 0; }

    LogValue operator*(const LogValue& rhs) const { return LogValue(log_ + rhs.log_); }
    LogValue operator/(const LogValue& rhs) const { return LogValue(log_ - rhs.log_); }

    LogValue operator+(const LogValue& rhs) const {
        if (is_zero()) return rhs;
        if (rhs.is_zero()) return *this;
        const double hi = std::max(log_, rhs.log_);
        const double lo = std::min(log_, rhs.log_);
        return LogValue(hi + std::log1p(std::exp(lo - hi)));
    }

    /// log(a) - log(b) as a plain double (= log of the ratio a/b).
    double log_ratio_to(const LogValue& rhs) const { return log_ - rhs.log_; }

    /// a/b in [0,1] for a <= b; underflows cleanly to 0.
    double ratio_to(const LogValue& rhs) const { return std::exp(log_ - rhs.log_); }

    friend bool operator<(const LogValue& a, const LogValue& b) { return a.log_ < b.log_; }
    friend bool operator>(const LogValue& a, const LogValue& b) { return b < a; }
    friend bool operator<=(const LogValue& a, const LogValue& b) { return !(b < a); }
    friend bool operator>=(const LogValue& a, const LogValue& b) { return !(a < b); }
    friend bool operator==(const LogValue& a, const LogValue& b) { return a.log_ == b.log_; }

  private:
    explicit LogValue(double log_of_value) : log_(log_of_value) {}
    double log_;
};

}  // namespace attractorlab

#endif
