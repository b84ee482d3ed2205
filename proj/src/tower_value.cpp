#include "attractorlab/numeric/tower_value.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace attractorlab {

namespace {
constexpr double kE = 2.718281828459045235;
const double kInf = std::numeric_limits<double>::infinity();
// exp(x) for x <= 709.78 stays finite in a double.
constexpr double kMaxExpArg = 709.0;
}  // namespace

TowerValue::TowerValue(int level, double mantissa) : level_(level), mantissa_(mantissa) {
    if (level < 0) throw std::invalid_argument("TowerValue: negative level");
    if (!std::isfinite(mantissa)) throw std::invalid_argument("TowerValue: non-finite mantissa");
}

std::optional<double> TowerValue::to_plain() const {
    int lvl = level_;
    double r = mantissa_;
    while (lvl > 0) {
        if (r > kMaxExpArg) return std::nullopt;
        r = std::exp(r);
        --lvl;
    }
    return r;
}

TowerValue TowerValue::canonical() const {
    int lvl = level_;
    double r = mantissa_;
    // Demote while the mantissa denotes something below e at its level.
    while (lvl >= 1 && r < 1.0) {
        r = std::exp(r);  // r < 1 so exp(r) < e, no overflow
        --lvl;
    }
    // Promote while the mantissa itself is e or larger.
    while (r >= kE) {
        r = std::log(r);
        ++lvl;
    }
    return TowerValue(lvl, r);
}

TowerValue TowerValue::exp() const {
    if (level_ == 0) {
        if (mantissa_ <= kExpPromote) return TowerValue(0, std::exp(mantissa_));
        return TowerValue(1, mantissa_);
    }
    return TowerValue(level_ + 1, mantissa_);
}

TowerValue TowerValue::ln() const {
    if (level_ == 0) {
        if (mantissa_ <= 0.0) throw std::domain_error("TowerValue::ln of non-positive value");
        return TowerValue(0, std::log(mantissa_));
    }
    return TowerValue(level_ - 1, mantissa_);
}

TowerValue TowerValue::add_const(double c) const {
    if (c == 0.0) return *this;
    if (auto plain = to_plain()) {
        const double sum = *plain + c;
        if (std::isfinite(sum)) return TowerValue(0, sum);
    }
    // Value is huge; absorb the constant one ln-level down.
    // exp(y) + c = exp(y + log1p(c * exp(-y))).
    TowerValue down = ln();
    if (auto y = down.to_plain()) {
        const double corr = std::log1p(c * std::exp(-*y));
        return TowerValue(0, *y + corr).exp();
    }
    return *this;  // correction underflows at this depth
}

TowerValue TowerValue::add(const TowerValue& other) const {
    const auto pa = to_plain();
    const auto pb = other.to_plain();
    if (pa && pb) {
        const double sum = *pa + *pb;
        if (std::isfinite(sum)) return TowerValue(0, sum);
    }
    const TowerValue& hi = (*this < other) ? other : *this;
    const TowerValue& lo = (*this < other) ? *this : other;
    if (auto plo = lo.to_plain(); plo && *plo == 0.0) return hi;
    // hi + lo = exp(ln hi + log1p(exp(ln lo - ln hi)))
    const double delta = lo.ln().minus_to_plain(hi.ln());
    const double corr = std::log1p(std::exp(delta));
    if (corr == 0.0) return hi;
    return hi.ln().add_const(corr).exp();
}

double TowerValue::minus_to_plain(const TowerValue& other) const {
    const auto pa = to_plain();
    const auto pb = other.to_plain();
    if (pa && pb) return *pa - *pb;
    const int cmp = compare(other);
    if (cmp == 0) return 0.0;
    // One side is beyond double range and they differ: the gap itself is
    // beyond double range at this representation.
    return cmp > 0 ? kInf : -kInf;
}

double TowerValue::ratio_to(const TowerValue& other) const {
    const auto pa = to_plain();
    const auto pb = other.to_plain();
    if (pa && pb) {
        if (*pb != 0.0) return *pa / *pb;
    }
    const double delta = ln().minus_to_plain(other.ln());
    return std::exp(delta);
}

double TowerValue::ln_ratio_to(const TowerValue& other) const {
    const auto pa = to_plain();
    const auto pb = other.to_plain();
    if (pa && pb && *pb > 0.0) return std::log1p((*pa - *pb) / *pb);
    return ln().minus_to_plain(other.ln());
}

int TowerValue::compare(const TowerValue& other) const {
    const TowerValue a = canonical();
    const TowerValue b = other.canonical();
    if (a.level_ != b.level_) return a.level_ < b.level_ ? -1 : 1;
    if (a.mantissa_ < b.mantissa_) return -1;
    if (a.mantissa_ > b.mantissa_) return 1;
    return 0;
}

std::optional<double> TowerValue::ln_depth_mantissa(int depth) const {
    TowerValue t = *this;
    for (int i = 0; i < depth; ++i) t = t.ln();
    return t.to_plain();
}

std::ostream& operator<<(std::ostream& os, const TowerValue& t) {
    if (auto p = t.to_plain()) return os << *p;
    return os << "exp^(" << t.level() << ")(" << t.mantissa() << ")";
}

}  // namespace attractorlab
