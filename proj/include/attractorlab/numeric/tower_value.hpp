#ifndef ATTRACTORLAB_NUMERIC_TOWER_VALUE_HPP
#define ATTRACTORLAB_NUMERIC_TOWER_VALUE_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>

namespace attractorlab {

/// Level-index representation of a real number: (level m, mantissa r)
/// denotes exp^(m)(r), the m-fold iterated exponential of r.
///
/// Return times of the modified Bowen example obey tau_{n+1} ~ e^{tau_n}; no
/// fixed-precision format survives more than a handful of turns, so times and
/// tau-coordinates are carried at whatever exp-depth keeps the mantissa a
/// plain double.
///
/// Canonical form (used for comparisons, unique per representable real):
///   value < e          ->  level 0, plain double mantissa
///   value >= e         ->  level m >= 1 with mantissa in [1, e)
/// Stored form is not forced canonical: a value built from a plain real keeps
/// its exact double, and exp() past mantissa 700 promotes the level instead of
/// overflowing.
class TowerValue {
  public:
    TowerValue() : level_(0), mantissa_(0.0) {}
    TowerValue(int level, double mantissa);

    static TowerValue from_real(double x) { return TowerValue(0, x); }

    int level() const { return level_; }
    double mantissa() const { return mantissa_; }

    /// The denoted real if it fits a double.
    std::optional<double> to_plain() const;

    /// Unique (level, mantissa in [1,e)) form; level 0 for values below e.
    TowerValue canonical() const;

    /// exp of the denoted value. Promotes the level when the mantissa after
    /// exponentiation would exceed 700.
    TowerValue exp() const;

    /// ln of the denoted value; value must be positive.
    TowerValue ln() const;

    /// this + c for a plain constant; exact at level 0, absorbed into the
    /// mantissa via log1p at level 1, a no-op once the correction underflows.
    TowerValue add_const(double c) const;

    /// this + other, both nonnegative; exact when both fit doubles, otherwise
    /// stable in the log domain (the smaller addend is absorbed).
    TowerValue add(const TowerValue& other) const;

    /// this - other as a plain double; +-inf when the difference is beyond
    /// double range, 0 when indistinguishable at this representation.
    double minus_to_plain(const TowerValue& other) const;

    /// this / other in [0, inf); underflows cleanly to 0 across tower gaps.
    double ratio_to(const TowerValue& other) const;

    /// ln(this / other), stable near ratio 1 (log1p on the plain difference).
    double ln_ratio_to(const TowerValue& other) const;

    /// Total order agreeing with the denoted reals.
    int compare(const TowerValue& other) const;

    friend bool operator<(const TowerValue& a, const TowerValue& b) { return a.compare(b) < 0; }
    friend bool operator>(const TowerValue& a, const TowerValue& b) { return a.compare(b) > 0; }
    friend bool operator<=(const TowerValue& a, const TowerValue& b) { return a.compare(b) <= 0; }
    friend bool operator>=(const TowerValue& a, const TowerValue& b) { return a.compare(b) >= 0; }
    friend bool operator==(const TowerValue& a, const TowerValue& b) { return a.compare(b) == 0; }
    friend bool operator!=(const TowerValue& a, const TowerValue& b) { return a.compare(b) != 0; }

    friend std::ostream& operator<<(std::ostream& os, const TowerValue& t);

    /// Mantissa left after applying ln() `depth` times, demoted to a plain
    /// double when possible. Used by the CSV writers.
    std::optional<double> ln_depth_mantissa(int depth) const;

    // Mantissa above which exp() promotes instead of exponentiating.
    static constexpr double kExpPromote = 700.0;

  private:
    int level_;
    double mantissa_;
};

}  // namespace attractorlab

#endif
