#ifndef ATTRACTORLAB_ERRORS_HPP
#define ATTRACTORLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace attractorlab {

// Orbit left the validity chart of an asymptotic model (a transversal
// coordinate reached 1 or beyond).
struct chart_exit_error : std::runtime_error {
    explicit chart_exit_error(const std::string& what) : std::runtime_error(what) {}
};

// A return-map step failed to contract (next >= x).
struct contraction_error : std::runtime_error {
    explicit contraction_error(const std::string& what) : std::runtime_error(what) {}
};

// Requested horizon lies outside the recorded range, or turn budget exceeded.
struct horizon_error : std::runtime_error {
    explicit horizon_error(const std::string& what) : std::runtime_error(what) {}
};

// Model parameters violate an invariant (e.g. Lambda <= 1 for a biangle).
struct invariant_error : std::invalid_argument {
    explicit invariant_error(const std::string& what) : std::invalid_argument(what) {}
};

// Attractor estimates came out with minimal ⊄ statistical or statistical ⊄
// Milnor; diagnostic, indicates inconsistent thresholds or horizons.
struct hierarchy_violation_error : std::runtime_error {
    explicit hierarchy_violation_error(const std::string& what) : std::runtime_error(what) {}
};

// Loop divergence analysis requires seeds interleaved as zeta(x) < zeta(y) < Delta(zeta(x)).
struct interleaving_error : std::invalid_argument {
    explicit interleaving_error(const std::string& what) : std::invalid_argument(what) {}
};

// Too few recorded events for the requested analysis.
struct insufficient_events_error : std::runtime_error {
    explicit insufficient_events_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace attractorlab

#endif
