#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace vosper {

// All numeric tolerances live here so that sign/normalization drift shows up
// in exactly one place.
struct Tolerances {
    double parseval = 1e-10;      // spectral identities
    double pointwise = 1e-10;     // pointwise reconstruction / decomposition sums
    double strict = 1e-12;        // "exact" identities evaluated in doubles
    double range_slack = 1e-9;    // smoothed functions may leave [0,1] by this much
};

struct Caps {
    std::int64_t max_gamma = 4096;          // characters per partition
    std::int64_t max_n = 1'000'000'000'000; // grid resolution
    std::int64_t max_outer_iters = 4096;    // regularity outer loop
    std::int64_t max_uniformize_steps = 100'000;
    std::int64_t term_cap = 10'000'000;     // (2K-1)^d for trig polynomials
    std::int64_t fejer_k_max = 4096;
    std::int64_t relation_box_cap = 20'000'000; // exhaustive relation scan
};

class CapExceeded : public std::runtime_error {
  public:
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

inline const Tolerances& tol() {
    static const Tolerances t{};
    return t;
}

inline const Caps& default_caps() {
    static const Caps c{};
    return c;
}

} // namespace vosper
