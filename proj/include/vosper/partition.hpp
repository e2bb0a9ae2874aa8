#pragma once

// Pre-character cell partitions B(Gamma, n), conditional expectations, the
// uniformization energy-increment loop and the first (partition-based) form
// of the regularity decomposition.

#include <cstdint>
#include <optional>
#include <vector>

#include "vosper/config.hpp"
#include "vosper/fourier.hpp"
#include "vosper/growth.hpp"

namespace vosper {

// phi_r(x) = (r*x mod p)/p, a homomorphism Z/pZ -> T.
struct PreCharacter {
    std::int64_t p = 0;
    std::int64_t r = 0;

    double value(std::int64_t x) const {
        return static_cast<double>((r * (x % p) % p + p) % p) / static_cast<double>(p);
    }
    // grid index floor(n * phi_r(x)), computed exactly in integers
    std::int64_t grid_index(std::int64_t x, std::int64_t n) const;
};

// Partition of Z/pZ: x, y share a cell iff floor(n*phi(x)) == floor(n*phi(y))
// for every phi in Gamma.
class CellPartition {
  public:
    CellPartition(std::int64_t p, std::vector<PreCharacter> gamma, std::int64_t n);

    std::int64_t p() const { return p_; }
    const std::vector<PreCharacter>& gamma() const { return gamma_; }
    std::int64_t n() const { return n_; }
    std::int64_t cell_count() const { return cell_count_; }
    std::int64_t cell_of(std::int64_t x) const { return cell_id_[static_cast<std::size_t>(x)]; }

    bool contains_frequency(std::int64_t r) const;

  private:
    std::int64_t p_;
    std::vector<PreCharacter> gamma_;
    std::int64_t n_;
    std::vector<std::int32_t> cell_id_;
    std::int64_t cell_count_;
};

DensityFunction conditional_expectation(const DensityFunction& f, const CellPartition& B);

// |<f - E(f|B), chi_r>| for phi_r in Gamma; throws if the bound 2*pi/n fails
// (it cannot, per the projection argument) or if r is not in Gamma.
double coefficient_bound_check(const DensityFunction& f, const CellPartition& B, std::int64_t r);

struct UniformizeStep {
    std::int64_t frequency;
    double coefficient;   // |coeff| that triggered the addition
    double energy_before; // ||E(f|B)||_2^2
    double energy_after;
};

struct UniformizeResult {
    CellPartition partition;
    std::vector<UniformizeStep> steps;
    double final_max_coefficient; // re-verified by a full spectrum scan
};

// Energy-increment loop: returns B(Gamma, n) such that every nontrivial
// Fourier coefficient of f - E(f|B) is at most delta in modulus.  When a base
// (Gamma0, n0) is given the result refines it: Gamma >= Gamma0 and n0 | n.
UniformizeResult uniformize(const DensityFunction& f, double delta,
                            std::optional<std::pair<std::vector<PreCharacter>, std::int64_t>> base = std::nullopt,
                            const Caps& caps = default_caps());

struct BabyIteration {
    double energy;      // ||E(f|B)||_2^2 at the start of the outer round
    double sml_norm;    // ||f_sml||_2 measured for the candidate split
    double delta;       // 1/F(M) used this round
    std::int64_t M;
};

// f = f_str + f_sml + f_unf with partition provenance.
struct Decomposition {
    DensityFunction f_str;
    DensityFunction f_sml;
    DensityFunction f_unf;
    double M = 1.0;
    // partition provenance (baby form)
    std::vector<PreCharacter> gamma;
    std::int64_t n = 1;
    std::vector<BabyIteration> log;
};

Decomposition baby_arl(const DensityFunction& f, double epsilon, const GrowthFunction& growth,
                       const Caps& caps = default_caps());

} // namespace vosper
