#pragma once

// The verification pipeline: popular doubling, Bohr sets, the thresholded
// set C, sumsets, AP covering, the AP Fourier-coefficient and sine
// identities, the parameter ledger, the torus-form regularity decompositions
// and the end-to-end stability-theorem verifier.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vosper/config.hpp"
#include "vosper/fourier.hpp"
#include "vosper/growth.hpp"
#include "vosper/lattice.hpp"
#include "vosper/partition.hpp"
#include "vosper/torus.hpp"

namespace vosper {

struct ResidueSet {
    std::int64_t p = 0;
    std::vector<std::int64_t> members; // sorted, distinct, in [0,p)

    static ResidueSet of(std::int64_t p, std::vector<std::int64_t> members);

    std::int64_t size() const { return static_cast<std::int64_t>(members.size()); }
    double density() const { return static_cast<double>(size()) / static_cast<double>(p); }
    bool contains(std::int64_t x) const;
    DensityFunction indicator() const { return DensityFunction::indicator(p, members); }
};

struct ArithmeticProgression {
    std::int64_t start = 0;
    std::int64_t diff = 1;  // nonzero mod p
    std::int64_t length = 1;

    std::vector<std::int64_t> elements(std::int64_t p) const;
    ResidueSet as_set(std::int64_t p) const;
};

// E_x min(1_A*1_A(x), t) via exact integer pair counting.
double popular_doubling(const ResidueSet& A, double t);

// {x : ||phi(x)|| <= radius}; checks the size bound |B|/p >= radius^d.
ResidueSet bohr_set(const TorusHom& phi, double radius);

struct InequalityRecord {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false; // lhs <= rhs within the strict tolerance
};

InequalityRecord make_record(std::string name, double lhs, double rhs);

struct SetCResult {
    ResidueSet C;        // f_str >= lambda and E_{y in B} |f_sml(x+y)|^2 <= epsilon
    ResidueSet C_prime;  // f_str >= lambda
    ResidueSet C_second; // the local-energy condition fails
    std::vector<InequalityRecord> bounds;
};

SetCResult build_set_C(const DensityFunction& f_str, const DensityFunction& f_sml,
                       const ResidueSet& B, double lambda, double epsilon);

// Shortest AP containing S; ties broken by smaller difference, then smaller
// start.  The full set gets the trivial length-p progression.
ArithmeticProgression ap_cover(const ResidueSet& S);

ResidueSet sumset(const ResidueSet& S); // S + S, exact

struct APCoefficientReport {
    double closed_form;   // sin((|P|-1)pi/p) / (p sin(pi/p))
    double dft_magnitude; // |indicator coefficient| at the frequency dual to diff
};

APCoefficientReport ap_fourier_coefficient(const ArithmeticProgression& P, std::int64_t p);

// Residual of the rearrangement of
//   2 sin((|P|-1)pi/p) - sin((|AnP|-1)pi/p) - sin((|AuP|-1)pi/p)
// against its product form plus correction term.
double sine_identity_check(std::int64_t size_A, std::int64_t size_P, std::int64_t size_AnP,
                           std::int64_t p);

struct ParameterLedger {
    double alpha1 = 0, alpha2 = 0, eta = 0, delta = 0;
    double delta0 = 0;  // admissible supremum for delta
    double lambda = 0;  // eta*delta*alpha1/4
    double epsilon = 0; // lambda^4/256
    double M0 = 0;
    double log2_t0 = 0;   // log2(lambda^2/16) + M0*log2(lambda/(2 M0))
    double log2_F_M0 = 0; // log2 of the ledger growth function at M0
    std::string growth;
    std::vector<InequalityRecord> checks;
};

ParameterLedger parameter_ledger(double alpha1, double alpha2, double eta, double delta,
                                 double M0);

// Decomposition in torus form: f_str = F(phi(x)) with a Lipschitz certificate.
struct TorusDecomposition {
    DensityFunction f_str;
    DensityFunction f_sml;
    DensityFunction f_unf;
    double M = 1.0; // max(d, Lipschitz certificate)
    TorusHom phi;
    TrigPolynomial F;
    double lipschitz = 0.0;
    std::int64_t fejer_K = 0;
    std::int64_t reduction_steps = 0; // final form only
    std::vector<BabyIteration> baby_log;
};

TorusDecomposition intermediate_arl(const DensityFunction& f, double epsilon,
                                    const GrowthFunction& growth,
                                    const Caps& caps = default_caps());

// intermediate + relation-elimination loop until phi is F(M)-independent
TorusDecomposition final_arl(const DensityFunction& f, double epsilon,
                             const GrowthFunction& growth, const Caps& caps = default_caps());

// Post-hoc checker: re-derives every decomposition property from scratch.
struct DecompositionCheck {
    std::vector<InequalityRecord> records;
    bool all_hold() const;
};

DecompositionCheck check_decomposition(const DensityFunction& f, const Decomposition& dec,
                                       double epsilon, const GrowthFunction& growth);
DecompositionCheck check_decomposition(const DensityFunction& f, const TorusDecomposition& dec,
                                       double epsilon, const GrowthFunction& growth,
                                       bool require_independence,
                                       const Caps& caps = default_caps());

struct VerifyConfig {
    double epsilon = 0.25;       // regularity target ||f_sml||_2
    double lambda = 0.5;         // structured-level threshold for C
    double bohr_radius = 0.02;
    double alpha_min = 0.01;
    double alpha_max = 0.45;
    // mild slope so that F(M) stays below desk-scale moduli for the Lipschitz
    // certificates these instances produce
    GrowthFunction growth = GrowthFunction::affine(0.05, 16.0);
    Caps caps = default_caps();
};

struct VerificationReport {
    std::string status; // covered | hypothesis-not-met | no-structure
    double alpha = 0.0;
    double t = 0.0, delta = 0.0, eta = 0.0;
    double hypothesis_value = 0.0;     // E_x min(1_A*1_A, t)
    double hypothesis_threshold = 0.0; // (2+delta)*alpha*t
    bool hypothesis_holds = false;
    double M = 0.0;
    std::int64_t C_size = 0, CC_size = 0;
    ArithmeticProgression P;
    std::int64_t P_size = 0;
    std::int64_t A_minus_P = 0, P_minus_A = 0;
    double C_emp = 0.0; // |A \ P| / (sqrt(delta*alpha) * p)
    std::vector<InequalityRecord> inequalities;
};

VerificationReport verify_theorem(const ResidueSet& A, double t, double delta, double eta,
                                  const VerifyConfig& config = VerifyConfig{});

struct TransferReport {
    double t = 0.0, t_prime = 0.0;
    double value_t = 0.0, threshold_t = 0.0;
    double value_t_prime = 0.0, threshold_t_prime = 0.0;
    bool premise = false;
    bool conclusion = false;
    bool implication_holds = false; // !premise || conclusion
};

TransferReport popularity_transfer_check(const ResidueSet& A, double delta, double t,
                                         double t_prime);

} // namespace vosper
