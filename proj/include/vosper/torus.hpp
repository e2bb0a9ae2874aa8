#pragma once

// Fejer kernels on T^d, piecewise-constant grid functions and their Fejer
// smoothing, Lipschitz accounting and the equidistribution check.  The norm
// on T^d is the max over coordinates of the distance to the nearest integer.

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "vosper/config.hpp"
#include "vosper/fourier.hpp"

namespace vosper {

// phi(x) = (r_1 x / p, ..., r_d x / p) mod 1
struct TorusHom {
    std::int64_t p = 0;
    std::vector<std::int64_t> freqs;

    std::int64_t d() const { return static_cast<std::int64_t>(freqs.size()); }
    std::vector<double> value(std::int64_t x) const;
};

double torus_dist(double t); // distance to nearest integer
double torus_norm(const std::vector<double>& t); // max over coordinates

// F' constant on cubes [k1/n,(k1+1)/n] x ... ; stored sparsely (cells absent
// from the map take the fill value).
class GridFunction {
  public:
    GridFunction(std::int64_t d, std::int64_t n, double fill = 0.0);

    std::int64_t d() const { return d_; }
    std::int64_t n() const { return n_; }
    double fill() const { return fill_; }
    const std::map<std::vector<std::int64_t>, double>& cells() const { return cells_; }

    void set(std::vector<std::int64_t> cell, double value);
    double at_cell(const std::vector<std::int64_t>& cell) const;
    double eval(const std::vector<double>& t) const;
    double integral() const; // exact cell average
    double max_value() const;
    double min_value() const;

  private:
    std::int64_t d_;
    std::int64_t n_;
    double fill_;
    std::map<std::vector<std::int64_t>, double> cells_;
};

// Real trigonometric polynomial sum_k c_k e(k.t) with Hermitian coefficients.
class TrigPolynomial {
  public:
    TrigPolynomial(std::int64_t d, std::map<std::vector<std::int64_t>, cplx> coeffs);

    std::int64_t d() const { return d_; }
    const std::map<std::vector<std::int64_t>, cplx>& coeffs() const { return coeffs_; }

    double eval(const std::vector<double>& t) const;
    std::vector<double> eval_orbit(const TorusHom& phi) const; // F(phi(x)) for all x
    double integral() const;                                   // zero coefficient
    double lipschitz_bound() const;                            // 2*pi*sum |c_k| |k|_1
    std::int64_t term_count() const { return static_cast<std::int64_t>(coeffs_.size()); }

  private:
    std::int64_t d_;
    std::map<std::vector<std::int64_t>, cplx> coeffs_;
};

// Fejer kernel Phi_K on T^d: coefficient prod_j (1 - |k_j|/K) on the box
// |k_j| < K, nonnegative and of unit mass.
TrigPolynomial fejer_kernel(std::int64_t d, std::int64_t K, const Caps& caps = default_caps());

// F = F' * Phi_K via the closed-form coefficients of the piecewise-constant F'.
TrigPolynomial smooth(const GridFunction& Fprime, std::int64_t K, const Caps& caps = default_caps());

struct SmoothingErrorReport {
    double measured;        // ||F'.phi - (F'*Phi_K).phi||_2^2 over Z/pZ
    double bound;           // 4*lambda*d*n + (d/(4*K*lambda^2))^2
    std::int64_t boundary_count;
    std::int64_t boundary_allowance; // 4*lambda*d*n*p
    bool assumption_holds;  // boundary_count <= allowance
};

SmoothingErrorReport smoothing_error(const GridFunction& Fprime, std::int64_t K, double lambda,
                                     const TorusHom& phi, const Caps& caps = default_caps());

// |E_x F(phi(x)) - int F|; requires phi K-independent (checked by the caller
// via find_relation, passed in as a flag to keep this module lattice-free).
double equidistribution_gap(const TrigPolynomial& F, const TorusHom& phi, double lipschitz_M,
                            std::int64_t K, bool independence_verified);
double equidistribution_gap(const GridFunction& F, const TorusHom& phi, double lipschitz_M,
                            std::int64_t K, bool independence_verified);

// Tensor midpoint quadrature of g over [lo,hi]^d with `res` points per axis.
double midpoint_quadrature(std::int64_t d, double lo, double hi, std::int64_t res,
                           const std::function<double(const std::vector<double>&)>& g);

} // namespace vosper
