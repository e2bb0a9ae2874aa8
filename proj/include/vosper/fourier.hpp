#pragma once

// Normalized Fourier analysis over Z/pZ.
//
// Transform convention (the classic drift point, so it is spelled out once
// and for all):
//
//     fhat(r) = (1/p) * sum_x f(x) * exp(-2*pi*i*r*x/p)
//
// so that Parseval reads  sum_r |fhat(r)|^2 = E_x |f(x)|^2  and the U^2 norm
// is (sum_r |fhat(r)|^4)^(1/4).  All L^p norms are Haar-normalized.

#include <complex>
#include <cstdint>
#include <vector>

#include "vosper/config.hpp"

namespace vosper {

using cplx = std::complex<double>;

bool is_prime(std::int64_t p);

// Complex-valued function on Z/pZ under the Haar probability measure.
class DensityFunction {
  public:
    DensityFunction(std::int64_t p, std::vector<cplx> values);

    static DensityFunction constant(std::int64_t p, cplx c);
    static DensityFunction indicator(std::int64_t p, const std::vector<std::int64_t>& members);
    static DensityFunction real(std::int64_t p, const std::vector<double>& values);

    std::int64_t p() const { return p_; }
    const std::vector<cplx>& values() const { return values_; }
    cplx operator[](std::int64_t x) const { return values_[static_cast<std::size_t>(x)]; }

    bool is_real(double slack = 1e-12) const;
    cplx mean() const;
    std::vector<double> real_values() const;

  private:
    std::int64_t p_;
    std::vector<cplx> values_;
};

// Fourier coefficients, one per frequency r in {0,...,p-1}.
class Spectrum {
  public:
    Spectrum(std::int64_t p, std::vector<cplx> coeffs);

    std::int64_t p() const { return p_; }
    const std::vector<cplx>& coeffs() const { return coeffs_; }
    cplx operator[](std::int64_t r) const { return coeffs_[static_cast<std::size_t>(r)]; }

    // largest |coeff| over r != 0, and its frequency (ties -> smaller r)
    std::pair<std::int64_t, double> max_nontrivial() const;

  private:
    std::int64_t p_;
    std::vector<cplx> coeffs_;
};

Spectrum dft(const DensityFunction& f);
DensityFunction idft(const Spectrum& s);

DensityFunction convolve(const DensityFunction& f, const DensityFunction& g);

double u2_norm(const DensityFunction& f);
double u2_norm(const Spectrum& s);

enum class Norm { L1, L2, LInf };
double lp_norm(const DensityFunction& f, Norm which);

double inner(const DensityFunction& f, const DensityFunction& g); // real part of <f,g>

// single coefficient fhat(r) = <f, chi_r>, without the full transform
cplx fourier_coefficient(const DensityFunction& f, std::int64_t r);

DensityFunction operator+(const DensityFunction& f, const DensityFunction& g);
DensityFunction operator-(const DensityFunction& f, const DensityFunction& g);

} // namespace vosper
