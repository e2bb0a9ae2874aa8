#include "vosper/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vosper {

bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

namespace {

void require_prime(std::int64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("modulus must be prime, got " + std::to_string(p));
}

// roots[k] = exp(-2*pi*i*k/p)
std::vector<cplx> root_table(std::int64_t p) {
    std::vector<cplx> roots(static_cast<std::size_t>(p));
    const double w = -2.0 * std::numbers::pi / static_cast<double>(p);
    for (std::int64_t k = 0; k < p; ++k)
        roots[static_cast<std::size_t>(k)] = std::polar(1.0, w * static_cast<double>(k));
    return roots;
}

} // namespace

DensityFunction::DensityFunction(std::int64_t p, std::vector<cplx> values)
    : p_(p), values_(std::move(values)) {
    require_prime(p);
    if (static_cast<std::int64_t>(values_.size()) != p)
        throw std::invalid_argument("value vector length does not match modulus");
}

DensityFunction DensityFunction::constant(std::int64_t p, cplx c) {
    return DensityFunction(p, std::vector<cplx>(static_cast<std::size_t>(p), c));
}

DensityFunction DensityFunction::indicator(std::int64_t p, const std::vector<std::int64_t>& members) {
    std::vector<cplx> v(static_cast<std::size_t>(p), 0.0);
    for (auto m : members) {
        if (m < 0 || m >= p) throw std::invalid_argument("residue out of range");
        v[static_cast<std::size_t>(m)] = 1.0;
    }
    return DensityFunction(p, std::move(v));
}

DensityFunction DensityFunction::real(std::int64_t p, const std::vector<double>& values) {
    std::vector<cplx> v(values.begin(), values.end());
    return DensityFunction(p, std::move(v));
}

bool DensityFunction::is_real(double slack) const {
    for (const auto& v : values_)
        if (std::abs(v.imag()) > slack) return false;
    return true;
}

cplx DensityFunction::mean() const {
    cplx s = 0.0;
    for (const auto& v : values_) s += v;
    return s / static_cast<double>(p_);
}

std::vector<double> DensityFunction::real_values() const {
    std::vector<double> out(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) out[i] = values_[i].real();
    return out;
}

Spectrum::Spectrum(std::int64_t p, std::vector<cplx> coeffs)
    : p_(p), coeffs_(std::move(coeffs)) {
    require_prime(p);
    if (static_cast<std::int64_t>(coeffs_.size()) != p)
        throw std::invalid_argument("coefficient vector length does not match modulus");
}

std::pair<std::int64_t, double> Spectrum::max_nontrivial() const {
    std::int64_t best_r = 1;
    double best = -1.0;
    for (std::int64_t r = 1; r < p_; ++r) {
        double m = std::abs(coeffs_[static_cast<std::size_t>(r)]);
        if (m > best) { best = m; best_r = r; }
    }
    return {best_r, best};
}

Spectrum dft(const DensityFunction& f) {
    const std::int64_t p = f.p();
    const auto roots = root_table(p);
    const auto& v = f.values();
    std::vector<cplx> coeffs(static_cast<std::size_t>(p));
    for (std::int64_t r = 0; r < p; ++r) {
        cplx acc = 0.0;
        std::int64_t idx = 0;
        for (std::int64_t x = 0; x < p; ++x) {
            acc += v[static_cast<std::size_t>(x)] * roots[static_cast<std::size_t>(idx)];
            idx += r;
            if (idx >= p) idx -= p;
        }
        coeffs[static_cast<std::size_t>(r)] = acc / static_cast<double>(p);
    }
    return Spectrum(p, std::move(coeffs));
}

DensityFunction idft(const Spectrum& s) {
    const std::int64_t p = s.p();
    const auto roots = root_table(p); // conjugate gives the inverse kernel
    const auto& c = s.coeffs();
    std::vector<cplx> v(static_cast<std::size_t>(p));
    for (std::int64_t x = 0; x < p; ++x) {
        cplx acc = 0.0;
        std::int64_t idx = 0;
        for (std::int64_t r = 0; r < p; ++r) {
            acc += c[static_cast<std::size_t>(r)] * std::conj(roots[static_cast<std::size_t>(idx)]);
            idx += x;
            if (idx >= p) idx -= p;
        }
        v[static_cast<std::size_t>(x)] = acc;
    }
    return DensityFunction(p, std::move(v));
}

DensityFunction convolve(const DensityFunction& f, const DensityFunction& g) {
    if (f.p() != g.p()) throw std::invalid_argument("convolve: mismatched moduli");
    const std::int64_t p = f.p();
    const auto& a = f.values();
    const auto& b = g.values();
    std::vector<cplx> out(static_cast<std::size_t>(p), 0.0);
    for (std::int64_t x = 0; x < p; ++x) {
        cplx acc = 0.0;
        for (std::int64_t y = 0; y < p; ++y) {
            std::int64_t d = x - y;
            if (d < 0) d += p;
            acc += a[static_cast<std::size_t>(y)] * b[static_cast<std::size_t>(d)];
        }
        out[static_cast<std::size_t>(x)] = acc / static_cast<double>(p);
    }
    return DensityFunction(p, std::move(out));
}

double u2_norm(const Spectrum& s) {
    double acc = 0.0;
    for (const auto& c : s.coeffs()) {
        double m2 = std::norm(c);
        acc += m2 * m2;
    }
    return std::pow(acc, 0.25);
}

double u2_norm(const DensityFunction& f) { return u2_norm(dft(f)); }

double lp_norm(const DensityFunction& f, Norm which) {
    const double p = static_cast<double>(f.p());
    switch (which) {
        case Norm::L1: {
            double acc = 0.0;
            for (const auto& v : f.values()) acc += std::abs(v);
            return acc / p;
        }
        case Norm::L2: {
            double acc = 0.0;
            for (const auto& v : f.values()) acc += std::norm(v);
            return std::sqrt(acc / p);
        }
        case Norm::LInf: {
            double best = 0.0;
            for (const auto& v : f.values()) best = std::max(best, std::abs(v));
            return best;
        }
    }
    return 0.0;
}

double inner(const DensityFunction& f, const DensityFunction& g) {
    if (f.p() != g.p()) throw std::invalid_argument("inner: mismatched moduli");
    cplx acc = 0.0;
    for (std::int64_t x = 0; x < f.p(); ++x)
        acc += f[x] * std::conj(g[x]);
    return (acc / static_cast<double>(f.p())).real();
}

cplx fourier_coefficient(const DensityFunction& f, std::int64_t r) {
    const std::int64_t p = f.p();
    r %= p;
    if (r < 0) r += p;
    const double w = -2.0 * std::numbers::pi / static_cast<double>(p);
    cplx acc = 0.0;
    std::int64_t idx = 0;
    for (std::int64_t x = 0; x < p; ++x) {
        acc += f[x] * std::polar(1.0, w * static_cast<double>(idx));
        idx += r;
        if (idx >= p) idx -= p;
    }
    return acc / static_cast<double>(p);
}

DensityFunction operator+(const DensityFunction& f, const DensityFunction& g) {
    if (f.p() != g.p()) throw std::invalid_argument("mismatched moduli");
    std::vector<cplx> v(f.values());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += g.values()[i];
    return DensityFunction(f.p(), std::move(v));
}

DensityFunction operator-(const DensityFunction& f, const DensityFunction& g) {
    if (f.p() != g.p()) throw std::invalid_argument("mismatched moduli");
    std::vector<cplx> v(f.values());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= g.values()[i];
    return DensityFunction(f.p(), std::move(v));
}

} // namespace vosper
