#include "vosper/torus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vosper {

std::vector<double> TorusHom::value(std::int64_t x) const {
    std::vector<double> out(freqs.size());
    for (std::size_t j = 0; j < freqs.size(); ++j) {
        std::int64_t res = ((freqs[j] % p) * (x % p)) % p;
        if (res < 0) res += p;
        out[j] = static_cast<double>(res) / static_cast<double>(p);
    }
    return out;
}

double torus_dist(double t) {
    t -= std::floor(t);
    return std::min(t, 1.0 - t);
}

double torus_norm(const std::vector<double>& t) {
    double best = 0.0;
    for (double v : t) best = std::max(best, torus_dist(v));
    return best;
}

GridFunction::GridFunction(std::int64_t d, std::int64_t n, double fill)
    : d_(d), n_(n), fill_(fill) {
    if (d < 1 || n < 1) throw std::invalid_argument("GridFunction: d and n must be positive");
    if (fill < 0.0 || fill > 1.0) throw std::invalid_argument("GridFunction: fill outside [0,1]");
}

void GridFunction::set(std::vector<std::int64_t> cell, double value) {
    if (static_cast<std::int64_t>(cell.size()) != d_)
        throw std::invalid_argument("GridFunction::set: wrong dimension");
    for (auto& c : cell) {
        c %= n_;
        if (c < 0) c += n_;
    }
    if (value < -tol().range_slack || value > 1.0 + tol().range_slack)
        throw std::invalid_argument("GridFunction::set: value outside [0,1]");
    cells_[std::move(cell)] = std::clamp(value, 0.0, 1.0);
}

double GridFunction::at_cell(const std::vector<std::int64_t>& cell) const {
    auto it = cells_.find(cell);
    return it == cells_.end() ? fill_ : it->second;
}

double GridFunction::eval(const std::vector<double>& t) const {
    std::vector<std::int64_t> cell(static_cast<std::size_t>(d_));
    for (std::int64_t j = 0; j < d_; ++j) {
        double v = t[static_cast<std::size_t>(j)];
        v -= std::floor(v);
        auto c = static_cast<std::int64_t>(std::floor(v * static_cast<double>(n_)));
        cell[static_cast<std::size_t>(j)] = std::min(c, n_ - 1);
    }
    return at_cell(cell);
}

double GridFunction::integral() const {
    double cell_measure = 1.0;
    for (std::int64_t j = 0; j < d_; ++j) cell_measure /= static_cast<double>(n_);
    double total_cells = 1.0;
    for (std::int64_t j = 0; j < d_; ++j) total_cells *= static_cast<double>(n_);
    double acc = fill_ * (total_cells - static_cast<double>(cells_.size()));
    for (const auto& [cell, v] : cells_) acc += v;
    return acc * cell_measure;
}

double GridFunction::max_value() const {
    double m = cells_.size() < static_cast<std::size_t>(1) ? fill_ : fill_;
    for (const auto& [cell, v] : cells_) m = std::max(m, v);
    return m;
}

double GridFunction::min_value() const {
    double m = fill_;
    for (const auto& [cell, v] : cells_) m = std::min(m, v);
    return m;
}

TrigPolynomial::TrigPolynomial(std::int64_t d, std::map<std::vector<std::int64_t>, cplx> coeffs)
    : d_(d), coeffs_(std::move(coeffs)) {
    if (d < 1) throw std::invalid_argument("TrigPolynomial: dimension must be >= 1");
    // enforce Hermitian symmetry: the polynomial is real-valued
    for (const auto& [k, c] : coeffs_) {
        std::vector<std::int64_t> neg(k.size());
        for (std::size_t j = 0; j < k.size(); ++j) neg[j] = -k[j];
        auto it = coeffs_.find(neg);
        cplx other = it == coeffs_.end() ? cplx{0.0, 0.0} : it->second;
        if (std::abs(other - std::conj(c)) > 1e-9 * (1.0 + std::abs(c)))
            throw std::invalid_argument("TrigPolynomial: coefficients not Hermitian");
    }
}

double TrigPolynomial::eval(const std::vector<double>& t) const {
    if (static_cast<std::int64_t>(t.size()) != d_)
        throw std::invalid_argument("TrigPolynomial::eval: wrong dimension");
    cplx acc = 0.0;
    for (const auto& [k, c] : coeffs_) {
        double phase = 0.0;
        for (std::size_t j = 0; j < k.size(); ++j) phase += static_cast<double>(k[j]) * t[j];
        acc += c * std::polar(1.0, 2.0 * std::numbers::pi * phase);
    }
    return acc.real();
}

std::vector<double> TrigPolynomial::eval_orbit(const TorusHom& phi) const {
    if (phi.d() != d_) throw std::invalid_argument("eval_orbit: dimension mismatch");
    const std::int64_t p = phi.p;
    std::vector<double> out(static_cast<std::size_t>(p), 0.0);
    // e(k.phi(x)) = e((sum_j k_j r_j) x / p): each term is a single character
    const double w = 2.0 * std::numbers::pi / static_cast<double>(p);
    for (const auto& [k, c] : coeffs_) {
        std::int64_t freq = 0;
        for (std::size_t j = 0; j < k.size(); ++j) {
            std::int64_t term = ((k[j] % p) * (phi.freqs[j] % p)) % p;
            freq = (freq + term) % p;
        }
        if (freq < 0) freq += p;
        for (std::int64_t x = 0; x < p; ++x) {
            std::int64_t idx = (freq * x) % p;
            out[static_cast<std::size_t>(x)] +=
                (c * std::polar(1.0, w * static_cast<double>(idx))).real();
        }
    }
    return out;
}

double TrigPolynomial::integral() const {
    auto it = coeffs_.find(std::vector<std::int64_t>(static_cast<std::size_t>(d_), 0));
    return it == coeffs_.end() ? 0.0 : it->second.real();
}

double TrigPolynomial::lipschitz_bound() const {
    double acc = 0.0;
    for (const auto& [k, c] : coeffs_) {
        double l1 = 0.0;
        for (auto kj : k) l1 += static_cast<double>(std::llabs(kj));
        acc += std::abs(c) * l1;
    }
    return 2.0 * std::numbers::pi * acc;
}

namespace {

// iterate over the box |k_j| < K
bool next_index(std::vector<std::int64_t>& k, std::int64_t K) {
    for (std::size_t j = 0; j < k.size(); ++j) {
        if (k[j] < K - 1) {
            ++k[j];
            for (std::size_t i = 0; i < j; ++i) k[i] = -(K - 1);
            return true;
        }
    }
    return false;
}

void check_term_cap(std::int64_t d, std::int64_t K, const Caps& caps) {
    double terms = std::pow(2.0 * static_cast<double>(K) - 1.0, static_cast<double>(d));
    if (terms > static_cast<double>(caps.term_cap))
        throw CapExceeded("trig polynomial term cap exceeded: (2K-1)^d too large");
}

} // namespace

TrigPolynomial fejer_kernel(std::int64_t d, std::int64_t K, const Caps& caps) {
    if (d < 1 || K < 1) throw std::invalid_argument("fejer_kernel: d and K must be >= 1");
    check_term_cap(d, K, caps);
    std::map<std::vector<std::int64_t>, cplx> coeffs;
    std::vector<std::int64_t> k(static_cast<std::size_t>(d), -(K - 1));
    while (true) {
        double c = 1.0;
        for (auto kj : k) c *= 1.0 - static_cast<double>(std::llabs(kj)) / static_cast<double>(K);
        if (c != 0.0) coeffs[k] = c;
        if (!next_index(k, K)) break;
    }
    return TrigPolynomial(d, std::move(coeffs));
}

TrigPolynomial smooth(const GridFunction& Fprime, std::int64_t K, const Caps& caps) {
    const std::int64_t d = Fprime.d();
    const std::int64_t n = Fprime.n();
    check_term_cap(d, K, caps);
    if (Fprime.fill() != 0.0 && std::pow(static_cast<double>(n), static_cast<double>(d)) >
                                    static_cast<double>(caps.term_cap))
        throw CapExceeded("smooth: nonzero fill with an unenumerable grid");

    // 1-d cell integrals I(k, c) = int_{c/n}^{(c+1)/n} e(-k t) dt
    auto cell_integral = [&](std::int64_t kj, std::int64_t c) -> cplx {
        if (kj == 0) return cplx{1.0 / static_cast<double>(n), 0.0};
        double a = static_cast<double>(c) / static_cast<double>(n);
        cplx lead = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(kj) * a);
        cplx diff = 1.0 - std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(kj) /
                                               static_cast<double>(n));
        return lead * diff / (cplx{0.0, 2.0 * std::numbers::pi * static_cast<double>(kj)});
    };

    std::map<std::vector<std::int64_t>, cplx> coeffs;
    const double total = std::pow(static_cast<double>(n), static_cast<double>(d));
    const std::int64_t m = 2 * K - 1;

    if (total <= 2e6) {
        // Enumerable grid: dimension-by-dimension partial transforms, so the
        // cost is sum_j n^(d-j) m^(j+1) instead of n^d m^d.
        auto cells_total = static_cast<std::int64_t>(total);
        std::vector<cplx> buf(static_cast<std::size_t>(cells_total), Fprime.fill());
        for (const auto& [cell, v] : Fprime.cells()) {
            std::int64_t idx = 0;
            for (std::int64_t j = 0; j < d; ++j) idx = idx * n + cell[static_cast<std::size_t>(j)];
            buf[static_cast<std::size_t>(idx)] = v;
        }
        // 1-d transform table I[k+K-1][c]
        std::vector<cplx> table(static_cast<std::size_t>(m * n));
        for (std::int64_t kj = -(K - 1); kj <= K - 1; ++kj)
            for (std::int64_t c = 0; c < n; ++c)
                table[static_cast<std::size_t>((kj + K - 1) * n + c)] = cell_integral(kj, c);

        std::vector<std::int64_t> sizes(static_cast<std::size_t>(d), n);
        for (std::int64_t j = 0; j < d; ++j) {
            std::int64_t outer = 1, inner = 1;
            for (std::int64_t i = 0; i < j; ++i) outer *= sizes[static_cast<std::size_t>(i)];
            for (std::int64_t i = j + 1; i < d; ++i) inner *= sizes[static_cast<std::size_t>(i)];
            std::vector<cplx> next(static_cast<std::size_t>(outer * m * inner), cplx{0.0, 0.0});
            for (std::int64_t o = 0; o < outer; ++o)
                for (std::int64_t c = 0; c < n; ++c)
                    for (std::int64_t k1 = 0; k1 < m; ++k1) {
                        cplx w = table[static_cast<std::size_t>(k1 * n + c)];
                        const cplx* src = &buf[static_cast<std::size_t>((o * n + c) * inner)];
                        cplx* dst = &next[static_cast<std::size_t>((o * m + k1) * inner)];
                        for (std::int64_t i = 0; i < inner; ++i) dst[i] += w * src[i];
                    }
            buf = std::move(next);
            sizes[static_cast<std::size_t>(j)] = m;
        }

        std::vector<std::int64_t> k(static_cast<std::size_t>(d), -(K - 1));
        while (true) {
            double damp = 1.0;
            for (auto kj : k)
                damp *= 1.0 - static_cast<double>(std::llabs(kj)) / static_cast<double>(K);
            if (damp != 0.0) {
                std::int64_t idx = 0;
                for (std::int64_t j = 0; j < d; ++j)
                    idx = idx * m + (k[static_cast<std::size_t>(j)] + K - 1);
                cplx acc = buf[static_cast<std::size_t>(idx)];
                if (std::abs(acc) > 0.0) coeffs[k] = acc * damp;
            }
            if (!next_index(k, K)) break;
        }
        return TrigPolynomial(d, std::move(coeffs));
    }

    std::vector<std::int64_t> k(static_cast<std::size_t>(d), -(K - 1));
    while (true) {
        double damp = 1.0;
        for (auto kj : k) damp *= 1.0 - static_cast<double>(std::llabs(kj)) / static_cast<double>(K);
        if (damp != 0.0) {
            cplx acc = 0.0;
            for (const auto& [cell, v] : Fprime.cells()) {
                cplx prod = v - Fprime.fill(); // fill handled in closed form below
                for (std::int64_t j = 0; j < d; ++j)
                    prod *= cell_integral(k[static_cast<std::size_t>(j)],
                                          cell[static_cast<std::size_t>(j)]);
                acc += prod;
            }
            // the constant fill contributes only to the zero coefficient
            bool zero = std::all_of(k.begin(), k.end(), [](std::int64_t kj) { return kj == 0; });
            if (zero) acc += Fprime.fill();
            if (std::abs(acc) > 0.0) coeffs[k] = acc * damp;
        }
        if (!next_index(k, K)) break;
    }
    return TrigPolynomial(d, std::move(coeffs));
}

SmoothingErrorReport smoothing_error(const GridFunction& Fprime, std::int64_t K, double lambda,
                                     const TorusHom& phi, const Caps& caps) {
    const std::int64_t d = Fprime.d();
    const std::int64_t n = Fprime.n();
    const std::int64_t p = phi.p;
    if (phi.d() != d) throw std::invalid_argument("smoothing_error: dimension mismatch");
    if (!(lambda > 0.0 && lambda < 0.5 / static_cast<double>(n)))
        throw std::invalid_argument("smoothing_error: lambda out of (0, 1/(2n))");

    TrigPolynomial F = smooth(Fprime, K, caps);
    std::vector<double> smoothed = F.eval_orbit(phi);

    double err = 0.0;
    std::int64_t boundary = 0;
    for (std::int64_t x = 0; x < p; ++x) {
        auto t = phi.value(x);
        double diff = Fprime.eval(t) - smoothed[static_cast<std::size_t>(x)];
        err += diff * diff;
        // x is "bad" if some coordinate is within lambda of a grid line
        for (std::int64_t j = 0; j < d; ++j) {
            double frac = t[static_cast<std::size_t>(j)] * static_cast<double>(n);
            frac -= std::floor(frac);
            double dist = std::min(frac, 1.0 - frac) / static_cast<double>(n);
            if (dist <= lambda) {
                ++boundary;
                break;
            }
        }
    }
    err /= static_cast<double>(p);

    double dd = static_cast<double>(d);
    double bound = 4.0 * lambda * dd * static_cast<double>(n) +
                   std::pow(dd / (4.0 * static_cast<double>(K) * lambda * lambda), 2);
    auto allowance = static_cast<std::int64_t>(
        std::floor(4.0 * lambda * dd * static_cast<double>(n) * static_cast<double>(p)));
    bool ok = boundary <= allowance;
    if (ok && err > bound + tol().pointwise)
        throw std::logic_error("smoothing error exceeds its bound despite the boundary assumption");
    return SmoothingErrorReport{err, bound, boundary, allowance, ok};
}

namespace {

double gap_impl(const std::function<double(const std::vector<double>&)>& eval, double integral,
                const TorusHom& phi, double lipschitz_M, std::int64_t K,
                bool independence_verified) {
    if (!independence_verified)
        throw std::invalid_argument("equidistribution_gap: phi not verified K-independent");
    const std::int64_t p = phi.p;
    double mean = 0.0;
    for (std::int64_t x = 0; x < p; ++x) mean += eval(phi.value(x));
    mean /= static_cast<double>(p);
    double gap = std::abs(mean - integral);
    double bound = lipschitz_M / std::sqrt(static_cast<double>(K));
    if (gap > bound + tol().pointwise)
        throw std::logic_error("equidistribution gap exceeds M/sqrt(K)");
    return gap;
}

} // namespace

double equidistribution_gap(const TrigPolynomial& F, const TorusHom& phi, double lipschitz_M,
                            std::int64_t K, bool independence_verified) {
    return gap_impl([&](const std::vector<double>& t) { return F.eval(t); }, F.integral(), phi,
                    lipschitz_M, K, independence_verified);
}

double equidistribution_gap(const GridFunction& F, const TorusHom& phi, double lipschitz_M,
                            std::int64_t K, bool independence_verified) {
    return gap_impl([&](const std::vector<double>& t) { return F.eval(t); }, F.integral(), phi,
                    lipschitz_M, K, independence_verified);
}

double midpoint_quadrature(std::int64_t d, double lo, double hi, std::int64_t res,
                           const std::function<double(const std::vector<double>&)>& g) {
    if (d < 1 || res < 1 || hi <= lo) throw std::invalid_argument("midpoint_quadrature: bad arguments");
    double h = (hi - lo) / static_cast<double>(res);
    std::vector<std::int64_t> idx(static_cast<std::size_t>(d), 0);
    std::vector<double> t(static_cast<std::size_t>(d));
    double acc = 0.0;
    while (true) {
        for (std::int64_t j = 0; j < d; ++j)
            t[static_cast<std::size_t>(j)] =
                lo + (static_cast<double>(idx[static_cast<std::size_t>(j)]) + 0.5) * h;
        acc += g(t);
        std::size_t j = 0;
        for (; j < idx.size(); ++j) {
            if (idx[j] < res - 1) {
                ++idx[j];
                for (std::size_t i = 0; i < j; ++i) idx[i] = 0;
                break;
            }
        }
        if (j == idx.size()) break;
    }
    return acc * std::pow(h, static_cast<double>(d));
}

} // namespace vosper
