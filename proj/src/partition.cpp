#include "vosper/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace vosper {

std::int64_t PreCharacter::grid_index(std::int64_t x, std::int64_t n) const {
    std::int64_t res = ((r % p) * (x % p)) % p;
    if (res < 0) res += p;
    // floor(n * res / p) exactly; the product can exceed 64 bits for large n
    return static_cast<std::int64_t>((static_cast<__int128>(n) * res) / p);
}

CellPartition::CellPartition(std::int64_t p, std::vector<PreCharacter> gamma, std::int64_t n)
    : p_(p), gamma_(std::move(gamma)), n_(n) {
    if (n_ < 1) throw std::invalid_argument("grid resolution must be positive");
    for (auto& phi : gamma_) {
        if (phi.p != p_) throw std::invalid_argument("pre-character modulus mismatch");
        phi.r = ((phi.r % p_) + p_) % p_;
    }
    // assign cell ids by successive refinement over the characters
    cell_id_.assign(static_cast<std::size_t>(p_), 0);
    cell_count_ = 1;
    for (const auto& phi : gamma_) {
        std::unordered_map<std::int64_t, std::int32_t> remap;
        std::int32_t next = 0;
        for (std::int64_t x = 0; x < p_; ++x) {
            std::int64_t key = cell_id_[static_cast<std::size_t>(x)] * (n_ + 1) + phi.grid_index(x, n_);
            auto [it, inserted] = remap.try_emplace(key, next);
            if (inserted) ++next;
            cell_id_[static_cast<std::size_t>(x)] = it->second;
        }
        cell_count_ = next;
    }
}

bool CellPartition::contains_frequency(std::int64_t r) const {
    r = ((r % p_) + p_) % p_;
    return std::any_of(gamma_.begin(), gamma_.end(),
                       [&](const PreCharacter& phi) { return phi.r == r; });
}

DensityFunction conditional_expectation(const DensityFunction& f, const CellPartition& B) {
    if (f.p() != B.p()) throw std::invalid_argument("conditional_expectation: mismatched moduli");
    const std::int64_t p = f.p();
    std::vector<cplx> sums(static_cast<std::size_t>(B.cell_count()), 0.0);
    std::vector<std::int64_t> counts(static_cast<std::size_t>(B.cell_count()), 0);
    for (std::int64_t x = 0; x < p; ++x) {
        auto c = static_cast<std::size_t>(B.cell_of(x));
        sums[c] += f[x];
        counts[c] += 1;
    }
    std::vector<cplx> out(static_cast<std::size_t>(p));
    for (std::int64_t x = 0; x < p; ++x) {
        auto c = static_cast<std::size_t>(B.cell_of(x));
        out[static_cast<std::size_t>(x)] = sums[c] / static_cast<double>(counts[c]);
    }
    return DensityFunction(p, std::move(out));
}

double coefficient_bound_check(const DensityFunction& f, const CellPartition& B, std::int64_t r) {
    if (!B.contains_frequency(r))
        throw std::invalid_argument("coefficient_bound_check: frequency not in Gamma");
    if (lp_norm(f, Norm::LInf) > 1.0 + tol().strict)
        throw std::invalid_argument("coefficient_bound_check requires ||f||_inf <= 1");
    DensityFunction residual = f - conditional_expectation(f, B);
    double value = std::abs(fourier_coefficient(residual, r));
    double bound = 2.0 * std::numbers::pi / static_cast<double>(B.n());
    if (value > bound + tol().strict)
        throw std::logic_error("projection coefficient bound 2*pi/n violated");
    return value;
}

UniformizeResult uniformize(const DensityFunction& f, double delta,
                            std::optional<std::pair<std::vector<PreCharacter>, std::int64_t>> base,
                            const Caps& caps) {
    if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("uniformize: delta out of (0,1]");
    const std::int64_t p = f.p();
    std::vector<PreCharacter> gamma = base ? base->first : std::vector<PreCharacter>{};
    std::int64_t n0 = base ? base->second : 1;
    auto factor = static_cast<std::int64_t>(std::ceil(4.0 * std::numbers::pi / delta));
    if (n0 > caps.max_n / factor) throw CapExceeded("uniformize: grid resolution cap exceeded");
    std::int64_t n = n0 * factor;

    UniformizeResult result{CellPartition(p, gamma, n), {}, 0.0};
    for (std::int64_t step = 0;; ++step) {
        if (step > caps.max_uniformize_steps)
            throw CapExceeded("uniformize: step cap exceeded (implementation bug)");
        CellPartition B(p, gamma, n);
        DensityFunction proj = conditional_expectation(f, B);
        Spectrum spec = dft(f - proj);
        auto [r, m] = spec.max_nontrivial();
        if (m <= delta) {
            result.partition = std::move(B);
            result.final_max_coefficient = m;
            break;
        }
        if (static_cast<std::int64_t>(gamma.size()) >= caps.max_gamma)
            throw CapExceeded("uniformize: character cap exceeded");
        double e_before = std::pow(lp_norm(proj, Norm::L2), 2);
        gamma.push_back(PreCharacter{p, r});
        CellPartition B2(p, gamma, n);
        double e_after = std::pow(lp_norm(conditional_expectation(f, B2), Norm::L2), 2);
        result.steps.push_back(UniformizeStep{r, m, e_before, e_after});
    }
    return result;
}

Decomposition baby_arl(const DensityFunction& f, double epsilon, const GrowthFunction& growth,
                       const Caps& caps) {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::invalid_argument("baby_arl: epsilon out of (0,1]");
    if (lp_norm(f, Norm::LInf) > 1.0 + tol().strict || !f.is_real())
        throw std::invalid_argument("baby_arl requires f mapping into [0,1]");
    const std::int64_t p = f.p();

    std::vector<PreCharacter> gamma;
    std::int64_t n = 1;
    std::vector<BabyIteration> log;

    for (std::int64_t outer = 0; outer < caps.max_outer_iters; ++outer) {
        auto M = std::max<std::int64_t>({static_cast<std::int64_t>(gamma.size()), n, 1});
        double delta = std::min(1.0, 1.0 / growth.eval(static_cast<double>(M)));
        auto uni = uniformize(f, delta, std::make_pair(gamma, n), caps);

        CellPartition coarse(p, gamma, n);
        DensityFunction f_str = conditional_expectation(f, coarse);
        DensityFunction refined = conditional_expectation(f, uni.partition);
        DensityFunction f_sml = refined - f_str;
        DensityFunction f_unf = f - refined;

        double sml = lp_norm(f_sml, Norm::L2);
        log.push_back(BabyIteration{std::pow(lp_norm(f_str, Norm::L2), 2), sml, delta, M});

        if (sml <= epsilon) {
            return Decomposition{std::move(f_str), std::move(f_sml), std::move(f_unf),
                                 static_cast<double>(M), gamma, n, std::move(log)};
        }
        gamma = uni.partition.gamma();
        n = uni.partition.n();
    }
    throw CapExceeded("baby_arl: outer iteration cap exceeded");
}

} // namespace vosper
