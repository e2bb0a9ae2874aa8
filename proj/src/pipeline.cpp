#include "vosper/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <stdexcept>

namespace vosper {

namespace {
constexpr double kPi = std::numbers::pi;
}

ResidueSet ResidueSet::of(std::int64_t p, std::vector<std::int64_t> members) {
    if (!is_prime(p)) throw std::invalid_argument("ResidueSet: modulus must be prime");
    for (auto& x : members) x = ((x % p) + p) % p;
    std::sort(members.begin(), members.end());
    auto dup = std::adjacent_find(members.begin(), members.end());
    if (dup != members.end()) throw std::invalid_argument("ResidueSet: duplicate member");
    return ResidueSet{p, std::move(members)};
}

bool ResidueSet::contains(std::int64_t x) const {
    x = ((x % p) + p) % p;
    return std::binary_search(members.begin(), members.end(), x);
}

std::vector<std::int64_t> ArithmeticProgression::elements(std::int64_t p) const {
    if (length < 1 || length > p) throw std::invalid_argument("ArithmeticProgression: bad length");
    if (((diff % p) + p) % p == 0) throw std::invalid_argument("ArithmeticProgression: zero difference");
    std::vector<std::int64_t> out(static_cast<std::size_t>(length));
    std::int64_t cur = ((start % p) + p) % p;
    std::int64_t d = ((diff % p) + p) % p;
    for (std::int64_t i = 0; i < length; ++i) {
        out[static_cast<std::size_t>(i)] = cur;
        cur += d;
        if (cur >= p) cur -= p;
    }
    return out;
}

ResidueSet ArithmeticProgression::as_set(std::int64_t p) const {
    return ResidueSet::of(p, elements(p));
}

InequalityRecord make_record(std::string name, double lhs, double rhs) {
    bool holds = lhs <= rhs + tol().strict * (1.0 + std::abs(rhs));
    return InequalityRecord{std::move(name), lhs, rhs, holds};
}

double popular_doubling(const ResidueSet& A, double t) {
    if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("popular_doubling: t out of (0,1]");
    const std::int64_t p = A.p;
    std::vector<std::int64_t> reps(static_cast<std::size_t>(p), 0); // p^2 * (1_A*1_A)(x) / p
    for (auto a : A.members)
        for (auto b : A.members) {
            std::int64_t s = a + b;
            if (s >= p) s -= p;
            ++reps[static_cast<std::size_t>(s)];
        }
    double acc = 0.0;
    for (std::int64_t x = 0; x < p; ++x)
        acc += std::min(static_cast<double>(reps[static_cast<std::size_t>(x)]) /
                            static_cast<double>(p),
                        t);
    return acc / static_cast<double>(p);
}

ResidueSet bohr_set(const TorusHom& phi, double radius) {
    if (!(radius > 0.0 && radius <= 0.5)) throw std::invalid_argument("bohr_set: radius out of (0, 1/2]");
    const std::int64_t p = phi.p;
    std::vector<std::int64_t> members;
    for (std::int64_t x = 0; x < p; ++x) {
        bool inside = true;
        for (auto r : phi.freqs) {
            std::int64_t m = ((r % p) * (x % p)) % p;
            if (m < 0) m += p;
            double dist = static_cast<double>(std::min(m, p - m)) / static_cast<double>(p);
            if (dist > radius) {
                inside = false;
                break;
            }
        }
        if (inside) members.push_back(x);
    }
    auto B = ResidueSet::of(p, std::move(members));
    double lower = std::pow(radius, static_cast<double>(phi.d()));
    if (B.density() + tol().strict < lower)
        throw std::logic_error("bohr_set: size bound |B|/p >= radius^d violated");
    return B;
}

SetCResult build_set_C(const DensityFunction& f_str, const DensityFunction& f_sml,
                       const ResidueSet& B, double lambda, double epsilon) {
    const std::int64_t p = f_str.p();
    if (f_sml.p() != p || B.p != p) throw std::invalid_argument("build_set_C: mismatched moduli");
    if (B.size() == 0) throw std::invalid_argument("build_set_C: empty Bohr set");

    auto str = f_str.real_values();
    std::vector<std::int64_t> cp, cs, c;
    double str_sum = 0.0;
    for (std::int64_t x = 0; x < p; ++x) {
        str_sum += str[static_cast<std::size_t>(x)];
        double local = 0.0;
        for (auto y : B.members) {
            std::int64_t z = x + y;
            if (z >= p) z -= p;
            local += std::norm(f_sml[z]);
        }
        local /= static_cast<double>(B.size());
        bool in_prime = str[static_cast<std::size_t>(x)] >= lambda;
        bool in_second = local > epsilon;
        if (in_prime) cp.push_back(x);
        if (in_second) cs.push_back(x);
        if (in_prime && !in_second) c.push_back(x);
    }
    SetCResult out{ResidueSet::of(p, std::move(c)), ResidueSet::of(p, std::move(cp)),
                   ResidueSet::of(p, std::move(cs)), {}};
    out.bounds.push_back(make_record("|C'| >= sum f_str - lambda*p",
                                     str_sum - lambda * static_cast<double>(p),
                                     static_cast<double>(out.C_prime.size())));
    out.bounds.push_back(make_record("|C''| <= epsilon*p", static_cast<double>(out.C_second.size()),
                                     epsilon * static_cast<double>(p)));
    out.bounds.push_back(make_record("|C| >= |C'| - |C''|",
                                     static_cast<double>(out.C_prime.size() - out.C_second.size()),
                                     static_cast<double>(out.C.size())));
    return out;
}

ArithmeticProgression ap_cover(const ResidueSet& S) {
    const std::int64_t p = S.p;
    const std::int64_t m = S.size();
    if (m == 0) throw std::invalid_argument("ap_cover: empty set");
    if (m == p) return ArithmeticProgression{0, 1, p};

    ArithmeticProgression best{0, 1, p + 1}; // sentinel
    std::vector<std::int64_t> pos(static_cast<std::size_t>(m));
    for (std::int64_t q = 1; q <= (p - 1) / 2; ++q) {
        std::int64_t qinv = mod_inverse(q, p);
        for (std::size_t i = 0; i < pos.size(); ++i)
            pos[i] = (qinv * S.members[i]) % p;
        std::sort(pos.begin(), pos.end());
        // the shortest AP of difference q covers everything but the largest
        // cyclic gap of the dilated set
        for (std::size_t i = 0; i < pos.size(); ++i) {
            std::int64_t nxt = i + 1 < pos.size() ? pos[i + 1] : pos[0] + p;
            std::int64_t gap = nxt - pos[i];
            std::int64_t len = p - gap + 1;
            std::int64_t start = (q * (nxt % p)) % p;
            // lexicographic (length, diff, start)
            if (len < best.length || (len == best.length && q < best.diff) ||
                (len == best.length && q == best.diff && start < best.start))
                best = ArithmeticProgression{start, q, len};
        }
    }
    return best;
}

ResidueSet sumset(const ResidueSet& S) {
    const std::int64_t p = S.p;
    std::vector<char> hit(static_cast<std::size_t>(p), 0);
    for (auto a : S.members)
        for (auto b : S.members) {
            std::int64_t s = a + b;
            if (s >= p) s -= p;
            hit[static_cast<std::size_t>(s)] = 1;
        }
    std::vector<std::int64_t> members;
    for (std::int64_t x = 0; x < p; ++x)
        if (hit[static_cast<std::size_t>(x)]) members.push_back(x);
    auto out = ResidueSet::of(p, std::move(members));
    if (S.size() > 0 && out.size() < std::min(2 * S.size() - 1, p))
        throw std::logic_error("sumset: Cauchy-Davenport bound violated (implementation bug)");
    return out;
}

APCoefficientReport ap_fourier_coefficient(const ArithmeticProgression& P, std::int64_t p) {
    auto elems = P.elements(p);
    double L = static_cast<double>(P.length);
    double pp = static_cast<double>(p);
    double closed = std::sin((L - 1.0) * kPi / pp) / (pp * std::sin(kPi / pp));
    auto ind = DensityFunction::indicator(p, elems);
    std::int64_t r = mod_inverse(((P.diff % p) + p) % p, p);
    double mag = std::abs(fourier_coefficient(ind, r));
    return APCoefficientReport{closed, mag};
}

double sine_identity_check(std::int64_t size_A, std::int64_t size_P, std::int64_t size_AnP,
                           std::int64_t p) {
    if (size_AnP < 0 || size_AnP > std::min(size_A, size_P))
        throw std::invalid_argument("sine_identity_check: intersection too large");
    std::int64_t size_AuP = size_A + size_P - size_AnP;
    if (size_AuP > p) throw std::invalid_argument("sine_identity_check: union exceeds p");
    double pp = static_cast<double>(p);
    auto s = [&](double v) { return std::sin(v * kPi / pp); };
    double lhs = 2.0 * s(static_cast<double>(size_P - 1)) - s(static_cast<double>(size_AnP - 1)) -
                 s(static_cast<double>(size_AuP - 1));
    double PmA = static_cast<double>(size_P - size_AnP);
    double AmP = static_cast<double>(size_A - size_AnP);
    double half = kPi / (2.0 * pp);
    double rhs = 4.0 * std::sin(PmA * half) * std::sin(AmP * half) *
                     std::sin(static_cast<double>(size_A + size_P - 2) * half) +
                 2.0 * std::sin(static_cast<double>(size_P - size_A) * half) *
                     std::cos(static_cast<double>(size_A + size_P - 2) * half);
    return std::abs(lhs - rhs);
}

ParameterLedger parameter_ledger(double alpha1, double alpha2, double eta, double delta,
                                 double M0) {
    if (!(alpha1 > 0.0 && alpha1 < alpha2 && alpha2 < 0.25))
        throw std::invalid_argument("parameter_ledger: need 0 < alpha1 < alpha2 < 1/4");
    if (!(eta > 0.0 && delta > 0.0 && M0 >= 1.0))
        throw std::invalid_argument("parameter_ledger: eta, delta > 0 and M0 >= 1 required");

    ParameterLedger L;
    L.alpha1 = alpha1;
    L.alpha2 = alpha2;
    L.eta = eta;
    L.delta = delta;
    L.M0 = M0;
    L.delta0 = (0.5 / alpha2 - 1.0) / (1.0 + eta);
    if ((1.0 + (1.0 + eta) * delta) * alpha2 >= 0.5)
        throw std::invalid_argument("parameter_ledger: delta exceeds the admissible delta0");
    L.lambda = eta * delta * alpha1 / 4.0;
    L.epsilon = std::pow(L.lambda, 4) / 256.0;
    auto growth = GrowthFunction::paper_ledger(eta, delta, alpha1, L.lambda);
    L.growth = growth.describe();
    L.log2_F_M0 = growth.log2_eval(M0);
    L.log2_t0 = std::log2(L.lambda * L.lambda / 16.0) + M0 * std::log2(L.lambda / (2.0 * M0));

    auto identity = [&](std::string name, double got, double want) {
        bool ok = std::abs(got - want) <= 1e-12 * std::max(1.0, std::abs(want));
        L.checks.push_back(InequalityRecord{std::move(name), got, want, ok});
    };
    identity("lambda = eta*delta*alpha1/4", L.lambda, eta * delta * alpha1 / 4.0);
    identity("epsilon = lambda^4/256", L.epsilon, std::pow(L.lambda, 4) / 256.0);
    identity("log2 t0 = log2(lambda^2/16) + M0*log2(lambda/2M0)", L.log2_t0,
             std::log2(L.lambda * L.lambda / 16.0) + M0 * std::log2(L.lambda / (2.0 * M0)));
    L.checks.push_back(make_record("(1+(1+eta)delta)alpha2 < 1/2",
                                   (1.0 + (1.0 + eta) * delta) * alpha2, 0.5));

    double budget = eta * delta * alpha1 / 4.0;
    L.checks.push_back(make_record("lambda <= eta*delta*alpha1/4", L.lambda, budget));
    L.checks.push_back(make_record("epsilon <= eta*delta*alpha1/4", L.epsilon, budget));
    // 1/(t0*sqrt(F(M0))) <= budget, evaluated in log2 space
    L.checks.push_back(make_record("log2(1/(t0 sqrt(F))) <= log2(budget)",
                                   -L.log2_t0 - 0.5 * L.log2_F_M0, std::log2(budget)));
    // t0 <= (lambda/2M0)^M0 * (lambda^2/4 - 2 sqrt(eps) - eps)
    double popularity_floor = L.lambda * L.lambda / 4.0 - 2.0 * std::sqrt(L.epsilon) - L.epsilon;
    L.checks.push_back(make_record("log2 t0 <= log2((lambda/2M0)^M0 (lambda^2/4-2sqrt(eps)-eps))",
                                   L.log2_t0,
                                   M0 * std::log2(L.lambda / (2.0 * M0)) + std::log2(popularity_floor)));
    return L;
}

namespace {

// Assign every unpopulated grid cell the value of its nearest populated cell
// (breadth-first in the torus grid graph).  When d >= 2 and p << n^d most
// cells contain no residue; smoothing against a constant fill there would
// flatten the structured part well below its true level on the orbit.
GridFunction nearest_populated_fill(GridFunction F) {
    const std::int64_t d = F.d();
    const std::int64_t n = F.n();
    const double total_d = std::pow(static_cast<double>(n), static_cast<double>(d));
    if (total_d > 2e6 || F.cells().empty()) return F;
    const auto total = static_cast<std::int64_t>(total_d);
    if (static_cast<std::int64_t>(F.cells().size()) == total) return F;

    std::vector<double> val(static_cast<std::size_t>(total), 0.0);
    std::vector<char> seen(static_cast<std::size_t>(total), 0);
    std::deque<std::int64_t> queue;
    for (const auto& [cell, v] : F.cells()) {
        std::int64_t idx = 0;
        for (std::int64_t j = 0; j < d; ++j) idx = idx * n + cell[static_cast<std::size_t>(j)];
        val[static_cast<std::size_t>(idx)] = v;
        seen[static_cast<std::size_t>(idx)] = 1;
        queue.push_back(idx);
    }
    std::vector<std::int64_t> stride(static_cast<std::size_t>(d), 1);
    for (std::int64_t j = d - 2; j >= 0; --j)
        stride[static_cast<std::size_t>(j)] = stride[static_cast<std::size_t>(j + 1)] * n;
    while (!queue.empty()) {
        std::int64_t idx = queue.front();
        queue.pop_front();
        for (std::int64_t j = 0; j < d; ++j) {
            std::int64_t s = stride[static_cast<std::size_t>(j)];
            std::int64_t c = (idx / s) % n;
            for (std::int64_t dir : {+1, -1}) {
                std::int64_t c2 = (c + dir + n) % n;
                std::int64_t idx2 = idx + (c2 - c) * s;
                if (seen[static_cast<std::size_t>(idx2)]) continue;
                seen[static_cast<std::size_t>(idx2)] = 1;
                val[static_cast<std::size_t>(idx2)] = val[static_cast<std::size_t>(idx)];
                queue.push_back(idx2);
            }
        }
    }
    GridFunction out(d, n, 0.0);
    std::vector<std::int64_t> cell(static_cast<std::size_t>(d), 0);
    for (std::int64_t idx = 0; idx < total; ++idx) {
        std::int64_t rem = idx;
        for (std::int64_t j = d - 1; j >= 0; --j) {
            cell[static_cast<std::size_t>(j)] = rem % n;
            rem /= n;
        }
        out.set(cell, val[static_cast<std::size_t>(idx)]);
    }
    return out;
}

} // namespace

TorusDecomposition intermediate_arl(const DensityFunction& f, double epsilon,
                                    const GrowthFunction& growth, const Caps& caps) {
    Decomposition baby = baby_arl(f, epsilon / 2.0, growth, caps);
    const std::int64_t p = f.p();

    if (baby.gamma.empty()) {
        // constant structured part; a single nontrivial frequency keeps the
        // homomorphism independence-friendly
        double c = std::clamp(baby.f_str[0].real(), 0.0, 1.0);
        TorusHom phi{p, {1}};
        std::map<std::vector<std::int64_t>, cplx> coeffs;
        coeffs[{0}] = c;
        TrigPolynomial F(1, std::move(coeffs));
        return TorusDecomposition{baby.f_str, baby.f_sml, baby.f_unf, 1.0,     std::move(phi),
                                  std::move(F), 0.0,        0,          0,       std::move(baby.log)};
    }

    const auto d = static_cast<std::int64_t>(baby.gamma.size());
    const std::int64_t n = baby.n;
    TorusHom phi{p, {}};
    for (const auto& g : baby.gamma) phi.freqs.push_back(g.r);

    double fillv = std::clamp(f.mean().real(), 0.0, 1.0);
    GridFunction Fprime(d, n, fillv);
    auto str_vals = baby.f_str.real_values();
    for (std::int64_t x = 0; x < p; ++x) {
        std::vector<std::int64_t> cell(static_cast<std::size_t>(d));
        for (std::int64_t j = 0; j < d; ++j)
            cell[static_cast<std::size_t>(j)] =
                baby.gamma[static_cast<std::size_t>(j)].grid_index(x, n);
        Fprime.set(std::move(cell), str_vals[static_cast<std::size_t>(x)]);
    }
    Fprime = nearest_populated_fill(std::move(Fprime));

    DensityFunction refined = baby.f_str + baby.f_sml; // = E(f|B'), exactly f - f_unf
    for (std::int64_t K = 8; K <= std::min<std::int64_t>(256, caps.fejer_k_max); K *= 2) {
        double terms = std::pow(2.0 * static_cast<double>(K) - 1.0, static_cast<double>(d));
        if (terms > static_cast<double>(caps.term_cap)) break;
        TrigPolynomial F = smooth(Fprime, K, caps);
        DensityFunction f_str = DensityFunction::real(p, F.eval_orbit(phi));
        DensityFunction f_sml = refined - f_str;
        if (lp_norm(f_sml, Norm::L2) <= epsilon) {
            double lip = F.lipschitz_bound();
            double M = std::max(static_cast<double>(d), lip);
            return TorusDecomposition{std::move(f_str), std::move(f_sml), baby.f_unf, M,
                                      std::move(phi),   std::move(F),     lip,        K,
                                      0,                std::move(baby.log)};
        }
    }
    throw CapExceeded("intermediate_arl: Fejer order cap reached before ||f_sml||_2 <= epsilon");
}

TorusDecomposition final_arl(const DensityFunction& f, double epsilon,
                             const GrowthFunction& growth, const Caps& caps) {
    TorusDecomposition dec = intermediate_arl(f, epsilon, growth, caps);
    const std::int64_t p = f.p();
    const std::int64_t d0 = dec.phi.d();

    for (std::int64_t step = 0; step <= d0; ++step) {
        auto K = static_cast<std::int64_t>(std::ceil(growth.eval(dec.M)));
        if (K >= p)
            throw CapExceeded("final_arl: independence bound F(M) reaches the modulus");
        auto rel = find_relation(dec.phi, K, true, caps);
        if (!rel) {
            dec.reduction_steps = step;
            return dec;
        }
        if (dec.phi.d() < 2)
            throw std::logic_error("final_arl: relation in dimension 1 with p > K (impossible)");
        DimensionReduction red = reduce_dimension(dec.phi, dec.F, *rel);
        dec.phi = std::move(red.phi);
        dec.F = std::move(red.F);
        dec.lipschitz = red.lipschitz;
        dec.M = std::max(static_cast<double>(dec.phi.d()), dec.lipschitz);
    }
    throw std::logic_error("final_arl: more reductions than the starting dimension");
}

bool DecompositionCheck::all_hold() const {
    return std::all_of(records.begin(), records.end(),
                       [](const InequalityRecord& r) { return r.holds; });
}

namespace {

void common_checks(DecompositionCheck& out, const DensityFunction& f, const DensityFunction& str,
                   const DensityFunction& sml, const DensityFunction& unf, double epsilon,
                   double FM, double range_slack) {
    const std::int64_t p = f.p();
    double recon = 0.0, lo = 0.0, hi = 0.0, lo2 = 0.0, hi2 = 0.0;
    for (std::int64_t x = 0; x < p; ++x) {
        recon = std::max(recon, std::abs(str[x] + sml[x] + unf[x] - f[x]));
        double s = str[x].real();
        double s2 = s + sml[x].real();
        lo = std::min(lo, s);
        hi = std::max(hi, s);
        lo2 = std::min(lo2, s2);
        hi2 = std::max(hi2, s2);
    }
    out.records.push_back(make_record("f_str+f_sml+f_unf = f (sup deviation)", recon, tol().pointwise));
    out.records.push_back(make_record("f_str >= 0", -lo, range_slack));
    out.records.push_back(make_record("f_str <= 1", hi - 1.0, range_slack));
    out.records.push_back(make_record("f_str+f_sml >= 0", -lo2, range_slack));
    out.records.push_back(make_record("f_str+f_sml <= 1", hi2 - 1.0, range_slack));
    out.records.push_back(make_record("mean f_unf = 0", std::abs(unf.mean()), tol().strict));
    out.records.push_back(make_record("||f_sml||_2 <= epsilon", lp_norm(sml, Norm::L2), epsilon));
    Spectrum spec = dft(unf);
    double mx = 0.0;
    for (std::int64_t r = 0; r < p; ++r) mx = std::max(mx, std::abs(spec[r]));
    out.records.push_back(make_record("|fhat_unf| <= 1/F(M)", mx, 1.0 / FM));
}

} // namespace

DecompositionCheck check_decomposition(const DensityFunction& f, const Decomposition& dec,
                                       double epsilon, const GrowthFunction& growth) {
    DecompositionCheck out;
    double FM = growth.eval(dec.M);
    common_checks(out, f, dec.f_str, dec.f_sml, dec.f_unf, epsilon, FM, tol().strict);
    // f_str must be the conditional expectation on its own partition
    CellPartition B(f.p(), dec.gamma, dec.n);
    DensityFunction proj = conditional_expectation(f, B);
    double dev = 0.0;
    for (std::int64_t x = 0; x < f.p(); ++x) dev = std::max(dev, std::abs(proj[x] - dec.f_str[x]));
    out.records.push_back(make_record("f_str = E(f|B(Gamma,n))", dev, tol().pointwise));
    double M_expected = static_cast<double>(
        std::max<std::int64_t>({static_cast<std::int64_t>(dec.gamma.size()), dec.n, 1}));
    out.records.push_back(make_record("M = max(|Gamma|, n)", std::abs(dec.M - M_expected), 0.0));
    return out;
}

DecompositionCheck check_decomposition(const DensityFunction& f, const TorusDecomposition& dec,
                                       double epsilon, const GrowthFunction& growth,
                                       bool require_independence, const Caps& caps) {
    DecompositionCheck out;
    double FM = growth.eval(dec.M);
    common_checks(out, f, dec.f_str, dec.f_sml, dec.f_unf, epsilon, FM, tol().range_slack);
    auto orbit = dec.F.eval_orbit(dec.phi);
    double dev = 0.0;
    for (std::int64_t x = 0; x < f.p(); ++x)
        dev = std::max(dev, std::abs(dec.f_str[x].real() - orbit[static_cast<std::size_t>(x)]));
    out.records.push_back(make_record("f_str = F(phi(x))", dev, tol().pointwise));
    out.records.push_back(make_record("Lipschitz certificate <= M", dec.F.lipschitz_bound(), dec.M));
    out.records.push_back(make_record("d <= M", static_cast<double>(dec.phi.d()), dec.M));
    if (require_independence) {
        auto K = static_cast<std::int64_t>(std::ceil(FM));
        auto rel = find_relation(dec.phi, K, true, caps);
        out.records.push_back(
            make_record("phi F(M)-independent", rel.has_value() ? 1.0 : 0.0, 0.0));
    }
    return out;
}

VerificationReport verify_theorem(const ResidueSet& A, double t, double delta, double eta,
                                  const VerifyConfig& config) {
    const std::int64_t p = A.p;
    VerificationReport rep;
    rep.alpha = A.density();
    rep.t = t;
    rep.delta = delta;
    rep.eta = eta;
    if (!(rep.alpha > config.alpha_min && rep.alpha < config.alpha_max))
        throw std::invalid_argument("verify_theorem: density outside the configured window");
    if (!(delta > 0.0 && eta > 0.0)) throw std::invalid_argument("verify_theorem: delta, eta > 0");

    rep.hypothesis_value = popular_doubling(A, t);
    rep.hypothesis_threshold = (2.0 + delta) * rep.alpha * t;
    rep.hypothesis_holds = rep.hypothesis_value <= rep.hypothesis_threshold + tol().strict;
    if (!rep.hypothesis_holds) {
        rep.status = "hypothesis-not-met";
        return rep;
    }

    DensityFunction f = A.indicator();
    TorusDecomposition dec = final_arl(f, config.epsilon, config.growth, config.caps);
    rep.M = dec.M;
    double FM = config.growth.eval(dec.M);
    double eps = config.epsilon;
    double lambda = config.lambda;

    // removing f_unf moves the popularity functional by at most 2/sqrt(F(M))
    DensityFunction g = dec.f_str + dec.f_sml;
    DensityFunction gg = convolve(g, g);
    double smoothed_value = 0.0;
    for (std::int64_t x = 0; x < p; ++x) smoothed_value += std::min(gg[x].real(), t);
    smoothed_value /= static_cast<double>(p);
    rep.inequalities.push_back(make_record("|E min(1A*1A,t) - E min(g*g,t)| <= 2/sqrt(F(M))",
                                           std::abs(rep.hypothesis_value - smoothed_value),
                                           2.0 / std::sqrt(FM)));

    ResidueSet B = bohr_set(dec.phi, config.bohr_radius);
    SetCResult setc = build_set_C(dec.f_str, dec.f_sml, B, lambda, eps);
    for (auto& r : setc.bounds) rep.inequalities.push_back(std::move(r));
    rep.C_size = setc.C.size();
    double str_mean = dec.f_str.mean().real();
    if (str_mean >= rep.alpha - eps - tol().strict)
        rep.inequalities.push_back(make_record("|C| >= (alpha-2eps-lambda)p",
                                               (rep.alpha - 2.0 * eps - lambda) *
                                                   static_cast<double>(p),
                                               static_cast<double>(rep.C_size)));
    if (rep.C_size == 0) {
        rep.status = "no-structure";
        return rep;
    }

    ResidueSet CC = sumset(setc.C);
    rep.CC_size = CC.size();
    rep.inequalities.push_back(make_record("|C+C| <= ((2+delta)alpha + 2/(t sqrt(F(M))))p",
                                           static_cast<double>(rep.CC_size),
                                           ((2.0 + delta) * rep.alpha +
                                            2.0 / (t * std::sqrt(FM))) *
                                               static_cast<double>(p)));

    ArithmeticProgression P = ap_cover(setc.C);
    if (static_cast<double>(rep.CC_size) < (2.0 + 1e-4) * static_cast<double>(rep.C_size))
        rep.inequalities.push_back(make_record("cover size <= |C+C|-|C|+1 (Serra-Zemor)",
                                               static_cast<double>(P.length),
                                               static_cast<double>(rep.CC_size - rep.C_size + 1)));

    // extend P until |P| >= |A|, preferring the end that captures more of A
    while (P.length < A.size() && P.length < p) {
        std::int64_t lo = ((P.start - P.diff) % p + p) % p;
        std::int64_t hi = (P.start + P.length * P.diff) % p;
        if (A.contains(lo) || !A.contains(hi)) P.start = lo;
        ++P.length;
    }
    rep.P = P;
    rep.P_size = P.length;
    ResidueSet Pset = P.as_set(p);
    std::int64_t in_both = 0;
    for (auto a : A.members)
        if (Pset.contains(a)) ++in_both;
    rep.A_minus_P = A.size() - in_both;
    rep.P_minus_A = rep.P_size - in_both;

    // Fourier chain for every character
    DensityFunction diff_fn = Pset.indicator() - A.indicator();
    Spectrum spec = dft(diff_fn);
    double max_coeff = 0.0;
    for (std::int64_t r = 0; r < p; ++r) max_coeff = std::max(max_coeff, std::abs(spec[r]));
    double chain_rhs = static_cast<double>(rep.P_size - A.size()) / static_cast<double>(p) +
                       4.0 * eps + 2.0 * lambda + 1.0 / FM;
    rep.inequalities.push_back(
        make_record("|<1P-1A,chi>| <= E(1P-1A)+4eps+2lambda+1/F(M)", max_coeff, chain_rhs));

    double half = kPi / (2.0 * static_cast<double>(p));
    double sine_lhs = 4.0 * std::sin(static_cast<double>(rep.P_minus_A) * half) *
                      std::sin(static_cast<double>(rep.A_minus_P) * half) *
                      std::sin(static_cast<double>(A.size() + rep.P_size - 2) * half) /
                      (static_cast<double>(p) * std::sin(kPi / static_cast<double>(p)));
    rep.inequalities.push_back(
        make_record("sine lower bound <= Fourier chain bound", sine_lhs, chain_rhs));

    rep.C_emp = static_cast<double>(rep.A_minus_P) /
                (std::sqrt(delta * rep.alpha) * static_cast<double>(p));
    rep.status = "covered";
    return rep;
}

TransferReport popularity_transfer_check(const ResidueSet& A, double delta, double t,
                                         double t_prime) {
    if (!(t > 0.0 && t <= t_prime && t_prime <= 1.0))
        throw std::invalid_argument("popularity_transfer_check: need 0 < t <= t' <= 1");
    TransferReport r;
    r.t = t;
    r.t_prime = t_prime;
    double alpha = A.density();
    r.value_t = popular_doubling(A, t);
    r.threshold_t = (2.0 + delta) * alpha * t;
    r.value_t_prime = popular_doubling(A, t_prime);
    r.threshold_t_prime = (2.0 + delta) * alpha * t_prime;
    r.premise = r.value_t <= r.threshold_t + tol().strict;
    r.conclusion = r.value_t_prime <= r.threshold_t_prime + tol().strict;
    r.implication_holds = !r.premise || r.conclusion;
    return r;
}

} // namespace vosper
