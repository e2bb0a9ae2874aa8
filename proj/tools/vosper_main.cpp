// vosper: command-line surface for the Z/pZ stability-verification toolkit.
//
// Exit codes: 0 = ran and verified (or a clean negative result),
//             1 = a checked property was violated,
//             2 = usage or configuration error,
//             3 = a configured cap was exceeded.

#include <algorithm>
#include <cstdio>
#include <random>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "vosper/io.hpp"

using nlohmann::json;
using namespace vosper;

namespace {

enum ExitCode { kOk = 0, kViolation = 1, kUsage = 2, kCap = 3 };

std::vector<std::int64_t> parse_int_list(const std::string& s) {
    std::vector<std::int64_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stoll(item));
    }
    if (out.empty()) throw std::invalid_argument("empty integer list");
    return out;
}

GrowthFunction make_growth(const std::string& family, double a, double b) {
    if (family == "affine") return GrowthFunction::affine(a, b);
    if (family == "polynomial") return GrowthFunction::polynomial(a, b);
    if (family == "exponential") return GrowthFunction::exponential(a, b);
    throw std::invalid_argument("unknown growth family: " + family);
}

void print_records(const std::vector<InequalityRecord>& records) {
    for (const auto& r : records)
        std::printf("  %-55s lhs=%.12g rhs=%.12g %s\n", r.name.c_str(), r.lhs, r.rhs,
                    r.holds ? "holds" : "FAILS");
}

json config_json(const CLI::App& app) {
    json cfg;
    for (const auto* opt : app.get_options()) {
        if (opt->count() > 0 && !opt->get_lnames().empty())
            cfg[opt->get_lnames().front()] = opt->results().front();
    }
    return cfg;
}

// --- oracle suites: brute-force recomputations, independent of the library paths ---

int oracle_lattice() {
    int failures = 0;
    // matrix completion, exhaustively over small vectors
    for (std::int64_t d = 1; d <= 3; ++d) {
        std::vector<std::int64_t> a(static_cast<std::size_t>(d), -5);
        while (true) {
            bool zero = std::all_of(a.begin(), a.end(), [](std::int64_t x) { return x == 0; });
            if (!zero) {
                auto A = complete_matrix(a);
                std::int64_t sq = 0, mx = 0;
                for (auto x : a) {
                    sq += x * x;
                    mx = std::max<std::int64_t>(mx, std::llabs(x));
                }
                std::int64_t want = sq / gcd_vec(a);
                std::int64_t det = A.det();
                if ((d == 1 ? std::llabs(det) != want : det != want)) ++failures;
                if (A.rows[0] != a) ++failures;
                for (std::int64_t i = 1; i < d; ++i) {
                    std::int64_t dot = 0;
                    for (std::int64_t j = 0; j < d; ++j)
                        dot += a[static_cast<std::size_t>(j)] *
                               A.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                    if (dot != 0) ++failures;
                }
                for (const auto& row : A.rows)
                    for (auto x : row)
                        if (std::llabs(x) > mx) ++failures;
            }
            std::size_t j = 0;
            for (; j < a.size(); ++j) {
                if (a[j] < 5) {
                    ++a[j];
                    for (std::size_t i = 0; i < j; ++i) a[i] = -5;
                    break;
                }
            }
            if (j == a.size()) break;
        }
    }
    // bounded Bezout, exhaustively over coprime vectors
    for (std::int64_t m = 1; m <= 3; ++m) {
        std::vector<std::int64_t> b(static_cast<std::size_t>(m), -6);
        while (true) {
            if (gcd_vec(b) == 1) {
                for (std::int64_t target = -6; target <= 6; ++target) {
                    auto c = bounded_bezout(b, target, 6);
                    std::int64_t sum = 0;
                    for (std::int64_t j = 0; j < m; ++j) {
                        sum += b[static_cast<std::size_t>(j)] * c[static_cast<std::size_t>(j)];
                        if (std::llabs(c[static_cast<std::size_t>(j)]) > 6) ++failures;
                    }
                    if (sum != target) ++failures;
                }
            }
            std::size_t j = 0;
            for (; j < b.size(); ++j) {
                if (b[j] < 6) {
                    ++b[j];
                    for (std::size_t i = 0; i < j; ++i) b[i] = -6;
                    break;
                }
            }
            if (j == b.size()) break;
        }
    }
    std::printf("oracle lattice: %d failures\n", failures);
    return failures == 0 ? kOk : kViolation;
}

int oracle_trig() {
    // sine identity, exhaustively at p = 53
    const std::int64_t p = 53;
    double worst = 0.0;
    for (std::int64_t sa = 1; sa <= p; ++sa)
        for (std::int64_t sp = 1; sp <= p; ++sp)
            for (std::int64_t si = std::max<std::int64_t>(0, sa + sp - p);
                 si <= std::min(sa, sp); ++si)
                worst = std::max(worst, sine_identity_check(sa, sp, si, p));
    std::printf("oracle trig: max sine-identity residual %.3e\n", worst);
    return worst <= 1e-12 ? kOk : kViolation;
}

int oracle_fourier() {
    // Parseval and the convolution bound against direct summation
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    const std::int64_t p = 97;
    int failures = 0;
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> vals(static_cast<std::size_t>(p));
        for (auto& v : vals) v = dist(rng);
        auto f = DensityFunction::real(p, vals);
        auto spec = dft(f);
        double lhs = 0.0;
        for (std::int64_t r = 0; r < p; ++r) lhs += std::norm(spec[r]);
        double rhs = 0.0;
        for (std::int64_t x = 0; x < p; ++x) rhs += std::norm(f[x]);
        rhs /= static_cast<double>(p);
        if (std::abs(lhs - rhs) > 1e-12) ++failures;
    }
    std::printf("oracle fourier: %d failures\n", failures);
    return failures == 0 ? kOk : kViolation;
}

int oracle_relation() {
    // agreement of find_relation with a reference scan on random instances
    std::mt19937_64 rng(99);
    int failures = 0;
    for (int rep = 0; rep < 200; ++rep) {
        std::int64_t p = (rep % 2 == 0) ? 101 : 257;
        std::int64_t d = 1 + static_cast<std::int64_t>(rng() % 3);
        std::int64_t K = 2 + static_cast<std::int64_t>(rng() % 5);
        TorusHom phi{p, {}};
        for (std::int64_t j = 0; j < d; ++j)
            phi.freqs.push_back(1 + static_cast<std::int64_t>(rng() % (p - 1)));
        auto got = find_relation(phi, K);
        // reference: plain nested scan
        bool exists = false;
        std::vector<std::int64_t> k(static_cast<std::size_t>(d), -(K - 1));
        while (true) {
            std::int64_t s = 0;
            bool zero = true;
            for (std::int64_t j = 0; j < d; ++j) {
                s = (s + k[static_cast<std::size_t>(j)] * phi.freqs[static_cast<std::size_t>(j)]) % p;
                if (k[static_cast<std::size_t>(j)] != 0) zero = false;
            }
            if (!zero && ((s % p) + p) % p == 0) {
                exists = true;
                break;
            }
            std::size_t j = 0;
            for (; j < k.size(); ++j) {
                if (k[j] < K - 1) {
                    ++k[j];
                    for (std::size_t i = 0; i < j; ++i) k[i] = -(K - 1);
                    break;
                }
            }
            if (j == k.size()) break;
        }
        if (got.has_value() != exists) ++failures;
        if (got) {
            std::int64_t s = 0;
            for (std::int64_t j = 0; j < d; ++j)
                s = (s + got->k[static_cast<std::size_t>(j)] * phi.freqs[static_cast<std::size_t>(j)]) % p;
            if (((s % p) + p) % p != 0) ++failures;
        }
    }
    std::printf("oracle relation: %d failures\n", failures);
    return failures == 0 ? kOk : kViolation;
}

int oracle_quadrature() {
    // Fejer concentration and tail-mass bounds over a (d, K, lambda) grid
    int failures = 0;
    for (std::int64_t d = 1; d <= 2; ++d) {
        for (std::int64_t K : {4, 16, 64}) {
            auto Phi = fejer_kernel(d, K);
            for (double lambda : {0.125, 0.25}) {
                double inside = midpoint_quadrature(
                    d, -lambda, lambda, 160,
                    [&](const std::vector<double>& t) { return Phi.eval(t); });
                double want = 1.0 - static_cast<double>(d) /
                                        (4.0 * static_cast<double>(K) * lambda * lambda);
                if (inside + 1e-6 < want) ++failures;
            }
            double tail = midpoint_quadrature(d, -0.5, 0.5, 200, [&](const std::vector<double>& t) {
                double norm = 0.0;
                for (double v : t) norm = std::max(norm, std::abs(v));
                return norm * Phi.eval(t);
            });
            if (tail > 1.0 / std::sqrt(static_cast<double>(K)) + 1e-6) ++failures;
        }
    }
    std::printf("oracle quadrature: %d failures\n", failures);
    return failures == 0 ? kOk : kViolation;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"vosper: additive-combinatorics stability verification toolkit"};
    app.require_subcommand(1);

    std::string set_path, out_path, config_path;
    std::string kind, params_str, freq_str, vec_str, family = "affine", suite;
    std::uint64_t seed = 0;
    std::int64_t p = 101, K = 8, fejer_order = 4, d = 1, target = 0, M0 = 4;
    double t = 0.01, delta = 0.1, eta = 0.1, epsilon = 0.25, lambda = 0.5, radius = 0.02;
    double ga = 0.05, gb = 16.0, alpha1 = 0.05, alpha2 = 0.2;
    std::string form = "final";

    auto add_set = [&](CLI::App* cmd) { cmd->add_option("--set", set_path, "set record file")->required(); };
    auto add_growth = [&](CLI::App* cmd) {
        cmd->add_option("--growth-family", family, "affine|polynomial|exponential");
        cmd->add_option("--growth-a", ga, "growth parameter a");
        cmd->add_option("--growth-b", gb, "growth parameter b");
    };

    auto* c_gen = app.add_subcommand("generate", "generate a set record");
    c_gen->add_option("--kind", kind, "ap|ap-plus-noise|union-two-aps|bohr-sample|random")->required();
    c_gen->add_option("--params", params_str, "JSON generator parameters")->required();
    c_gen->add_option("--seed", seed, "RNG seed");
    c_gen->add_option("--out", out_path, "output path")->required();

    auto* c_dec = app.add_subcommand("decompose", "regularity decomposition of a set indicator");
    add_set(c_dec);
    c_dec->add_option("--epsilon", epsilon, "target ||f_sml||_2");
    c_dec->add_option("--form", form, "baby|intermediate|final");
    add_growth(c_dec);
    c_dec->add_option("--out", out_path, "output path");

    auto* c_ver = app.add_subcommand("verify", "end-to-end stability verification");
    add_set(c_ver);
    c_ver->add_option("--t", t, "popularity threshold");
    c_ver->add_option("--delta", delta, "doubling slack");
    c_ver->add_option("--eta", eta, "margin parameter");
    c_ver->add_option("--epsilon", epsilon, "regularity epsilon");
    c_ver->add_option("--lambda", lambda, "structured-level threshold");
    c_ver->add_option("--radius", radius, "Bohr radius");
    add_growth(c_ver);
    c_ver->add_option("--out", out_path, "output path");

    auto* c_cov = app.add_subcommand("ap-cover", "shortest AP containing a set");
    add_set(c_cov);

    auto* c_bohr = app.add_subcommand("bohr", "Bohr set of a homomorphism");
    c_bohr->add_option("--p", p, "modulus")->required();
    c_bohr->add_option("--freqs", freq_str, "comma-separated frequencies")->required();
    c_bohr->add_option("--radius", radius, "radius")->required();

    auto* c_sum = app.add_subcommand("sumset", "S + S");
    add_set(c_sum);

    auto* c_pop = app.add_subcommand("popdouble", "E_x min(1_A*1_A, t)");
    add_set(c_pop);
    c_pop->add_option("--t", t, "threshold")->required();

    auto* c_mat = app.add_subcommand("complete-matrix", "bounded completion of an integer vector");
    c_mat->add_option("--vector", vec_str, "comma-separated entries")->required();

    auto* c_bez = app.add_subcommand("bezout", "bounded Bezout representation");
    c_bez->add_option("--vector", vec_str, "coprime coefficients")->required();
    c_bez->add_option("--target", target, "right-hand side")->required();
    c_bez->add_option("--K", K, "entry bound")->required();

    auto* c_ind = app.add_subcommand("independence", "K-independence of a homomorphism");
    c_ind->add_option("--p", p, "modulus")->required();
    c_ind->add_option("--freqs", freq_str, "comma-separated frequencies")->required();
    c_ind->add_option("--K", K, "independence order")->required();

    auto* c_red = app.add_subcommand("reduce-dim", "eliminate one relation from a homomorphism");
    c_red->add_option("--p", p, "modulus")->required();
    c_red->add_option("--freqs", freq_str, "comma-separated frequencies")->required();
    c_red->add_option("--K", K, "relation search bound")->required();
    c_red->add_option("--fejer-order", fejer_order, "order of the sample function");

    auto* c_fej = app.add_subcommand("fejer", "Fejer kernel diagnostics");
    c_fej->add_option("--d", d, "dimension")->required();
    c_fej->add_option("--K", K, "order")->required();

    auto* c_eq = app.add_subcommand("equidist", "equidistribution gap of an independent homomorphism");
    c_eq->add_option("--p", p, "modulus")->required();
    c_eq->add_option("--freqs", freq_str, "comma-separated frequencies")->required();
    c_eq->add_option("--K", K, "independence order")->required();
    c_eq->add_option("--fejer-order", fejer_order, "order of the sample function");

    auto* c_led = app.add_subcommand("ledger", "parameter ledger");
    c_led->add_option("--alpha1", alpha1, "lower density")->required();
    c_led->add_option("--alpha2", alpha2, "upper density")->required();
    c_led->add_option("--eta", eta, "eta")->required();
    c_led->add_option("--delta", delta, "delta")->required();
    c_led->add_option("--M0", M0, "complexity bound");
    c_led->add_option("--out", out_path, "output path");

    auto* c_ora = app.add_subcommand("oracle", "brute-force oracle suites");
    c_ora->add_option("suite", suite, "fourier|lattice|trig|relation|quadrature|all")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*c_gen) {
            json params = json::parse(params_str);
            auto rec = generate_set(kind, params, seed);
            save_set(rec, out_path);
            std::printf("wrote %s: p=%lld |A|=%lld\n", out_path.c_str(),
                        static_cast<long long>(rec.set.p), static_cast<long long>(rec.set.size()));
            return kOk;
        }
        if (*c_dec) {
            auto rec = load_set(set_path);
            auto f = rec.set.indicator();
            auto growth = make_growth(family, ga, gb);
            DecompositionCheck check;
            json payload;
            if (form == "baby") {
                auto dec = baby_arl(f, epsilon, growth);
                check = check_decomposition(f, dec, epsilon, growth);
                payload = decomposition_to_json(dec);
                std::printf("baby: M=%g |Gamma|=%zu n=%lld rounds=%zu\n", dec.M, dec.gamma.size(),
                            static_cast<long long>(dec.n), dec.log.size());
                for (const auto& it : dec.log)
                    std::printf("  energy=%.9f sml=%.9f delta=%.6f M=%lld\n", it.energy,
                                it.sml_norm, it.delta, static_cast<long long>(it.M));
            } else if (form == "intermediate" || form == "final") {
                auto dec = form == "final" ? final_arl(f, epsilon, growth)
                                           : intermediate_arl(f, epsilon, growth);
                check = check_decomposition(f, dec, epsilon, growth, form == "final");
                payload = decomposition_to_json(dec);
                std::printf("%s: M=%g d=%lld K=%lld lipschitz=%g reductions=%lld\n", form.c_str(),
                            dec.M, static_cast<long long>(dec.phi.d()),
                            static_cast<long long>(dec.fejer_K), dec.lipschitz,
                            static_cast<long long>(dec.reduction_steps));
            } else {
                throw std::invalid_argument("unknown form: " + form);
            }
            print_records(check.records);
            if (!out_path.empty()) save_record(payload, config_json(*c_dec), out_path);
            return check.all_hold() ? kOk : kViolation;
        }
        if (*c_ver) {
            auto rec = load_set(set_path);
            VerifyConfig cfg;
            cfg.epsilon = epsilon;
            cfg.lambda = lambda;
            cfg.bohr_radius = radius;
            cfg.growth = make_growth(family, ga, gb);
            auto rep = verify_theorem(rec.set, t, delta, eta, cfg);
            std::printf("status: %s\n", rep.status.c_str());
            std::printf("hypothesis: %.9g vs %.9g (%s)\n", rep.hypothesis_value,
                        rep.hypothesis_threshold, rep.hypothesis_holds ? "holds" : "fails");
            if (rep.status == "covered") {
                std::printf("P: start=%lld diff=%lld length=%lld  |A\\P|=%lld |P\\A|=%lld C_emp=%.6g\n",
                            static_cast<long long>(rep.P.start), static_cast<long long>(rep.P.diff),
                            static_cast<long long>(rep.P.length),
                            static_cast<long long>(rep.A_minus_P),
                            static_cast<long long>(rep.P_minus_A), rep.C_emp);
            }
            print_records(rep.inequalities);
            if (!out_path.empty()) save_record(report_to_json(rep), config_json(*c_ver), out_path);
            return kOk;
        }
        if (*c_cov) {
            auto rec = load_set(set_path);
            auto P = ap_cover(rec.set);
            auto Pset = P.as_set(rec.set.p);
            for (auto x : rec.set.members)
                if (!Pset.contains(x)) {
                    std::printf("cover misses element %lld\n", static_cast<long long>(x));
                    return kViolation;
                }
            std::printf("start=%lld diff=%lld length=%lld\n", static_cast<long long>(P.start),
                        static_cast<long long>(P.diff), static_cast<long long>(P.length));
            return kOk;
        }
        if (*c_bohr) {
            TorusHom phi{p, parse_int_list(freq_str)};
            auto B = bohr_set(phi, radius);
            std::printf("|B|=%lld density=%.9g lower=%.9g\n", static_cast<long long>(B.size()),
                        B.density(), std::pow(radius, static_cast<double>(phi.d())));
            return kOk;
        }
        if (*c_sum) {
            auto rec = load_set(set_path);
            auto S2 = sumset(rec.set);
            std::printf("|S|=%lld |S+S|=%lld\n", static_cast<long long>(rec.set.size()),
                        static_cast<long long>(S2.size()));
            return kOk;
        }
        if (*c_pop) {
            auto rec = load_set(set_path);
            std::printf("%.17g\n", popular_doubling(rec.set, t));
            return kOk;
        }
        if (*c_mat) {
            auto a = parse_int_list(vec_str);
            auto A = complete_matrix(a);
            for (const auto& row : A.rows) {
                for (auto x : row) std::printf("%lld ", static_cast<long long>(x));
                std::printf("\n");
            }
            std::printf("det=%lld\n", static_cast<long long>(A.det()));
            return kOk;
        }
        if (*c_bez) {
            auto b = parse_int_list(vec_str);
            auto c = bounded_bezout(b, target, K);
            for (auto x : c) std::printf("%lld ", static_cast<long long>(x));
            std::printf("\n");
            return kOk;
        }
        if (*c_ind) {
            TorusHom phi{p, parse_int_list(freq_str)};
            auto rel = find_relation(phi, K);
            if (rel) {
                std::printf("relation:");
                for (auto x : rel->k) std::printf(" %lld", static_cast<long long>(x));
                std::printf("\n");
            } else {
                std::printf("independent\n");
            }
            return kOk; // a found relation is a clean negative result
        }
        if (*c_red) {
            TorusHom phi{p, parse_int_list(freq_str)};
            auto rel = find_relation(phi, K);
            if (!rel) {
                std::printf("already %lld-independent, nothing to reduce\n",
                            static_cast<long long>(K));
                return kOk;
            }
            auto F = fejer_kernel(phi.d(), fejer_order);
            auto red = reduce_dimension(phi, F, *rel);
            std::printf("reduced freqs:");
            for (auto r : red.phi.freqs) std::printf(" %lld", static_cast<long long>(r));
            std::printf("\nlipschitz=%.9g (bound %.9g)\n", red.lipschitz,
                        static_cast<double>(phi.d()) * static_cast<double>(K) *
                            F.lipschitz_bound());
            return kOk;
        }
        if (*c_fej) {
            auto Phi = fejer_kernel(d, K);
            double mn = 1e300;
            std::int64_t res = 101;
            std::vector<std::int64_t> idx(static_cast<std::size_t>(d), 0);
            std::vector<double> tt(static_cast<std::size_t>(d));
            while (true) {
                for (std::int64_t j = 0; j < d; ++j)
                    tt[static_cast<std::size_t>(j)] =
                        static_cast<double>(idx[static_cast<std::size_t>(j)]) /
                        static_cast<double>(res);
                mn = std::min(mn, Phi.eval(tt));
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
            std::printf("mass=%.17g terms=%lld min_on_grid=%.6g\n", Phi.integral(),
                        static_cast<long long>(Phi.term_count()), mn);
            return mn >= -1e-9 ? kOk : kViolation;
        }
        if (*c_eq) {
            TorusHom phi{p, parse_int_list(freq_str)};
            auto rel = find_relation(phi, K);
            if (rel) {
                std::fprintf(stderr, "error: homomorphism is not %lld-independent\n",
                             static_cast<long long>(K));
                return kUsage;
            }
            auto F = fejer_kernel(phi.d(), fejer_order);
            double M = F.lipschitz_bound();
            double gap = equidistribution_gap(F, phi, M, K, true);
            std::printf("gap=%.9g bound=%.9g\n", gap, M / std::sqrt(static_cast<double>(K)));
            return kOk;
        }
        if (*c_led) {
            auto L = parameter_ledger(alpha1, alpha2, eta, delta, static_cast<double>(M0));
            std::cout << ledger_to_json(L).dump(2) << "\n";
            if (!out_path.empty()) save_record(ledger_to_json(L), config_json(*c_led), out_path);
            bool ok = std::all_of(L.checks.begin(), L.checks.end(),
                                  [](const InequalityRecord& r) { return r.holds; });
            return ok ? kOk : kViolation;
        }
        if (*c_ora) {
            if (suite == "fourier") return oracle_fourier();
            if (suite == "lattice") return oracle_lattice();
            if (suite == "trig") return oracle_trig();
            if (suite == "relation") return oracle_relation();
            if (suite == "quadrature") return oracle_quadrature();
            if (suite == "all") {
                int rc = 0;
                rc |= oracle_fourier();
                rc |= oracle_lattice();
                rc |= oracle_trig();
                rc |= oracle_relation();
                rc |= oracle_quadrature();
                return rc == 0 ? kOk : kViolation;
            }
            std::fprintf(stderr, "unknown oracle suite: %s\n", suite.c_str());
            return kUsage;
        }
    } catch (const CapExceeded& e) {
        std::fprintf(stderr, "cap exceeded: %s\n", e.what());
        return kCap;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kUsage;
    } catch (const std::logic_error& e) {
        std::fprintf(stderr, "property violation: %s\n", e.what());
        return kViolation;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    }
    return kUsage;
}
