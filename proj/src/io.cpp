#include "vosper/io.hpp"

#include <chrono>
#include <fstream>
#include <random>
#include <set>
#include <stdexcept>

namespace vosper {

using nlohmann::json;

namespace {

std::int64_t require_int(const json& params, const std::string& key) {
    if (!params.contains(key))
        throw std::invalid_argument("generator parameters missing \"" + key + "\"");
    return params.at(key).get<std::int64_t>();
}

} // namespace

SetRecord generate_set(const std::string& kind, const json& params, std::uint64_t seed) {
    std::int64_t p = require_int(params, "p");
    std::mt19937_64 rng(seed);
    std::vector<std::int64_t> members;

    if (kind == "ap") {
        ArithmeticProgression ap{require_int(params, "start"), require_int(params, "diff"),
                                 require_int(params, "len")};
        members = ap.elements(p);
    } else if (kind == "ap-plus-noise") {
        ArithmeticProgression ap{require_int(params, "start"), require_int(params, "diff"),
                                 require_int(params, "len")};
        members = ap.elements(p);
        std::set<std::int64_t> taken(members.begin(), members.end());
        std::int64_t outliers = require_int(params, "outliers");
        std::uniform_int_distribution<std::int64_t> dist(0, p - 1);
        while (outliers > 0) {
            std::int64_t x = dist(rng);
            if (taken.insert(x).second) {
                members.push_back(x);
                --outliers;
            }
        }
    } else if (kind == "union-two-aps") {
        ArithmeticProgression a{require_int(params, "start1"), require_int(params, "diff1"),
                                require_int(params, "len1")};
        ArithmeticProgression b{require_int(params, "start2"), require_int(params, "diff2"),
                                require_int(params, "len2")};
        std::set<std::int64_t> all;
        for (auto x : a.elements(p)) all.insert(x);
        for (auto x : b.elements(p)) all.insert(x);
        members.assign(all.begin(), all.end());
    } else if (kind == "bohr-sample") {
        TorusHom phi{p, params.at("freqs").get<std::vector<std::int64_t>>()};
        members = bohr_set(phi, params.at("radius").get<double>()).members;
    } else if (kind == "random") {
        std::int64_t size = require_int(params, "size");
        if (size < 0 || size > p) throw std::invalid_argument("generate_set: size out of range");
        std::set<std::int64_t> chosen;
        std::uniform_int_distribution<std::int64_t> dist(0, p - 1);
        while (static_cast<std::int64_t>(chosen.size()) < size) chosen.insert(dist(rng));
        members.assign(chosen.begin(), chosen.end());
    } else {
        throw std::invalid_argument("generate_set: unknown kind \"" + kind + "\"");
    }

    SetRecord rec{ResidueSet::of(p, std::move(members)), json{}};
    rec.provenance = json{{"generator", kind}, {"seed", seed}, {"params", params}};
    return rec;
}

json set_to_json(const SetRecord& rec) {
    json j;
    j["p"] = rec.set.p;
    j["members"] = rec.set.members;
    j["provenance"] = rec.provenance;
    return j;
}

SetRecord set_from_json(const json& j) {
    SetRecord rec{ResidueSet::of(j.at("p").get<std::int64_t>(),
                                 j.at("members").get<std::vector<std::int64_t>>()),
                  j.value("provenance", json{})};
    return rec;
}

void save_set(const SetRecord& rec, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << set_to_json(rec).dump(2) << "\n";
}

SetRecord load_set(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error("parse error in " + path + " at byte " + std::to_string(e.byte) +
                                 ": " + e.what());
    }
    return set_from_json(j);
}

json records_to_json(const std::vector<InequalityRecord>& records) {
    json arr = json::array();
    for (const auto& r : records)
        arr.push_back(json{{"name", r.name}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"holds", r.holds}});
    return arr;
}

namespace {

json density_to_json(const DensityFunction& f) {
    json re = json::array(), im = json::array();
    for (const auto& v : f.values()) {
        re.push_back(v.real());
        im.push_back(v.imag());
    }
    return json{{"p", f.p()}, {"re", re}, {"im", im}};
}

json baby_log_to_json(const std::vector<BabyIteration>& log) {
    json arr = json::array();
    for (const auto& it : log)
        arr.push_back(json{{"energy", it.energy},
                           {"sml_norm", it.sml_norm},
                           {"delta", it.delta},
                           {"M", it.M}});
    return arr;
}

} // namespace

json decomposition_to_json(const TorusDecomposition& dec) {
    json coeffs = json::array();
    for (const auto& [k, c] : dec.F.coeffs())
        coeffs.push_back(json{{"k", k}, {"re", c.real()}, {"im", c.imag()}});
    return json{{"form", "torus"},
                {"f_str", density_to_json(dec.f_str)},
                {"f_sml", density_to_json(dec.f_sml)},
                {"f_unf", density_to_json(dec.f_unf)},
                {"M", dec.M},
                {"phi", json{{"p", dec.phi.p}, {"freqs", dec.phi.freqs}}},
                {"F", json{{"d", dec.F.d()}, {"coeffs", coeffs}}},
                {"lipschitz", dec.lipschitz},
                {"fejer_K", dec.fejer_K},
                {"reduction_steps", dec.reduction_steps},
                {"iterations", baby_log_to_json(dec.baby_log)}};
}

json decomposition_to_json(const Decomposition& dec) {
    json gamma = json::array();
    for (const auto& g : dec.gamma) gamma.push_back(g.r);
    return json{{"form", "partition"},
                {"f_str", density_to_json(dec.f_str)},
                {"f_sml", density_to_json(dec.f_sml)},
                {"f_unf", density_to_json(dec.f_unf)},
                {"M", dec.M},
                {"gamma", gamma},
                {"n", dec.n},
                {"iterations", baby_log_to_json(dec.log)}};
}

json report_to_json(const VerificationReport& rep) {
    return json{{"status", rep.status},
                {"alpha", rep.alpha},
                {"t", rep.t},
                {"delta", rep.delta},
                {"eta", rep.eta},
                {"hypothesis_value", rep.hypothesis_value},
                {"hypothesis_threshold", rep.hypothesis_threshold},
                {"hypothesis_holds", rep.hypothesis_holds},
                {"M", rep.M},
                {"C_size", rep.C_size},
                {"CC_size", rep.CC_size},
                {"P", json{{"start", rep.P.start}, {"diff", rep.P.diff}, {"length", rep.P.length}}},
                {"P_size", rep.P_size},
                {"A_minus_P", rep.A_minus_P},
                {"P_minus_A", rep.P_minus_A},
                {"C_emp", rep.C_emp},
                {"inequalities", records_to_json(rep.inequalities)}};
}

json ledger_to_json(const ParameterLedger& ledger) {
    return json{{"alpha1", ledger.alpha1},
                {"alpha2", ledger.alpha2},
                {"eta", ledger.eta},
                {"delta", ledger.delta},
                {"delta0", ledger.delta0},
                {"lambda", ledger.lambda},
                {"epsilon", ledger.epsilon},
                {"M0", ledger.M0},
                {"log2:t0", ledger.log2_t0},
                {"log2:F(M0)", ledger.log2_F_M0},
                {"growth", ledger.growth},
                {"checks", records_to_json(ledger.checks)}};
}

void save_record(const json& payload, const json& config, const std::string& path) {
    json wrapped;
    wrapped["version"] = kToolVersion;
    wrapped["config"] = config;
    wrapped["payload"] = payload;
    wrapped["timestamp"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::system_clock::now().time_since_epoch())
                               .count();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << wrapped.dump(2) << "\n";
}

json load_record(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error("parse error in " + path + " at byte " + std::to_string(e.byte) +
                                 ": " + e.what());
    }
}

} // namespace vosper
