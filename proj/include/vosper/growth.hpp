#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace vosper {

// Increasing function trading structure complexity M against uniformity
// 1/F(M).  Desk-scale defaults are mild (affine); the ledger family encodes
// F(M) = 2^12/(eta*delta*alpha1*lambda^2)^2 * (2M/lambda)^(2M), which is only
// ever evaluated in log2 space.
struct GrowthFunction {
    enum class Family { Affine, Polynomial, Exponential, PaperLedger };

    Family family = Family::Affine;
    // Affine: a*M + b.  Polynomial: a*M^b.  Exponential: a*2^(b*M).
    // PaperLedger: parameters below.
    double a = 0.05;
    double b = 16.0;
    double eta = 0.0, delta = 0.0, alpha1 = 0.0, lambda = 0.0;

    static GrowthFunction affine(double a, double b) {
        GrowthFunction g;
        g.family = Family::Affine;
        g.a = a;
        g.b = b;
        return g;
    }
    static GrowthFunction polynomial(double a, double b) {
        GrowthFunction g;
        g.family = Family::Polynomial;
        g.a = a;
        g.b = b;
        return g;
    }
    static GrowthFunction exponential(double a, double b) {
        GrowthFunction g;
        g.family = Family::Exponential;
        g.a = a;
        g.b = b;
        return g;
    }
    static GrowthFunction paper_ledger(double eta, double delta, double alpha1, double lambda) {
        GrowthFunction g;
        g.family = Family::PaperLedger;
        g.eta = eta;
        g.delta = delta;
        g.alpha1 = alpha1;
        g.lambda = lambda;
        return g;
    }

    double log2_eval(double M) const {
        switch (family) {
            case Family::Affine:
                return std::log2(a * M + b);
            case Family::Polynomial:
                return std::log2(a) + b * std::log2(M);
            case Family::Exponential:
                return std::log2(a) + b * M;
            case Family::PaperLedger:
                return 12.0 - 2.0 * std::log2(eta * delta * alpha1 * lambda * lambda) +
                       2.0 * M * std::log2(2.0 * M / lambda);
        }
        return 0.0;
    }

    // Linear-space value; throws if it does not fit in a double.
    double eval(double M) const {
        double l = log2_eval(M);
        if (l > 1000.0)
            throw std::overflow_error("growth function overflows double at M=" + std::to_string(M) +
                                      " (log2 value " + std::to_string(l) + "); use log2_eval");
        return std::exp2(l);
    }

    std::string describe() const {
        switch (family) {
            case Family::Affine: return "affine(" + std::to_string(a) + "," + std::to_string(b) + ")";
            case Family::Polynomial: return "polynomial(" + std::to_string(a) + "," + std::to_string(b) + ")";
            case Family::Exponential: return "exponential(" + std::to_string(a) + "," + std::to_string(b) + ")";
            case Family::PaperLedger: return "paper-ledger";
        }
        return "?";
    }
};

} // namespace vosper
