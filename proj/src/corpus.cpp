#include "blmhd/corpus.hpp"

#include <cmath>

namespace blmhd {

namespace {
double gauss(double y) { return std::exp(-y * y); }

// y^k e^{-c y^2} and y^k e^{-y}, both scaled to unit maximum.
double bump(int k, double y, double c = 1.0) {
    const double ym = std::sqrt(k / (2.0 * c));
    return std::pow(y / ym, k) * std::exp(-c * (y * y - ym * ym));
}
double bump_exp(int k, double y) { return std::pow(y / k, k) * std::exp(k - y); }
}  // namespace

std::vector<std::string> preset_names() { return {"equilibrium", "smooth", "shear", "x_independent"}; }

InitialData preset(const std::string& name, double a) {
    if (name == "equilibrium")
        return {name, [](double, double) { return 1.0; }, [](double, double) { return 1.0; },
                [](double, double) { return 1.0; }};
    if (name == "x_independent")
        return {name, [](double, double) { return 1.0; }, [](double, double y) { return 1.0 - std::exp(-y); },
                [](double, double) { return 1.0; }};
    // Odd shear profile and perturbations flat to high order at the wall, so the
    // data are compatible with the wall conditions through two time derivatives.
    if (name == "smooth")
        return {name, [a](double x, double y) { return 1.0 + 0.1 * a * bump(6, y) * std::cos(x); },
                [a](double x, double y) { return std::tanh(y) + a * bump(5, y) * std::sin(x); },
                [a](double x, double y) { return 1.0 + 2.0 * a * bump(6, y) * std::sin(x); }};
    if (name == "shear")
        return {name, [a](double x, double y) { return 1.0 + 0.1 * a * bump(6, y) * std::sin(2.0 * x); },
                [a](double x, double y) { return std::tanh(y) + a * bump_exp(5, y) * std::cos(x); },
                [a](double x, double y) { return 1.0 + 1.5 * a * bump(6, y, 0.5) * std::cos(x); }};
    throw std::invalid_argument("unknown initial data '" + name + "'");
}

std::vector<CorpusFunction> hardy_corpus() {
    return {
        {"y_exp", [](double, double y) { return y * std::exp(-y); }},
        {"y2_exp", [](double, double y) { return y * y * std::exp(-y); }},
        {"y_gauss", [](double, double y) { return y * gauss(y); }},
        {"sin_exp", [](double, double y) { return std::sin(y) * std::exp(-y); }},
        {"expm1_exp", [](double, double y) { return -std::expm1(-y) * std::exp(-y); }},
        {"y_exp_slow", [](double, double y) { return y * std::exp(-0.8 * y); }},
        {"tanh_exp", [](double, double y) { return std::tanh(y) * std::exp(-y); }},
        {"y3_exp2", [](double, double y) { return y * y * y * std::exp(-2.0 * y); }},
        {"log_exp", [](double, double y) { return std::log1p(y) * std::exp(-y); }},
        {"y_exp_cosx", [](double x, double y) { return y * std::exp(-y) * std::cos(x); }},
        {"y_gauss_sinx", [](double x, double y) { return y * gauss(y) * (1.0 + 0.5 * std::sin(x)); }},
        {"y2_gauss", [](double, double y) { return y * y * gauss(0.5 * y); }},
    };
}

std::vector<HeatProblem> heat_corpus() {
    std::vector<HeatProblem> out;
    auto add = [&](std::string name, std::function<double(double)> f0, std::function<double(double, double)> g) {
        HeatProblem p;
        p.name = std::move(name);
        p.f0 = std::move(f0);
        p.g = std::move(g);
        p.t_end = 1.0;
        out.push_back(std::move(p));
    };
    add("x_exp", [](double x) { return x * std::exp(-x); }, nullptr);
    add("sin_gauss", [](double x) { return std::sin(x) * std::exp(-0.25 * x * x); }, nullptr);
    add("x2_exp", [](double x) { return x * x * std::exp(-x); }, nullptr);
    add("tanh_exp", [](double x) { return std::tanh(x) * std::exp(-0.5 * x); }, nullptr);
    add("x_exp_forced", [](double x) { return x * std::exp(-x); },
        [](double t, double x) { return x * std::exp(-x) * std::cos(t); });
    add("x2_exp_forced", [](double x) { return 0.5 * x * std::exp(-0.5 * x); },
        [](double t, double x) { return std::exp(-t) * x * x * std::exp(-x); });
    return out;
}

std::vector<InitialData> equivalence_corpus() {
    // h1 = 1 + d_y psi with psi(0) = 0 and psi decaying, so Z psi decays as well.
    struct Spec {
        double a;   // stream-function amplitude
        int k;      // x mode
        int prof;   // 0: y e^{-y^2}, 1: y^3 e^{-y^2}, 2: y^2 e^{-y}
        double r;   // density amplitude
        double b;   // velocity amplitude
    };
    const Spec specs[10] = {{0.3, 1, 0, 0.02, 0.1}, {0.2, 2, 0, 0.01, 0.2}, {0.15, 1, 1, 0.03, 0.0},
                            {0.1, 2, 1, 0.0, 0.3},  {0.3, 1, 2, 0.02, 0.1}, {0.1, 3, 2, 0.01, 0.2},
                            {0.35, 1, 0, 0.0, 0.0}, {0.05, 1, 1, 0.05, 0.5}, {0.2, 2, 2, 0.03, 0.1},
                            {0.25, 3, 0, 0.02, 0.3}};
    std::vector<InitialData> out;
    for (int n = 0; n < 10; ++n) {
        const Spec s = specs[n];
        auto dpsi = [s](double y) {
            switch (s.prof) {
                case 0: return (1.0 - 2.0 * y * y) * gauss(y);
                case 1: return (3.0 * y * y - 2.0 * y * y * y * y) * gauss(y);
                default: return (2.0 * y - y * y) * std::exp(-y);
            }
        };
        InitialData d;
        d.name = "equiv_" + std::to_string(n);
        d.rho = [s](double x, double y) { return 1.0 + s.r * gauss(y) * std::cos(s.k * x + 0.3); };
        // zero y-mean perturbation keeps v bounded away from the top
        d.u1 = [s](double x, double y) {
            return 1.0 - std::exp(-y) + s.b * y * (1.0 - 0.5 * y) * std::exp(-y) * std::sin(x);
        };
        d.h1 = [s, dpsi](double x, double y) { return 1.0 + s.a * std::sin(s.k * x) * dpsi(y); };
        out.push_back(std::move(d));
    }
    return out;
}

}  // namespace blmhd
