// Acceptance gate: one line of output per criterion, nonzero exit on failure.
// Usage: acceptance <path-to-mpde-binary>

#include "mpde/growth.hpp"
#include "mpde/kernels.hpp"
#include "mpde/pipeline.hpp"
#include "mpde/solver.hpp"
#include "mpde/summation.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace mpde;

namespace {

using cd = std::complex<double>;
using QSeries = Series1<Rational>;

std::mt19937 rng(424243);

Rational random_rational(int span = 9) {
    std::uniform_int_distribution<int> num(-span, span);
    std::uniform_int_distribution<int> den(1, span);
    return Rational(num(rng), den(rng));
}

QSeries random_series(int order) {
    std::vector<Rational> c(static_cast<size_t>(order) + 1);
    for (auto& v : c) v = random_rational();
    return QSeries(std::move(c));
}

double gamma1p(double x) { return std::exp(std::lgamma(1.0 + x)); }

double rel(cd a, cd b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

Rational factorial_q(int n) {
    Rational r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

const char* kHeatText = R"(
problem {
  k = 1;
  p = 2;
  m1 = gevrey(1);
  m2 = gevrey(1);
  a = 1;
  phi[0] = 1/(1 - z);
}
options {
  nt = 30;
  rprime = 1/10;
  tpoint = -1/20;
  direction = pi;
}
)";

// --- criteria -------------------------------------------------------------

bool criterion1(std::string& note) {
    std::vector<MomentSequence> pool = {
        MomentSequence::gevrey_moments(1),
        MomentSequence::gevrey_moments(2),
        MomentSequence::q_factorial(Rational(1, 2)),
        MomentSequence::product(MomentSequence::gevrey_moments(1),
                                MomentSequence::q_factorial(Rational(1, 3))),
    };
    const int N = 40;
    int cases = 0;
    for (const auto& m1 : pool) {
        for (const auto& m2 : pool) {
            MomentSequence m12 = MomentSequence::product(m1, m2);
            for (int it = 0; it < 7; ++it) {
                QSeries f = random_series(N);
                QSeries back = moment_derivative(moment_antiderivative(f, m2, 2), m2, 2);
                for (int p = 0; p <= N; ++p)
                    if (back[p] != f[p]) return false;
                QSeries lhs = formal_borel(moment_derivative(f, m2), m1);
                QSeries rhs = moment_derivative(formal_borel(f, m1), m12);
                for (int p = 0; p <= lhs.order(); ++p)
                    if (lhs[p] != rhs[p]) return false;
                ++cases;
            }
        }
    }
    note = std::to_string(cases) + " randomized series";
    return cases >= 100;
}

bool criterion2(std::string& note) {
    auto m1 = MomentSequence::gevrey_moments(1);
    for (int it = 0; it < 50; ++it) {
        QSeries f = random_series(25);
        QSeries d = moment_derivative(f, m1);
        for (int p = 0; p <= 24; ++p)
            if (d[p] != f[p + 1] * Rational(p + 1)) return false;
    }
    for (auto q : {Rational(1, 2), Rational(1, 3)}) {
        auto mq = MomentSequence::q_factorial(q);
        for (int it = 0; it < 50; ++it) {
            QSeries f = random_series(20);
            QSeries d = moment_derivative(f, mq);
            Rational qp = q;
            for (int p = 0; p <= 19; ++p) {
                // q-difference quotient coefficient a_{p+1} (1-q^{p+1})/(1-q)
                if (d[p] != f[p + 1] * (Rational(1) - qp) / (Rational(1) - q)) return false;
                qp *= q;
            }
        }
    }
    note = "d/dz and q-difference reductions, 50 polynomials each";
    return true;
}

bool criterion3(std::string& note) {
    double worst_mellin = 0.0;
    for (double alpha : {0.5, 1.0, 1.5})
        for (int p = 0; p <= 10; ++p) {
            MomentCheckResult r = moment_check(alpha, p);
            worst_mellin = std::max(worst_mellin, r.rel_err);
        }
    if (worst_mellin >= 1e-8) return false;

    double worst_laplace = 0.0;
    for (double alpha : {0.5, 1.0, 1.5}) {
        cd z = std::polar(0.4, 0.2);
        for (int p = 0; p <= 6; ++p) {
            AnalyticFn g = [p](cd u) { return std::pow(u, p); };
            cd got = laplace_along(alpha, 0.2, g, z).value;
            worst_laplace = std::max(worst_laplace, rel(got, gamma1p(alpha * p) * std::pow(z, p)));
        }
    }
    if (worst_laplace >= 1e-8) return false;

    // Borel-Laplace roundtrip on monomials: T(T^- z^p) = z^p
    QuadratureOptions loose;
    loose.abs_tol = 1e-9;
    loose.rel_tol = 1e-8;
    loose.max_refine = 3;
    double worst_round = 0.0;
    for (double alpha : {0.5, 1.0}) {
        cd z(0.3, 0.0);
        for (int p = 0; p <= 2; ++p) {
            AnalyticFn mono = [p](cd zeta) { return std::pow(zeta, p); };
            AnalyticFn g = [&](cd u) {
                return borel_transform_along(alpha, 0.0, mono, u, M_PI / 8, 1.5, loose);
            };
            cd got = laplace_along(alpha, 0.0, g, z, loose).value;
            worst_round = std::max(worst_round, rel(got, std::pow(z, p)));
        }
    }
    std::ostringstream os;
    os << "mellin " << worst_mellin << ", laplace " << worst_laplace << ", roundtrip "
       << worst_round;
    note = os.str();
    return worst_round < 1e-5;
}

bool criterion4(std::string& note) {
    const int nt = 12;
    std::uniform_int_distribution<int> pick_p(2, 4);
    for (int it = 0; it < 5; ++it) {
        CauchyProblem<Rational> prob;
        prob.p = pick_p(rng);
        prob.k = std::uniform_int_distribution<int>(1, prob.p - 1)(rng);
        prob.m1 = MomentSequence::gevrey_moments(1);
        prob.m2 = (it % 2 == 0) ? MomentSequence::gevrey_moments(1)
                                : MomentSequence::q_factorial(Rational(1, 2));
        int nz = prob.p * (nt / prob.k) + prob.p + 2;
        QSeries a = QSeries::zero(nz);
        for (int j = 0; j <= 3; ++j) a.at(j) = random_rational(5);
        if (a[0] == 0) a.at(0) = 1;
        prob.a = a;
        for (int j = 0; j < prob.k; ++j) {
            QSeries phi = QSeries::zero(nz);
            for (int d = 0; d <= 4; ++d) phi.at(d) = random_rational(5);
            prob.phi.push_back(phi);
        }
        for (int n = 0; n <= nt; ++n) {
            QSeries row = QSeries::zero(nz);
            for (int d = 0; d <= 3; ++d) row.at(d) = random_rational(5);
            prob.f_hat.rows.push_back(row);
        }

        FormalSolution<Rational> rec = solve_formal(prob, nt, nz);
        FormalSolution<Rational> fix = fixed_point_solution(prob, nt, nt, nz);
        if (!residual_is_zero(residual(prob, rec))) return false;
        if (!residual_is_zero(residual(prob, fix))) return false;
        size_t rows = std::min(rec.u_star.size(), fix.u_star.size());
        for (size_t n = 0; n < rows; ++n) {
            int v = std::min(rec.u_star[n].valid(), fix.u_star[n].valid());
            for (int p = 0; p <= v; ++p)
                if (rec.u_star[n][p] != fix.u_star[n][p]) return false;
        }
    }
    note = "5 randomized problems, k < p <= 4, exact agreement";
    return true;
}

bool criterion5(std::string& note) {
    PipelineResult res = run_pipeline(kHeatText, {}, PipelineStage::Growth);
    for (int n = 0; n <= 8; ++n)
        if (res.solution.u_star[static_cast<size_t>(n)][0] != factorial_q(2 * n)) return false;
    double sigma = res.growth->fitted_sigma;
    std::ostringstream os;
    os << "fitted sigma " << sigma << " vs predicted " << res.growth->predicted_sigma;
    note = os.str();
    return sigma > 0.9 && sigma < 1.1 && res.growth->predicted_sigma == 1.0;
}

bool criterion6(std::string& note) {
    const char* text = R"(
problem {
  k = 2;
  p = 3;
  m1 = gevrey(2);
  m2 = gevrey(1);
  a = 1;
  phi[0] = 1/(1 - z);
  phi[1] = 1/(1 - z);
  f = 1/((1 - t)*(1 - z));
}
options {
  nt = 44;
  rprime = 1/10;
}
)";
    PipelineResult res = run_pipeline(text, {}, PipelineStage::Growth);
    double sigma = res.growth->fitted_sigma;
    std::ostringstream os;
    os << "fitted sigma " << sigma << ", radius "
       << (res.radius ? *res.radius : -1.0);
    note = os.str();
    return sigma > -0.1 && sigma < 0.1 && res.radius && *res.radius > 0.0;
}

bool criterion7(std::string& note) {
    std::vector<cd> heat;
    for (int n = 0; n <= 20; ++n)
        heat.push_back(cd(std::exp(std::lgamma(2.0 * n + 1.0) - std::lgamma(n + 1.0)), 0.0));
    std::vector<double> dirs = series_singular_directions(1.0, heat);
    if (dirs.empty()) return false;
    for (double d : dirs)
        if (std::abs(d) >= 0.05) return false;

    SummationOptions opts;
    opts.direction = M_PI;
    SummationResult r = sum_series(1.0, heat, cd(-0.05, 0.0), opts);
    if (!r.converged || !std::isfinite(r.value.real())) return false;

    SummationOptions o1 = opts, o2 = opts;
    o1.direction = M_PI - 0.15;
    o2.direction = M_PI + 0.15;
    cd v1 = sum_series(1.0, heat, cd(-0.05, 0.0), o1).value;
    cd v2 = sum_series(1.0, heat, cd(-0.05, 0.0), o2).value;
    double coherence = std::abs(v1 - v2);
    if (coherence >= 1e-6) return false;

    std::vector<cd> euler;
    double f = 1.0, sign = 1.0;
    for (int n = 0; n <= 20; ++n) {
        euler.push_back(cd(sign * f, 0.0));
        sign = -sign;
        f *= (n + 1);
    }
    SummationOptions eo;
    eo.direction = 0.0;
    cd ev = sum_series(1.0, euler, cd(0.1, 0.0), eo).value;
    double euler_err = std::abs(ev.real() - 0.9156333393978);  // 10 e^{10} E_1(10)
    std::ostringstream os;
    os << "coherence " << coherence << ", euler err " << euler_err;
    note = os.str();
    return euler_err < 1e-7;
}

bool criterion8(std::string& note) {
    AnalyticFn phi = [](cd w) { return 1.0 / (1.0 - w); };
    double worst = 0.0;
    for (int n = 0; n <= 4; ++n) {
        cd z(0.1, 0.0);
        cd got = moment_derivative_integral_disc(1.0, phi, n, z, 0.5);
        cd expected = gamma1p(n) / std::pow(1.0 - z, n + 1);
        worst = std::max(worst, rel(got, expected));
    }
    if (worst >= 1e-5) return false;

    // || d^n phi ||_{1/2} / n! = 2^{n+1}
    const int N = 180;
    double worst_ratio = 0.0;
    for (int n = 0; n <= 15; ++n) {
        Real norm = 0;
        Real half = Real(1) / 2;
        Real rp = 1;
        for (int p = 0; p + n <= N; ++p) {
            Real term = 1;
            for (int i = p + 1; i <= p + n; ++i) term *= i;
            norm += term * rp;
            rp *= half;
        }
        Real mn = 1;
        for (int i = 2; i <= n; ++i) mn *= i;
        double ratio = to_double(norm / mn) / std::pow(2.0, n + 1);
        worst_ratio = std::max(worst_ratio, std::abs(ratio - 1.0));
    }
    std::ostringstream os;
    os << "integral err " << worst << ", ratio dev " << worst_ratio;
    note = os.str();
    return worst_ratio < 0.01;
}

bool criterion9(const std::string& mpde, std::string& note) {
    namespace fs = std::filesystem;
    fs::path work = fs::temp_directory_path() / "mpde_acceptance";
    fs::remove_all(work);
    fs::create_directories(work);
    fs::path problem = work / "heat.mpde";
    {
        std::ofstream os(problem);
        os << kHeatText;
    }
    auto run = [&](const std::string& args) {
        std::string cmd = "\"" + mpde + "\" " + args + " > /dev/null 2>&1";
        return std::system(cmd.c_str()) == 0;
    };
    fs::path a = work / "a", b = work / "b", c = work / "c";
    if (!run("growth \"" + problem.string() + "\" --out \"" + a.string() + "\"")) return false;
    std::string manifest = (a / "run-manifest.json").string();
    if (!run("growth --from-manifest \"" + manifest + "\" --out \"" + b.string() + "\"")) return false;
    if (!run("growth --from-manifest \"" + manifest + "\" --out \"" + c.string() + "\"")) return false;

    auto slurp = [](const fs::path& p) {
        std::ifstream is(p, std::ios::binary);
        std::ostringstream os;
        os << is.rdbuf();
        return os.str();
    };
    for (const char* name : {"solution.json", "growth.json", "growth.csv", "run-manifest.json"}) {
        std::string sb = slurp(b / name);
        if (sb.empty() || sb != slurp(c / name)) return false;
        if (sb != slurp(a / name)) return false;
    }
    fs::remove_all(work);
    note = "manifest reruns byte-identical across three runs";
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <path-to-mpde-binary>\n");
        return 2;
    }
    std::string mpde = argv[1];

    struct Item {
        const char* name;
        std::function<bool(std::string&)> fn;
    };
    std::vector<Item> items = {
        {"operator algebra (inverse + commutation, exact)", criterion1},
        {"classical reductions (d/dz and q-difference)", criterion2},
        {"kernel accuracy (mellin, laplace identity, roundtrip)", criterion3},
        {"solver equivalence (recurrence vs fixed point)", criterion4},
        {"heat-case order prediction", criterion5},
        {"convergent regime", criterion6},
        {"summation validity (directions, coherence, euler)", criterion7},
        {"integral moment derivative on the disc", criterion8},
        {"CLI determinism", [&mpde](std::string& n) { return criterion9(mpde, n); }},
    };

    int failures = 0;
    for (size_t i = 0; i < items.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        std::string note;
        bool ok = false;
        try {
            ok = items[i].fn(note);
        } catch (const std::exception& e) {
            note = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %zu [%s]: %s (%.1fs%s%s)\n", i + 1, items[i].name,
                    ok ? "PASS" : "FAIL", secs, note.empty() ? "" : "; ", note.c_str());
        if (!ok) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
