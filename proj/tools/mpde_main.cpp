#include "mpde/kernels.hpp"
#include "mpde/pipeline.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using mpde::Rational;
using ordered_json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw mpde::ConfigError("cannot read problem file " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

Rational parse_rational_flag(const std::string& s) {
    size_t slash = s.find('/');
    if (slash == std::string::npos) return Rational(mpde::BigInt(s));
    return Rational(mpde::BigInt(s.substr(0, slash))) /
           Rational(mpde::BigInt(s.substr(slash + 1)));
}

struct CommonFlags {
    int nt = -1;
    int nz = -2;
    std::string rprime;
    double direction = std::numeric_limits<double>::quiet_NaN();
    std::string out = "out";
    std::string from_manifest;
    std::string file;
};

void add_common(CLI::App* cmd, CommonFlags& fl) {
    cmd->add_option("file", fl.file, "problem DSL file");
    cmd->add_option("--nt", fl.nt, "t-truncation order");
    cmd->add_option("--nz", fl.nz, "z-truncation order (-1: automatic budget)");
    cmd->add_option("--rprime", fl.rprime, "norm radius r' as a rational, e.g. 1/10");
    cmd->add_option("--direction", fl.direction, "Laplace direction in radians");
    cmd->add_option("--out", fl.out, "output directory");
    cmd->add_option("--from-manifest", fl.from_manifest, "re-run from a run-manifest.json");
}

int run_stage(const CommonFlags& fl, mpde::PipelineStage stage) {
    if (!fl.from_manifest.empty()) {
        mpde::rerun_from_manifest(fl.from_manifest, fl.out);
        std::cout << "re-ran manifest " << fl.from_manifest << " -> " << fl.out << "\n";
        return 0;
    }
    if (fl.file.empty()) throw mpde::ConfigError("a problem file (or --from-manifest) is required");
    mpde::PipelineOverrides ov;
    if (fl.nt >= 0) ov.nt = fl.nt;
    if (fl.nz >= -1) ov.nz = fl.nz;
    if (!fl.rprime.empty()) ov.rprime = parse_rational_flag(fl.rprime);
    if (!std::isnan(fl.direction)) ov.direction = fl.direction;
    mpde::PipelineResult res = mpde::run_and_write(read_file(fl.file), ov, stage, fl.out);

    std::cout << "solved to nt=" << res.nt << " nz=" << res.nz << "\n";
    if (res.growth) {
        std::cout << "fitted_sigma=" << res.growth->fitted_sigma
                  << " predicted_sigma=" << res.growth->predicted_sigma;
        if (res.radius) std::cout << " radius=" << *res.radius;
        std::cout << "\n";
    }
    if (stage == mpde::PipelineStage::Sum) {
        std::cout << "sum(" << (res.summed_directly ? "direct" : "borel_laplace")
                  << ") = " << res.sum_value.real() << " + " << res.sum_value.imag() << "i\n";
    }
    return 0;
}

int run_kernels_check(int pmax, double tol, const std::string& out) {
    const double alphas[] = {0.5, 1.0, 1.5};
    double worst_mellin = 0.0;
    double worst_dual = 0.0;
    ordered_json rows = ordered_json::array();
    for (double alpha : alphas) {
        for (int p = 0; p <= pmax; ++p) {
            mpde::MomentCheckResult r = mpde::moment_check(alpha, p);
            worst_mellin = std::max(worst_mellin, r.rel_err);
            ordered_json row;
            row["alpha"] = alpha;
            row["p"] = p;
            row["rel_err"] = r.rel_err;
            row["panels"] = r.panels;
            rows.push_back(row);
            std::printf("moment alpha=%-4g p=%-3d rel_err=%.3e panels=%d\n", alpha, p, r.rel_err,
                        r.panels);
        }
        // dual-method Mittag-Leffler agreement on a small sample
        for (double re : {-4.0, -1.0, 0.5, 2.0}) {
            std::complex<double> z(re, 0.7);
            auto a = mpde::kernel_E_series(alpha, z);
            auto b = mpde::kernel_E_contour(alpha, z);
            double rel = std::abs(a - b) / std::max(1e-300, std::abs(a));
            worst_dual = std::max(worst_dual, rel);
            std::printf("dual   alpha=%-4g z=(%g,%g) rel_diff=%.3e\n", alpha, z.real(), z.imag(),
                        rel);
        }
    }
    bool ok = worst_mellin < tol && worst_dual < 1e-6;
    std::printf("kernels check: worst mellin %.3e, worst dual %.3e -> %s\n", worst_mellin,
                worst_dual, ok ? "ok" : "FAIL");
    if (!out.empty()) {
        std::filesystem::create_directories(out);
        ordered_json j;
        j["schema_version"] = mpde::kSchemaVersion;
        j["worst_mellin_rel_err"] = worst_mellin;
        j["worst_dual_rel_err"] = worst_dual;
        j["ok"] = ok;
        j["moments"] = rows;
        std::ofstream os(std::filesystem::path(out) / "kernels-check.json", std::ios::binary);
        os << j.dump(2) << "\n";
    }
    return ok ? 0 : 4;
}

void print_report(const mpde::CheckReport& r) {
    std::printf("%-6s prefix=%-4d holds=%-5s witness=%.6g%s%s\n", r.property.c_str(), r.prefix,
                r.holds ? "yes" : "no", r.witness,
                r.prefix_evidence_only ? " (prefix evidence only)" : "",
                r.violation_index ? (" violation at " + std::to_string(*r.violation_index)).c_str()
                                  : "");
}

int run_sequence_audit(const std::string& spec_text, int prefix, const std::string& out) {
    mpde::MomentSpec spec = mpde::parse_moment_spec_text(spec_text);
    mpde::MomentSequence m = spec.build();
    std::printf("auditing %s (claimed order %g over Gevrey(1))\n", spec.print().c_str(),
                mpde::to_double(spec.order()));

    ordered_json j;
    j["schema_version"] = mpde::kSchemaVersion;
    j["spec"] = spec.print();
    j["claimed_order"] = mpde::to_double(spec.order());

    if (spec.kind == mpde::MomentSpec::Kind::Gevrey) {
        mpde::StronglyRegularSequence seq = mpde::StronglyRegularSequence::gevrey(spec.arg);
        for (auto* check : {&mpde::check_lc, &mpde::check_mg, &mpde::check_snq}) {
            mpde::CheckReport r = (*check)(seq, prefix);
            print_report(r);
            j[r.property] = {{"holds", r.holds}, {"witness", r.witness}};
        }
        std::printf("omega estimate at P=%d: %.6g\n", prefix,
                    mpde::omega_estimate(seq, prefix));
    }
    mpde::CheckReport order = mpde::check_order(m, prefix);
    print_report(order);
    j["order"] = {{"holds", order.holds},
                  {"witness_lo", order.witness},
                  {"witness_hi", order.witness_hi}};
    if (!out.empty()) {
        std::filesystem::create_directories(out);
        std::ofstream os(std::filesystem::path(out) / "sequence-audit.json", std::ios::binary);
        os << j.dump(2) << "\n";
    }
    return order.holds ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"moment-PDE formal solutions, growth analysis, and Borel-Laplace summation"};
    app.require_subcommand(1);

    CommonFlags solve_fl, growth_fl, sum_fl;
    CLI::App* solve_cmd = app.add_subcommand("solve", "compute the formal solution");
    add_common(solve_cmd, solve_fl);
    CLI::App* growth_cmd = app.add_subcommand("growth", "solve and analyze coefficient growth");
    add_common(growth_cmd, growth_fl);
    CLI::App* sum_cmd = app.add_subcommand("sum", "solve, analyze, and Borel-Laplace sum");
    add_common(sum_cmd, sum_fl);

    CLI::App* kernels_cmd = app.add_subcommand("kernels", "kernel utilities");
    int pmax = 10;
    double ktol = 1e-8;
    std::string kernels_out;
    CLI::App* kcheck = kernels_cmd->add_subcommand("check", "verify Mellin moments and dual evaluation");
    kcheck->add_option("--pmax", pmax, "largest moment index");
    kcheck->add_option("--tol", ktol, "Mellin relative-error tolerance");
    kcheck->add_option("--out", kernels_out, "output directory for kernels-check.json");
    kernels_cmd->require_subcommand(1);

    CLI::App* seq_cmd = app.add_subcommand("sequence", "sequence utilities");
    std::string spec_text;
    int prefix = 60;
    std::string seq_out;
    CLI::App* audit = seq_cmd->add_subcommand("audit", "audit a moment sequence");
    audit->add_option("spec", spec_text, "moment spec, e.g. gevrey(1) or qfact(1/2)")->required();
    audit->add_option("--prefix", prefix, "prefix length to audit");
    audit->add_option("--out", seq_out, "output directory for sequence-audit.json");
    seq_cmd->require_subcommand(1);

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve_cmd->parsed()) return run_stage(solve_fl, mpde::PipelineStage::Solve);
        if (growth_cmd->parsed()) return run_stage(growth_fl, mpde::PipelineStage::Growth);
        if (sum_cmd->parsed()) return run_stage(sum_fl, mpde::PipelineStage::Sum);
        if (kernels_cmd->parsed()) return run_kernels_check(pmax, ktol, kernels_out);
        if (seq_cmd->parsed()) return run_sequence_audit(spec_text, prefix, seq_out);
    } catch (const mpde::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const mpde::NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const mpde::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
