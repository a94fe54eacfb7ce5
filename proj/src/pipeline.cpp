#include "mpde/pipeline.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>

namespace mpde {

namespace {

using ordered_json = nlohmann::ordered_json;

int effective_nz(const ProblemFile& pf, int nt, int nz_opt) {
    // Headroom beyond the recurrence budget keeps the top rows' norms free of
    // truncation bias; without it the growth fit flattens near n = nt.
    int needed = pf.p * (nt / pf.k);
    if (nz_opt < 0) return needed + 4 * pf.p + 12;
    return nz_opt;
}

PipelineOptions merge(const ProblemFile& pf, const PipelineOverrides& ov) {
    PipelineOptions o = pf.options;
    if (ov.nt) o.nt = *ov.nt;
    if (ov.nz) o.nz = *ov.nz;
    if (ov.rprime) o.rprime = *ov.rprime;
    if (ov.direction) {
        o.direction = *ov.direction;
        o.direction_expr = nullptr;
    }
    return o;
}

std::vector<std::complex<double>> t_series_at(const FormalSolution<Rational>& sol,
                                              const Rational& zpoint) {
    Series2<Rational> plain = sol.plain();
    std::vector<std::complex<double>> c;
    c.reserve(plain.rows.size());
    for (const auto& row : plain.rows) {
        Series1<Rational> r = truncate(row, row.valid() >= 0 ? row.valid() : 0);
        c.push_back(to_complex(series_eval(r, zpoint)));
    }
    return c;
}

}  // namespace

PipelineResult run_pipeline(const std::string& text, const PipelineOverrides& overrides,
                            PipelineStage stage) {
    PipelineResult res;
    res.file = parse_problem(text);
    res.options = merge(res.file, overrides);
    res.nt = res.options.nt;
    res.nz = effective_nz(res.file, res.nt, res.options.nz);

    CauchyProblem<Rational> prob = res.file.expand(res.nt, res.nz);
    res.solution = solve_formal(prob, res.nt, res.nz);

    if (stage == PipelineStage::Solve) return res;

    Series2<Rational> plain = res.solution.plain();
    std::vector<Real> norms = coefficient_norms(plain, to_real(res.options.rprime));
    GrowthReport report = fit_moment_order(norms, StronglyRegularSequence::gevrey(1));
    report.predicted_sigma = predicted_order(prob.k, prob.p, prob.s1, prob.s2);
    report.r_prime = to_double(res.options.rprime);
    res.growth = report;
    try {
        res.radius = radius_estimate(norms);
    } catch (const ConfigError&) {
        res.radius.reset();
    }

    if (stage == PipelineStage::Growth) return res;

    double alpha = res.options.alpha ? *res.options.alpha : report.predicted_sigma;
    res.alpha = alpha;
    std::vector<std::complex<double>> coeffs = t_series_at(res.solution, res.options.zpoint);
    std::complex<double> t = to_complex(res.options.tpoint);
    if (alpha <= 0.0) {
        // Convergent regime: the t-series is summed directly.
        res.summed_directly = true;
        std::complex<double> acc = 0.0;
        for (int n = static_cast<int>(coeffs.size()) - 1; n >= 0; --n)
            acc = acc * t + coeffs[static_cast<size_t>(n)];
        res.sum_value = acc;
    } else {
        SummationOptions so;
        so.direction = res.options.direction;
        res.summation = sum_series(alpha, coeffs, t, so);
        res.sum_value = res.summation->value;
    }
    return res;
}

namespace {

ordered_json options_json(const PipelineOptions& o, int nt, int nz) {
    ordered_json j;
    j["nt"] = nt;
    j["nz"] = nz;
    j["qiters"] = o.qiters;
    j["rprime"] = rational_to_string(o.rprime);
    j["zpoint"] = rational_to_string(o.zpoint);
    j["tpoint"] = rational_to_string(o.tpoint);
    j["radius"] = rational_to_string(o.radius);
    j["direction"] = o.direction;
    if (o.alpha)
        j["alpha"] = *o.alpha;
    else
        j["alpha"] = nullptr;
    return j;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot open output file " + path.string());
    os << content;
}

std::string stage_name(PipelineStage s) {
    switch (s) {
        case PipelineStage::Solve: return "solve";
        case PipelineStage::Growth: return "growth";
        case PipelineStage::Sum: return "sum";
    }
    return "solve";
}

void write_artifacts(const PipelineResult& res, PipelineStage stage, const std::string& text,
                     const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    fs::path dir(out_dir);

    {
        ordered_json j;
        j["schema_version"] = kSchemaVersion;
        j["k"] = res.file.k;
        j["p"] = res.file.p;
        j["m1"] = res.file.m1.print();
        j["m2"] = res.file.m2.print();
        j["s1"] = res.file.s1();
        j["s2"] = res.file.s2();
        j["nt"] = res.nt;
        j["nz"] = res.nz;
        j["method"] = res.solution.method == SolveMethod::Recurrence ? "recurrence" : "fixed_point";
        ordered_json rows = ordered_json::array();
        for (size_t n = 0; n < res.solution.u_star.size(); ++n) {
            const auto& row = res.solution.u_star[n];
            ordered_json r;
            r["n"] = n;
            r["valid"] = row.valid();
            ordered_json coeffs = ordered_json::array();
            for (int p = 0; p <= row.valid(); ++p)
                coeffs.push_back(rational_to_string(row[p]));
            r["coeffs_star"] = coeffs;
            rows.push_back(r);
        }
        j["rows"] = rows;
        write_file(dir / "solution.json", j.dump(2) + "\n");
    }

    if (res.growth) {
        const GrowthReport& g = *res.growth;
        ordered_json j;
        j["schema_version"] = kSchemaVersion;
        j["r_prime"] = g.r_prime;
        j["window_lo"] = g.window_lo;
        j["window_hi"] = g.window_hi;
        j["degenerate"] = g.degenerate;
        j["fitted_C"] = g.fitted_C;
        j["fitted_H"] = g.fitted_H;
        j["fitted_sigma"] = g.fitted_sigma;
        j["predicted_sigma"] = g.predicted_sigma;
        j["fit_residual"] = g.fit_residual;
        if (res.radius && std::isfinite(*res.radius))
            j["radius_estimate"] = *res.radius;
        else if (res.radius)
            j["radius_estimate"] = "inf";
        else
            j["radius_estimate"] = nullptr;
        ordered_json norms = ordered_json::array();
        for (const Real& s : g.norms) norms.push_back(real_to_string(s));
        j["norms"] = norms;
        write_file(dir / "growth.json", j.dump(2) + "\n");

        std::string csv = "n,s_n,fit\n";
        StronglyRegularSequence base = StronglyRegularSequence::gevrey(1);
        for (size_t n = 0; n < g.norms.size(); ++n) {
            double fit = g.degenerate
                             ? 0.0
                             : g.fitted_C * std::pow(g.fitted_H, static_cast<double>(n)) *
                                   std::exp(g.fitted_sigma * base.log_value(static_cast<int>(n)));
            csv += std::to_string(n) + "," + real_to_string(g.norms[n]) + "," +
                   ordered_json(fit).dump() + "\n";
        }
        write_file(dir / "growth.csv", csv);
    }

    if (stage == PipelineStage::Sum) {
        ordered_json j;
        j["schema_version"] = kSchemaVersion;
        j["alpha"] = res.alpha;
        j["direction"] = res.options.direction;
        j["zpoint"] = rational_to_string(res.options.zpoint);
        j["tpoint"] = rational_to_string(res.options.tpoint);
        j["method"] = res.summed_directly ? "direct" : "borel_laplace";
        j["value_re"] = res.sum_value.real();
        j["value_im"] = res.sum_value.imag();
        if (res.summation) {
            j["err_estimate"] = res.summation->err_estimate;
            j["converged"] = res.summation->converged;
            ordered_json dirs = ordered_json::array();
            for (double d : res.summation->singular_dirs) dirs.push_back(d);
            j["singular_directions"] = dirs;
        }
        write_file(dir / "summation.json", j.dump(2) + "\n");
    }

    {
        ordered_json j;
        j["schema_version"] = kSchemaVersion;
        j["stage"] = stage_name(stage);
        j["problem_text"] = text;
        j["options"] = options_json(res.options, res.nt, res.options.nz);
        write_file(dir / "run-manifest.json", j.dump(2) + "\n");
    }
}

Rational rational_from_string(const std::string& s) {
    size_t slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    return Rational(BigInt(s.substr(0, slash))) / Rational(BigInt(s.substr(slash + 1)));
}

}  // namespace

PipelineResult run_and_write(const std::string& text, const PipelineOverrides& overrides,
                             PipelineStage stage, const std::string& out_dir) {
    PipelineResult res = run_pipeline(text, overrides, stage);
    write_artifacts(res, stage, text, out_dir);
    return res;
}

PipelineResult rerun_from_manifest(const std::string& manifest_path, const std::string& out_dir) {
    std::ifstream is(manifest_path);
    if (!is) throw ConfigError("cannot read manifest " + manifest_path);
    ordered_json j = ordered_json::parse(is);

    std::string text = j.at("problem_text").get<std::string>();
    std::string stage_str = j.at("stage").get<std::string>();
    PipelineStage stage = PipelineStage::Solve;
    if (stage_str == "growth") stage = PipelineStage::Growth;
    if (stage_str == "sum") stage = PipelineStage::Sum;

    PipelineOverrides ov;
    const auto& o = j.at("options");
    ov.nt = o.at("nt").get<int>();
    ov.nz = o.at("nz").get<int>();
    ov.rprime = rational_from_string(o.at("rprime").get<std::string>());
    ov.direction = o.at("direction").get<double>();
    return run_and_write(text, ov, stage, out_dir);
}

}  // namespace mpde
