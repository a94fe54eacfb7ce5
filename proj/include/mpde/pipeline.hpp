#pragma once

#include "mpde/dsl.hpp"
#include "mpde/growth.hpp"
#include "mpde/solver.hpp"
#include "mpde/summation.hpp"

#include <optional>
#include <string>

namespace mpde {

inline constexpr int kSchemaVersion = 1;

enum class PipelineStage { Solve, Growth, Sum };

/// CLI-level overrides; unset fields fall back to the problem file's options.
struct PipelineOverrides {
    std::optional<int> nt;
    std::optional<int> nz;
    std::optional<Rational> rprime;
    std::optional<double> direction;
};

struct PipelineResult {
    ProblemFile file;
    PipelineOptions options;        // merged
    int nt = 0;
    int nz = 0;
    FormalSolution<Rational> solution;
    std::optional<GrowthReport> growth;
    std::optional<double> radius;
    // summation stage
    double alpha = 0.0;
    bool summed_directly = false;   // convergent case: plain series evaluation
    std::optional<SummationResult> summation;
    std::complex<double> sum_value{0.0, 0.0};
};

/// Solve (and optionally analyze/sum) the problem described by `text`.
PipelineResult run_pipeline(const std::string& text, const PipelineOverrides& overrides,
                            PipelineStage stage);

/// Run and write the artifact bundle (solution.json, growth.csv/.json,
/// summation.json, run-manifest.json) into out_dir.
PipelineResult run_and_write(const std::string& text, const PipelineOverrides& overrides,
                             PipelineStage stage, const std::string& out_dir);

/// Re-run from a run-manifest.json produced by run_and_write; outputs are
/// byte-identical for identical manifests.
PipelineResult rerun_from_manifest(const std::string& manifest_path, const std::string& out_dir);

}  // namespace mpde
