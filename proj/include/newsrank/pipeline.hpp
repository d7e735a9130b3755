#pragma once

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "newsrank/config.hpp"
#include "newsrank/domain.hpp"

namespace newsrank {

enum class Stage { Ingest, Graph, Bias, Bots, Ads, Signals, Rank, Eval, Synth, All };

Stage parse_stage(std::string_view text);
std::string_view to_string(Stage stage);

/// Snapshot-per-stage driver. Each stage reads the files earlier stages
/// left under the output directory and writes its own subdirectory;
/// a missing prerequisite raises DependencyError naming the stage to run.
class Pipeline {
public:
    using Logger = std::function<void(const std::string&)>;

    explicit Pipeline(PipelineConfig config, Logger log = {});

    /// Runs one stage (or the full chain for Stage::All) and rewrites
    /// manifest.json and timings.json.
    void run(Stage stage);

    const PipelineConfig& config() const { return config_; }

    /// Path of a file inside a stage directory.
    std::string path(std::string_view stage, std::string_view file) const;

    /// Whether the optional stages have their inputs configured.
    bool bias_enabled() const;
    bool bots_enabled() const;
    bool ads_enabled() const;

private:
    void ingest();
    void graph();
    void bias();
    void bots();
    void ads();
    void signals();
    void rank();
    void eval();
    void synth();

    void run_stage(Stage stage);
    void require(std::string_view stage, std::string_view file) const;
    void write_manifest() const;
    void log(const std::string& message) const;

    PipelineConfig config_;
    Logger log_;
    DomainCanonicalizer canon_;
    std::vector<std::pair<std::string, double>> timings_;
};

} // namespace newsrank
