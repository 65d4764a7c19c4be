#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace irs_sense::figures {

/// Resolved options for one `figure` invocation. Unset optionals fall back
/// to the figure's own defaults; not every override is meaningful for every
/// figure (run_figure rejects the rest).
struct FigureOptions {
    std::string id;
    std::filesystem::path out_dir = ".";
    std::string command_line;
    std::uint64_t seed = 12345;
    std::size_t realizations = 1000;
    std::size_t frames = 100;
    unsigned threads = 0;
    std::optional<std::size_t> elements;
    std::vector<std::size_t> block_list;  // figure 4a sweep override
    std::optional<std::size_t> blocks;
    std::optional<std::size_t> nbar;
    std::vector<double> alpha_list;  // figure 4b grid override
    std::optional<double> alpha;
    std::optional<double> pt_dbm;
    std::optional<double> noise_dbm;
};

/// Produce the figure's CSV series plus run_manifest.json in out_dir.
/// Returns a process exit code (0 on success).
int run_figure(const FigureOptions& opt);

}  // namespace irs_sense::figures
