#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

namespace irs_sense {

inline constexpr const char* tool_name = "irs-sense";
inline constexpr const char* tool_version = "0.1.0";

/// Format a double with up to 12 significant digits (deterministic,
/// locale-independent).
std::string format_value(double v);

/// CSV with '#'-prefixed metadata lines followed by a single header row.
class CsvWriter {
  public:
    explicit CsvWriter(std::filesystem::path file);

    void metadata(const std::string& key, const std::string& value);
    void header(std::span<const std::string> columns);
    void row(std::span<const double> values);
    void close();

    const std::filesystem::path& path() const { return path_; }

  private:
    std::filesystem::path path_;
    std::ofstream out_;
    bool header_written_ = false;
};

std::uint32_t crc32(std::span<const unsigned char> data);
std::uint32_t crc32_file(const std::filesystem::path& file);

/// Current time as "YYYY-MM-DDTHH:MM:SSZ".
std::string utc_timestamp();

/// Record of one CLI run: the fully resolved configuration, seed, version
/// and a checksum per emitted file, enough to reproduce every output
/// bit-exactly.
struct RunManifest {
    std::string command;
    std::uint64_t master_seed = 0;
    std::vector<std::pair<std::string, std::string>> config;  // resolved key/value pairs
    double elapsed_seconds = 0.0;
    std::string started_utc;

    struct Output {
        std::string file;
        std::uint32_t crc32 = 0;
        std::uint64_t bytes = 0;
    };
    std::vector<Output> outputs;

    void add_output(const std::filesystem::path& file);
    void write(const std::filesystem::path& directory) const;  // run_manifest.json
};

}  // namespace irs_sense
