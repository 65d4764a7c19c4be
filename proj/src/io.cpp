#include "irs_sense/io.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <stdexcept>

#include <json.hpp>

namespace irs_sense {

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

CsvWriter::CsvWriter(std::filesystem::path file) : path_(std::move(file)), out_(path_) {
    if (!out_) throw std::runtime_error("csv: cannot open " + path_.string() + " for writing");
}

void CsvWriter::metadata(const std::string& key, const std::string& value) {
    if (header_written_) throw std::logic_error("csv: metadata must precede the header");
    out_ << "# " << key << " = " << value << '\n';
}

void CsvWriter::header(std::span<const std::string> columns) {
    if (header_written_) throw std::logic_error("csv: header already written");
    for (std::size_t i = 0; i < columns.size(); ++i)
        out_ << columns[i] << (i + 1 == columns.size() ? "" : ",");
    out_ << '\n';
    header_written_ = true;
}

void CsvWriter::row(std::span<const double> values) {
    if (!header_written_) throw std::logic_error("csv: row before header");
    for (std::size_t i = 0; i < values.size(); ++i)
        out_ << format_value(values[i]) << (i + 1 == values.size() ? "" : ",");
    out_ << '\n';
}

void CsvWriter::close() {
    out_.flush();
    out_.close();
    if (!out_ && !out_.eof()) throw std::runtime_error("csv: write to " + path_.string() + " failed");
}

namespace {
std::array<std::uint32_t, 256> make_crc_table() {
    std::array<std::uint32_t, 256> table{};
    for (std::uint32_t n = 0; n < 256; ++n) {
        std::uint32_t c = n;
        for (int k = 0; k < 8; ++k) c = (c & 1u) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
        table[n] = c;
    }
    return table;
}
}  // namespace

std::uint32_t crc32(std::span<const unsigned char> data) {
    static const auto table = make_crc_table();
    std::uint32_t c = 0xFFFFFFFFu;
    for (const unsigned char byte : data) c = table[(c ^ byte) & 0xFFu] ^ (c >> 8);
    return c ^ 0xFFFFFFFFu;
}

std::uint32_t crc32_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw std::runtime_error("crc32: cannot open " + file.string());
    static const auto table = make_crc_table();
    std::uint32_t c = 0xFFFFFFFFu;
    char buf[1 << 16];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        const auto n = static_cast<std::size_t>(in.gcount());
        for (std::size_t i = 0; i < n; ++i)
            c = table[(c ^ static_cast<unsigned char>(buf[i])) & 0xFFu] ^ (c >> 8);
    }
    return c ^ 0xFFFFFFFFu;
}

void RunManifest::add_output(const std::filesystem::path& file) {
    Output o;
    o.file = file.filename().string();
    o.crc32 = crc32_file(file);
    o.bytes = static_cast<std::uint64_t>(std::filesystem::file_size(file));
    outputs.push_back(std::move(o));
}

void RunManifest::write(const std::filesystem::path& directory) const {
    nlohmann::ordered_json j;
    j["tool"] = tool_name;
    j["version"] = tool_version;
    j["command"] = command;
    j["master_seed"] = master_seed;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [key, value] : config) cfg[key] = value;
    j["config"] = cfg;
    j["started_utc"] = started_utc;
    j["elapsed_seconds"] = elapsed_seconds;
    j["outputs"] = nlohmann::ordered_json::array();
    for (const auto& o : outputs) {
        char crc[16];
        std::snprintf(crc, sizeof crc, "%08x", o.crc32);
        j["outputs"].push_back({{"file", o.file}, {"crc32", crc}, {"bytes", o.bytes}});
    }
    std::ofstream out(directory / "run_manifest.json");
    if (!out) throw std::runtime_error("manifest: cannot write to " + directory.string());
    out << j.dump(2) << '\n';
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace irs_sense
