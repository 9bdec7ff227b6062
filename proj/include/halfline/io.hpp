#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "halfline/marchenko.hpp"

namespace halfline::io {

/// Solution grid as CSV with header `x,t,q`, row-major over t then x,
/// 17 significant digits (lossless double round-trip).
std::string grid_to_csv(const marchenko::SolutionGrid& grid);
marchenko::SolutionGrid grid_from_csv(const std::string& text);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

/// FNV-1a 64-bit content hash (hex string); used for the run manifest.
std::uint64_t fnv1a64(const std::string& bytes);
std::string fnv1a64_hex(const std::string& bytes);

/// Record of one CLI run: command, config hash, emitted files with hashes.
struct RunManifest {
    std::string command;
    std::string config_path;
    std::string config_hash;
    std::string output_dir;
    std::vector<std::pair<std::string, std::string>> files;  // (path, hash)

    void record(const std::string& path, const std::string& content);
    std::string to_json_text() const;
};

}  // namespace halfline::io
