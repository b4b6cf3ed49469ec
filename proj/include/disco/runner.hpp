// Copyright 2026 The DiscoVQE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

namespace disco {

// Parses a configuration file; throws std::runtime_error with the path on
// unreadable files or malformed JSON.
nlohmann::json load_config_file(const std::filesystem::path& path);

// Validates the whole configuration (unknown keys are hard errors), executes
// the configured method and writes summary.json plus the method's artifacts
// (ansatz.txt, moves.jsonl) into out_dir. Returns the summary document.
nlohmann::json run_job(const nlohmann::json& config, const std::filesystem::path& out_dir);

// Runs one job per scan point into out_dir/<label>/ and aggregates scan.csv
// and scan_summary.json (per-point energies, error against the exact
// reference, and the non-parallelity error max-min over the scan). Per-point
// failures are recorded and the scan continues.
nlohmann::json run_scan(const nlohmann::json& config, const std::filesystem::path& out_dir);

// Writes through a temporary file in the same directory and renames, so
// readers never observe partial content.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace disco
