#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "latmorph/signal.hpp"

namespace latmorph {

/// Shortest round-trip text for one sample; infinities as "-inf" / "+inf".
std::string format_sample(double v);
double parse_sample(std::string_view token);

/// Plain-text signal: "d <dims>", the extents line, then row-major samples
/// (one grid row per line).
std::string format_signal(const SignalD& f);
SignalD parse_signal(std::string_view text);

SignalD read_signal_file(const std::filesystem::path& path);
void write_signal_file(const std::filesystem::path& path, const SignalD& f);

/// Binary 8-bit PGM (P5).
SignalD read_pgm(const std::filesystem::path& path);
/// Rounds and clamps samples to 0..255.
void write_pgm(const std::filesystem::path& path, const SignalD& f);

/// PGM when the file starts with "P5", plain text otherwise.
SignalD read_any(const std::filesystem::path& path);

/// Writes each signal as <name>.txt under dir plus manifest.json listing
/// name, file and extents; `extra` is merged into the manifest.
void write_manifest(const std::filesystem::path& dir, const std::vector<std::pair<std::string, SignalD>>& signals,
                    const nlohmann::json& extra = nlohmann::json::object());

}  // namespace latmorph
