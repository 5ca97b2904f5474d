// Serialization: ThetaSpec <-> JSON, fields and coefficient tables <-> CSV,
// fields <-> little-endian binary, and a deterministic JSON writer.

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "thetaper/core.hpp"

namespace thetaper::io {

using Json = nlohmann::json;

/// Raised for unreadable/unwritable files; format problems raise
/// std::invalid_argument.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json to_json(const ThetaSpec& spec);
ThetaSpec theta_from_json(const Json& j);

/// Complex numbers travel as [re, im].
Json to_json(Complex z);
Complex complex_from_json(const Json& j);

/// Field CSV: header m1[,m2],re,im then one row per node.
std::string field_to_csv(const SampledField& f);
SampledField field_from_csv(const std::string& text, const ThetaSpec& spec);

/// Coefficient CSV: header xi_1[,xi_2],re,im; every box point must appear.
std::string coeffs_to_csv(const CoeffTable& c);
CoeffTable coeffs_from_csv(const std::string& text, const ThetaSpec& spec);

/// Binary field: 40-byte header (magic, version, n, N as u32; T as f64;
/// branch_1, branch_2 as i32; sample count as u64) then re/im f64 pairs.
/// theta itself is not stored and must be supplied on read.
inline constexpr std::uint32_t kBinaryMagic = 0x54504652;  // "RFPT"
inline constexpr std::uint32_t kBinaryVersion = 1;
std::string field_to_binary(const SampledField& f);
SampledField field_from_binary(const std::string& bytes,
                               std::span<const Complex> theta);

/// Deterministic dump: keys in lexicographic order, doubles as %.17g
/// (non-finite ones as null), two-space indentation.
std::string dump(const Json& j);

std::string read_file(const std::filesystem::path& p);
/// Writes via a sibling temporary and rename.
void write_file_atomic(const std::filesystem::path& p, const std::string& data);

}  // namespace thetaper::io
