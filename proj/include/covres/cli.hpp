#pragma once

// Command-line front end: instance ingestion, pipeline orchestration,
// machine-readable reports, and the verified on-disk group cache.

#include "covres/icosa.hpp"
#include "covres/valentiner.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace covres {

// ---------------------------------------------------------------------------
// Group cache.
//
// Text layout:
//   covres-group-cache v1
//   dimension D
//   count N          (matrices stored below)
//   order M          (expected group order after closure)
//   precision B      (decimal digits the entries were written at)
//   note <free text> (zero or more provenance lines)
//   matrix <k>
//   <D*D lines "re im", exact decimal strings>
//   ...
//   checksum <16 hex digits>
//
// The checksum (FNV-1a 64 over every byte above the checksum line) guards
// transport only; load_group additionally re-verifies determinants, closure
// to the stated order, and (for ternary caches of order 1080) the Gerbaldi
// conic-permutation property, so a cache is never trusted on faith.
// ---------------------------------------------------------------------------

// Serialize group.elements; expected_order 0 means elements.size().
// Returns the checksum written.
std::string cache_group(const std::string& path, const MatrixGroup& group,
                        std::size_t expected_order = 0,
                        const std::vector<std::string>& notes = {});

// Parse, checksum-verify, close from the stored matrices, and re-verify.
// Throws std::runtime_error on checksum mismatch or failed re-verification.
// The result has the stored matrices as generators and the closure as
// elements.
MatrixGroup load_group(const std::string& path, const ToleranceConfig& cfg);

// FNV-1a 64 as a zero-padded hex string; exposed for the test suite.
std::string fnv1a_hex(const std::string& bytes);

// ---------------------------------------------------------------------------
// Pipeline runs.
// ---------------------------------------------------------------------------

struct RunRequest {
  // quintic | sextic | icosa-solve | normalproblem-solve | verify
  std::string pipeline;
  std::vector<BigComplex> roots;         // exactly one of roots/coefficients,
  std::vector<BigComplex> coefficients;  // except verify which takes neither
  ToleranceConfig config;
  std::uint64_t seed = 1;
  std::string cache_dir;  // optional directory with valentiner_generators.txt
};

struct ResidualCheck {
  std::string name;
  BigFloat value;
  BigFloat bound;
  bool passed() const { return value < bound; }
};

struct RunReport {
  std::string status = "ok";  // "ok" or "failed"
  std::string failed_check;   // first offending residual when failed
  // Inputs echo and stage outputs, in a fixed emission order.
  std::vector<std::pair<std::string, std::string>> entries;
  std::vector<ResidualCheck> residuals;
  std::vector<std::string> branch_log;
  // Diagnostics only; never part of to_text() so reports stay byte-identical.
  std::vector<std::pair<std::string, double>> timings_seconds;

  std::string to_text() const;
};

// Execute the named pipeline.  Parse-level validation errors throw
// std::invalid_argument; pipeline degeneracies propagate the library's
// domain/runtime errors.  All residual checks are recorded; status is "ok"
// iff every one passes.
RunReport run(const RunRequest& request);

// ---------------------------------------------------------------------------
// Process-level entry point (shared by the binary and the test suite).
// Exit codes: 0 all checks pass, 1 a residual check failed, 2 parse error
// (no partial report), 3 pipeline degeneracy, 4 precision exhaustion.
// ---------------------------------------------------------------------------

struct CliResult {
  int exit_code = 0;
  std::string output;       // the report, for standard output
  std::string diagnostics;  // timings and errors, for standard error
};

CliResult run_cli(const std::vector<std::string>& args);

// "a+bi" complex literal (also plain reals, "bi", "i", scientific parts).
// Throws std::invalid_argument on malformed input.
BigComplex parse_complex_literal(const std::string& text);
std::vector<BigComplex> parse_complex_list(const std::string& text);

}  // namespace covres
