#pragma once

#include <cstddef>
#include <string>

#include "seqlevy/io.hpp"

namespace seqlevy::cmd {

// Exit codes shared with the CLI contract.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitUsage = 64;

/// Runs the Levy-measure validator on the triplet; writes
/// <out_dir>/validation.json. Returns 0 iff the measure is admissible.
int run_validate(const io::RunConfig& cfg, const std::string& out_dir);

/// Evaluates eta and the CF on the configured (times x phis) grid; writes
/// <out_dir>/cf.csv with rows t,phi_id,re_eta,im_eta,re_cf,im_cf.
int run_cf(const io::RunConfig& cfg, const std::string& out_dir);

/// Simulates the configured replicas; writes <out_dir>/summary.json,
/// jumps.csv (replica,time,shell,coords) and grid.csv (replica,t,phi_id,
/// value) for the configured phis.
int run_simulate(const io::RunConfig& cfg, const std::string& out_dir,
                 std::size_t threads);

/// Runs the selected verification tests; writes <out_dir>/report.json
/// (JSON array of reports). Returns 0/1/2 per the report summary.
int run_verify(const io::RunConfig& cfg, const std::string& out_dir,
               std::size_t threads);

}  // namespace seqlevy::cmd
