// Run archives: a result directory holding the serialized case, a JSON
// result summary, and (for the outer loop) the per-iteration history CSV.
#pragma once

#include "trussopt/casefile.hpp"
#include "trussopt/driver.hpp"

#include <filesystem>
#include <vector>

namespace trussopt {

// Writes the history table with header k,U,U_min,eta,fem_calls,nlp_solves,
// wall_ms. Non-finite values are written as inf.
void write_history_csv(const std::filesystem::path& path,
                       const std::vector<HistoryRow>& history);

// Creates dir if needed and writes case.txt, result.json, history.csv.
void write_oa_archive(const std::filesystem::path& dir, const CaseFile& c,
                      const OaResult& result);

// Creates dir if needed and writes case.txt and result.json.
void write_enum_archive(const std::filesystem::path& dir, const CaseFile& c,
                        const EnumerateResult& result);

}  // namespace trussopt
