#pragma once

#include <cstdint>
#include <string>

#include "mmo/svm.hpp"

namespace mmo::synthetic {

// Deterministic stand-in datasets with the statistical shape of the two UCI
// problems (683 usable BCW rows with integer 1..10 attributes; 2310 IS rows,
// 19 attributes, 7 classes).  make_* return clean in-memory datasets;
// write_*_raw emit files in the on-disk layouts load_dataset expects,
// including the 16 missing-value rows (BCW) and header lines (IS).
svm::Dataset make_bcw(std::uint64_t seed);
svm::Dataset make_is(std::uint64_t seed);

void write_bcw_raw(const std::string& path, std::uint64_t seed);
void write_is_raw(const std::string& path, std::uint64_t seed);

}  // namespace mmo::synthetic
