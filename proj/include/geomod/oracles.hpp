#pragma once

#include "geomod/chen.hpp"

namespace geomod {

/// Per-word iterated integrals by cumulative composite Simpson on uniform
/// grids, independent of the Chebyshev-panel/Chen-composition route.
Signature simpson_path_signature(const std::vector<FormLetter>& alphabet, const Path& path,
                                 int order, std::size_t panels_per_segment = 512);

/// Exhaustive enumeration of the normalized rows (c, d), |c| <= c_bound,
/// |d| <= max(c_bound, 1), that occur for the cusp at infinity of the preset.
long count_coset_rows_infty(const GroupPreset& preset, long c_bound);

}  // namespace geomod
