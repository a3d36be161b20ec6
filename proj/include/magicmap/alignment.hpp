/*!
  \file alignment.hpp
  \brief Column assignment of LUT inputs within a stacked group

  Each row of an input matrix lists the fan-in variables of one LUT in the
  order of its columns. A variable that sits in the same column for several
  LUTs of a group can be delivered once and copied vertically, so the goal
  is to align as many shared variables as possible.
*/

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace magicmap
{

/*! \brief One row per LUT; empty strings mark unused slots.
 *
 * Aligned matrices returned below pad every row to the widest row.
 */
using input_matrix = std::vector<std::vector<std::string>>;

/*! \brief Number of (column, unordered row pair) coincidences of equal, non-empty entries. */
std::size_t alignment_score( input_matrix const& m );

/*! \brief Frequency-driven greedy alignment.
 *
 * Variables are taken by descending number of rows they occur in, ties by
 * first appearance in row-major order. Each goes to the first column that
 * is free in all its rows, or else to the first free column of each row.
 */
input_matrix greedy_align( input_matrix const& m );

inline constexpr std::size_t exact_max_rows = 4u;
inline constexpr std::size_t exact_max_cols = 5u;

/*! \brief Maximum-score alignment by enumerating permutations of rows 2..n.
 *
 * The first maximum in lexicographic permutation order wins. Throws
 * `std::invalid_argument` beyond `exact_max_rows` x `exact_max_cols`.
 */
input_matrix exact_align( input_matrix const& m );

/*! \brief True if every row of `aligned` is a rearrangement of the same row of `original`. */
bool is_rearrangement( input_matrix const& original, input_matrix const& aligned );

} // namespace magicmap
