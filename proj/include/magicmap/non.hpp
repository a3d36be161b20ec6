/*!
  \file non.hpp
  \brief NOR-of-NORs literal matrices for LUT functions

  A cube of the sum-of-products cover becomes one row of literals written
  with flipped polarity, so that the row NOR reproduces the cube. The NOR
  over all rows gives the complemented function; a final NOT restores it.
*/

#pragma once

#include <magicmap/netlist.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace magicmap
{

/*! \brief Literal stored in a crossbar cell.
 *
 * `pos` writes the variable itself, `neg` its complement. `absent` cells do
 * not take part in the row NOR.
 */
enum class non_mark : std::uint8_t
{
  pos,
  neg,
  absent
};

struct non_matrix
{
  std::vector<std::string> variables;
  std::vector<std::vector<non_mark>> rows;
  std::string source_lut;

  std::size_t num_rows() const { return rows.size(); }
  std::size_t num_columns() const { return variables.size(); }

  bool operator==( non_matrix const& ) const = default;
};

/*! \brief Converts an on-set cover into its NoN matrix.
 *
 * A cube requiring a variable at 1 stores `neg`, at 0 stores `pos`.
 * Throws `netlist_error` for constant covers.
 */
non_matrix sop_to_non( sop_cover const& cover, std::string source_lut = {} );

/*! \brief NOT( NOR over rows of ( NOR over the row's literals ) ). */
bool evaluate_non( non_matrix const& non, assignment const& values );

/*! \brief Positional variant; `values` follows `non.variables`. */
bool evaluate_non( non_matrix const& non, std::span<const bool> values );

/*! \brief Reorders columns; `order[i]` is the old column placed at position i. */
non_matrix permute_columns( non_matrix const& non, std::span<const std::size_t> order );

/*! \brief Tabular rendering with marks 0 (neg), 1 (pos) and - (absent). */
std::string to_table( non_matrix const& non );

} // namespace magicmap
