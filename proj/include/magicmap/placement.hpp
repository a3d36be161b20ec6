/*!
  \file placement.hpp
  \brief Area-constrained placement of LUT groups and instruction emission

  LUTs of one topological level and input count form a group. The group is
  stacked top to bottom inside a band of `width + 1` columns; every LUT
  occupies (cubes + 1) rows. One HNOR evaluates all product terms of the
  group, one VNOR per LUT combines its terms into the (inverted) output, and
  outputs driving a primary output receive a final NOT.

  When no band can host a LUT, everything but the lines holding live values
  is reset and placement restarts from the top-left corner.
*/

#pragma once

#include <magicmap/fabric.hpp>
#include <magicmap/netlist.hpp>
#include <magicmap/non.hpp>
#include <magicmap/occupancy.hpp>
#include <magicmap/routing.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace magicmap
{

enum class align_mode : std::uint8_t
{
  greedy,
  exact
};

struct map_options
{
  int rows{ 0 };
  int cols{ 0 };
  unsigned spacing{ 0 };
  align_mode align{ align_mode::greedy };
};

/*! \brief Where a computed LUT value lives and how long it must be kept. */
struct lut_output
{
  /*! \brief Cell holding the complemented LUT function (VNOR result). */
  coord inverted;
  /*! \brief Cell holding the true function, for LUTs driving outputs. */
  std::optional<coord> true_cell;
  std::size_t pending_fanouts{ 0 };
};

class output_directory
{
public:
  void record( std::size_t lut, lut_output out ) { outputs_[lut] = out; }
  lut_output const* find( std::size_t lut ) const;

  /*! \brief Marks one fan-out of `lut` as computed. */
  void consume( std::size_t lut );

  /*! \brief Points every entry that refers to `from` at `to` instead. */
  void relocate( coord from, coord to );

  /*! \brief Keeps a cell alive for the rest of the mapping. */
  void pin( coord c ) { pinned_.push_back( c ); }

  bool live( std::size_t lut ) const;

  /*! \brief Cells that must survive resets, sorted. */
  std::vector<coord> live_cells() const;

private:
  std::map<std::size_t, lut_output> outputs_;
  std::vector<coord> pinned_;
};

/*! \brief Next group: unscheduled LUTs of the lowest level with the largest input count. */
std::vector<std::size_t> select_group( lut_graph const& graph, std::vector<bool> const& scheduled );

/*! \brief Reset that keeps every line holding a live cell.
 *
 * Rows or columns are excluded, whichever blocks fewer cells; ties keep
 * columns. Without live cells the whole array is reset row-wise.
 */
reset_op select_reset( int rows, int cols, std::vector<coord> const& live );

/*! \brief Applies a reset to the mapper's occupancy map. */
void apply_reset( occupancy& occ, reset_op const& reset );

/*! \brief Column band and row position of the stacking cursor. */
struct band_cursor
{
  int start_col{ 1 };
  std::vector<int> columns;
  int next_row{ 1 };
};

struct placed_lut
{
  std::size_t lut{ 0 };
  int top_row{ 0 };
  /*! \brief Input columns in order, output column last. */
  std::vector<int> columns;
  /*! \brief Literal matrix with columns in placement order. */
  non_matrix non;

  int height() const { return static_cast<int>( non.num_rows() ) + 1; }
  int output_row() const { return top_row + static_cast<int>( non.num_rows() ); }
  int output_col() const { return columns.back(); }
};

/*! \brief Stacks a prefix of `group` into the current or a later band.
 *
 * Claimed cells become `reserved`, the `spacing` rows below each LUT become
 * `spacing`. Returns the placed LUTs (at least one), or nullopt if no band
 * right of the cursor can host the first LUT.
 */
std::optional<std::vector<placed_lut>> place_group( occupancy& occ, band_cursor& cursor, output_directory const& dir,
                                                    lut_graph const& graph, std::vector<std::size_t> const& group,
                                                    unsigned spacing );

/*! \brief HNOR over all product rows, one VNOR per LUT, and a NOT per output LUT. */
std::vector<routed_op> emit_group_compute( lut_graph const& graph, std::vector<placed_lut> const& placed );

struct group_plan
{
  int level{ 0 };
  std::size_t width{ 0 };
  std::vector<placed_lut> luts;
  /*! \brief Cells turned from free to reserved by placement. */
  std::size_t claimed_cells{ 0 };
  /*! \brief Sum of (cubes + 1) x (width + 1) over the group. */
  std::size_t expected_cells{ 0 };
  std::size_t alignment_score{ 0 };
  /*! \brief Cycle of the group's HNOR. */
  std::size_t compute_cycle{ 0 };
};

struct mapping_result
{
  instruction_stream stream;
  std::vector<group_plan> groups;
  std::size_t resets{ 0 };

  bool footprint_check() const;
};

/*! \brief Maps a LUT graph onto an R x C crossbar.
 *
 * Throws `unmappable_error` when a LUT is larger than the array or the
 * array stays too congested after a reset.
 */
mapping_result map_lut_graph( lut_graph const& graph, map_options const& options );

} // namespace magicmap
