/*!
  \file routing.hpp
  \brief NOT-copy routing of LUT inputs across the crossbar

  A value moves by single-input NORs along rows and columns; every hop
  inverts it. The search state is (cell, hop parity), so a requested output
  polarity becomes a parity constraint on the path length.
*/

#pragma once

#include <magicmap/fabric.hpp>
#include <magicmap/occupancy.hpp>

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace magicmap
{

enum class parity : std::uint8_t
{
  even,
  odd,
  any
};

struct copy_path
{
  /*! \brief Source first, destination last. */
  std::vector<coord> cells;

  std::size_t hops() const { return cells.empty() ? 0u : cells.size() - 1u; }
  bool odd() const { return hops() % 2u == 1u; }
};

/*! \brief Lower bound on the remaining hops: 0 at `dst`, 1 on its row or column, 2 elsewhere. */
int copy_heuristic( coord at, coord dst );

/*! \brief Shortest NOT-copy path from `src` to `dst` under a parity constraint.
 *
 * Intermediate cells must be routable; `dst` is accepted whatever its slot.
 * Neighbours of a cell are the routable cells sharing its row or column.
 * Ties are broken by heuristic value, then by (row, col) of the frontier
 * cell, which makes the result deterministic. Returns nullopt if no path
 * exists or the only shortest path visits a cell twice.
 */
std::optional<copy_path> astar_copy( occupancy const& occ, coord src, coord dst, parity constraint );

/*! \brief Same search using the crossbar's initialized cells as routable. */
std::optional<copy_path> astar_copy( crossbar const& xbar, coord src, coord dst, parity constraint );

/*! \brief Cell that must receive an input literal. */
struct delivery_target
{
  coord at;
  /*! \brief True if the cell must hold the complement of the signal. */
  bool complemented{ false };
};

/*! \brief A computed value: `at` holds the signal, complemented if `complemented`. */
struct stored_signal
{
  coord at;
  bool complemented{ true };
};

using signal_source = std::variant<std::string, stored_signal>;

struct routed_op
{
  instruction op;
  provenance tag;
};

/*! \brief Emits the instructions that place one signal into all its targets.
 *
 * Primary inputs (`std::string`) are written directly with the required
 * polarity. A stored signal is copied with one parity-constrained search
 * into the target column, then spread vertically; a target whose polarity
 * does not match any filled cell of the column is reached through a bounce
 * cell. Cells consumed by paths and bounces become `used`.
 *
 * All targets must share one column. Throws `routing_error` if a target
 * cannot be reached.
 */
std::vector<routed_op> deliver_input( occupancy& occ, signal_source const& source, std::vector<delivery_target> const& targets );

} // namespace magicmap
