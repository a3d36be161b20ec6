/*!
  \file fabric.hpp
  \brief Memristive crossbar model and the MAGIC instruction set

  Coordinates are 1-based throughout the project: `(1, 1)` is the top-left
  device. Low resistance is logical 1; a reset drives cells to 1.

  A crossbar cell stores up to 64 independent bit lanes so that the same
  instruction stream can be simulated on many input assignments at once.
  Control flow (roles, initialization) is shared by all lanes.
*/

#pragma once

#include <magicmap/netlist.hpp>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace magicmap
{

struct coord
{
  int row{ 0 };
  int col{ 0 };

  auto operator<=>( coord const& ) const = default;
};

enum class cell_role : std::uint8_t
{
  free,
  input,
  intermediate,
  spacing
};

struct cell
{
  std::uint64_t bits{ 0 };
  bool defined{ false };
  cell_role role{ cell_role::free };
};

class crossbar
{
public:
  /*! \brief Pristine array: every cell holds 1 and is FREE. */
  crossbar( int rows, int cols, unsigned lanes = 1u );

  /*! \brief Array whose cells hold no defined value. */
  static crossbar uninitialized( int rows, int cols, unsigned lanes = 1u );

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  unsigned lanes() const noexcept { return lanes_; }
  std::uint64_t lane_mask() const noexcept { return mask_; }

  bool in_range( coord at ) const noexcept
  {
    return at.row >= 1 && at.row <= rows_ && at.col >= 1 && at.col <= cols_;
  }

  cell const& at( coord c ) const;
  cell& at( coord c );

  /*! \brief Lane-0 value, or nullopt if undefined. */
  std::optional<bool> value( coord c, unsigned lane = 0u ) const;
  cell_role role( coord c ) const { return at( c ).role; }

  /*! \brief True if the cell can receive a NOR/NOT result. */
  bool initialized( coord c ) const;

  bool operator==( crossbar const& ) const;

private:
  int rows_;
  int cols_;
  unsigned lanes_;
  std::uint64_t mask_;
  std::vector<cell> cells_;
};

/* instructions */

struct write_value
{
  enum class kind : std::uint8_t
  {
    zero,
    one,
    input,
    inverted_input
  };

  kind type{ kind::zero };
  std::string input;

  static write_value constant( bool v ) { return { v ? kind::one : kind::zero, {} }; }
  static write_value literal( std::string name, bool inverted )
  {
    return { inverted ? kind::inverted_input : kind::input, std::move( name ) };
  }

  bool operator==( write_value const& ) const = default;
};

struct write_op
{
  coord at;
  write_value value;

  bool operator==( write_op const& ) const = default;
};

/*! \brief For every row r: cell(r, dst_col) <- NOR{ cell(r, c) : c in src_cols }. */
struct hnor_op
{
  std::vector<int> rows;
  std::vector<int> src_cols;
  int dst_col{ 0 };

  bool operator==( hnor_op const& ) const = default;
};

/*! \brief cell(dst_row, col) <- NOR{ cell(r, col) : r in src_rows }. */
struct vnor_op
{
  int col{ 0 };
  std::vector<int> src_rows;
  int dst_row{ 0 };

  bool operator==( vnor_op const& ) const = default;
};

/*! \brief Single-input NOR along a shared row or column. */
struct not_op
{
  coord src;
  coord dst;

  bool operator==( not_op const& ) const = default;
};

/*! \brief Drives every cell outside the excluded lines to (1, FREE). */
struct reset_op
{
  enum class orientation : std::uint8_t
  {
    rows,
    cols
  };

  orientation lines{ orientation::rows };
  std::vector<int> excluded;

  bool operator==( reset_op const& ) const = default;
};

using instruction = std::variant<write_op, hnor_op, vnor_op, not_op, reset_op>;

/*! \brief Why an instruction was emitted; separates copy NOTs from output NOTs. */
enum class provenance : std::uint8_t
{
  write,
  copy,
  compute,
  reset
};

provenance default_provenance( instruction const& op );

/*! \brief Values bound to symbolic PI literals, one lane word per input. */
using input_binding = std::map<std::string, std::uint64_t, std::less<>>;

/*! \brief Executes one instruction in place.
 *
 * Checks coordinates, destination initialization, defined sources and the
 * destination-not-a-source rule; throws `execution_error` on violation.
 * WRITEs of PI literals need `inputs`.
 */
void execute( crossbar& xbar, instruction const& op, input_binding const* inputs = nullptr );

/* streams */

struct output_location
{
  std::string name;
  coord at;

  bool operator==( output_location const& ) const = default;
};

struct stream_entry
{
  std::size_t cycle{ 0 };
  instruction op;
  provenance tag{ provenance::write };
};

class instruction_stream
{
public:
  instruction_stream() = default;
  instruction_stream( int rows, int cols ) : rows_( rows ), cols_( cols ) {}

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  std::vector<std::string> const& inputs() const noexcept { return inputs_; }
  std::vector<output_location> const& outputs() const noexcept { return outputs_; }
  std::vector<stream_entry> const& entries() const noexcept { return entries_; }

  void set_inputs( std::vector<std::string> names ) { inputs_ = std::move( names ); }
  void add_output( std::string name, coord at ) { outputs_.push_back( { std::move( name ), at } ); }

  /*! \brief Appends at the next free cycle. */
  void append( instruction op, provenance tag );
  void append( instruction op ) { append( op, default_provenance( op ) ); }

  /*! \brief Appends at an explicit cycle; must exceed the last one. */
  void append_at( std::size_t cycle, instruction op, provenance tag );

  /*! \brief Last cycle index + 1, or 0 for an empty stream. */
  std::size_t cycle_count() const noexcept { return entries_.empty() ? 0u : entries_.back().cycle + 1u; }

  /*! \brief Drops every entry from position `size` on. */
  void truncate( std::size_t size ) { entries_.resize( std::min( size, entries_.size() ) ); }

private:
  int rows_{ 0 };
  int cols_{ 0 };
  std::vector<std::string> inputs_;
  std::vector<output_location> outputs_;
  std::vector<stream_entry> entries_;
};

struct run_result
{
  crossbar final_state;
  std::size_t cycles{ 0 };
};

/*! \brief Executes a stream for one input assignment. */
run_result run_stream( crossbar initial, instruction_stream const& stream, assignment const& pi_values );

/*! \brief Executes a stream with up to 64 assignments packed into lanes. */
run_result run_stream_lanes( crossbar initial, instruction_stream const& stream, input_binding const& pi_lanes );

/* text format */

std::string to_text( instruction const& op );
std::string to_text( stream_entry const& entry );
std::string to_text( instruction_stream const& stream );

/*! \brief Parses the text format; throws `parse_error` with the line number. */
instruction_stream parse_stream( std::string_view text );

} // namespace magicmap
