/*!
  \file netlist.hpp
  \brief BLIF netlists, k-bounded LUT graphs and their reference evaluation
*/

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace magicmap
{

enum class literal_mark : std::uint8_t
{
  zero,
  one,
  dont_care
};

/*! \brief Single-output on-set cover in sum-of-products form.
 *
 * Each cube holds one mark per variable. A cover with no variables is a
 * constant: one (empty) cube denotes 1, no cubes denote 0.
 */
struct sop_cover
{
  std::vector<std::string> variables;
  std::vector<std::vector<literal_mark>> cubes;

  /*! \brief Constant value, if the cover is constant.
   *
   * Detects empty covers, variable-free covers and covers containing a cube
   * made only of don't-cares.
   */
  std::optional<bool> constant_value() const;

  /*! \brief Evaluates the cover; `values` follows the order of `variables`. */
  bool evaluate( std::span<const bool> values ) const;

  /*! \brief Evaluates 64 assignments at once, one per bit lane. */
  std::uint64_t evaluate_lanes( std::span<const std::uint64_t> values ) const;

  bool operator==( sop_cover const& ) const = default;
};

struct netlist_node
{
  std::string name;
  sop_cover function;

  bool operator==( netlist_node const& ) const = default;
};

/*! \brief Combinational netlist as read from BLIF.
 *
 * Nodes keep their declaration order; use `topological_order` for evaluation.
 */
struct netlist
{
  std::string name;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<netlist_node> nodes;

  std::optional<std::size_t> find_node( std::string_view signal ) const;
  bool is_input( std::string_view signal ) const;

  bool operator==( netlist const& ) const = default;
};

netlist parse_blif( std::istream& in );
netlist parse_blif( std::string_view text );
netlist read_blif_file( std::string const& path );

/*! \brief Serializes back to the supported BLIF subset. */
std::string write_blif( netlist const& ntk );

/*! \brief Checks declaration and acyclicity invariants.
 *
 * Throws `parse_error` (line 0) on undeclared signals, duplicate definitions
 * or combinational cycles.
 */
void validate( netlist const& ntk );

/*! \brief Node indices in dependency order (fan-ins first). */
std::vector<std::size_t> topological_order( netlist const& ntk );

/*! \brief Reference to a signal driving a LUT input or a primary output. */
struct signal_ref
{
  enum class kind : std::uint8_t
  {
    input,
    node,
    constant
  };

  kind type{ kind::constant };
  std::size_t index{ 0 };
  bool value{ false };

  bool operator==( signal_ref const& ) const = default;
};

struct lut_node
{
  std::string name;
  /*! \brief Function over the fan-in names (PIs or other LUTs). */
  sop_cover function;
  std::vector<signal_ref> fanins;
  bool is_output{ false };
  int level{ 1 };

  std::size_t width() const { return function.variables.size(); }
  std::size_t num_cubes() const { return function.cubes.size(); }
};

struct primary_output
{
  std::string name;
  signal_ref driver;
};

/*! \brief DAG of k-bounded LUTs.
 *
 * Nodes are stored in ascending (level, declaration) order, so a node index
 * doubles as its identifier and every fan-in precedes its fan-outs.
 */
struct lut_graph
{
  std::string name;
  unsigned k{ 0 };
  std::vector<std::string> inputs;
  std::vector<lut_node> nodes;
  std::vector<primary_output> outputs;

  std::optional<std::size_t> find( std::string_view lut_name ) const;
  std::vector<std::vector<std::size_t>> fanouts() const;
  int depth() const;
};

/*! \brief Builds a LUT graph whose nodes have at most `k` fan-ins.
 *
 * Constant nodes are propagated into their fan-outs, logic outside every
 * output cone is dropped, and nodes wider than `k` are split into an OR tree
 * of AND trees with fresh internal nodes. Nodes within the bound are kept.
 */
lut_graph build_lut_graph( netlist const& ntk, unsigned k );

using assignment = std::map<std::string, bool, std::less<>>;

assignment evaluate( netlist const& ntk, assignment const& inputs );
assignment evaluate( lut_graph const& graph, assignment const& inputs );

/*! \brief Bit-parallel evaluation; `input_lanes` follows `ntk.inputs`, result follows `ntk.outputs`. */
std::vector<std::uint64_t> evaluate_lanes( netlist const& ntk, std::span<const std::uint64_t> input_lanes );
std::vector<std::uint64_t> evaluate_lanes( lut_graph const& graph, std::span<const std::uint64_t> input_lanes );

} // namespace magicmap
