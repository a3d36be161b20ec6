/*!
  \file driver.hpp
  \brief End-to-end runs, parameter sweeps and exit codes
*/

#pragma once

#include <magicmap/fabric.hpp>
#include <magicmap/netlist.hpp>
#include <magicmap/placement.hpp>
#include <magicmap/verify.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace magicmap
{

enum class exit_code : int
{
  ok = 0,
  usage = 1,
  parse = 2,
  unmappable = 3,
  verify_failed = 4
};

struct map_config
{
  std::string benchmark;
  int rows{ 0 };
  int cols{ 0 };
  unsigned k{ 4 };
  unsigned spacing{ 0 };
  align_mode align{ align_mode::greedy };
  /*! \brief Verification to run; nullopt picks one from the input count, `skip_verify` disables it. */
  std::optional<verify_mode> verify;
  bool skip_verify{ false };

  /*! \brief Throws `std::invalid_argument` unless 2 <= k <= 8 and both dimensions are at least k + 2. */
  void validate() const;
};

/*! \brief Exhaustive up to 12 inputs, otherwise 4096 random vectors with seed 1. */
verify_mode default_verify_mode( netlist const& ntk );

char const* to_string( align_mode mode );
align_mode parse_align_mode( std::string_view text );

enum class run_status : std::uint8_t
{
  passed,
  unverified,
  unmappable,
  verify_failed
};

char const* to_string( run_status status );

struct run_outcome
{
  map_config config;
  run_status status{ run_status::unmappable };
  /*! \brief Failure reason for unmappable runs. */
  std::string message;
  std::optional<mapping_result> mapping;
  std::optional<mapping_report> report;

  exit_code code() const;
};

/*! \brief LUT-maps, places, routes and (optionally) verifies one configuration.
 *
 * Unmappable inputs are reported in the outcome, not thrown. Invalid
 * configurations throw `std::invalid_argument`.
 */
run_outcome map_benchmark( netlist const& ntk, map_config const& config, unsigned verify_threads = 0u );

struct sweep_axes
{
  std::vector<std::pair<int, int>> dims;
  std::vector<unsigned> ks;
  std::vector<unsigned> spacings;
};

/*! \brief Every combination of the axes, dimensions outermost; empty axes take the base value. */
std::vector<map_config> expand( map_config const& base, sweep_axes const& axes );

/*! \brief Runs all configurations on up to `jobs` threads; results follow `configs`. */
std::vector<run_outcome> sweep( netlist const& ntk, std::vector<map_config> const& configs, unsigned jobs = 0u );

/*! \brief Fixed-width text table, one row per outcome. */
std::string sweep_table( std::vector<run_outcome> const& outcomes );

/*! \brief Sweep status: verification failures dominate, unmappable rows are data. */
exit_code sweep_exit_code( std::vector<run_outcome> const& outcomes );

/*! \brief Applies the `MAGICMAP_LOG` level (trace, debug, info, warn, error, off; default warn). */
void configure_logging();

} // namespace magicmap
