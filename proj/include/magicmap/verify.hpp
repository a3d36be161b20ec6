/*!
  \file verify.hpp
  \brief Equivalence checking of instruction streams and mapping reports
*/

#pragma once

#include <magicmap/fabric.hpp>
#include <magicmap/netlist.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace magicmap
{

struct verify_mode
{
  enum class kind : std::uint8_t
  {
    exhaustive,
    random
  };

  kind type{ kind::exhaustive };
  std::size_t vectors{ 0 };
  std::uint64_t seed{ 0 };

  static verify_mode exhaustive() { return {}; }
  static verify_mode random( std::size_t vectors, std::uint64_t seed ) { return { kind::random, vectors, seed }; }

  /*! \brief `exhaustive` or `random:<n>:<seed>`. */
  std::string to_string() const;
};

/*! \brief Parses `exhaustive` or `random:<n>:<seed>`; throws `std::invalid_argument`. */
verify_mode parse_verify_mode( std::string_view text );

inline constexpr std::size_t exhaustive_input_limit = 20u;

struct verdict
{
  bool passed{ false };
  verify_mode mode;
  std::size_t vectors{ 0 };
  /*! \brief First failing assignment in enumeration order. */
  std::optional<assignment> counterexample;
  std::string diagnostic;
};

/*! \brief Simulates the stream on every (or `n` random) input assignments.
 *
 * Outputs are read from the stream's PO cells and compared with the
 * reference evaluation of `ntk`. Simulator errors make the verdict fail.
 * Exhaustive mode throws `std::invalid_argument` above 20 inputs.
 * `threads == 0` picks the hardware concurrency.
 */
verdict check_equivalence( netlist const& ntk, instruction_stream const& stream, verify_mode mode, unsigned threads = 0u );

/*! \brief Runs `body(i)` for i in [0, n) on up to `threads` workers. */
void parallel_for( std::size_t n, std::function<void( std::size_t )> const& body, unsigned threads = 0u );

struct cycle_breakdown
{
  std::size_t write{ 0 };
  std::size_t copy{ 0 };
  std::size_t compute{ 0 };
  std::size_t reset{ 0 };

  std::size_t total() const { return write + copy + compute + reset; }
};

cycle_breakdown tally_cycles( instruction_stream const& stream );

/*! \brief Area-delay product R x C x cycles. */
std::uint64_t adp( std::uint64_t rows, std::uint64_t cols, std::uint64_t cycles );

struct adp_ratio
{
  std::uint64_t numerator{ 0 };
  std::uint64_t denominator{ 1 };
  double value{ 0.0 };
};

/*! \brief ADP_other / ADP_ours as a reduced fraction. */
adp_ratio adp_improvement( std::uint64_t adp_other, std::uint64_t adp_ours );

/*! \brief Settings and counts that the stream alone does not carry. */
struct report_context
{
  std::string benchmark;
  unsigned k{ 0 };
  unsigned spacing{ 0 };
  std::string align;
  std::size_t luts{ 0 };
  std::size_t groups{ 0 };
  std::size_t resets{ 0 };
  bool footprint_check{ true };
};

struct mapping_report
{
  report_context context;
  int rows{ 0 };
  int cols{ 0 };
  std::size_t total_cycles{ 0 };
  cycle_breakdown breakdown;
  double overhead{ 0.0 };
  std::uint64_t devices{ 0 };
  std::uint64_t adp{ 0 };
  std::optional<verdict> verification;
};

mapping_report compute_report( instruction_stream const& stream, std::optional<verdict> const& result, report_context context );

/*! \brief JSON document with a fixed key order. */
std::string to_json( mapping_report const& report );

} // namespace magicmap
