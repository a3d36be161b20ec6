/*!
  \file driver.cpp
  \brief Single runs, sweeps, status tables and logging setup
*/

#include <magicmap/driver.hpp>

#include <magicmap/errors.hpp>

#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <chrono>
#include <cstdlib>
#include <stdexcept>

namespace magicmap
{

void map_config::validate() const
{
  if ( k < 2u || k > 8u )
  {
    throw std::invalid_argument( fmt::format( "k must be in [2, 8], got {}", k ) );
  }
  auto const least = static_cast<int>( k ) + 2;
  if ( rows < least || cols < least )
  {
    throw std::invalid_argument(
        fmt::format( "a {}x{} crossbar is below the {}x{} minimum for k = {}", rows, cols, least, least, k ) );
  }
}

verify_mode default_verify_mode( netlist const& ntk )
{
  return ntk.inputs.size() <= 12u ? verify_mode::exhaustive() : verify_mode::random( 4096u, 1u );
}

char const* to_string( align_mode mode )
{
  return mode == align_mode::exact ? "exact" : "greedy";
}

align_mode parse_align_mode( std::string_view text )
{
  if ( text == "greedy" )
  {
    return align_mode::greedy;
  }
  if ( text == "exact" )
  {
    return align_mode::exact;
  }
  throw std::invalid_argument( "alignment must be greedy or exact, got '" + std::string( text ) + "'" );
}

char const* to_string( run_status status )
{
  switch ( status )
  {
  case run_status::passed:
    return "PASS";
  case run_status::unverified:
    return "SKIPPED";
  case run_status::unmappable:
    return "UNMAPPABLE";
  case run_status::verify_failed:
    return "FAIL";
  }
  return "?";
}

exit_code run_outcome::code() const
{
  switch ( status )
  {
  case run_status::passed:
  case run_status::unverified:
    return exit_code::ok;
  case run_status::unmappable:
    return exit_code::unmappable;
  case run_status::verify_failed:
    return exit_code::verify_failed;
  }
  return exit_code::usage;
}

run_outcome map_benchmark( netlist const& ntk, map_config const& config, unsigned verify_threads )
{
  config.validate();
  auto const start = std::chrono::steady_clock::now();
  run_outcome out;
  out.config = config;
  if ( out.config.benchmark.empty() )
  {
    out.config.benchmark = ntk.name;
  }

  auto const graph = build_lut_graph( ntk, config.k );
  try
  {
    out.mapping = map_lut_graph( graph, { config.rows, config.cols, config.spacing, config.align } );
  }
  catch ( unmappable_error const& e )
  {
    out.message = e.what();
    spdlog::info( "{} on {}x{} (k={}, spacing={}): unmappable: {}", out.config.benchmark, config.rows, config.cols, config.k,
                  config.spacing, out.message );
    return out;
  }

  std::optional<verdict> result;
  if ( !config.skip_verify )
  {
    result = check_equivalence( ntk, out.mapping->stream, config.verify.value_or( default_verify_mode( ntk ) ), verify_threads );
  }
  out.status = !result ? run_status::unverified : result->passed ? run_status::passed : run_status::verify_failed;

  report_context context{ out.config.benchmark,   config.k,           config.spacing,
                          to_string( config.align ), graph.nodes.size(), out.mapping->groups.size(),
                          out.mapping->resets,    out.mapping->footprint_check() };
  out.report = compute_report( out.mapping->stream, result, std::move( context ) );

  auto const ms = std::chrono::duration<double, std::milli>( std::chrono::steady_clock::now() - start ).count();
  spdlog::info( "{} on {}x{} (k={}, spacing={}): {} cycles, {} in {:.1f} ms", out.config.benchmark, config.rows, config.cols,
                config.k, config.spacing, out.report->total_cycles, to_string( out.status ), ms );
  return out;
}

std::vector<map_config> expand( map_config const& base, sweep_axes const& axes )
{
  auto dims = axes.dims.empty() ? std::vector<std::pair<int, int>>{ { base.rows, base.cols } } : axes.dims;
  auto ks = axes.ks.empty() ? std::vector<unsigned>{ base.k } : axes.ks;
  auto spacings = axes.spacings.empty() ? std::vector<unsigned>{ base.spacing } : axes.spacings;
  std::vector<map_config> configs;
  for ( auto [r, c] : dims )
  {
    for ( auto k : ks )
    {
      for ( auto s : spacings )
      {
        auto cfg = base;
        cfg.rows = r;
        cfg.cols = c;
        cfg.k = k;
        cfg.spacing = s;
        configs.push_back( std::move( cfg ) );
      }
    }
  }
  return configs;
}

std::vector<run_outcome> sweep( netlist const& ntk, std::vector<map_config> const& configs, unsigned jobs )
{
  for ( auto const& cfg : configs )
  {
    cfg.validate();
  }
  std::vector<run_outcome> outcomes( configs.size() );
  parallel_for(
      configs.size(), [&]( std::size_t i ) { outcomes[i] = map_benchmark( ntk, configs[i], 1u ); }, jobs );
  return outcomes;
}

std::string sweep_table( std::vector<run_outcome> const& outcomes )
{
  auto text = fmt::format( "{:<12} {:>5} {:>5} {:>2} {:>3} {:>7} {:>6} {:>6} {:>7} {:>5} {:>6} {:>10}  {}\n", "benchmark", "rows",
                           "cols", "k", "sp", "cycles", "write", "copy", "compute", "reset", "resets", "adp", "status" );
  for ( auto const& o : outcomes )
  {
    auto const& c = o.config;
    if ( !o.report )
    {
      text += fmt::format( "{:<12} {:>5} {:>5} {:>2} {:>3} {:>7} {:>6} {:>6} {:>7} {:>5} {:>6} {:>10}  {}\n", c.benchmark, c.rows,
                           c.cols, c.k, c.spacing, "-", "-", "-", "-", "-", "-", "-", to_string( o.status ) );
      continue;
    }
    auto const& r = *o.report;
    text += fmt::format( "{:<12} {:>5} {:>5} {:>2} {:>3} {:>7} {:>6} {:>6} {:>7} {:>5} {:>6} {:>10}  {}\n", c.benchmark, c.rows, c.cols,
                         c.k, c.spacing, r.total_cycles, r.breakdown.write, r.breakdown.copy, r.breakdown.compute,
                         r.breakdown.reset, r.context.resets, r.adp, to_string( o.status ) );
  }
  return text;
}

exit_code sweep_exit_code( std::vector<run_outcome> const& outcomes )
{
  for ( auto const& o : outcomes )
  {
    if ( o.status == run_status::verify_failed )
    {
      return exit_code::verify_failed;
    }
  }
  return exit_code::ok;
}

void configure_logging()
{
  auto logger = spdlog::get( "magicmap" );
  if ( !logger )
  {
    logger = spdlog::stderr_color_mt( "magicmap" );
    logger->set_pattern( "[%l] %v" );
  }
  spdlog::set_default_logger( logger );
  auto level = spdlog::level::warn;
  if ( auto const* env = std::getenv( "MAGICMAP_LOG" ); env != nullptr && *env != '\0' )
  {
    level = spdlog::level::from_str( env );
  }
  spdlog::set_level( level );
}

} // namespace magicmap
