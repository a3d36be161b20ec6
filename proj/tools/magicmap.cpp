/*!
  \file magicmap.cpp
  \brief Command-line front end: map, verify, report and sweep
*/

#include <magicmap/driver.hpp>
#include <magicmap/errors.hpp>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace magicmap;

namespace
{

int code( exit_code c )
{
  return static_cast<int>( c );
}

void write_output( std::string const& path, std::string const& text )
{
  if ( path == "-" )
  {
    std::cout << text;
    return;
  }
  std::ofstream out( path, std::ios::binary );
  if ( !out )
  {
    throw std::runtime_error( "cannot write '" + path + "'" );
  }
  out << text;
}

std::string read_text( std::string const& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
  {
    throw std::runtime_error( "cannot read '" + path + "'" );
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::pair<int, int> parse_dims( std::string const& text )
{
  auto const x = text.find( 'x' );
  std::size_t used_r = 0, used_c = 0;
  if ( x == std::string::npos )
  {
    throw std::invalid_argument( "dimensions must look like 64x64, got '" + text + "'" );
  }
  auto const r = std::stoi( text.substr( 0, x ), &used_r );
  auto const c = std::stoi( text.substr( x + 1 ), &used_c );
  if ( used_r != x || used_c != text.size() - x - 1 )
  {
    throw std::invalid_argument( "dimensions must look like 64x64, got '" + text + "'" );
  }
  return { r, c };
}

nlohmann::ordered_json sweep_json( std::vector<run_outcome> const& outcomes )
{
  auto all = nlohmann::ordered_json::array();
  for ( auto const& o : outcomes )
  {
    if ( o.report )
    {
      all.push_back( nlohmann::ordered_json::parse( to_json( *o.report ) ) );
      continue;
    }
    nlohmann::ordered_json row;
    row["benchmark"] = o.config.benchmark;
    row["rows"] = o.config.rows;
    row["cols"] = o.config.cols;
    row["k"] = o.config.k;
    row["spacing"] = o.config.spacing;
    row["align"] = to_string( o.config.align );
    row["status"] = to_string( o.status );
    row["message"] = o.message;
    all.push_back( row );
  }
  return all;
}

} // namespace

int main( int argc, char** argv )
{
  configure_logging();

  CLI::App app{ "Maps BLIF netlists onto a MAGIC crossbar and checks the result" };
  std::string input, emit_path, report_path, check_path, verify_text = "auto", align_text = "greedy";
  std::vector<int> rows{ 64 }, cols{ 64 };
  std::vector<std::string> dims;
  std::vector<unsigned> ks{ 4u }, spacings{ 0u };
  unsigned jobs = 0u;

  app.add_option( "-i,--input", input, "BLIF netlist" )->required()->check( CLI::ExistingFile );
  app.add_option( "--rows", rows, "crossbar rows (comma list sweeps)" )->delimiter( ',' );
  app.add_option( "--cols", cols, "crossbar columns (comma list sweeps)" )->delimiter( ',' );
  app.add_option( "--dims", dims, "explicit RxC pairs, e.g. 1024x64,2048x32 (replaces --rows/--cols)" )->delimiter( ',' );
  app.add_option( "-k", ks, "LUT input bound in [2, 8] (comma list sweeps)" )->delimiter( ',' );
  app.add_option( "--spacing", spacings, "empty rows between stacked LUTs (comma list sweeps)" )->delimiter( ',' );
  app.add_option( "--align", align_text, "greedy or exact" );
  app.add_option( "--verify", verify_text, "auto, none, exhaustive or random:<n>:<seed>" );
  app.add_option( "--emit", emit_path, "write the instruction stream here ('-' for stdout; single runs only)" );
  app.add_option( "--report", report_path, "write the JSON report here ('-' for stdout)" );
  app.add_option( "--check-stream", check_path, "verify an existing stream file against --input instead of mapping" );
  app.add_option( "-j,--jobs", jobs, "worker threads (0 = hardware concurrency)" );

  try
  {
    app.parse( argc, argv );
  }
  catch ( CLI::ParseError const& e )
  {
    auto const status = app.exit( e );
    return status == 0 ? 0 : code( exit_code::usage );
  }

  netlist ntk;
  try
  {
    ntk = read_blif_file( input );
  }
  catch ( std::exception const& e )
  {
    fmt::print( stderr, "error: {}: {}\n", input, e.what() );
    return code( exit_code::parse );
  }
  auto const benchmark = std::filesystem::path( input ).stem().string();
  auto const started = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>( std::chrono::steady_clock::now() - started ).count();
  };

  try
  {
    map_config base;
    base.benchmark = benchmark;
    base.align = parse_align_mode( align_text );
    if ( verify_text == "none" )
    {
      base.skip_verify = true;
    }
    else if ( verify_text != "auto" )
    {
      base.verify = parse_verify_mode( verify_text );
    }

    if ( !check_path.empty() )
    {
      instruction_stream stream;
      try
      {
        stream = parse_stream( read_text( check_path ) );
      }
      catch ( parse_error const& e )
      {
        fmt::print( stderr, "error: {}: {}\n", check_path, e.what() );
        return code( exit_code::parse );
      }
      auto v = check_equivalence( ntk, stream, base.verify.value_or( default_verify_mode( ntk ) ), jobs );
      fmt::print( "{} {} ({} vectors){}\n", v.passed ? "PASS" : "FAIL", v.mode.to_string(), v.vectors,
                  v.diagnostic.empty() ? "" : ": " + v.diagnostic );
      return code( v.passed ? exit_code::ok : exit_code::verify_failed );
    }

    sweep_axes axes;
    if ( !dims.empty() )
    {
      for ( auto const& d : dims )
      {
        axes.dims.push_back( parse_dims( d ) );
      }
    }
    else
    {
      for ( auto r : rows )
      {
        for ( auto c : cols )
        {
          axes.dims.emplace_back( r, c );
        }
      }
    }
    axes.ks = ks;
    axes.spacings = spacings;
    auto const configs = expand( base, axes );

    if ( configs.size() == 1u )
    {
      auto out = map_benchmark( ntk, configs.front(), jobs );
      spdlog::info( "wall-clock {:.3f} s", elapsed() );
      if ( !out.mapping )
      {
        fmt::print( stderr, "error: {}\n", out.message );
        return code( out.code() );
      }
      if ( !emit_path.empty() )
      {
        write_output( emit_path, to_text( out.mapping->stream ) );
      }
      auto const json = to_json( *out.report );
      if ( !report_path.empty() )
      {
        write_output( report_path, json );
      }
      if ( emit_path.empty() && report_path.empty() )
      {
        std::cout << json;
      }
      if ( out.status == run_status::verify_failed )
      {
        fmt::print( stderr, "error: verification failed: {}\n", out.report->verification->diagnostic );
      }
      return code( out.code() );
    }

    if ( !emit_path.empty() )
    {
      fmt::print( stderr, "error: --emit needs a single configuration\n" );
      return code( exit_code::usage );
    }
    auto const outcomes = sweep( ntk, configs, jobs );
    spdlog::info( "wall-clock {:.3f} s for {} runs", elapsed(), outcomes.size() );
    std::cout << sweep_table( outcomes );
    if ( !report_path.empty() )
    {
      write_output( report_path, sweep_json( outcomes ).dump( 2 ) + "\n" );
    }
    return code( sweep_exit_code( outcomes ) );
  }
  catch ( std::exception const& e )
  {
    fmt::print( stderr, "error: {}\n", e.what() );
    return code( exit_code::usage );
  }
}
