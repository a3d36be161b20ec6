/*!
  \file verify.cpp
  \brief Bit-parallel equivalence checking, cycle tallies and JSON reports
*/

#include <magicmap/verify.hpp>

#include <magicmap/errors.hpp>

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <exception>
#include <mutex>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

namespace magicmap
{

std::string verify_mode::to_string() const
{
  return type == kind::exhaustive ? std::string( "exhaustive" ) : fmt::format( "random:{}:{}", vectors, seed );
}

verify_mode parse_verify_mode( std::string_view text )
{
  if ( text == "exhaustive" )
  {
    return verify_mode::exhaustive();
  }
  auto number = [&]( std::string_view s ) {
    std::uint64_t v = 0u;
    auto [ptr, ec] = std::from_chars( s.data(), s.data() + s.size(), v );
    if ( s.empty() || ec != std::errc{} || ptr != s.data() + s.size() )
    {
      throw std::invalid_argument( "invalid verify mode '" + std::string( text ) + "'" );
    }
    return v;
  };
  if ( text.substr( 0, 7 ) == "random:" )
  {
    auto rest = text.substr( 7 );
    auto colon = rest.find( ':' );
    if ( colon != std::string_view::npos )
    {
      auto const n = number( rest.substr( 0, colon ) );
      if ( n == 0u )
      {
        throw std::invalid_argument( "random verification needs at least one vector" );
      }
      return verify_mode::random( static_cast<std::size_t>( n ), number( rest.substr( colon + 1 ) ) );
    }
  }
  throw std::invalid_argument( "invalid verify mode '" + std::string( text ) + "' (expected exhaustive or random:<n>:<seed>)" );
}

void parallel_for( std::size_t n, std::function<void( std::size_t )> const& body, unsigned threads )
{
  if ( threads == 0u )
  {
    threads = std::max( 1u, std::thread::hardware_concurrency() );
  }
  auto const workers = static_cast<std::size_t>( std::min<std::size_t>( threads, n ) );
  if ( workers <= 1u )
  {
    for ( std::size_t i = 0; i < n; ++i )
    {
      body( i );
    }
    return;
  }

  std::atomic<std::size_t> next{ 0u };
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for ( std::size_t w = 0; w < workers; ++w )
  {
    pool.emplace_back( [&] {
      for ( auto i = next++; i < n; i = next++ )
      {
        try
        {
          body( i );
        }
        catch ( ... )
        {
          std::lock_guard lock( error_mutex );
          if ( !error )
          {
            error = std::current_exception();
          }
        }
      }
    } );
  }
  for ( auto& t : pool )
  {
    t.join();
  }
  if ( error )
  {
    std::rethrow_exception( error );
  }
}

namespace
{

struct batch_outcome
{
  std::optional<unsigned> first_bad_lane;
  std::string error;
};

} // namespace

verdict check_equivalence( netlist const& ntk, instruction_stream const& stream, verify_mode mode, unsigned threads )
{
  verdict result;
  result.mode = mode;

  auto const num_inputs = ntk.inputs.size();
  std::size_t total = 0u;
  if ( mode.type == verify_mode::kind::exhaustive )
  {
    if ( num_inputs > exhaustive_input_limit )
    {
      throw std::invalid_argument( fmt::format( "exhaustive verification supports at most {} inputs, '{}' has {}",
                                                exhaustive_input_limit, ntk.name, num_inputs ) );
    }
    total = std::size_t{ 1 } << num_inputs;
  }
  else
  {
    total = mode.vectors;
  }
  result.vectors = total;

  for ( auto const& po : ntk.outputs )
  {
    if ( std::none_of( stream.outputs().begin(), stream.outputs().end(), [&]( auto const& o ) { return o.name == po; } ) )
    {
      result.diagnostic = "stream has no location for output '" + po + "'";
      return result;
    }
  }

  auto const batches = ( total + 63u ) / 64u;

  /* random vectors are drawn up front so the outcome does not depend on scheduling */
  std::vector<std::uint64_t> random_words;
  if ( mode.type == verify_mode::kind::random )
  {
    std::mt19937_64 rng( mode.seed );
    random_words.resize( batches * num_inputs );
    for ( auto& w : random_words )
    {
      w = rng();
    }
  }

  auto input_word = [&]( std::size_t batch, std::size_t input ) -> std::uint64_t {
    if ( mode.type == verify_mode::kind::random )
    {
      return random_words[batch * num_inputs + input];
    }
    std::uint64_t w = 0u;
    for ( unsigned lane = 0; lane < 64u; ++lane )
    {
      auto const index = batch * 64u + lane;
      w |= static_cast<std::uint64_t>( ( index >> input ) & 1u ) << lane;
    }
    return w;
  };

  std::vector<batch_outcome> outcomes( batches );
  parallel_for(
      batches,
      [&]( std::size_t b ) {
        auto const lanes = static_cast<unsigned>( std::min<std::size_t>( 64u, total - b * 64u ) );
        std::vector<std::uint64_t> words( num_inputs );
        input_binding binding;
        for ( std::size_t i = 0; i < num_inputs; ++i )
        {
          words[i] = input_word( b, i );
          binding.emplace( ntk.inputs[i], words[i] );
        }
        auto expected = evaluate_lanes( ntk, words );
        try
        {
          auto run = run_stream_lanes( crossbar( stream.rows(), stream.cols(), lanes ), stream, binding );
          auto const mask = run.final_state.lane_mask();
          std::uint64_t bad = 0u;
          for ( std::size_t o = 0; o < ntk.outputs.size(); ++o )
          {
            auto const& loc = *std::find_if( stream.outputs().begin(), stream.outputs().end(),
                                             [&]( auto const& x ) { return x.name == ntk.outputs[o]; } );
            auto const& cell = run.final_state.at( loc.at );
            if ( !cell.defined )
            {
              throw execution_error( "output '" + loc.name + "' cell holds no value" );
            }
            bad |= ( cell.bits ^ expected[o] ) & mask;
          }
          if ( bad != 0u )
          {
            outcomes[b].first_bad_lane = static_cast<unsigned>( std::countr_zero( bad ) );
          }
        }
        catch ( std::exception const& e )
        {
          outcomes[b].error = e.what();
        }
      },
      threads );

  for ( std::size_t b = 0; b < batches; ++b )
  {
    if ( !outcomes[b].error.empty() )
    {
      result.diagnostic = "simulation failed: " + outcomes[b].error;
      return result;
    }
    if ( outcomes[b].first_bad_lane )
    {
      assignment cex;
      for ( std::size_t i = 0; i < num_inputs; ++i )
      {
        cex[ntk.inputs[i]] = ( input_word( b, i ) >> *outcomes[b].first_bad_lane ) & 1u;
      }
      result.diagnostic = fmt::format( "outputs differ on vector {}", b * 64u + *outcomes[b].first_bad_lane );
      result.counterexample = std::move( cex );
      return result;
    }
  }
  result.passed = true;
  return result;
}

cycle_breakdown tally_cycles( instruction_stream const& stream )
{
  cycle_breakdown b;
  for ( auto const& e : stream.entries() )
  {
    switch ( e.tag )
    {
    case provenance::write:
      ++b.write;
      break;
    case provenance::copy:
      ++b.copy;
      break;
    case provenance::compute:
      ++b.compute;
      break;
    case provenance::reset:
      ++b.reset;
      break;
    }
  }
  return b;
}

std::uint64_t adp( std::uint64_t rows, std::uint64_t cols, std::uint64_t cycles )
{
  return rows * cols * cycles;
}

adp_ratio adp_improvement( std::uint64_t adp_other, std::uint64_t adp_ours )
{
  if ( adp_ours == 0u )
  {
    throw std::invalid_argument( "ADP of the reference mapping must be positive" );
  }
  auto const g = std::gcd( adp_other, adp_ours );
  return { adp_other / g, adp_ours / g, static_cast<double>( adp_other ) / static_cast<double>( adp_ours ) };
}

mapping_report compute_report( instruction_stream const& stream, std::optional<verdict> const& result, report_context context )
{
  mapping_report r;
  r.context = std::move( context );
  r.rows = stream.rows();
  r.cols = stream.cols();
  r.total_cycles = stream.cycle_count();
  r.breakdown = tally_cycles( stream );
  r.overhead = r.total_cycles == 0u ? 0.0
                                    : static_cast<double>( r.breakdown.write + r.breakdown.copy ) / static_cast<double>( r.total_cycles );
  r.devices = static_cast<std::uint64_t>( r.rows ) * static_cast<std::uint64_t>( r.cols );
  r.adp = adp( static_cast<std::uint64_t>( r.rows ), static_cast<std::uint64_t>( r.cols ), r.total_cycles );
  r.verification = result;
  return r;
}

std::string to_json( mapping_report const& report )
{
  nlohmann::ordered_json j;
  j["benchmark"] = report.context.benchmark;
  j["rows"] = report.rows;
  j["cols"] = report.cols;
  j["k"] = report.context.k;
  j["spacing"] = report.context.spacing;
  j["align"] = report.context.align;
  j["total_cycles"] = report.total_cycles;
  j["breakdown"] = { { "write", report.breakdown.write },
                     { "copy", report.breakdown.copy },
                     { "compute", report.breakdown.compute },
                     { "reset", report.breakdown.reset } };
  j["overhead"] = report.overhead;
  j["devices"] = report.devices;
  j["adp"] = report.adp;
  j["luts"] = report.context.luts;
  j["groups"] = report.context.groups;
  j["resets"] = report.context.resets;
  j["footprint_check"] = report.context.footprint_check;

  nlohmann::ordered_json v;
  if ( report.verification )
  {
    auto const& r = *report.verification;
    v["status"] = r.passed ? "PASS" : "FAIL";
    v["mode"] = r.mode.type == verify_mode::kind::exhaustive ? "exhaustive" : "random";
    if ( r.mode.type == verify_mode::kind::random )
    {
      v["seed"] = r.mode.seed;
    }
    else
    {
      v["seed"] = nullptr;
    }
    v["vectors"] = r.vectors;
    if ( r.counterexample )
    {
      nlohmann::ordered_json cex;
      for ( auto const& [name, value] : *r.counterexample )
      {
        cex[name] = value ? 1 : 0;
      }
      v["counterexample"] = cex;
    }
    else
    {
      v["counterexample"] = nullptr;
    }
    if ( !r.diagnostic.empty() )
    {
      v["diagnostic"] = r.diagnostic;
    }
  }
  else
  {
    v["status"] = "SKIPPED";
  }
  j["verification"] = v;
  return j.dump( 2 ) + "\n";
}

} // namespace magicmap
