#include <doctest.h>

#include <magicmap/errors.hpp>
#include <magicmap/placement.hpp>
#include <magicmap/verify.hpp>

#include <json.hpp>

using namespace magicmap;

namespace
{

netlist buffer()
{
  return parse_blif( ".model buf\n.inputs a\n.outputs y\n.names a y\n1 1\n.end\n" );
}

instruction_stream buffer_stream()
{
  instruction_stream s( 2, 2 );
  s.set_inputs( { "a" } );
  s.append( write_op{ { 1, 1 }, write_value::literal( "a", true ) } );
  s.append( not_op{ { 1, 1 }, { 1, 2 } }, provenance::compute );
  s.add_output( "y", { 1, 2 } );
  return s;
}

/* index of the first assignment (PI j = bit j) on which the scalar simulator disagrees */
std::optional<std::size_t> first_mismatch( netlist const& ntk, instruction_stream const& stream )
{
  for ( std::size_t i = 0; i < ( std::size_t{ 1 } << ntk.inputs.size() ); ++i )
  {
    assignment in;
    for ( std::size_t j = 0; j < ntk.inputs.size(); ++j )
    {
      in[ntk.inputs[j]] = ( i >> j ) & 1u;
    }
    auto const want = evaluate( ntk, in );
    auto const run = run_stream( crossbar( stream.rows(), stream.cols() ), stream, in );
    for ( auto const& o : stream.outputs() )
    {
      if ( run.final_state.value( o.at ) != want.at( o.name ) )
      {
        return i;
      }
    }
  }
  return std::nullopt;
}

std::uint64_t euclid( std::uint64_t a, std::uint64_t b )
{
  while ( b != 0u )
  {
    a = std::exchange( b, a % b );
  }
  return a;
}

} // namespace

TEST_CASE( "hand-built buffer stream" )
{
  auto v = check_equivalence( buffer(), buffer_stream(), verify_mode::exhaustive() );
  CHECK( v.passed );
  CHECK( v.vectors == 2u );
  CHECK( !v.counterexample );

  auto bad = buffer_stream();
  bad.truncate( 1u );
  bad.append( not_op{ { 1, 1 }, { 2, 1 } }, provenance::compute );
  auto w = check_equivalence( buffer(), bad, verify_mode::exhaustive() );
  CHECK( !w.passed );
}

TEST_CASE( "perturbed VNOR rows are caught with the first counterexample" )
{
  auto ntk = read_blif_file( MAGICMAP_BENCHMARK_DIR "/cm151a.blif" );
  auto mapped = map_lut_graph( build_lut_graph( ntk, 4u ), { 8, 8, 0u, align_mode::greedy } );
  REQUIRE( check_equivalence( ntk, mapped.stream, verify_mode::exhaustive() ).passed );

  std::size_t caught = 0u;
  auto const& entries = mapped.stream.entries();
  for ( std::size_t i = 0; i < entries.size(); ++i )
  {
    auto const* v = std::get_if<vnor_op>( &entries[i].op );
    if ( v == nullptr || v->src_rows.size() < 2u )
    {
      continue;
    }
    instruction_stream mutant( mapped.stream.rows(), mapped.stream.cols() );
    mutant.set_inputs( mapped.stream.inputs() );
    for ( auto const& o : mapped.stream.outputs() )
    {
      mutant.add_output( o.name, o.at );
    }
    for ( std::size_t j = 0; j < entries.size(); ++j )
    {
      auto op = entries[j].op;
      if ( j == i )
      {
        std::get<vnor_op>( op ).src_rows.erase( std::get<vnor_op>( op ).src_rows.begin() );
      }
      mutant.append( op, entries[j].tag );
    }
    auto verdict = check_equivalence( ntk, mutant, verify_mode::exhaustive(), 3u );
    auto const oracle = first_mismatch( ntk, mutant );
    CHECK( verdict.passed == !oracle.has_value() );
    if ( oracle )
    {
      ++caught;
      REQUIRE( verdict.counterexample );
      for ( std::size_t j = 0; j < ntk.inputs.size(); ++j )
      {
        CHECK( verdict.counterexample->at( ntk.inputs[j] ) == bool( ( *oracle >> j ) & 1u ) );
      }
    }
  }
  CHECK( caught > 0u );
}

TEST_CASE( "simulator errors fail the verdict" )
{
  auto s = buffer_stream();
  s.append( not_op{ { 1, 1 }, { 1, 2 } }, provenance::copy );
  auto v = check_equivalence( buffer(), s, verify_mode::exhaustive() );
  CHECK( !v.passed );
  CHECK( v.diagnostic.find( "cycle 2" ) != std::string::npos );

  instruction_stream missing( 2, 2 );
  missing.append( write_op{ { 1, 1 }, write_value::literal( "a", false ) } );
  auto m = check_equivalence( buffer(), missing, verify_mode::exhaustive() );
  CHECK( !m.passed );
  CHECK( m.diagnostic.find( "'y'" ) != std::string::npos );
}

TEST_CASE( "random mode and the exhaustive input limit" )
{
  std::string wide = ".model wide\n.inputs";
  for ( int i = 0; i < 21; ++i )
  {
    wide += " i" + std::to_string( i );
  }
  wide += "\n.outputs i0\n.end\n";
  CHECK_THROWS_AS( check_equivalence( parse_blif( wide ), buffer_stream(), verify_mode::exhaustive() ), std::invalid_argument );

  auto small = read_blif_file( MAGICMAP_BENCHMARK_DIR "/c17.blif" );
  auto mapped = map_lut_graph( build_lut_graph( small, 2u ), { 8, 8, 0u, align_mode::greedy } );
  auto a = check_equivalence( small, mapped.stream, verify_mode::random( 1000u, 7u ), 1u );
  auto b = check_equivalence( small, mapped.stream, verify_mode::random( 1000u, 7u ), 4u );
  CHECK( a.passed );
  CHECK( b.passed );
  CHECK( a.vectors == 1000u );
}

TEST_CASE( "verify mode strings" )
{
  CHECK( parse_verify_mode( "exhaustive" ).type == verify_mode::kind::exhaustive );
  auto r = parse_verify_mode( "random:4096:1" );
  CHECK( r.type == verify_mode::kind::random );
  CHECK( r.vectors == 4096u );
  CHECK( r.seed == 1u );
  CHECK( r.to_string() == "random:4096:1" );
  for ( auto bad : { "", "random", "random:10", "random:0:1", "random:x:1", "random:10:-1", "exhaustive:1" } )
  {
    CHECK_THROWS_AS( parse_verify_mode( bad ), std::invalid_argument );
  }
}

TEST_CASE( "overhead fraction" )
{
  instruction_stream s( 4, 4 );
  for ( int i = 0; i < 10; ++i )
  {
    s.append( write_op{ { 1, 1 }, write_value::constant( true ) } );
  }
  for ( int i = 0; i < 5; ++i )
  {
    s.append( not_op{ { 1, 1 }, { 1, 2 } }, provenance::copy );
  }
  for ( int i = 0; i < 5; ++i )
  {
    s.append( not_op{ { 1, 1 }, { 1, 2 } }, provenance::compute );
  }
  auto r = compute_report( s, std::nullopt, {} );
  CHECK( r.total_cycles == 20u );
  CHECK( r.breakdown.write == 10u );
  CHECK( r.breakdown.copy == 5u );
  CHECK( r.breakdown.compute == 5u );
  CHECK( r.overhead == doctest::Approx( 0.75 ) );
}

TEST_CASE( "area-delay product" )
{
  CHECK( adp( 64u, 64u, 797u ) == 3264512u );

  auto const ours = adp( 20u, 12u, 824u );
  auto const other = adp( 146u, 9u, 349u );
  CHECK( ours == 197760u );
  CHECK( other == 458586u );
  auto ratio = adp_improvement( other, ours );
  CHECK( euclid( ratio.numerator, ratio.denominator ) == 1u );
  CHECK( ratio.numerator * ours == ratio.denominator * other );
  CHECK( ratio.value == doctest::Approx( 458586.0 / 197760.0 ) );
  CHECK_THROWS_AS( adp_improvement( 1u, 0u ), std::invalid_argument );
}

TEST_CASE( "report is self-consistent and keeps its key order" )
{
  auto ntk = read_blif_file( MAGICMAP_BENCHMARK_DIR "/cm151a.blif" );
  auto mapped = map_lut_graph( build_lut_graph( ntk, 4u ), { 8, 8, 0u, align_mode::greedy } );
  auto v = check_equivalence( ntk, mapped.stream, verify_mode::exhaustive() );
  auto r = compute_report( mapped.stream, v, { "cm151a", 4u, 0u, "greedy", 8u, mapped.groups.size(), mapped.resets, true } );
  CHECK( r.breakdown.total() == r.total_cycles );
  CHECK( r.adp == 8u * 8u * r.total_cycles );
  CHECK( r.devices == 64u );

  auto const text = to_json( r );
  CHECK( text.back() == '\n' );
  auto j = nlohmann::ordered_json::parse( text );
  std::vector<std::string> keys;
  for ( auto it = j.begin(); it != j.end(); ++it )
  {
    keys.push_back( it.key() );
  }
  CHECK( keys == std::vector<std::string>{ "benchmark", "rows", "cols", "k", "spacing", "align", "total_cycles", "breakdown",
                                           "overhead", "devices", "adp", "luts", "groups", "resets", "footprint_check",
                                           "verification" } );
  CHECK( j["verification"]["status"] == "PASS" );
  CHECK( j["verification"]["vectors"] == 4096 );
  CHECK( j["verification"]["seed"].is_null() );
  CHECK( j["adp"] == r.adp );

  auto skipped = nlohmann::json::parse( to_json( compute_report( mapped.stream, std::nullopt, {} ) ) );
  CHECK( skipped["verification"]["status"] == "SKIPPED" );
}

TEST_CASE( "parallel_for visits every index once" )
{
  std::vector<int> hits( 1000, 0 );
  parallel_for( hits.size(), [&]( std::size_t i ) { ++hits[i]; }, 8u );
  CHECK( std::all_of( hits.begin(), hits.end(), []( int h ) { return h == 1; } ) );
  CHECK_THROWS_AS( parallel_for( 10u, []( std::size_t i ) { if ( i == 3u ) throw std::runtime_error( "x" ); }, 4u ),
                   std::runtime_error );
}
