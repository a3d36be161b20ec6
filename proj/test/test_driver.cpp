#include <doctest.h>

#include <magicmap/driver.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sys/wait.h>

using namespace magicmap;

namespace
{

netlist load( char const* name )
{
  return read_blif_file( std::string( MAGICMAP_BENCHMARK_DIR ) + "/" + name + ".blif" );
}

map_config config( int rows, int cols, unsigned k, unsigned spacing = 0u )
{
  map_config c;
  c.rows = rows;
  c.cols = cols;
  c.k = k;
  c.spacing = spacing;
  return c;
}

int run_cli( std::string const& args )
{
  auto const status = std::system( ( std::string( MAGICMAP_CLI ) + " " + args + " >/dev/null 2>&1" ).c_str() );
  return WIFEXITED( status ) ? WEXITSTATUS( status ) : -1;
}

} // namespace

TEST_CASE( "configuration bounds" )
{
  CHECK_NOTHROW( config( 6, 6, 4 ).validate() );
  CHECK_THROWS_AS( config( 5, 6, 4 ).validate(), std::invalid_argument );
  CHECK_THROWS_AS( config( 6, 5, 4 ).validate(), std::invalid_argument );
  CHECK_THROWS_AS( config( 64, 64, 1 ).validate(), std::invalid_argument );
  CHECK_THROWS_AS( config( 64, 64, 9 ).validate(), std::invalid_argument );
  CHECK( parse_align_mode( "exact" ) == align_mode::exact );
  CHECK_THROWS_AS( parse_align_mode( "best" ), std::invalid_argument );
}

TEST_CASE( "verification default follows the input count" )
{
  CHECK( default_verify_mode( load( "cm151a" ) ).type == verify_mode::kind::exhaustive );
  auto wide = default_verify_mode( load( "wall" ) );
  CHECK( wide.type == verify_mode::kind::random );
  CHECK( wide.vectors == 4096u );
}

TEST_CASE( "buffer on a 4x4 array" )
{
  auto ntk = parse_blif( ".model buf\n.inputs a\n.outputs y\n.names a y\n1 1\n.end\n" );
  auto out = map_benchmark( ntk, config( 4, 4, 2 ) );
  CHECK( out.status == run_status::passed );
  CHECK( out.code() == exit_code::ok );
  REQUIRE( out.report );
  CHECK( out.report->verification->vectors == 2u );
  CHECK( out.report->breakdown.total() == out.report->total_cycles );
}

TEST_CASE( "cm151a on 8x8" )
{
  auto out = map_benchmark( load( "cm151a" ), config( 8, 8, 4 ) );
  REQUIRE( out.status == run_status::passed );
  CHECK( out.report->total_cycles <= 142u );
  CHECK( out.report->context.footprint_check );
  CHECK( out.config.benchmark == "cm151a" );
}

TEST_CASE( "oversized netlist is unmappable" )
{
  auto out = map_benchmark( load( "wall" ), config( 16, 16, 4 ) );
  CHECK( out.status == run_status::unmappable );
  CHECK( out.code() == exit_code::unmappable );
  CHECK( !out.message.empty() );
  CHECK( !out.report );
}

TEST_CASE( "sweep expansion order" )
{
  sweep_axes axes{ { { 8, 8 }, { 16, 8 } }, { 2u, 4u }, { 0u, 2u } };
  auto configs = expand( config( 32, 32, 3 ), axes );
  REQUIRE( configs.size() == 8u );
  CHECK( configs[0].rows == 8 );
  CHECK( configs[0].k == 2u );
  CHECK( configs[1].spacing == 2u );
  CHECK( configs[2].k == 4u );
  CHECK( configs[4].rows == 16 );

  auto single = expand( config( 32, 32, 3, 4u ), {} );
  REQUIRE( single.size() == 1u );
  CHECK( single[0].rows == 32 );
  CHECK( single[0].k == 3u );
  CHECK( single[0].spacing == 4u );
}

TEST_CASE( "spacing sweep produces one row per setting" )
{
  auto ntk = load( "cm151a" );
  auto configs = expand( config( 16, 16, 4 ), { {}, {}, { 0u, 2u, 4u, 6u } } );
  auto outcomes = sweep( ntk, configs, 4u );
  REQUIRE( outcomes.size() == 4u );
  for ( std::size_t i = 0; i < 4u; ++i )
  {
    CHECK( outcomes[i].config.spacing == 2u * i );
    CHECK( outcomes[i].status == run_status::passed );
  }
  auto table = sweep_table( outcomes );
  CHECK( std::count( table.begin(), table.end(), '\n' ) == 5 );
  CHECK( sweep_exit_code( outcomes ) == exit_code::ok );
}

TEST_CASE( "constant-device sweep keeps failed rows" )
{
  auto ntk = load( "wall" );
  auto configs = expand( config( 8, 8, 4 ), { { { 16, 16 }, { 32, 32 } }, {}, {} } );
  auto outcomes = sweep( ntk, configs, 2u );
  REQUIRE( outcomes.size() == 2u );
  CHECK( outcomes[0].status == run_status::unmappable );
  CHECK( outcomes[1].status == run_status::passed );
  CHECK( sweep_table( outcomes ).find( "UNMAPPABLE" ) != std::string::npos );
  CHECK( sweep_exit_code( outcomes ) == exit_code::ok );
}

TEST_CASE( "repeated runs are byte-identical" )
{
  auto ntk = load( "maj5" );
  auto configs = expand( config( 8, 8, 3 ), { { { 8, 8 }, { 16, 16 } }, { 2u, 3u }, { 0u, 4u } } );
  auto a = sweep( ntk, configs, 1u );
  auto b = sweep( ntk, configs, 8u );
  REQUIRE( a.size() == b.size() );
  for ( std::size_t i = 0; i < a.size(); ++i )
  {
    CHECK( a[i].status == b[i].status );
    if ( a[i].mapping && b[i].mapping )
    {
      CHECK( to_text( a[i].mapping->stream ) == to_text( b[i].mapping->stream ) );
      CHECK( to_json( *a[i].report ) == to_json( *b[i].report ) );
    }
  }
}

TEST_CASE( "command-line exit codes" )
{
  std::string const dir = MAGICMAP_BENCHMARK_DIR;
  CHECK( run_cli( "--help" ) == 0 );
  CHECK( run_cli( "-i " + dir + "/cm151a.blif --rows 8 --cols 8 -k 4" ) == 0 );
  CHECK( run_cli( "-i " + dir + "/cm151a.blif --rows 8 --cols 8 -k 4 --align best" ) == 1 );
  CHECK( run_cli( "-i " + dir + "/cm151a.blif --rows 4 --cols 8 -k 4" ) == 1 );
  CHECK( run_cli( "--rows 8" ) == 1 );
  CHECK( run_cli( "-i " + dir + "/wall.blif --rows 16 --cols 16 -k 4" ) == 3 );

  auto const bad = std::string( "magicmap_bad.blif" );
  std::ofstream( bad ) << ".model x\n.inputs a\n.latch a b\n.end\n";
  CHECK( run_cli( "-i " + bad ) == 2 );
  std::remove( bad.c_str() );

  auto const stream = std::string( "magicmap_c17.txt" );
  REQUIRE( run_cli( "-i " + dir + "/c17.blif --rows 8 --cols 8 -k 2 --emit " + stream + " --report /dev/null" ) == 0 );
  CHECK( run_cli( "-i " + dir + "/c17.blif --check-stream " + stream ) == 0 );
  CHECK( run_cli( "-i " + dir + "/cm151a.blif --check-stream " + stream ) == 4 );
  std::remove( stream.c_str() );
}
