#include <doctest.h>

#include <magicmap/errors.hpp>
#include <magicmap/placement.hpp>
#include <magicmap/verify.hpp>

#include <fmt/format.h>

#include <random>
#include <sstream>

using namespace magicmap;

namespace
{

lut_graph cm151a( unsigned k = 4u )
{
  return build_lut_graph( read_blif_file( MAGICMAP_BENCHMARK_DIR "/cm151a.blif" ), k );
}

std::size_t lut( lut_graph const& g, std::string_view name )
{
  auto idx = g.find( name );
  REQUIRE( idx );
  return *idx;
}

/* 8 inputs, 64 two-input nodes, each reading the previous node and one other recent signal */
std::string chain_blif()
{
  std::ostringstream os;
  os << ".model chain64\n.inputs";
  for ( int i = 0; i < 8; ++i )
  {
    os << " x" << i;
  }
  os << "\n.outputs";
  for ( int i = 56; i < 64; ++i )
  {
    os << " n" << i;
  }
  os << "\n";
  std::mt19937 rng( 3u );
  std::vector<std::string> signals;
  for ( int i = 0; i < 8; ++i )
  {
    signals.push_back( fmt::format( "x{}", i ) );
  }
  for ( int i = 0; i < 64; ++i )
  {
    auto const a = signals.back();
    auto b = a;
    while ( b == a )
    {
      b = signals[signals.size() - 1 - rng() % std::min<std::size_t>( 10u, signals.size() )];
    }
    os << ".names " << a << " " << b << " n" << i << "\n";
    switch ( i % 3 )
    {
    case 0:
      os << "10 1\n01 1\n";
      break;
    case 1:
      os << "11 1\n";
      break;
    default:
      os << "0- 1\n-0 1\n";
      break;
    }
    signals.push_back( fmt::format( "n{}", i ) );
  }
  os << ".end\n";
  return os.str();
}

verdict verify_all( netlist const& ntk, instruction_stream const& stream )
{
  return check_equivalence( ntk, stream, ntk.inputs.size() <= 12u ? verify_mode::exhaustive() : verify_mode::random( 4096u, 1u ) );
}

} // namespace

TEST_CASE( "groups share level and input count" )
{
  auto ntk = parse_blif( ".model g\n.inputs a b c\n.outputs x y z w\n"
                         ".names a b x\n11 1\n"
                         ".names a b c y\n111 1\n"
                         ".names b c z\n01 1\n"
                         ".names x y w\n1- 1\n-1 1\n.end\n" );
  auto g = build_lut_graph( ntk, 4u );
  std::vector<bool> done( g.nodes.size(), false );

  auto first = select_group( g, done );
  REQUIRE( first.size() == 1u );
  CHECK( g.nodes[first[0]].name == "y" );
  done[first[0]] = true;

  auto second = select_group( g, done );
  REQUIRE( second.size() == 2u );
  CHECK( g.nodes[second[0]].name == "x" );
  CHECK( g.nodes[second[1]].name == "z" );
  for ( auto i : second )
  {
    done[i] = true;
  }

  auto third = select_group( g, done );
  REQUIRE( third.size() == 1u );
  CHECK( g.nodes[third[0]].name == "w" );
  done[third[0]] = true;
  CHECK( select_group( g, done ).empty() );
}

TEST_CASE( "reset orientation" )
{
  auto cols = select_reset( 8, 8, { { 3, 4 }, { 6, 8 } } );
  CHECK( to_text( instruction{ cols } ) == "RESET COLS except={4,8}" );

  /* 3 rows x 8 = 24 blocked against 5 columns x 8 = 40 */
  auto rows = select_reset( 8, 8, { { 1, 1 }, { 1, 2 }, { 2, 3 }, { 2, 4 }, { 5, 5 } } );
  CHECK( rows.lines == reset_op::orientation::rows );
  CHECK( rows.excluded == std::vector<int>{ 1, 2, 5 } );

  CHECK( select_reset( 8, 8, { { 2, 2 } } ).lines == reset_op::orientation::cols );
  /* a tall array makes a live column more expensive than a live row */
  CHECK( select_reset( 16, 8, { { 2, 2 } } ).lines == reset_op::orientation::rows );

  auto all = select_reset( 8, 8, {} );
  CHECK( all.lines == reset_op::orientation::rows );
  CHECK( all.excluded.empty() );
}

TEST_CASE( "applying a reset frees everything outside the kept lines" )
{
  occupancy occ( 4, 4 );
  for ( int r = 1; r <= 4; ++r )
  {
    for ( int c = 1; c <= 4; ++c )
    {
      occ.set( { r, c }, slot::used );
    }
  }
  apply_reset( occ, { reset_op::orientation::cols, { 2 } } );
  CHECK( occ.count( slot::used ) == 4u );
  CHECK( occ.at( { 3, 2 } ) == slot::used );
  CHECK( occ.at( { 3, 3 } ) == slot::free );
}

TEST_CASE( "cm151a first level stacks into two bands" )
{
  auto g = cm151a();
  occupancy occ( 8, 8 );
  output_directory dir;
  band_cursor cursor;
  std::vector<bool> done( g.nodes.size(), false );
  auto group = select_group( g, done );
  REQUIRE( group.size() == 4u );

  auto first = place_group( occ, cursor, dir, g, group, 0u );
  REQUIRE( first );
  REQUIRE( first->size() == 2u );
  CHECK( ( *first )[0].lut == lut( g, "17" ) );
  CHECK( ( *first )[0].top_row == 1 );
  CHECK( ( *first )[0].output_row() == 3 );
  CHECK( ( *first )[0].columns == std::vector<int>{ 1, 2, 3, 4 } );
  CHECK( ( *first )[1].lut == lut( g, "18" ) );
  CHECK( ( *first )[1].top_row == 4 );
  CHECK( ( *first )[1].output_row() == 6 );

  std::vector<std::size_t> rest{ group[2], group[3] };
  auto second = place_group( occ, cursor, dir, g, rest, 0u );
  REQUIRE( second );
  REQUIRE( second->size() == 2u );
  CHECK( ( *second )[0].lut == lut( g, "20" ) );
  CHECK( ( *second )[0].columns == std::vector<int>{ 5, 6, 7, 8 } );
  CHECK( ( *second )[0].top_row == 1 );
  CHECK( ( *second )[1].top_row == 4 );
  CHECK( occ.count( slot::reserved ) == 4u * 3u * 4u );
}

TEST_CASE( "spacing rows separate stacked LUTs" )
{
  auto g = cm151a();
  occupancy occ( 16, 8 );
  output_directory dir;
  band_cursor cursor;
  std::vector<bool> done( g.nodes.size(), false );
  auto placed = place_group( occ, cursor, dir, g, select_group( g, done ), 2u );
  REQUIRE( placed );
  REQUIRE( placed->size() >= 2u );
  CHECK( ( *placed )[1].top_row == ( *placed )[0].top_row + ( *placed )[0].height() + 2 );
  CHECK( occ.at( { 4, 1 } ) == slot::spacing );
  CHECK( occ.at( { 5, 4 } ) == slot::spacing );
  CHECK( occ.routable( { 4, 1 } ) );
  CHECK( !occ.placeable( { 4, 1 } ) );
}

TEST_CASE( "live columns are skipped when forming a band" )
{
  auto g = cm151a();
  occupancy occ( 8, 8 );
  output_directory dir;
  dir.record( 0u, { { 3, 2 }, std::nullopt, 1u } );
  occ.set( { 3, 2 }, slot::used );
  band_cursor cursor;
  std::vector<bool> done( g.nodes.size(), false );
  auto placed = place_group( occ, cursor, dir, g, select_group( g, done ), 0u );
  REQUIRE( placed );
  CHECK( placed->front().columns == std::vector<int>{ 1, 3, 4, 5 } );
}

TEST_CASE( "compute instruction counts" )
{
  auto g = cm151a();
  std::vector<bool> done( g.nodes.size(), false );
  auto group = select_group( g, done );
  occupancy occ( 16, 16 );
  output_directory dir;
  band_cursor cursor;
  auto placed = place_group( occ, cursor, dir, g, group, 0u );
  REQUIRE( placed );
  REQUIRE( placed->size() == 4u );

  /* one HNOR plus one VNOR per LUT; none of these LUTs drives an output */
  CHECK( emit_group_compute( g, *placed ).size() == 5u );
  CHECK( emit_group_compute( g, { ( *placed )[0], ( *placed )[1] } ).size() == 3u );
  auto single = emit_group_compute( g, { ( *placed )[0] } );
  REQUIRE( single.size() == 2u );
  CHECK( to_text( single[0].op ) == "HNOR rows={1,2} src={1,2,3} dst=4" );
  CHECK( to_text( single[1].op ) == "VNOR col=4 src={1,2} dst=3" );
  CHECK( emit_group_compute( g, {} ).empty() );
}

TEST_CASE( "output LUTs get a final inversion" )
{
  auto ntk = parse_blif( ".model f\n.inputs a b c\n.outputs F\n.names a b c F\n10- 1\n011 1\n.end\n" );
  auto g = build_lut_graph( ntk, 3u );
  auto r = map_lut_graph( g, { 3, 4, 0u, align_mode::greedy } );
  auto const& e = r.stream.entries();
  REQUIRE( e.size() >= 3u );
  CHECK( std::holds_alternative<hnor_op>( e[e.size() - 3].op ) );
  CHECK( std::holds_alternative<vnor_op>( e[e.size() - 2].op ) );
  CHECK( to_text( e.back().op ) == "NOT 3,4 -> 3,1" );
  CHECK( e.back().tag == provenance::compute );
  REQUIRE( r.stream.outputs().size() == 1u );
  CHECK( r.stream.outputs()[0].at == coord{ 3, 1 } );
  CHECK( verify_all( ntk, r.stream ).passed );
}

TEST_CASE( "claimed cells follow the footprint formula" )
{
  auto g = cm151a();
  auto r = map_lut_graph( g, { 8, 8, 0u, align_mode::greedy } );
  CHECK( r.footprint_check() );
  std::size_t luts = 0u;
  for ( auto const& grp : r.groups )
  {
    std::size_t expected = 0u;
    for ( auto const& p : grp.luts )
    {
      expected += ( g.nodes[p.lut].num_cubes() + 1u ) * ( g.nodes[p.lut].width() + 1u );
    }
    CHECK( grp.claimed_cells == expected );
    luts += grp.luts.size();
  }
  CHECK( luts == g.nodes.size() );
  CHECK( r.resets >= 1u );
}

TEST_CASE( "large graph on a small array needs resets and stays correct" )
{
  auto ntk = parse_blif( chain_blif() );
  auto g = build_lut_graph( ntk, 4u );
  REQUIRE( g.nodes.size() == 64u );
  auto r = map_lut_graph( g, { 16, 16, 0u, align_mode::greedy } );
  CHECK( r.resets >= 1u );
  CHECK( r.footprint_check() );
  auto v = verify_all( ntk, r.stream );
  CHECK_MESSAGE( v.passed, v.diagnostic );
}

TEST_CASE( "every bundled small benchmark maps and verifies on 16x16" )
{
  for ( auto name : { "cm151a", "c17", "rca4", "cmp4", "dec3", "par9", "maj5" } )
  {
    auto ntk = read_blif_file( fmt::format( "{}/{}.blif", MAGICMAP_BENCHMARK_DIR, name ) );
    for ( unsigned k : { 2u, 3u, 4u } )
    {
      for ( auto mode : { align_mode::greedy, align_mode::exact } )
      {
        auto r = map_lut_graph( build_lut_graph( ntk, k ), { 16, 16, 2u, mode } );
        auto v = verify_all( ntk, r.stream );
        CHECK_MESSAGE( v.passed, name, " k=", k, ": ", v.diagnostic );

        /* the emitted text replays to the same stream */
        CHECK( to_text( parse_stream( to_text( r.stream ) ) ) == to_text( r.stream ) );
      }
    }
  }
}

TEST_CASE( "cycles are dense and one instruction each" )
{
  auto r = map_lut_graph( cm151a(), { 8, 8, 0u, align_mode::greedy } );
  auto const& e = r.stream.entries();
  for ( std::size_t i = 0; i < e.size(); ++i )
  {
    CHECK( e[i].cycle == i );
  }
  CHECK( r.stream.cycle_count() == e.size() );
  CHECK( r.stream.cycle_count() <= 142u );
}

TEST_CASE( "oversized inputs are rejected" )
{
  auto g = cm151a();
  CHECK_THROWS_AS( map_lut_graph( g, { 2, 8, 0u, align_mode::greedy } ), unmappable_error );
  auto wall = build_lut_graph( read_blif_file( MAGICMAP_BENCHMARK_DIR "/wall.blif" ), 4u );
  CHECK_THROWS_AS( map_lut_graph( wall, { 16, 16, 0u, align_mode::greedy } ), unmappable_error );
}

TEST_CASE( "primary outputs fed by inputs or constants get their own cell" )
{
  auto ntk = parse_blif( ".model p\n.inputs a b\n.outputs a x one\n.names a b x\n11 1\n.names one\n1\n.end\n" );
  auto r = map_lut_graph( build_lut_graph( ntk, 2u ), { 4, 4, 0u, align_mode::greedy } );
  REQUIRE( r.stream.outputs().size() == 3u );
  CHECK( verify_all( ntk, r.stream ).passed );
}
