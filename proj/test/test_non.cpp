#include <doctest.h>

#include <magicmap/errors.hpp>
#include <magicmap/non.hpp>

#include <random>

using namespace magicmap;

namespace
{

sop_cover f_cover()
{
  sop_cover f;
  f.variables = { "a", "b", "c" };
  f.cubes = { { literal_mark::one, literal_mark::zero, literal_mark::dont_care },
              { literal_mark::zero, literal_mark::one, literal_mark::one } };
  return f;
}

/* direct cube matching, independent of sop_cover::evaluate */
bool sop_truth( sop_cover const& c, unsigned bits )
{
  for ( auto const& cube : c.cubes )
  {
    bool hit = true;
    for ( std::size_t i = 0; i < cube.size(); ++i )
    {
      bool const v = ( bits >> i ) & 1u;
      if ( ( cube[i] == literal_mark::one && !v ) || ( cube[i] == literal_mark::zero && v ) )
      {
        hit = false;
      }
    }
    if ( hit )
    {
      return true;
    }
  }
  return false;
}

} // namespace

TEST_CASE( "F converts to the flipped literal matrix" )
{
  auto non = sop_to_non( f_cover(), "F" );
  using m = non_mark;
  CHECK( non.rows == std::vector<std::vector<m>>{ { m::neg, m::pos, m::absent }, { m::pos, m::neg, m::neg } } );
  CHECK( non.source_lut == "F" );
  CHECK( to_table( non ) == "Variables a b c\nterm 1    0 1 -\nterm 2    1 0 0\n" );
}

TEST_CASE( "F evaluates through the NoN form" )
{
  auto non = sop_to_non( f_cover() );
  CHECK( evaluate_non( non, assignment{ { "a", true }, { "b", false }, { "c", false } } ) );
  CHECK( !evaluate_non( non, assignment{ { "a", false }, { "b", false }, { "c", false } } ) );
  for ( unsigned v = 0; v < 8u; ++v )
  {
    bool const a = v & 4u, b = v & 2u, c = v & 1u;
    CHECK( evaluate_non( non, assignment{ { "a", a }, { "b", b }, { "c", c } } ) == ( ( a && !b ) || ( !a && b && c ) ) );
  }
  CHECK_THROWS_AS( evaluate_non( non, assignment{ { "a", true } } ), netlist_error );
}

TEST_CASE( "single cube AND" )
{
  sop_cover c{ { "a", "b" }, { { literal_mark::one, literal_mark::one } } };
  CHECK( sop_to_non( c ).rows == std::vector<std::vector<non_mark>>{ { non_mark::neg, non_mark::neg } } );
}

TEST_CASE( "constant covers are rejected" )
{
  CHECK_THROWS_AS( sop_to_non( sop_cover{ { "a" }, {} } ), netlist_error );
  CHECK_THROWS_AS( sop_to_non( sop_cover{ {}, { {} } } ), netlist_error );
}

TEST_CASE( "random covers agree with their NoN form" )
{
  std::mt19937 rng( 1234u );
  for ( int trial = 0; trial < 300; ++trial )
  {
    unsigned const n = 1u + rng() % 8u;
    unsigned const p = 1u + rng() % 8u;
    sop_cover c;
    for ( unsigned i = 0; i < n; ++i )
    {
      c.variables.push_back( "v" + std::to_string( i ) );
    }
    for ( unsigned j = 0; j < p; ++j )
    {
      std::vector<literal_mark> cube( n );
      bool care = false;
      for ( auto& m : cube )
      {
        m = static_cast<literal_mark>( rng() % 3u );
        care |= m != literal_mark::dont_care;
      }
      if ( !care )
      {
        cube[0] = literal_mark::one;
      }
      c.cubes.push_back( cube );
    }
    auto non = sop_to_non( c );
    REQUIRE( non.num_rows() == p );
    REQUIRE( non.num_columns() == n );
    for ( unsigned v = 0; v < ( 1u << n ); ++v )
    {
      bool values[8];
      for ( unsigned i = 0; i < n; ++i )
      {
        values[i] = ( v >> i ) & 1u;
      }
      REQUIRE( evaluate_non( non, std::span<const bool>( values, n ) ) == sop_truth( c, v ) );
    }
  }
}

TEST_CASE( "column permutation" )
{
  auto non = sop_to_non( f_cover() );
  std::vector<std::size_t> order{ 2, 0, 1 };
  auto p = permute_columns( non, order );
  CHECK( p.variables == std::vector<std::string>{ "c", "a", "b" } );
  CHECK( p.rows[1] == std::vector{ non_mark::neg, non_mark::pos, non_mark::neg } );
  for ( unsigned v = 0; v < 8u; ++v )
  {
    assignment a{ { "a", bool( v & 4u ) }, { "b", bool( v & 2u ) }, { "c", bool( v & 1u ) } };
    CHECK( evaluate_non( p, a ) == evaluate_non( non, a ) );
  }
}
