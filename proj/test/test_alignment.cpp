#include <doctest.h>

#include <magicmap/alignment.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>

using namespace magicmap;

namespace
{

/* independent maximum: recursive enumeration of every row arrangement, counted column by column */
std::size_t brute_force_best( input_matrix const& m )
{
  std::size_t const k = m.empty() ? 0u : m[0].size();
  input_matrix cur = m;
  std::size_t best = 0u;
  auto count = [&] {
    std::size_t s = 0u;
    for ( std::size_t c = 0; c < k; ++c )
    {
      std::map<std::string, std::size_t> freq;
      for ( auto const& row : cur )
      {
        if ( !row[c].empty() )
        {
          ++freq[row[c]];
        }
      }
      for ( auto const& [v, f] : freq )
      {
        s += f * ( f - 1u ) / 2u;
      }
    }
    return s;
  };
  auto rec = [&]( auto&& self, std::size_t r ) -> void {
    if ( r == cur.size() )
    {
      best = std::max( best, count() );
      return;
    }
    auto row = m[r];
    std::sort( row.begin(), row.end() );
    do
    {
      cur[r] = row;
      self( self, r + 1u );
    } while ( std::next_permutation( row.begin(), row.end() ) );
  };
  rec( rec, 0u );
  return best;
}

input_matrix random_matrix( std::mt19937& rng, std::size_t n, std::size_t k, std::size_t alphabet )
{
  input_matrix m( n );
  for ( auto& row : m )
  {
    std::vector<std::string> pool;
    for ( std::size_t v = 0; v < alphabet; ++v )
    {
      pool.push_back( std::string( 1, char( 'a' + v ) ) );
    }
    std::shuffle( pool.begin(), pool.end(), rng );
    row.assign( pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>( k ) );
  }
  return m;
}

} // namespace

TEST_CASE( "worked 3x4 example" )
{
  input_matrix m{ { "a", "b", "c", "d" }, { "b", "c", "e", "a" }, { "h", "a", "g", "x" } };
  auto g = greedy_align( m );
  CHECK( g == input_matrix{ { "a", "b", "c", "d" }, { "a", "b", "c", "e" }, { "a", "h", "g", "x" } } );
  CHECK( alignment_score( g ) == 5u );
  CHECK( is_rearrangement( m, g ) );
  auto e = exact_align( m );
  CHECK( alignment_score( e ) == 5u );
  CHECK( brute_force_best( m ) == 5u );
}

TEST_CASE( "scores of trivial matrices" )
{
  CHECK( alignment_score( { { "a", "b" }, { "c", "d" } } ) == 0u );
  CHECK( alignment_score( { { "a", "b", "c" }, { "a", "b", "c" } } ) == 3u );
  CHECK( alignment_score( { { "a", "" }, { "b", "" } } ) == 0u );
  auto e = exact_align( { { "a", "b", "c" }, { "c", "a", "b" } } );
  CHECK( alignment_score( e ) == 3u );
  auto single = greedy_align( { { "x", "y" } } );
  CHECK( alignment_score( single ) == 0u );
  CHECK( is_rearrangement( { { "x", "y" } }, single ) );
}

TEST_CASE( "short rows are padded" )
{
  input_matrix m{ { "a", "b", "c" }, { "c", "a" } };
  auto g = greedy_align( m );
  CHECK( g == input_matrix{ { "a", "c", "b" }, { "a", "c", "" } } );
  CHECK( exact_align( m )[1].size() == 3u );
}

TEST_CASE( "exact alignment size limit" )
{
  input_matrix big( 5, std::vector<std::string>{ "a", "b" } );
  CHECK_THROWS_AS( exact_align( big ), std::invalid_argument );
  input_matrix wide{ { "a", "b", "c", "d", "e", "f" } };
  CHECK_THROWS_AS( exact_align( wide ), std::invalid_argument );
}

TEST_CASE( "exact dominates greedy dominates identity" )
{
  std::mt19937 rng( 2024u );
  bool strict = false;
  for ( int trial = 0; trial < 200; ++trial )
  {
    std::size_t const n = 1u + rng() % 3u;
    std::size_t const k = 1u + rng() % 4u;
    auto m = random_matrix( rng, n, k, k + rng() % 4u );
    auto g = greedy_align( m );
    auto e = exact_align( m );
    CHECK( is_rearrangement( m, g ) );
    CHECK( is_rearrangement( m, e ) );
    CHECK( alignment_score( e ) >= alignment_score( g ) );
    CHECK( alignment_score( g ) >= alignment_score( m ) );
    CHECK( alignment_score( e ) == brute_force_best( m ) );
    strict |= alignment_score( e ) > alignment_score( g );
  }
  (void)strict;
}

TEST_CASE( "greedy can be beaten" )
{
  /* found by random search; no three-row instance beat greedy in the same search */
  input_matrix m{ { "a", "e", "b" }, { "e", "d", "b" }, { "c", "a", "d" }, { "e", "c", "d" } };
  auto const g = alignment_score( greedy_align( m ) );
  auto const e = alignment_score( exact_align( m ) );
  CHECK( e > g );
  CHECK( e == brute_force_best( m ) );
}

TEST_CASE( "alignment is deterministic" )
{
  input_matrix m{ { "p", "q", "r" }, { "r", "s", "p" }, { "s", "q", "t" } };
  CHECK( greedy_align( m ) == greedy_align( m ) );
  CHECK( exact_align( m ) == exact_align( m ) );
}
