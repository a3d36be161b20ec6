/*!
  \file alignment.cpp
  \brief Greedy and exhaustive input alignment
*/

#include <magicmap/alignment.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace magicmap
{

namespace
{

std::size_t width( input_matrix const& m )
{
  std::size_t w = 0u;
  for ( auto const& row : m )
  {
    w = std::max( w, row.size() );
  }
  return w;
}

} // namespace

std::size_t alignment_score( input_matrix const& m )
{
  std::size_t score = 0u;
  auto const k = width( m );
  for ( std::size_t c = 0; c < k; ++c )
  {
    for ( std::size_t i = 0; i < m.size(); ++i )
    {
      if ( c >= m[i].size() || m[i][c].empty() )
      {
        continue;
      }
      for ( std::size_t j = i + 1; j < m.size(); ++j )
      {
        score += c < m[j].size() && m[j][c] == m[i][c];
      }
    }
  }
  return score;
}

input_matrix greedy_align( input_matrix const& m )
{
  auto const k = width( m );

  std::vector<std::string> order;
  std::map<std::string, std::vector<std::size_t>> rows_of;
  for ( std::size_t r = 0; r < m.size(); ++r )
  {
    for ( auto const& v : m[r] )
    {
      if ( v.empty() )
      {
        continue;
      }
      auto& rows = rows_of[v];
      if ( rows.empty() )
      {
        order.push_back( v );
      }
      if ( rows.empty() || rows.back() != r )
      {
        rows.push_back( r );
      }
    }
  }
  std::stable_sort( order.begin(), order.end(),
                    [&]( auto const& a, auto const& b ) { return rows_of[a].size() > rows_of[b].size(); } );

  input_matrix out( m.size(), std::vector<std::string>( k ) );
  std::vector<std::vector<bool>> taken( m.size(), std::vector<bool>( k, false ) );

  for ( auto const& v : order )
  {
    auto const& rows = rows_of[v];
    std::optional<std::size_t> shared;
    for ( std::size_t c = 0; c < k && !shared; ++c )
    {
      if ( std::none_of( rows.begin(), rows.end(), [&]( auto r ) { return taken[r][c]; } ) )
      {
        shared = c;
      }
    }
    for ( auto r : rows )
    {
      auto c = shared ? *shared
                      : static_cast<std::size_t>( std::find( taken[r].begin(), taken[r].end(), false ) - taken[r].begin() );
      out[r][c] = v;
      taken[r][c] = true;
    }
  }

  return out;
}

input_matrix exact_align( input_matrix const& m )
{
  auto const k = width( m );
  if ( m.size() > exact_max_rows || k > exact_max_cols )
  {
    throw std::invalid_argument( fmt::format( "exact alignment supports at most {}x{} inputs, got {}x{}", exact_max_rows,
                                              exact_max_cols, m.size(), k ) );
  }
  input_matrix padded = m;
  for ( auto& row : padded )
  {
    row.resize( k );
  }
  if ( m.size() <= 1u )
  {
    return padded;
  }

  auto const n = padded.size();
  std::vector<std::vector<std::size_t>> perm( n, std::vector<std::size_t>( k ) );
  for ( auto& p : perm )
  {
    std::iota( p.begin(), p.end(), 0u );
  }

  input_matrix current = padded;
  auto apply = [&]( std::size_t r ) {
    for ( std::size_t c = 0; c < k; ++c )
    {
      current[r][c] = padded[r][perm[r][c]];
    }
  };

  input_matrix best = padded;
  auto best_score = alignment_score( padded );

  /* odometer over rows 1..n-1, the last row varying fastest */
  while ( true )
  {
    std::size_t r = n - 1u;
    while ( r >= 1u && !std::next_permutation( perm[r].begin(), perm[r].end() ) )
    {
      apply( r ); /* next_permutation wrapped around to the identity */
      --r;
    }
    if ( r == 0u )
    {
      break;
    }
    apply( r );
    auto const s = alignment_score( current );
    if ( s > best_score )
    {
      best_score = s;
      best = current;
    }
  }

  return best;
}

bool is_rearrangement( input_matrix const& original, input_matrix const& aligned )
{
  if ( original.size() != aligned.size() )
  {
    return false;
  }
  for ( std::size_t r = 0; r < original.size(); ++r )
  {
    std::vector<std::string> a, b;
    std::copy_if( original[r].begin(), original[r].end(), std::back_inserter( a ), []( auto const& s ) { return !s.empty(); } );
    std::copy_if( aligned[r].begin(), aligned[r].end(), std::back_inserter( b ), []( auto const& s ) { return !s.empty(); } );
    std::sort( a.begin(), a.end() );
    std::sort( b.begin(), b.end() );
    if ( a != b )
    {
      return false;
    }
  }
  return true;
}

} // namespace magicmap
