/*!
  \file routing.cpp
  \brief Parity-constrained A* copy search and input delivery
*/

#include <magicmap/routing.hpp>

#include <magicmap/errors.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <queue>
#include <set>
#include <tuple>

namespace magicmap
{

int copy_heuristic( coord at, coord dst )
{
  if ( at == dst )
  {
    return 0;
  }
  return ( at.row == dst.row || at.col == dst.col ) ? 1 : 2;
}

namespace
{

bool accepts( parity constraint, int p )
{
  return constraint == parity::any || ( constraint == parity::odd ) == ( p == 1 );
}

template<class Routable>
std::optional<copy_path> search( int rows, int cols, Routable&& routable, coord src, coord dst, parity constraint )
{
  if ( src == dst )
  {
    return accepts( constraint, 0 ) ? std::optional<copy_path>( copy_path{ { src } } ) : std::nullopt;
  }

  auto const state = [cols]( coord c, int p ) {
    return ( static_cast<std::size_t>( c.row - 1 ) * static_cast<std::size_t>( cols ) + static_cast<std::size_t>( c.col - 1 ) ) * 2u +
           static_cast<std::size_t>( p );
  };
  auto const cell_of = [cols]( std::size_t s ) {
    auto const idx = static_cast<int>( s / 2u );
    return coord{ idx / cols + 1, idx % cols + 1 };
  };

  constexpr int unreached = std::numeric_limits<int>::max();
  std::vector<int> dist( static_cast<std::size_t>( rows ) * static_cast<std::size_t>( cols ) * 2u, unreached );
  std::vector<std::size_t> parent( dist.size(), std::numeric_limits<std::size_t>::max() );

  /* (f, h, row, col, parity, g) in ascending order */
  using entry = std::tuple<int, int, int, int, int, int>;
  std::priority_queue<entry, std::vector<entry>, std::greater<>> open;

  dist[state( src, 0 )] = 0;
  open.emplace( copy_heuristic( src, dst ), copy_heuristic( src, dst ), src.row, src.col, 0, 0 );

  std::optional<std::size_t> goal;
  while ( !open.empty() )
  {
    auto [f, h, row, col, p, g] = open.top();
    open.pop();
    coord const at{ row, col };
    auto const s = state( at, p );
    if ( g > dist[s] )
    {
      continue;
    }
    if ( at == dst )
    {
      if ( accepts( constraint, p ) )
      {
        goal = s;
        break;
      }
      continue;
    }

    auto relax = [&]( coord next ) {
      if ( next == src || ( next != dst && !routable( next ) ) )
      {
        return;
      }
      auto const np = 1 - p;
      auto const ns = state( next, np );
      if ( g + 1 < dist[ns] )
      {
        dist[ns] = g + 1;
        parent[ns] = s;
        auto const nh = copy_heuristic( next, dst );
        open.emplace( g + 1 + nh, nh, next.row, next.col, np, g + 1 );
      }
    };
    for ( int c = 1; c <= cols; ++c )
    {
      if ( c != col )
      {
        relax( { row, c } );
      }
    }
    for ( int r = 1; r <= rows; ++r )
    {
      if ( r != row )
      {
        relax( { r, col } );
      }
    }
  }

  if ( !goal )
  {
    return std::nullopt;
  }

  copy_path path;
  for ( auto s = *goal; s != std::numeric_limits<std::size_t>::max(); s = parent[s] )
  {
    path.cells.push_back( cell_of( s ) );
  }
  std::reverse( path.cells.begin(), path.cells.end() );

  /* a cell written twice would destroy the value routed through it first */
  std::set<coord> seen( path.cells.begin(), path.cells.end() );
  if ( seen.size() != path.cells.size() )
  {
    return std::nullopt;
  }
  return path;
}

} // namespace

std::optional<copy_path> astar_copy( occupancy const& occ, coord src, coord dst, parity constraint )
{
  if ( !occ.in_range( src ) || !occ.in_range( dst ) )
  {
    throw routing_error( "copy endpoint outside the crossbar" );
  }
  return search( occ.rows(), occ.cols(), [&]( coord c ) { return occ.routable( c ); }, src, dst, constraint );
}

std::optional<copy_path> astar_copy( crossbar const& xbar, coord src, coord dst, parity constraint )
{
  return astar_copy( occupancy::from_crossbar( xbar ), src, dst, constraint );
}

namespace
{

struct filled_cell
{
  coord at;
  bool complemented;
};

void emit_path( occupancy& occ, copy_path const& path, std::vector<routed_op>& out )
{
  for ( std::size_t i = 1; i < path.cells.size(); ++i )
  {
    out.push_back( { not_op{ path.cells[i - 1], path.cells[i] }, provenance::copy } );
    if ( i + 1 < path.cells.size() )
    {
      occ.set( path.cells[i], slot::used );
    }
  }
}

} // namespace

std::vector<routed_op> deliver_input( occupancy& occ, signal_source const& source, std::vector<delivery_target> const& targets )
{
  std::vector<routed_op> out;
  if ( targets.empty() )
  {
    return out;
  }
  auto const column = targets.front().at.col;
  for ( auto const& t : targets )
  {
    if ( t.at.col != column )
    {
      throw routing_error( "delivery targets must share one column" );
    }
  }

  if ( auto const* pi = std::get_if<std::string>( &source ) )
  {
    for ( auto const& t : targets )
    {
      out.push_back( { write_op{ t.at, write_value::literal( *pi, t.complemented ) }, provenance::write } );
    }
    return out;
  }

  auto const src = std::get<stored_signal>( source );
  auto const needed = [&]( delivery_target const& t ) {
    return t.complemented == src.complemented ? parity::even : parity::odd;
  };

  /* first copy: the target reachable in the fewest hops (lowest row on ties) */
  std::optional<copy_path> best;
  std::size_t best_index = 0u;
  for ( std::size_t i = 0; i < targets.size(); ++i )
  {
    auto path = astar_copy( occ, src.at, targets[i].at, needed( targets[i] ) );
    if ( path && ( !best || path->hops() < best->hops() ||
                   ( path->hops() == best->hops() && targets[i].at.row < targets[best_index].at.row ) ) )
    {
      best = std::move( path );
      best_index = i;
    }
  }
  if ( !best )
  {
    throw routing_error( fmt::format( "no copy path from ({},{}) into column {}", src.at.row, src.at.col, column ) );
  }
  emit_path( occ, *best, out );

  std::vector<filled_cell> filled{ { targets[best_index].at, targets[best_index].complemented } };

  std::vector<delivery_target> remaining;
  for ( std::size_t i = 0; i < targets.size(); ++i )
  {
    if ( i != best_index )
    {
      remaining.push_back( targets[i] );
    }
  }
  std::stable_sort( remaining.begin(), remaining.end(), []( auto const& a, auto const& b ) { return a.at.row < b.at.row; } );

  for ( auto const& t : remaining )
  {
    auto opposite = std::find_if( filled.begin(), filled.end(), [&]( auto const& f ) { return f.complemented != t.complemented; } );
    if ( opposite != filled.end() )
    {
      out.push_back( { not_op{ opposite->at, t.at }, provenance::copy } );
      filled.push_back( { t.at, t.complemented } );
      continue;
    }

    /* every filled cell has the target's polarity: bounce through a free cell */
    std::optional<coord> bounce;
    for ( int r = 1; r <= occ.rows(); ++r )
    {
      coord const c{ r, column };
      if ( !occ.routable( c ) )
      {
        continue;
      }
      if ( !bounce || std::abs( r - t.at.row ) < std::abs( bounce->row - t.at.row ) )
      {
        bounce = c;
      }
    }
    if ( bounce )
    {
      auto const from = filled.front();
      out.push_back( { not_op{ from.at, *bounce }, provenance::copy } );
      out.push_back( { not_op{ *bounce, t.at }, provenance::copy } );
      occ.set( *bounce, slot::used );
      filled.push_back( { *bounce, !from.complemented } );
      filled.push_back( { t.at, t.complemented } );
      continue;
    }

    auto path = astar_copy( occ, src.at, t.at, needed( t ) );
    if ( !path )
    {
      throw routing_error( fmt::format( "no bounce cell or copy path for ({},{})", t.at.row, t.at.col ) );
    }
    emit_path( occ, *path, out );
    filled.push_back( { t.at, t.complemented } );
  }
  return out;
}

} // namespace magicmap
