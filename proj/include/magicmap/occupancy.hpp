/*!
  \file occupancy.hpp
  \brief Mapper-side bookkeeping of which crossbar cells may still be used
*/

#pragma once

#include <magicmap/fabric.hpp>

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <vector>

namespace magicmap
{

/*! \brief Allocation state of one cell as seen by the mapper.
 *
 * `free` and `spacing` cells still hold the reset value and can receive a
 * copy; only `free` cells can be claimed by a LUT footprint. `reserved`
 * cells belong to a footprint that has not been computed yet, `used` cells
 * hold a value (live or garbage) until the next reset covers them.
 */
enum class slot : std::uint8_t
{
  free,
  spacing,
  reserved,
  used
};

class occupancy
{
public:
  occupancy( int rows, int cols )
      : rows_( rows ), cols_( cols ), slots_( static_cast<std::size_t>( rows ) * static_cast<std::size_t>( cols ), slot::free )
  {
  }

  /*! \brief Cells that can receive a NOR/NOT result count as free. */
  static occupancy from_crossbar( crossbar const& xbar )
  {
    occupancy occ( xbar.rows(), xbar.cols() );
    for ( int r = 1; r <= xbar.rows(); ++r )
    {
      for ( int c = 1; c <= xbar.cols(); ++c )
      {
        occ.set( { r, c }, xbar.initialized( { r, c } ) ? slot::free : slot::used );
      }
    }
    return occ;
  }

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  bool in_range( coord c ) const noexcept { return c.row >= 1 && c.row <= rows_ && c.col >= 1 && c.col <= cols_; }

  slot at( coord c ) const { return slots_[index( c )]; }
  void set( coord c, slot s ) { slots_[index( c )] = s; }

  bool routable( coord c ) const
  {
    auto const s = at( c );
    return s == slot::free || s == slot::spacing;
  }

  bool placeable( coord c ) const { return at( c ) == slot::free; }

  std::size_t count( slot s ) const { return static_cast<std::size_t>( std::count( slots_.begin(), slots_.end(), s ) ); }

  bool operator==( occupancy const& ) const = default;

private:
  std::size_t index( coord c ) const
  {
    assert( in_range( c ) );
    return static_cast<std::size_t>( c.row - 1 ) * static_cast<std::size_t>( cols_ ) + static_cast<std::size_t>( c.col - 1 );
  }

  int rows_;
  int cols_;
  std::vector<slot> slots_;
};

} // namespace magicmap
