/*!
  \file non.cpp
  \brief SoP to NOR-of-NORs conversion
*/

#include <magicmap/non.hpp>

#include <magicmap/errors.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <memory>

namespace magicmap
{

non_matrix sop_to_non( sop_cover const& cover, std::string source_lut )
{
  if ( cover.constant_value() )
  {
    throw netlist_error( "constant cover has no NoN form" + ( source_lut.empty() ? std::string{} : " (" + source_lut + ")" ) );
  }

  non_matrix non;
  non.variables = cover.variables;
  non.source_lut = std::move( source_lut );
  non.rows.reserve( cover.cubes.size() );
  for ( auto const& cube : cover.cubes )
  {
    std::vector<non_mark> row;
    row.reserve( cube.size() );
    for ( auto m : cube )
    {
      switch ( m )
      {
      case literal_mark::one:
        row.push_back( non_mark::neg );
        break;
      case literal_mark::zero:
        row.push_back( non_mark::pos );
        break;
      default:
        row.push_back( non_mark::absent );
        break;
      }
    }
    non.rows.push_back( std::move( row ) );
  }
  return non;
}

bool evaluate_non( non_matrix const& non, std::span<const bool> values )
{
  if ( values.size() != non.variables.size() )
  {
    throw netlist_error( "NoN evaluation expects one value per variable" );
  }
  bool any_row = false;
  for ( auto const& row : non.rows )
  {
    bool any_literal = false;
    for ( std::size_t i = 0; i < row.size(); ++i )
    {
      if ( row[i] == non_mark::pos )
      {
        any_literal |= values[i];
      }
      else if ( row[i] == non_mark::neg )
      {
        any_literal |= !values[i];
      }
    }
    any_row |= !any_literal;
  }
  /* NOT( NOR( rows ) ) */
  return any_row;
}

bool evaluate_non( non_matrix const& non, assignment const& values )
{
  auto const n = non.variables.size();
  auto bits = std::make_unique<bool[]>( n );
  for ( std::size_t i = 0; i < n; ++i )
  {
    auto it = values.find( non.variables[i] );
    if ( it == values.end() )
    {
      throw netlist_error( "missing value for variable '" + non.variables[i] + "'" );
    }
    bits[i] = it->second;
  }
  return evaluate_non( non, std::span<const bool>( bits.get(), n ) );
}

non_matrix permute_columns( non_matrix const& non, std::span<const std::size_t> order )
{
  non_matrix result;
  result.source_lut = non.source_lut;
  for ( auto c : order )
  {
    result.variables.push_back( non.variables.at( c ) );
  }
  for ( auto const& row : non.rows )
  {
    std::vector<non_mark> permuted;
    for ( auto c : order )
    {
      permuted.push_back( row.at( c ) );
    }
    result.rows.push_back( std::move( permuted ) );
  }
  return result;
}

std::string to_table( non_matrix const& non )
{
  std::size_t width = 1u;
  for ( auto const& v : non.variables )
  {
    width = std::max( width, v.size() );
  }
  std::string out = "Variables";
  for ( auto const& v : non.variables )
  {
    out += fmt::format( " {:>{}}", v, width );
  }
  out += '\n';
  for ( std::size_t r = 0; r < non.rows.size(); ++r )
  {
    out += fmt::format( "{:<9}", fmt::format( "term {}", r + 1 ) );
    for ( auto m : non.rows[r] )
    {
      char const c = m == non_mark::pos ? '1' : m == non_mark::neg ? '0' : '-';
      out += fmt::format( " {:>{}}", c, width );
    }
    out += '\n';
  }
  return out;
}

} // namespace magicmap
