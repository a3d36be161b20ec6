/*!
  \file fabric.cpp
  \brief Crossbar state, MAGIC execution semantics and the stream text format
*/

#include <magicmap/fabric.hpp>

#include <magicmap/errors.hpp>

#include <fmt/format.h>

#include <charconv>
#include <set>
#include <sstream>

namespace magicmap
{

/* crossbar */

namespace
{

std::uint64_t mask_for( unsigned lanes )
{
  if ( lanes == 0u || lanes > 64u )
  {
    throw execution_error( "lane count must be in [1, 64]" );
  }
  return lanes == 64u ? ~std::uint64_t{ 0 } : ( std::uint64_t{ 1 } << lanes ) - 1u;
}

} // namespace

crossbar::crossbar( int rows, int cols, unsigned lanes )
    : rows_( rows ), cols_( cols ), lanes_( lanes ), mask_( mask_for( lanes ) )
{
  if ( rows <= 0 || cols <= 0 )
  {
    throw execution_error( "crossbar dimensions must be positive" );
  }
  cells_.assign( static_cast<std::size_t>( rows ) * static_cast<std::size_t>( cols ), cell{ mask_, true, cell_role::free } );
}

crossbar crossbar::uninitialized( int rows, int cols, unsigned lanes )
{
  crossbar xbar( rows, cols, lanes );
  for ( auto& c : xbar.cells_ )
  {
    c = cell{ 0u, false, cell_role::free };
  }
  return xbar;
}

cell const& crossbar::at( coord c ) const
{
  if ( !in_range( c ) )
  {
    throw execution_error( fmt::format( "cell ({},{}) outside {}x{} crossbar", c.row, c.col, rows_, cols_ ) );
  }
  return cells_[static_cast<std::size_t>( c.row - 1 ) * static_cast<std::size_t>( cols_ ) + static_cast<std::size_t>( c.col - 1 )];
}

cell& crossbar::at( coord c )
{
  return const_cast<cell&>( std::as_const( *this ).at( c ) );
}

std::optional<bool> crossbar::value( coord c, unsigned lane ) const
{
  auto const& x = at( c );
  if ( !x.defined )
  {
    return std::nullopt;
  }
  return ( ( x.bits >> lane ) & 1u ) != 0u;
}

bool crossbar::initialized( coord c ) const
{
  auto const& x = at( c );
  return x.defined && x.bits == mask_ && ( x.role == cell_role::free || x.role == cell_role::spacing );
}

bool crossbar::operator==( crossbar const& other ) const
{
  if ( rows_ != other.rows_ || cols_ != other.cols_ || lanes_ != other.lanes_ )
  {
    return false;
  }
  for ( std::size_t i = 0; i < cells_.size(); ++i )
  {
    auto const& a = cells_[i];
    auto const& b = other.cells_[i];
    if ( a.defined != b.defined || a.role != b.role || ( a.defined && a.bits != b.bits ) )
    {
      return false;
    }
  }
  return true;
}

/* execution */

provenance default_provenance( instruction const& op )
{
  return std::visit(
      []( auto const& o ) -> provenance {
        using T = std::decay_t<decltype( o )>;
        if constexpr ( std::is_same_v<T, write_op> )
          return provenance::write;
        else if constexpr ( std::is_same_v<T, not_op> )
          return provenance::copy;
        else if constexpr ( std::is_same_v<T, reset_op> )
          return provenance::reset;
        else
          return provenance::compute;
      },
      op );
}

namespace
{

void check_distinct( std::vector<int> const& lines, char const* what )
{
  if ( lines.empty() )
  {
    throw execution_error( fmt::format( "{} set must not be empty", what ) );
  }
  std::set<int> seen( lines.begin(), lines.end() );
  if ( seen.size() != lines.size() )
  {
    throw execution_error( fmt::format( "{} set contains duplicates", what ) );
  }
}

std::uint64_t read_source( crossbar const& xbar, coord c )
{
  auto const& x = xbar.at( c );
  if ( !x.defined )
  {
    throw execution_error( fmt::format( "source ({},{}) holds no defined value", c.row, c.col ) );
  }
  return x.bits;
}

void check_destination( crossbar const& xbar, coord c )
{
  if ( !xbar.initialized( c ) )
  {
    throw execution_error( fmt::format( "destination ({},{}) is not initialized", c.row, c.col ) );
  }
}

struct executor
{
  crossbar& xbar;
  input_binding const* inputs;

  void operator()( write_op const& op ) const
  {
    std::uint64_t bits = 0u;
    switch ( op.value.type )
    {
    case write_value::kind::zero:
      break;
    case write_value::kind::one:
      bits = xbar.lane_mask();
      break;
    default:
    {
      if ( inputs == nullptr )
      {
        throw execution_error( "WRITE of input '" + op.value.input + "' without input values" );
      }
      auto it = inputs->find( op.value.input );
      if ( it == inputs->end() )
      {
        throw execution_error( "no value bound to input '" + op.value.input + "'" );
      }
      bits = op.value.type == write_value::kind::input ? it->second : ~it->second;
      bits &= xbar.lane_mask();
      break;
    }
    }
    xbar.at( op.at ) = cell{ bits, true, cell_role::input };
  }

  void operator()( hnor_op const& op ) const
  {
    check_distinct( op.rows, "HNOR row" );
    check_distinct( op.src_cols, "HNOR source column" );
    if ( std::find( op.src_cols.begin(), op.src_cols.end(), op.dst_col ) != op.src_cols.end() )
    {
      throw execution_error( fmt::format( "HNOR destination column {} is also a source", op.dst_col ) );
    }
    std::vector<std::uint64_t> results;
    results.reserve( op.rows.size() );
    for ( auto r : op.rows )
    {
      std::uint64_t acc = 0u;
      for ( auto c : op.src_cols )
      {
        acc |= read_source( xbar, { r, c } );
      }
      check_destination( xbar, { r, op.dst_col } );
      results.push_back( ~acc & xbar.lane_mask() );
    }
    for ( std::size_t i = 0; i < op.rows.size(); ++i )
    {
      xbar.at( { op.rows[i], op.dst_col } ) = cell{ results[i], true, cell_role::intermediate };
    }
  }

  void operator()( vnor_op const& op ) const
  {
    check_distinct( op.src_rows, "VNOR source row" );
    if ( std::find( op.src_rows.begin(), op.src_rows.end(), op.dst_row ) != op.src_rows.end() )
    {
      throw execution_error( fmt::format( "VNOR destination row {} is also a source", op.dst_row ) );
    }
    std::uint64_t acc = 0u;
    for ( auto r : op.src_rows )
    {
      acc |= read_source( xbar, { r, op.col } );
    }
    check_destination( xbar, { op.dst_row, op.col } );
    xbar.at( { op.dst_row, op.col } ) = cell{ ~acc & xbar.lane_mask(), true, cell_role::intermediate };
  }

  void operator()( not_op const& op ) const
  {
    if ( op.src == op.dst )
    {
      throw execution_error( fmt::format( "NOT source and destination coincide at ({},{})", op.src.row, op.src.col ) );
    }
    if ( op.src.row != op.dst.row && op.src.col != op.dst.col )
    {
      throw execution_error( fmt::format( "NOT ({},{}) -> ({},{}) does not share a row or column", op.src.row, op.src.col,
                                          op.dst.row, op.dst.col ) );
    }
    auto const v = read_source( xbar, op.src );
    check_destination( xbar, op.dst );
    xbar.at( op.dst ) = cell{ ~v & xbar.lane_mask(), true, cell_role::intermediate };
  }

  void operator()( reset_op const& op ) const
  {
    auto const along_rows = op.lines == reset_op::orientation::rows;
    auto const limit = along_rows ? xbar.rows() : xbar.cols();
    std::vector<bool> keep( static_cast<std::size_t>( limit ) + 1u, false );
    for ( auto l : op.excluded )
    {
      if ( l < 1 || l > limit )
      {
        throw execution_error( fmt::format( "RESET excluded line {} out of range", l ) );
      }
      keep[static_cast<std::size_t>( l )] = true;
    }
    for ( int r = 1; r <= xbar.rows(); ++r )
    {
      for ( int c = 1; c <= xbar.cols(); ++c )
      {
        if ( !keep[static_cast<std::size_t>( along_rows ? r : c )] )
        {
          xbar.at( { r, c } ) = cell{ xbar.lane_mask(), true, cell_role::free };
        }
      }
    }
  }
};

} // namespace

void execute( crossbar& xbar, instruction const& op, input_binding const* inputs )
{
  std::visit( executor{ xbar, inputs }, op );
}

/* stream */

void instruction_stream::append( instruction op, provenance tag )
{
  entries_.push_back( { cycle_count(), std::move( op ), tag } );
}

void instruction_stream::append_at( std::size_t cycle, instruction op, provenance tag )
{
  if ( !entries_.empty() && cycle <= entries_.back().cycle )
  {
    throw execution_error( fmt::format( "cycle {} does not follow cycle {}", cycle, entries_.back().cycle ) );
  }
  entries_.push_back( { cycle, std::move( op ), tag } );
}

run_result run_stream_lanes( crossbar initial, instruction_stream const& stream, input_binding const& pi_lanes )
{
  if ( initial.rows() != stream.rows() || initial.cols() != stream.cols() )
  {
    throw execution_error( fmt::format( "stream expects a {}x{} crossbar, got {}x{}", stream.rows(), stream.cols(),
                                        initial.rows(), initial.cols() ) );
  }
  for ( auto const& pi : stream.inputs() )
  {
    if ( !pi_lanes.count( pi ) )
    {
      throw execution_error( "no value bound to input '" + pi + "'" );
    }
  }
  for ( auto const& entry : stream.entries() )
  {
    try
    {
      execute( initial, entry.op, &pi_lanes );
    }
    catch ( execution_error const& e )
    {
      throw execution_error( e.what(), entry.cycle );
    }
  }
  return { std::move( initial ), stream.cycle_count() };
}

run_result run_stream( crossbar initial, instruction_stream const& stream, assignment const& pi_values )
{
  input_binding lanes;
  for ( auto const& [name, v] : pi_values )
  {
    lanes.emplace( name, v ? ~std::uint64_t{ 0 } : 0u );
  }
  return run_stream_lanes( std::move( initial ), stream, lanes );
}

/* text format */

namespace
{

std::string join( std::vector<int> const& xs )
{
  std::string s = "{";
  for ( std::size_t i = 0; i < xs.size(); ++i )
  {
    if ( i )
    {
      s += ',';
    }
    s += std::to_string( xs[i] );
  }
  return s + "}";
}

struct printer
{
  std::string operator()( write_op const& op ) const
  {
    std::string v;
    switch ( op.value.type )
    {
    case write_value::kind::zero:
      v = "0";
      break;
    case write_value::kind::one:
      v = "1";
      break;
    case write_value::kind::input:
      v = "PI:" + op.value.input;
      break;
    case write_value::kind::inverted_input:
      v = "~PI:" + op.value.input;
      break;
    }
    return fmt::format( "WRITE r={} c={} v={}", op.at.row, op.at.col, v );
  }
  std::string operator()( hnor_op const& op ) const
  {
    return fmt::format( "HNOR rows={} src={} dst={}", join( op.rows ), join( op.src_cols ), op.dst_col );
  }
  std::string operator()( vnor_op const& op ) const
  {
    return fmt::format( "VNOR col={} src={} dst={}", op.col, join( op.src_rows ), op.dst_row );
  }
  std::string operator()( not_op const& op ) const
  {
    return fmt::format( "NOT {},{} -> {},{}", op.src.row, op.src.col, op.dst.row, op.dst.col );
  }
  std::string operator()( reset_op const& op ) const
  {
    return fmt::format( "RESET {} except={}", op.lines == reset_op::orientation::rows ? "ROWS" : "COLS", join( op.excluded ) );
  }
};

} // namespace

std::string to_text( instruction const& op )
{
  return std::visit( printer{}, op );
}

std::string to_text( stream_entry const& entry )
{
  return fmt::format( "C{} {}", entry.cycle, to_text( entry.op ) );
}

std::string to_text( instruction_stream const& stream )
{
  std::string out = fmt::format( "XBAR {} {}\n", stream.rows(), stream.cols() );
  for ( auto const& po : stream.outputs() )
  {
    out += fmt::format( "PO {} r={} c={}\n", po.name, po.at.row, po.at.col );
  }
  for ( auto const& e : stream.entries() )
  {
    out += to_text( e );
    out += '\n';
  }
  return out;
}

namespace
{

class line_parser
{
public:
  line_parser( std::size_t number, std::string_view text ) : number_( number )
  {
    std::size_t pos = 0u;
    while ( true )
    {
      auto const next = text.find( ' ', pos );
      auto const token = text.substr( pos, next == std::string_view::npos ? std::string_view::npos : next - pos );
      if ( token.empty() )
      {
        fail( "unexpected space" );
      }
      tokens_.push_back( token );
      if ( next == std::string_view::npos )
      {
        break;
      }
      pos = next + 1u;
    }
  }

  std::size_t size() const { return tokens_.size(); }
  std::string_view operator[]( std::size_t i ) const { return tokens_.at( i ); }

  [[noreturn]] void fail( std::string const& message ) const { throw parse_error( number_, message ); }

  void expect_size( std::size_t n ) const
  {
    if ( tokens_.size() != n )
    {
      fail( fmt::format( "expected {} fields, got {}", n, tokens_.size() ) );
    }
  }

  int integer( std::string_view s ) const
  {
    int v = 0;
    auto [ptr, ec] = std::from_chars( s.data(), s.data() + s.size(), v );
    if ( ec != std::errc{} || ptr != s.data() + s.size() || s.empty() || ( s.size() > 1u && s[0] == '0' ) )
    {
      fail( "invalid integer '" + std::string( s ) + "'" );
    }
    return v;
  }

  std::string_view keyed( std::size_t i, std::string_view key ) const
  {
    auto tok = ( *this )[i];
    if ( tok.substr( 0, key.size() ) != key )
    {
      fail( "expected '" + std::string( key ) + "'" );
    }
    return tok.substr( key.size() );
  }

  std::vector<int> set( std::string_view s, bool allow_empty ) const
  {
    if ( s.size() < 2u || s.front() != '{' || s.back() != '}' )
    {
      fail( "expected {...}" );
    }
    s = s.substr( 1, s.size() - 2u );
    std::vector<int> out;
    while ( !s.empty() )
    {
      auto comma = s.find( ',' );
      out.push_back( integer( s.substr( 0, comma ) ) );
      if ( comma == std::string_view::npos )
      {
        break;
      }
      s = s.substr( comma + 1u );
      if ( s.empty() )
      {
        fail( "trailing comma in set" );
      }
    }
    if ( out.empty() && !allow_empty )
    {
      fail( "set must not be empty" );
    }
    for ( std::size_t i = 1; i < out.size(); ++i )
    {
      if ( out[i] <= out[i - 1] )
      {
        fail( "set must be strictly ascending" );
      }
    }
    return out;
  }

  coord pair( std::string_view s ) const
  {
    auto comma = s.find( ',' );
    if ( comma == std::string_view::npos )
    {
      fail( "expected <row>,<col>" );
    }
    return { integer( s.substr( 0, comma ) ), integer( s.substr( comma + 1u ) ) };
  }

private:
  std::size_t number_;
  std::vector<std::string_view> tokens_;
};

} // namespace

instruction_stream parse_stream( std::string_view text )
{
  std::istringstream in{ std::string( text ) };
  std::string raw;
  std::size_t number = 0u;
  std::optional<instruction_stream> stream;
  std::vector<std::string> inputs;
  std::set<std::string, std::less<>> seen_inputs;

  while ( std::getline( in, raw ) )
  {
    ++number;
    if ( !raw.empty() && raw.back() == '\r' )
    {
      raw.pop_back();
    }
    if ( raw.empty() )
    {
      continue;
    }
    line_parser line( number, raw );
    auto const head = line[0];

    if ( head == "XBAR" )
    {
      line.expect_size( 3u );
      if ( stream )
      {
        line.fail( "duplicate XBAR header" );
      }
      stream.emplace( line.integer( line[1] ), line.integer( line[2] ) );
      continue;
    }
    if ( !stream )
    {
      line.fail( "expected XBAR header first" );
    }
    if ( head == "PO" )
    {
      line.expect_size( 4u );
      stream->add_output( std::string( line[1] ), { line.integer( line.keyed( 2, "r=" ) ), line.integer( line.keyed( 3, "c=" ) ) } );
      continue;
    }
    if ( head.size() < 2u || head[0] != 'C' )
    {
      line.fail( "expected C<cycle>" );
    }
    auto const cycle = static_cast<std::size_t>( line.integer( head.substr( 1 ) ) );
    if ( line.size() < 2u )
    {
      line.fail( "missing opcode" );
    }
    auto const opcode = line[1];
    instruction op;
    if ( opcode == "WRITE" )
    {
      line.expect_size( 5u );
      write_op w{ { line.integer( line.keyed( 2, "r=" ) ), line.integer( line.keyed( 3, "c=" ) ) }, {} };
      auto v = line.keyed( 4, "v=" );
      if ( v == "0" || v == "1" )
      {
        w.value = write_value::constant( v == "1" );
      }
      else
      {
        bool const inverted = !v.empty() && v[0] == '~';
        if ( inverted )
        {
          v.remove_prefix( 1 );
        }
        if ( v.substr( 0, 3 ) != "PI:" || v.size() == 3u )
        {
          line.fail( "invalid WRITE value" );
        }
        auto name = std::string( v.substr( 3 ) );
        if ( seen_inputs.insert( name ).second )
        {
          inputs.push_back( name );
        }
        w.value = write_value::literal( std::move( name ), inverted );
      }
      op = std::move( w );
    }
    else if ( opcode == "HNOR" )
    {
      line.expect_size( 5u );
      op = hnor_op{ line.set( line.keyed( 2, "rows=" ), false ), line.set( line.keyed( 3, "src=" ), false ),
                    line.integer( line.keyed( 4, "dst=" ) ) };
    }
    else if ( opcode == "VNOR" )
    {
      line.expect_size( 5u );
      op = vnor_op{ line.integer( line.keyed( 2, "col=" ) ), line.set( line.keyed( 3, "src=" ), false ),
                    line.integer( line.keyed( 4, "dst=" ) ) };
    }
    else if ( opcode == "NOT" )
    {
      line.expect_size( 5u );
      if ( line[3] != "->" )
      {
        line.fail( "expected '->'" );
      }
      op = not_op{ line.pair( line[2] ), line.pair( line[4] ) };
    }
    else if ( opcode == "RESET" )
    {
      line.expect_size( 4u );
      reset_op r;
      if ( line[2] == "ROWS" )
      {
        r.lines = reset_op::orientation::rows;
      }
      else if ( line[2] == "COLS" )
      {
        r.lines = reset_op::orientation::cols;
      }
      else
      {
        line.fail( "expected ROWS or COLS" );
      }
      r.excluded = line.set( line.keyed( 3, "except=" ), true );
      op = std::move( r );
    }
    else
    {
      line.fail( "unknown opcode '" + std::string( opcode ) + "'" );
    }

    if ( !stream->entries().empty() && cycle <= stream->entries().back().cycle )
    {
      line.fail( "cycle indices must be strictly increasing" );
    }
    auto tag = default_provenance( op );
    stream->append_at( cycle, std::move( op ), tag );
  }

  if ( !stream )
  {
    throw parse_error( 0u, "empty stream: missing XBAR header" );
  }

  /* NOTs landing on an output cell are output inversions, all others copies */
  instruction_stream result( stream->rows(), stream->cols() );
  result.set_inputs( std::move( inputs ) );
  for ( auto const& po : stream->outputs() )
  {
    result.add_output( po.name, po.at );
  }
  for ( auto const& e : stream->entries() )
  {
    auto tag = e.tag;
    if ( auto const* n = std::get_if<not_op>( &e.op ) )
    {
      bool const at_output = std::any_of( stream->outputs().begin(), stream->outputs().end(),
                                          [&]( auto const& po ) { return po.at == n->dst; } );
      tag = at_output ? provenance::compute : provenance::copy;
    }
    result.append_at( e.cycle, e.op, tag );
  }
  return result;
}

} // namespace magicmap
