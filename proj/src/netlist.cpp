/*!
  \file netlist.cpp
  \brief BLIF front-end, LUT graph construction and reference evaluation
*/

#include <magicmap/netlist.hpp>

#include <magicmap/errors.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <istream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace magicmap
{

/* sop_cover */

std::optional<bool> sop_cover::constant_value() const
{
  if ( cubes.empty() )
  {
    return false;
  }
  for ( auto const& cube : cubes )
  {
    if ( std::all_of( cube.begin(), cube.end(), []( auto m ) { return m == literal_mark::dont_care; } ) )
    {
      return true;
    }
  }
  return std::nullopt;
}

bool sop_cover::evaluate( std::span<const bool> values ) const
{
  for ( auto const& cube : cubes )
  {
    bool match = true;
    for ( std::size_t i = 0; i < cube.size() && match; ++i )
    {
      if ( cube[i] == literal_mark::one )
      {
        match = values[i];
      }
      else if ( cube[i] == literal_mark::zero )
      {
        match = !values[i];
      }
    }
    if ( match )
    {
      return true;
    }
  }
  return false;
}

std::uint64_t sop_cover::evaluate_lanes( std::span<const std::uint64_t> values ) const
{
  std::uint64_t result = 0u;
  for ( auto const& cube : cubes )
  {
    std::uint64_t term = ~std::uint64_t{ 0 };
    for ( std::size_t i = 0; i < cube.size(); ++i )
    {
      if ( cube[i] == literal_mark::one )
      {
        term &= values[i];
      }
      else if ( cube[i] == literal_mark::zero )
      {
        term &= ~values[i];
      }
    }
    result |= term;
  }
  return result;
}

/* netlist */

std::optional<std::size_t> netlist::find_node( std::string_view signal ) const
{
  for ( std::size_t i = 0; i < nodes.size(); ++i )
  {
    if ( nodes[i].name == signal )
    {
      return i;
    }
  }
  return std::nullopt;
}

bool netlist::is_input( std::string_view signal ) const
{
  return std::find( inputs.begin(), inputs.end(), signal ) != inputs.end();
}

namespace
{

struct logical_line
{
  std::size_t number{ 0 };
  std::vector<std::string> tokens;
};

std::vector<logical_line> split_lines( std::istream& in )
{
  std::vector<logical_line> lines;
  std::string physical;
  std::string pending;
  std::size_t number = 0u;
  std::size_t start = 0u;
  while ( std::getline( in, physical ) )
  {
    ++number;
    if ( auto hash = physical.find( '#' ); hash != std::string::npos )
    {
      physical.erase( hash );
    }
    while ( !physical.empty() && ( physical.back() == '\r' || physical.back() == ' ' || physical.back() == '\t' ) )
    {
      physical.pop_back();
    }
    if ( pending.empty() )
    {
      start = number;
    }
    if ( !physical.empty() && physical.back() == '\\' )
    {
      physical.pop_back();
      pending += physical;
      pending += ' ';
      continue;
    }
    pending += physical;

    logical_line line{ start, {} };
    std::istringstream tokens( pending );
    for ( std::string tok; tokens >> tok; )
    {
      line.tokens.push_back( std::move( tok ) );
    }
    pending.clear();
    if ( !line.tokens.empty() )
    {
      lines.push_back( std::move( line ) );
    }
  }
  if ( !pending.empty() )
  {
    throw parse_error( start, "dangling line continuation at end of input" );
  }
  return lines;
}

literal_mark parse_mark( char c, std::size_t line )
{
  switch ( c )
  {
  case '0':
    return literal_mark::zero;
  case '1':
    return literal_mark::one;
  case '-':
    return literal_mark::dont_care;
  default:
    throw parse_error( line, std::string( "invalid cover character '" ) + c + "'" );
  }
}

char mark_char( literal_mark m )
{
  switch ( m )
  {
  case literal_mark::zero:
    return '0';
  case literal_mark::one:
    return '1';
  default:
    return '-';
  }
}

struct source_lines
{
  std::size_t outputs{ 0 };
  std::vector<std::size_t> nodes;
};

void check_declarations( netlist const& ntk, source_lines const& where )
{
  std::unordered_set<std::string> inputs;
  for ( auto const& pi : ntk.inputs )
  {
    if ( !inputs.insert( pi ).second )
    {
      throw parse_error( 0u, "input '" + pi + "' declared twice" );
    }
  }

  std::unordered_map<std::string, std::size_t> defined;
  for ( std::size_t i = 0; i < ntk.nodes.size(); ++i )
  {
    auto const& node = ntk.nodes[i];
    auto const line = i < where.nodes.size() ? where.nodes[i] : 0u;
    if ( inputs.count( node.name ) )
    {
      throw parse_error( line, "signal '" + node.name + "' is both an input and a node" );
    }
    if ( !defined.emplace( node.name, i ).second )
    {
      throw parse_error( line, "signal '" + node.name + "' defined twice" );
    }
  }

  for ( std::size_t i = 0; i < ntk.nodes.size(); ++i )
  {
    auto const& node = ntk.nodes[i];
    auto const line = i < where.nodes.size() ? where.nodes[i] : 0u;
    std::unordered_set<std::string_view> seen;
    for ( auto const& var : node.function.variables )
    {
      if ( !seen.insert( var ).second )
      {
        throw parse_error( line, "fan-in '" + var + "' repeated in node '" + node.name + "'" );
      }
      if ( !inputs.count( var ) && !defined.count( var ) )
      {
        throw parse_error( line, "undeclared signal '" + var + "'" );
      }
    }
    for ( auto const& cube : node.function.cubes )
    {
      if ( cube.size() != node.function.variables.size() )
      {
        throw parse_error( line, "cube width does not match fan-in count of '" + node.name + "'" );
      }
    }
  }

  std::unordered_set<std::string> outputs;
  for ( auto const& po : ntk.outputs )
  {
    if ( !outputs.insert( po ).second )
    {
      throw parse_error( where.outputs, "output '" + po + "' declared twice" );
    }
    if ( !inputs.count( po ) && !defined.count( po ) )
    {
      throw parse_error( where.outputs, "undeclared signal '" + po + "'" );
    }
  }
}

} // namespace

std::vector<std::size_t> topological_order( netlist const& ntk )
{
  std::unordered_map<std::string_view, std::size_t> index;
  for ( std::size_t i = 0; i < ntk.nodes.size(); ++i )
  {
    index.emplace( ntk.nodes[i].name, i );
  }

  /* iterative DFS keeps declaration order among independent nodes */
  enum class mark : std::uint8_t { none, active, done };
  std::vector<mark> state( ntk.nodes.size(), mark::none );
  std::vector<std::size_t> order;
  order.reserve( ntk.nodes.size() );

  for ( std::size_t root = 0; root < ntk.nodes.size(); ++root )
  {
    if ( state[root] != mark::none )
    {
      continue;
    }
    std::vector<std::pair<std::size_t, std::size_t>> stack{ { root, 0u } };
    state[root] = mark::active;
    while ( !stack.empty() )
    {
      auto& [node, next] = stack.back();
      auto const& vars = ntk.nodes[node].function.variables;
      if ( next < vars.size() )
      {
        auto it = index.find( vars[next++] );
        if ( it == index.end() )
        {
          continue;
        }
        auto const child = it->second;
        if ( state[child] == mark::active )
        {
          throw parse_error( 0u, "combinational cycle through '" + ntk.nodes[child].name + "'" );
        }
        if ( state[child] == mark::none )
        {
          state[child] = mark::active;
          stack.emplace_back( child, 0u );
        }
        continue;
      }
      state[node] = mark::done;
      order.push_back( node );
      stack.pop_back();
    }
  }
  return order;
}

void validate( netlist const& ntk )
{
  check_declarations( ntk, {} );
  topological_order( ntk );
}

netlist parse_blif( std::istream& in )
{
  auto const lines = split_lines( in );

  netlist ntk;
  source_lines where;
  bool has_model = false;
  bool ended = false;
  std::optional<std::size_t> current; /* node receiving cover rows */

  for ( auto const& line : lines )
  {
    auto const& tok = line.tokens;
    if ( tok[0][0] == '.' )
    {
      current.reset();
      auto const& directive = tok[0];
      if ( ended )
      {
        if ( directive == ".model" )
        {
          throw parse_error( line.number, "multiple models are not supported" );
        }
        throw parse_error( line.number, "content after .end" );
      }
      if ( directive == ".model" )
      {
        if ( has_model )
        {
          throw parse_error( line.number, "multiple models are not supported" );
        }
        if ( tok.size() != 2u )
        {
          throw parse_error( line.number, ".model expects exactly one name" );
        }
        has_model = true;
        ntk.name = tok[1];
        continue;
      }
      if ( !has_model )
      {
        throw parse_error( line.number, "expected .model before " + directive );
      }
      if ( directive == ".inputs" )
      {
        ntk.inputs.insert( ntk.inputs.end(), tok.begin() + 1, tok.end() );
      }
      else if ( directive == ".outputs" )
      {
        ntk.outputs.insert( ntk.outputs.end(), tok.begin() + 1, tok.end() );
        where.outputs = line.number;
      }
      else if ( directive == ".names" )
      {
        if ( tok.size() < 2u )
        {
          throw parse_error( line.number, ".names needs an output signal" );
        }
        netlist_node node;
        node.name = tok.back();
        node.function.variables.assign( tok.begin() + 1, tok.end() - 1 );
        ntk.nodes.push_back( std::move( node ) );
        where.nodes.push_back( line.number );
        current = ntk.nodes.size() - 1u;
      }
      else if ( directive == ".end" )
      {
        ended = true;
      }
      else
      {
        throw parse_error( line.number, "unsupported directive " + directive );
      }
      continue;
    }

    if ( !current )
    {
      throw parse_error( line.number, "cover row outside of .names" );
    }
    auto& cover = ntk.nodes[*current].function;
    auto const width = cover.variables.size();
    std::string_view out_bit;
    std::vector<literal_mark> cube;
    if ( width == 0u )
    {
      if ( tok.size() != 1u )
      {
        throw parse_error( line.number, "constant cover row must be a single output bit" );
      }
      out_bit = tok[0];
    }
    else
    {
      if ( tok.size() != 2u || tok[0].size() != width )
      {
        throw parse_error( line.number, "cover row must have " + std::to_string( width ) + " input marks and an output bit" );
      }
      for ( char c : tok[0] )
      {
        cube.push_back( parse_mark( c, line.number ) );
      }
      out_bit = tok[1];
    }
    if ( out_bit == "0" )
    {
      throw parse_error( line.number, "off-set cover rows are not supported" );
    }
    if ( out_bit != "1" )
    {
      throw parse_error( line.number, "output bit must be 1" );
    }
    cover.cubes.push_back( std::move( cube ) );
  }

  if ( !has_model )
  {
    throw parse_error( 0u, "missing .model" );
  }

  check_declarations( ntk, where );
  topological_order( ntk );
  return ntk;
}

netlist parse_blif( std::string_view text )
{
  std::istringstream in{ std::string( text ) };
  return parse_blif( in );
}

netlist read_blif_file( std::string const& path )
{
  std::ifstream in( path );
  if ( !in )
  {
    throw parse_error( 0u, "cannot open '" + path + "'" );
  }
  return parse_blif( in );
}

std::string write_blif( netlist const& ntk )
{
  std::ostringstream out;
  out << ".model " << ntk.name << '\n';
  out << ".inputs";
  for ( auto const& pi : ntk.inputs )
  {
    out << ' ' << pi;
  }
  out << "\n.outputs";
  for ( auto const& po : ntk.outputs )
  {
    out << ' ' << po;
  }
  out << '\n';
  for ( auto const& node : ntk.nodes )
  {
    out << ".names";
    for ( auto const& var : node.function.variables )
    {
      out << ' ' << var;
    }
    out << ' ' << node.name << '\n';
    for ( auto const& cube : node.function.cubes )
    {
      if ( !cube.empty() )
      {
        for ( auto m : cube )
        {
          out << mark_char( m );
        }
        out << ' ';
      }
      out << "1\n";
    }
  }
  out << ".end\n";
  return out.str();
}

/* LUT graph construction */

namespace
{

/* restricts `cover` to `var = value` and removes the variable */
sop_cover substitute( sop_cover const& cover, std::size_t var, bool value )
{
  sop_cover result;
  for ( std::size_t i = 0; i < cover.variables.size(); ++i )
  {
    if ( i != var )
    {
      result.variables.push_back( cover.variables[i] );
    }
  }
  auto const conflicting = value ? literal_mark::zero : literal_mark::one;
  for ( auto const& cube : cover.cubes )
  {
    if ( cube[var] == conflicting )
    {
      continue;
    }
    auto reduced = cube;
    reduced.erase( reduced.begin() + static_cast<std::ptrdiff_t>( var ) );
    result.cubes.push_back( std::move( reduced ) );
  }
  return result;
}

sop_cover drop_unused_variables( sop_cover cover )
{
  for ( std::size_t i = cover.variables.size(); i-- > 0u; )
  {
    bool used = std::any_of( cover.cubes.begin(), cover.cubes.end(),
                             [i]( auto const& cube ) { return cube[i] != literal_mark::dont_care; } );
    if ( !used )
    {
      cover.variables.erase( cover.variables.begin() + static_cast<std::ptrdiff_t>( i ) );
      for ( auto& cube : cover.cubes )
      {
        cube.erase( cube.begin() + static_cast<std::ptrdiff_t>( i ) );
      }
    }
  }
  return cover;
}

struct literal
{
  std::string var;
  bool positive;
};

sop_cover and_cover( std::vector<literal> const& lits )
{
  sop_cover cover;
  std::vector<literal_mark> cube;
  for ( auto const& l : lits )
  {
    cover.variables.push_back( l.var );
    cube.push_back( l.positive ? literal_mark::one : literal_mark::zero );
  }
  cover.cubes.push_back( std::move( cube ) );
  return cover;
}

sop_cover or_cover( std::vector<literal> const& terms )
{
  sop_cover cover;
  for ( auto const& t : terms )
  {
    if ( std::find( cover.variables.begin(), cover.variables.end(), t.var ) == cover.variables.end() )
    {
      cover.variables.push_back( t.var );
    }
  }
  for ( auto const& t : terms )
  {
    std::vector<literal_mark> cube( cover.variables.size(), literal_mark::dont_care );
    auto pos = std::find( cover.variables.begin(), cover.variables.end(), t.var ) - cover.variables.begin();
    cube[static_cast<std::size_t>( pos )] = t.positive ? literal_mark::one : literal_mark::zero;
    cover.cubes.push_back( std::move( cube ) );
  }
  return cover;
}

class decomposer
{
public:
  decomposer( unsigned k, std::set<std::string> used_names )
      : k_( k ), names_( std::move( used_names ) )
  {
  }

  /* appends the nodes implementing `name = cover`; the root keeps `name` */
  void run( std::string const& name, sop_cover const& cover, std::vector<netlist_node>& out )
  {
    if ( cover.variables.size() <= k_ )
    {
      out.push_back( { name, cover } );
      return;
    }

    std::vector<std::vector<literal>> cubes;
    for ( auto const& cube : cover.cubes )
    {
      std::vector<literal> lits;
      for ( std::size_t i = 0; i < cube.size(); ++i )
      {
        if ( cube[i] != literal_mark::dont_care )
        {
          lits.push_back( { cover.variables[i], cube[i] == literal_mark::one } );
        }
      }
      cubes.push_back( std::move( lits ) );
    }

    if ( cubes.size() == 1u )
    {
      emit_and( name, cubes.front(), name, out );
      return;
    }

    std::vector<literal> terms;
    for ( auto const& lits : cubes )
    {
      if ( lits.size() == 1u )
      {
        terms.push_back( lits.front() );
        continue;
      }
      auto const fresh = fresh_name( name );
      emit_and( name, lits, fresh, out );
      terms.push_back( { fresh, true } );
    }
    while ( terms.size() > k_ )
    {
      std::vector<literal> head( terms.begin(), terms.begin() + k_ );
      auto const fresh = fresh_name( name );
      out.push_back( { fresh, or_cover( head ) } );
      terms.erase( terms.begin(), terms.begin() + k_ );
      terms.insert( terms.begin(), literal{ fresh, true } );
    }
    out.push_back( { name, or_cover( terms ) } );
  }

private:
  void emit_and( std::string const& base, std::vector<literal> lits, std::string const& root, std::vector<netlist_node>& out )
  {
    while ( lits.size() > k_ )
    {
      std::vector<literal> head( lits.begin(), lits.begin() + k_ );
      auto const fresh = fresh_name( base );
      out.push_back( { fresh, and_cover( head ) } );
      lits.erase( lits.begin(), lits.begin() + k_ );
      lits.insert( lits.begin(), literal{ fresh, true } );
    }
    out.push_back( { root, and_cover( lits ) } );
  }

  std::string fresh_name( std::string const& base )
  {
    for ( ;; )
    {
      auto candidate = base + "__d" + std::to_string( counter_++ );
      if ( names_.insert( candidate ).second )
      {
        return candidate;
      }
    }
  }

  unsigned k_;
  std::set<std::string> names_;
  std::size_t counter_{ 0 };
};

} // namespace

std::optional<std::size_t> lut_graph::find( std::string_view lut_name ) const
{
  for ( std::size_t i = 0; i < nodes.size(); ++i )
  {
    if ( nodes[i].name == lut_name )
    {
      return i;
    }
  }
  return std::nullopt;
}

std::vector<std::vector<std::size_t>> lut_graph::fanouts() const
{
  std::vector<std::vector<std::size_t>> result( nodes.size() );
  for ( std::size_t i = 0; i < nodes.size(); ++i )
  {
    for ( auto const& f : nodes[i].fanins )
    {
      if ( f.type == signal_ref::kind::node )
      {
        result[f.index].push_back( i );
      }
    }
  }
  return result;
}

int lut_graph::depth() const
{
  int d = 0;
  for ( auto const& n : nodes )
  {
    d = std::max( d, n.level );
  }
  return d;
}

lut_graph build_lut_graph( netlist const& ntk, unsigned k )
{
  if ( k < 2u || k > 8u )
  {
    throw netlist_error( "k must be in [2, 8], got " + std::to_string( k ) );
  }
  validate( ntk );

  auto const order = topological_order( ntk );

  /* constant propagation in dependency order */
  std::unordered_map<std::string, bool> constants;
  std::vector<sop_cover> covers( ntk.nodes.size() );
  for ( auto idx : order )
  {
    auto cover = ntk.nodes[idx].function;
    bool touched = false;
    for ( std::size_t i = cover.variables.size(); i-- > 0u; )
    {
      if ( auto it = constants.find( cover.variables[i] ); it != constants.end() )
      {
        cover = substitute( cover, i, it->second );
        touched = true;
      }
    }
    if ( touched )
    {
      cover = drop_unused_variables( std::move( cover ) );
    }
    if ( auto value = cover.constant_value() )
    {
      constants.emplace( ntk.nodes[idx].name, *value );
    }
    covers[idx] = std::move( cover );
  }

  /* keep only the non-constant cones of the outputs */
  std::unordered_map<std::string_view, std::size_t> node_index;
  for ( std::size_t i = 0; i < ntk.nodes.size(); ++i )
  {
    node_index.emplace( ntk.nodes[i].name, i );
  }
  std::vector<bool> needed( ntk.nodes.size(), false );
  std::vector<std::size_t> stack;
  for ( auto const& po : ntk.outputs )
  {
    if ( auto it = node_index.find( po ); it != node_index.end() && !constants.count( po ) )
    {
      stack.push_back( it->second );
    }
  }
  while ( !stack.empty() )
  {
    auto const idx = stack.back();
    stack.pop_back();
    if ( needed[idx] )
    {
      continue;
    }
    needed[idx] = true;
    for ( auto const& var : covers[idx].variables )
    {
      if ( auto it = node_index.find( var ); it != node_index.end() )
      {
        stack.push_back( it->second );
      }
    }
  }

  /* k-bounded decomposition */
  std::set<std::string> used_names( ntk.inputs.begin(), ntk.inputs.end() );
  for ( auto const& n : ntk.nodes )
  {
    used_names.insert( n.name );
  }
  decomposer split( k, std::move( used_names ) );
  std::vector<netlist_node> bounded;
  for ( auto idx : order )
  {
    if ( needed[idx] )
    {
      split.run( ntk.nodes[idx].name, covers[idx], bounded );
    }
  }

  /* levelize */
  std::unordered_map<std::string, int> level;
  std::vector<int> node_level;
  for ( auto const& n : bounded )
  {
    int l = 0;
    for ( auto const& var : n.function.variables )
    {
      if ( auto it = level.find( var ); it != level.end() )
      {
        l = std::max( l, it->second );
      }
    }
    level[n.name] = l + 1;
    node_level.push_back( l + 1 );
  }
  std::vector<std::size_t> perm( bounded.size() );
  for ( std::size_t i = 0; i < perm.size(); ++i )
  {
    perm[i] = i;
  }
  std::stable_sort( perm.begin(), perm.end(), [&]( auto a, auto b ) { return node_level[a] < node_level[b]; } );

  lut_graph graph;
  graph.name = ntk.name;
  graph.k = k;
  graph.inputs = ntk.inputs;

  std::unordered_map<std::string, std::size_t> lut_index;
  std::unordered_map<std::string_view, std::size_t> input_index;
  for ( std::size_t i = 0; i < ntk.inputs.size(); ++i )
  {
    input_index.emplace( ntk.inputs[i], i );
  }
  for ( auto p : perm )
  {
    lut_node node;
    node.name = bounded[p].name;
    node.function = bounded[p].function;
    node.level = node_level[p];
    for ( auto const& var : node.function.variables )
    {
      if ( auto it = lut_index.find( var ); it != lut_index.end() )
      {
        node.fanins.push_back( { signal_ref::kind::node, it->second, false } );
      }
      else
      {
        node.fanins.push_back( { signal_ref::kind::input, input_index.at( var ), false } );
      }
    }
    lut_index.emplace( node.name, graph.nodes.size() );
    graph.nodes.push_back( std::move( node ) );
  }

  for ( auto const& po : ntk.outputs )
  {
    primary_output out{ po, {} };
    if ( auto c = constants.find( po ); c != constants.end() )
    {
      out.driver = { signal_ref::kind::constant, 0u, c->second };
    }
    else if ( auto it = lut_index.find( po ); it != lut_index.end() )
    {
      out.driver = { signal_ref::kind::node, it->second, false };
      graph.nodes[it->second].is_output = true;
    }
    else
    {
      out.driver = { signal_ref::kind::input, input_index.at( po ), false };
    }
    graph.outputs.push_back( std::move( out ) );
  }
  return graph;
}

/* evaluation */

namespace
{

std::vector<std::uint64_t> input_lanes_from( std::vector<std::string> const& inputs, assignment const& values )
{
  std::vector<std::uint64_t> lanes;
  lanes.reserve( inputs.size() );
  for ( auto const& pi : inputs )
  {
    auto it = values.find( pi );
    if ( it == values.end() )
    {
      throw netlist_error( "missing value for input '" + pi + "'" );
    }
    lanes.push_back( it->second ? 1u : 0u );
  }
  return lanes;
}

assignment outputs_from( std::vector<std::string> const& names, std::vector<std::uint64_t> const& lanes )
{
  assignment result;
  for ( std::size_t i = 0; i < names.size(); ++i )
  {
    result[names[i]] = ( lanes[i] & 1u ) != 0u;
  }
  return result;
}

} // namespace

std::vector<std::uint64_t> evaluate_lanes( netlist const& ntk, std::span<const std::uint64_t> input_lanes )
{
  if ( input_lanes.size() != ntk.inputs.size() )
  {
    throw netlist_error( "expected " + std::to_string( ntk.inputs.size() ) + " input lanes" );
  }
  std::unordered_map<std::string_view, std::uint64_t> value;
  for ( std::size_t i = 0; i < ntk.inputs.size(); ++i )
  {
    value[ntk.inputs[i]] = input_lanes[i];
  }
  std::vector<std::uint64_t> args;
  for ( auto idx : topological_order( ntk ) )
  {
    auto const& node = ntk.nodes[idx];
    args.clear();
    for ( auto const& var : node.function.variables )
    {
      args.push_back( value.at( var ) );
    }
    value[node.name] = node.function.evaluate_lanes( args );
  }
  std::vector<std::uint64_t> result;
  for ( auto const& po : ntk.outputs )
  {
    result.push_back( value.at( po ) );
  }
  return result;
}

std::vector<std::uint64_t> evaluate_lanes( lut_graph const& graph, std::span<const std::uint64_t> input_lanes )
{
  if ( input_lanes.size() != graph.inputs.size() )
  {
    throw netlist_error( "expected " + std::to_string( graph.inputs.size() ) + " input lanes" );
  }
  auto fetch = [&]( signal_ref const& s, std::vector<std::uint64_t> const& nodes ) -> std::uint64_t {
    switch ( s.type )
    {
    case signal_ref::kind::input:
      return input_lanes[s.index];
    case signal_ref::kind::node:
      return nodes[s.index];
    default:
      return s.value ? ~std::uint64_t{ 0 } : 0u;
    }
  };
  std::vector<std::uint64_t> nodes( graph.nodes.size(), 0u );
  std::vector<std::uint64_t> args;
  for ( std::size_t i = 0; i < graph.nodes.size(); ++i )
  {
    args.clear();
    for ( auto const& f : graph.nodes[i].fanins )
    {
      args.push_back( fetch( f, nodes ) );
    }
    nodes[i] = graph.nodes[i].function.evaluate_lanes( args );
  }
  std::vector<std::uint64_t> result;
  for ( auto const& po : graph.outputs )
  {
    result.push_back( fetch( po.driver, nodes ) );
  }
  return result;
}

assignment evaluate( netlist const& ntk, assignment const& inputs )
{
  return outputs_from( ntk.outputs, evaluate_lanes( ntk, input_lanes_from( ntk.inputs, inputs ) ) );
}

assignment evaluate( lut_graph const& graph, assignment const& inputs )
{
  std::vector<std::string> names;
  for ( auto const& po : graph.outputs )
  {
    names.push_back( po.name );
  }
  return outputs_from( names, evaluate_lanes( graph, input_lanes_from( graph.inputs, inputs ) ) );
}

} // namespace magicmap
