/*!
  \file placement.cpp
  \brief Group selection, band stacking, selective reset and the mapping loop
*/

#include <magicmap/placement.hpp>

#include <magicmap/alignment.hpp>
#include <magicmap/errors.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <variant>

namespace magicmap
{

/* output directory */

lut_output const* output_directory::find( std::size_t lut ) const
{
  auto it = outputs_.find( lut );
  return it == outputs_.end() ? nullptr : &it->second;
}

void output_directory::consume( std::size_t lut )
{
  auto it = outputs_.find( lut );
  if ( it != outputs_.end() && it->second.pending_fanouts > 0u )
  {
    --it->second.pending_fanouts;
  }
}

void output_directory::relocate( coord from, coord to )
{
  for ( auto& [lut, out] : outputs_ )
  {
    if ( out.inverted == from )
    {
      out.inverted = to;
    }
    if ( out.true_cell == from )
    {
      out.true_cell = to;
    }
  }
  std::replace( pinned_.begin(), pinned_.end(), from, to );
}

bool output_directory::live( std::size_t lut ) const
{
  auto const* out = find( lut );
  return out != nullptr && out->pending_fanouts > 0u;
}

std::vector<coord> output_directory::live_cells() const
{
  std::vector<coord> cells = pinned_;
  for ( auto const& [lut, out] : outputs_ )
  {
    if ( out.pending_fanouts > 0u )
    {
      cells.push_back( out.inverted );
    }
    if ( out.true_cell )
    {
      cells.push_back( *out.true_cell );
    }
  }
  std::sort( cells.begin(), cells.end() );
  cells.erase( std::unique( cells.begin(), cells.end() ), cells.end() );
  return cells;
}

/* group selection and reset */

std::vector<std::size_t> select_group( lut_graph const& graph, std::vector<bool> const& scheduled )
{
  std::optional<std::pair<int, std::size_t>> best; /* (level, width) */
  for ( std::size_t i = 0; i < graph.nodes.size(); ++i )
  {
    if ( scheduled[i] )
    {
      continue;
    }
    auto const& n = graph.nodes[i];
    if ( !best || n.level < best->first || ( n.level == best->first && n.width() > best->second ) )
    {
      best = { n.level, n.width() };
    }
  }
  std::vector<std::size_t> group;
  if ( !best )
  {
    return group;
  }
  for ( std::size_t i = 0; i < graph.nodes.size(); ++i )
  {
    if ( !scheduled[i] && graph.nodes[i].level == best->first && graph.nodes[i].width() == best->second )
    {
      group.push_back( i );
    }
  }
  return group;
}

reset_op select_reset( int rows, int cols, std::vector<coord> const& live )
{
  if ( live.empty() )
  {
    return { reset_op::orientation::rows, {} };
  }
  std::set<int> live_rows, live_cols;
  for ( auto const& c : live )
  {
    live_rows.insert( c.row );
    live_cols.insert( c.col );
  }
  auto const blocked_by_rows = live_rows.size() * static_cast<std::size_t>( cols );
  auto const blocked_by_cols = live_cols.size() * static_cast<std::size_t>( rows );
  if ( blocked_by_rows < blocked_by_cols )
  {
    return { reset_op::orientation::rows, { live_rows.begin(), live_rows.end() } };
  }
  return { reset_op::orientation::cols, { live_cols.begin(), live_cols.end() } };
}

void apply_reset( occupancy& occ, reset_op const& reset )
{
  std::set<int> const keep( reset.excluded.begin(), reset.excluded.end() );
  auto const along_rows = reset.lines == reset_op::orientation::rows;
  for ( int r = 1; r <= occ.rows(); ++r )
  {
    for ( int c = 1; c <= occ.cols(); ++c )
    {
      if ( !keep.count( along_rows ? r : c ) )
      {
        occ.set( { r, c }, slot::free );
      }
    }
  }
}

/* placement */

namespace
{

std::vector<int> find_band( occupancy const& occ, output_directory const& dir, int start_col, std::size_t width )
{
  std::set<int> live_cols;
  for ( auto const& c : dir.live_cells() )
  {
    live_cols.insert( c.col );
  }
  std::vector<int> band;
  for ( int c = start_col; c <= occ.cols() && band.size() < width; ++c )
  {
    if ( !live_cols.count( c ) )
    {
      band.push_back( c );
    }
  }
  if ( band.size() < width )
  {
    band.clear();
  }
  return band;
}

bool rectangle_free( occupancy const& occ, int top, int height, std::vector<int> const& columns )
{
  for ( int r = top; r < top + height; ++r )
  {
    for ( auto c : columns )
    {
      if ( !occ.placeable( { r, c } ) )
      {
        return false;
      }
    }
  }
  return true;
}

/* stacks LUTs of `group` into the cursor's columns from its row on, stopping at the first misfit */
std::vector<placed_lut> stack( occupancy& occ, band_cursor& cursor, lut_graph const& graph, std::vector<std::size_t> const& group,
                               unsigned spacing )
{
  std::vector<placed_lut> placed;
  for ( auto idx : group )
  {
    auto const& node = graph.nodes[idx];
    auto const height = static_cast<int>( node.num_cubes() ) + 1;
    std::optional<int> top;
    for ( int r = cursor.next_row; r + height - 1 <= occ.rows(); ++r )
    {
      if ( rectangle_free( occ, r, height, cursor.columns ) )
      {
        top = r;
        break;
      }
    }
    if ( !top )
    {
      break;
    }
    for ( int r = *top; r < *top + height; ++r )
    {
      for ( auto c : cursor.columns )
      {
        occ.set( { r, c }, slot::reserved );
      }
    }
    auto const gap_end = std::min( occ.rows() + 1, *top + height + static_cast<int>( spacing ) );
    for ( int r = *top + height; r < gap_end; ++r )
    {
      for ( auto c : cursor.columns )
      {
        if ( occ.at( { r, c } ) == slot::free )
        {
          occ.set( { r, c }, slot::spacing );
        }
      }
    }
    cursor.next_row = *top + height + static_cast<int>( spacing );
    placed.push_back( { idx, *top, cursor.columns, sop_to_non( node.function, node.name ) } );
  }
  return placed;
}

} // namespace

std::optional<std::vector<placed_lut>> place_group( occupancy& occ, band_cursor& cursor, output_directory const& dir,
                                                    lut_graph const& graph, std::vector<std::size_t> const& group,
                                                    unsigned spacing )
{
  if ( group.empty() )
  {
    return std::vector<placed_lut>{};
  }
  auto const band_width = graph.nodes[group.front()].width() + 1u;
  if ( cursor.columns.size() != band_width )
  {
    cursor.columns = find_band( occ, dir, cursor.start_col, band_width );
  }

  while ( !cursor.columns.empty() )
  {
    auto placed = stack( occ, cursor, graph, group, spacing );
    if ( !placed.empty() )
    {
      return placed;
    }
    cursor.start_col = cursor.columns.back() + 1;
    cursor.next_row = 1;
    cursor.columns = find_band( occ, dir, cursor.start_col, band_width );
  }

  /* no band left: take any columns that have a free rectangle, top to bottom */
  auto const height = static_cast<int>( graph.nodes[group.front()].num_cubes() ) + 1;
  for ( int top = 1; top + height - 1 <= occ.rows(); ++top )
  {
    std::vector<int> columns;
    for ( int c = 1; c <= occ.cols() && columns.size() < band_width; ++c )
    {
      if ( rectangle_free( occ, top, height, { c } ) )
      {
        columns.push_back( c );
      }
    }
    if ( columns.size() == band_width )
    {
      cursor.start_col = columns.front();
      cursor.columns = std::move( columns );
      cursor.next_row = top;
      return stack( occ, cursor, graph, group, spacing );
    }
  }
  return std::nullopt;
}

std::vector<routed_op> emit_group_compute( lut_graph const& graph, std::vector<placed_lut> const& placed )
{
  std::vector<routed_op> ops;
  if ( placed.empty() )
  {
    return ops;
  }
  std::vector<int> product_rows;
  for ( auto const& p : placed )
  {
    for ( int r = p.top_row; r < p.output_row(); ++r )
    {
      product_rows.push_back( r );
    }
  }
  std::sort( product_rows.begin(), product_rows.end() );
  std::vector<int> inputs( placed.front().columns.begin(), placed.front().columns.end() - 1 );
  std::sort( inputs.begin(), inputs.end() );
  ops.push_back( { hnor_op{ product_rows, inputs, placed.front().output_col() }, provenance::compute } );

  for ( auto const& p : placed )
  {
    std::vector<int> rows;
    for ( int r = p.top_row; r < p.output_row(); ++r )
    {
      rows.push_back( r );
    }
    ops.push_back( { vnor_op{ p.output_col(), rows, p.output_row() }, provenance::compute } );
  }
  for ( auto const& p : placed )
  {
    if ( graph.nodes[p.lut].is_output )
    {
      ops.push_back( { not_op{ { p.output_row(), p.output_col() }, { p.output_row(), p.columns.front() } }, provenance::compute } );
    }
  }
  return ops;
}

bool mapping_result::footprint_check() const
{
  return std::all_of( groups.begin(), groups.end(), []( auto const& g ) { return g.claimed_cells == g.expected_cells; } );
}

/* mapping loop */

namespace
{

class mapper
{
public:
  mapper( lut_graph const& graph, map_options const& options )
      : graph_( graph ), options_( options ), occ_( options.rows, options.cols ), stream_( options.rows, options.cols )
  {
    stream_.set_inputs( graph.inputs );
    auto const fanouts = graph.fanouts();
    for ( std::size_t i = 0; i < graph.nodes.size(); ++i )
    {
      std::set<std::size_t> distinct( fanouts[i].begin(), fanouts[i].end() );
      fanout_count_.push_back( distinct.size() );
    }
  }

  mapping_result run()
  {
    check_sizes();
    std::vector<bool> scheduled( graph_.nodes.size(), false );
    while ( true )
    {
      auto group = select_group( graph_, scheduled );
      if ( group.empty() )
      {
        break;
      }
      for ( auto idx : map_group( group ) )
      {
        scheduled[idx] = true;
      }
    }
    place_outputs();
    return { std::move( stream_ ), std::move( groups_ ), resets_ };
  }

private:
  struct snapshot
  {
    occupancy occ;
    output_directory dir;
    band_cursor cursor;
    std::size_t stream_size;
    std::size_t resets;
  };

  void check_sizes() const
  {
    if ( options_.rows < 1 || options_.cols < 1 )
    {
      throw unmappable_error( "crossbar dimensions must be positive" );
    }
    for ( auto const& n : graph_.nodes )
    {
      auto const h = n.num_cubes() + 1u, w = n.width() + 1u;
      if ( h > static_cast<std::size_t>( options_.rows ) || w > static_cast<std::size_t>( options_.cols ) )
      {
        throw unmappable_error( fmt::format( "LUT '{}' needs {}x{} cells, crossbar is {}x{}", n.name, h, w, options_.rows,
                                             options_.cols ) );
      }
    }
  }

  snapshot save() const { return { occ_, dir_, cursor_, stream_.entries().size(), resets_ }; }

  void restore( snapshot const& s )
  {
    occ_ = s.occ;
    dir_ = s.dir;
    cursor_ = s.cursor;
    stream_.truncate( s.stream_size );
    resets_ = s.resets;
  }

  void emit_reset( reset_op const& reset )
  {
    apply_reset( occ_, reset );
    stream_.append( reset, provenance::reset );
    cursor_ = band_cursor{};
    ++resets_;
  }

  /* preferred reset, the other orientation, then both in sequence (only crossings of live lines survive) */
  std::vector<std::vector<reset_op>> reset_plans() const
  {
    auto const live = dir_.live_cells();
    auto const preferred = select_reset( options_.rows, options_.cols, live );
    if ( live.empty() )
    {
      return { { preferred } };
    }
    auto const flip =
        preferred.lines == reset_op::orientation::rows ? reset_op::orientation::cols : reset_op::orientation::rows;
    std::set<int> lines;
    for ( auto const& c : live )
    {
      lines.insert( flip == reset_op::orientation::rows ? c.row : c.col );
    }
    reset_op const other{ flip, { lines.begin(), lines.end() } };
    return { { preferred }, { other }, { preferred, other } };
  }

  /* moves live values into as few columns as possible with two-hop (polarity keeping) copies
     and returns the column reset that keeps exactly those columns */
  std::optional<reset_op> compact_live_values()
  {
    auto const live = dir_.live_cells();
    auto const cols = options_.cols;
    std::vector<std::size_t> live_count( cols + 1, 0u ), free_count( cols + 1, 0u );
    std::set<int> live_cols;
    for ( auto const& c : live )
    {
      ++live_count[c.col];
      live_cols.insert( c.col );
    }
    for ( int r = 1; r <= options_.rows; ++r )
    {
      for ( int c = 1; c <= cols; ++c )
      {
        free_count[c] += occ_.placeable( { r, c } ) ? 1u : 0u;
      }
    }
    std::vector<int> order( cols );
    std::iota( order.begin(), order.end(), 1 );
    std::stable_sort( order.begin(), order.end(), [&]( int a, int b ) {
      return std::pair( live_count[a], free_count[a] ) > std::pair( live_count[b], free_count[b] );
    } );
    std::set<int> keep;
    std::size_t capacity = 0u;
    for ( auto c : order )
    {
      if ( capacity >= live.size() )
      {
        break;
      }
      keep.insert( c );
      capacity += live_count[c] + free_count[c];
    }
    if ( live.empty() || capacity < live.size() || keep.size() >= live_cols.size() )
    {
      return std::nullopt;
    }

    for ( auto const& from : live )
    {
      if ( keep.count( from.col ) )
      {
        continue;
      }
      std::optional<copy_path> best;
      for ( auto c : keep )
      {
        for ( int r = 1; r <= options_.rows; ++r )
        {
          if ( !occ_.placeable( { r, c } ) )
          {
            continue;
          }
          auto path = astar_copy( occ_, from, { r, c }, parity::even );
          if ( path && ( !best || path->hops() < best->hops() ) )
          {
            best = std::move( path );
          }
        }
      }
      if ( !best )
      {
        return std::nullopt;
      }
      for ( std::size_t i = 1; i < best->cells.size(); ++i )
      {
        stream_.append( not_op{ best->cells[i - 1], best->cells[i] }, provenance::copy );
        occ_.set( best->cells[i], slot::used );
      }
      dir_.relocate( from, best->cells.back() );
    }
    return reset_op{ reset_op::orientation::cols, { keep.begin(), keep.end() } };
  }

  /* places and commits a prefix of `group`, or returns a failure message with all state rolled back */
  /* when inputs cannot be routed to a placement, the group is retried one row further down */
  std::variant<std::vector<std::size_t>, std::string> try_group( std::vector<std::size_t> const& group )
  {
    auto const snap = save();
    std::set<std::pair<int, std::vector<int>>> tried;
    std::string failure;
    while ( true )
    {
      auto placed = place_group( occ_, cursor_, dir_, graph_, group, options_.spacing );
      if ( !placed )
      {
        break;
      }
      auto spot = std::pair( placed->front().top_row, placed->front().columns );
      if ( !tried.insert( spot ).second )
      {
        break;
      }
      try
      {
        return commit( std::move( *placed ), snap );
      }
      catch ( routing_error const& e )
      {
        failure = e.what();
      }
      restore( snap );
      cursor_.start_col = spot.second.front();
      cursor_.columns = std::move( spot.second );
      cursor_.next_row = spot.first + 1;
    }
    restore( snap );
    if ( failure.empty() )
    {
      failure = fmt::format( "no free band for LUT '{}'", graph_.nodes[group.front()].name );
    }
    return failure;
  }

  /* maps a prefix of `group`; returns the LUTs that were scheduled */
  std::vector<std::size_t> map_group( std::vector<std::size_t> const& group )
  {
    auto outcome = try_group( group );
    if ( auto* done = std::get_if<0>( &outcome ) )
    {
      return std::move( *done );
    }
    for ( auto const& plan : reset_plans() )
    {
      auto const snap = save();
      for ( auto const& reset : plan )
      {
        emit_reset( reset );
      }
      outcome = try_group( group );
      if ( auto* done = std::get_if<0>( &outcome ) )
      {
        return std::move( *done );
      }
      restore( snap );
    }
    /* last resort: gather live values into few columns, either right away or after clearing everything else */
    for ( auto const& prelude : { std::vector<reset_op>{}, reset_plans().back() } )
    {
      auto const snap = save();
      for ( auto const& reset : prelude )
      {
        emit_reset( reset );
      }
      if ( auto reset = compact_live_values() )
      {
        emit_reset( *reset );
        outcome = try_group( group );
        if ( auto* done = std::get_if<0>( &outcome ) )
        {
          return std::move( *done );
        }
      }
      restore( snap );
    }
    throw unmappable_error(
        fmt::format( "{} after a selective reset on {}x{}", std::get<1>( outcome ), options_.rows, options_.cols ) );
  }

  std::vector<std::size_t> commit( std::vector<placed_lut> placed, snapshot const& snap )
  {
    group_plan plan;
    plan.level = graph_.nodes[placed.front().lut].level;
    plan.width = graph_.nodes[placed.front().lut].width();
    plan.claimed_cells = occ_.count( slot::reserved ) - snap.occ.count( slot::reserved );
    for ( auto const& p : placed )
    {
      plan.expected_cells += static_cast<std::size_t>( p.height() ) * ( plan.width + 1u );
    }

    align( placed, plan );
    deliver( placed );

    auto compute = emit_group_compute( graph_, placed );
    plan.compute_cycle = stream_.cycle_count();
    for ( auto& op : compute )
    {
      stream_.append( std::move( op.op ), op.tag );
    }

    std::vector<std::size_t> done;
    for ( auto const& p : placed )
    {
      for ( int r = p.top_row; r <= p.output_row(); ++r )
      {
        for ( auto c : p.columns )
        {
          occ_.set( { r, c }, slot::used );
        }
      }
      auto const& node = graph_.nodes[p.lut];
      lut_output out{ { p.output_row(), p.output_col() }, std::nullopt, fanout_count_[p.lut] };
      if ( node.is_output )
      {
        out.true_cell = coord{ p.output_row(), p.columns.front() };
      }
      dir_.record( p.lut, out );
      done.push_back( p.lut );
    }
    for ( auto const& p : placed )
    {
      std::set<std::size_t> fanin_luts;
      for ( auto const& f : graph_.nodes[p.lut].fanins )
      {
        if ( f.type == signal_ref::kind::node )
        {
          fanin_luts.insert( f.index );
        }
      }
      for ( auto f : fanin_luts )
      {
        dir_.consume( f );
      }
    }
    plan.luts = std::move( placed );
    groups_.push_back( std::move( plan ) );
    return done;
  }

  void align( std::vector<placed_lut>& placed, group_plan& plan ) const
  {
    input_matrix m;
    for ( auto const& p : placed )
    {
      m.push_back( p.non.variables );
    }
    bool const exact = options_.align == align_mode::exact && m.size() <= exact_max_rows && plan.width <= exact_max_cols;
    auto aligned = exact ? exact_align( m ) : greedy_align( m );
    plan.alignment_score = alignment_score( aligned );
    for ( std::size_t i = 0; i < placed.size(); ++i )
    {
      auto const& vars = placed[i].non.variables;
      std::vector<std::size_t> order;
      for ( auto const& v : aligned[i] )
      {
        order.push_back( static_cast<std::size_t>( std::find( vars.begin(), vars.end(), v ) - vars.begin() ) );
      }
      placed[i].non = permute_columns( placed[i].non, order );
    }
  }

  void deliver( std::vector<placed_lut> const& placed )
  {
    struct request
    {
      std::string variable;
      int column;
      signal_ref source;
      std::vector<delivery_target> targets;
    };
    std::vector<request> requests;
    std::vector<coord> absent;

    for ( auto const& p : placed )
    {
      auto const& node = graph_.nodes[p.lut];
      for ( std::size_t j = 0; j < p.non.num_columns(); ++j )
      {
        auto const& var = p.non.variables[j];
        auto const col = p.columns[j];
        auto it = std::find_if( requests.begin(), requests.end(),
                                [&]( auto const& q ) { return q.variable == var && q.column == col; } );
        if ( it == requests.end() )
        {
          auto const pos = std::find( node.function.variables.begin(), node.function.variables.end(), var ) -
                           node.function.variables.begin();
          requests.push_back( { var, col, node.fanins[static_cast<std::size_t>( pos )], {} } );
          it = requests.end() - 1;
        }
        for ( std::size_t t = 0; t < p.non.num_rows(); ++t )
        {
          coord const at{ p.top_row + static_cast<int>( t ), col };
          switch ( p.non.rows[t][j] )
          {
          case non_mark::pos:
            it->targets.push_back( { at, false } );
            break;
          case non_mark::neg:
            it->targets.push_back( { at, true } );
            break;
          case non_mark::absent:
            absent.push_back( at );
            break;
          }
        }
      }
    }

    auto emit = [&]( std::vector<routed_op> ops ) {
      for ( auto& op : ops )
      {
        stream_.append( std::move( op.op ), op.tag );
      }
    };
    for ( auto const& q : requests )
    {
      if ( q.source.type == signal_ref::kind::node && !q.targets.empty() )
      {
        auto const* out = dir_.find( q.source.index );
        if ( out == nullptr || !dir_.live( q.source.index ) )
        {
          throw routing_error( "fan-in '" + q.variable + "' is not available" );
        }
        emit( deliver_input( occ_, stored_signal{ out->inverted, true }, q.targets ) );
      }
    }
    for ( auto const& q : requests )
    {
      if ( q.source.type == signal_ref::kind::input )
      {
        emit( deliver_input( occ_, q.variable, q.targets ) );
      }
    }
    std::sort( absent.begin(), absent.end() );
    for ( auto const& at : absent )
    {
      stream_.append( write_op{ at, write_value::constant( false ) }, provenance::write );
    }
  }

  std::optional<coord> first_free_cell() const
  {
    for ( int r = 1; r <= options_.rows; ++r )
    {
      for ( int c = 1; c <= options_.cols; ++c )
      {
        if ( occ_.placeable( { r, c } ) )
        {
          return coord{ r, c };
        }
      }
    }
    return std::nullopt;
  }

  void place_outputs()
  {
    for ( auto const& po : graph_.outputs )
    {
      if ( po.driver.type == signal_ref::kind::node )
      {
        stream_.add_output( po.name, *dir_.find( po.driver.index )->true_cell );
        continue;
      }
      auto cell = first_free_cell();
      if ( !cell )
      {
        emit_reset( reset_plans().front().front() );
        cell = first_free_cell();
      }
      if ( !cell )
      {
        throw unmappable_error( "no free cell left for output '" + po.name + "'" );
      }
      auto const value = po.driver.type == signal_ref::kind::input
                             ? write_value::literal( graph_.inputs[po.driver.index], false )
                             : write_value::constant( po.driver.value );
      stream_.append( write_op{ *cell, value }, provenance::write );
      occ_.set( *cell, slot::used );
      dir_.pin( *cell );
      stream_.add_output( po.name, *cell );
    }
  }

  lut_graph const& graph_;
  map_options options_;
  occupancy occ_;
  output_directory dir_;
  band_cursor cursor_;
  instruction_stream stream_;
  std::vector<group_plan> groups_;
  std::vector<std::size_t> fanout_count_;
  std::size_t resets_{ 0 };
};

} // namespace

mapping_result map_lut_graph( lut_graph const& graph, map_options const& options )
{
  return mapper( graph, options ).run();
}

} // namespace magicmap
