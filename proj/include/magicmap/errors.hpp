/*!
  \file errors.hpp
  \brief Exception types shared by the mapping pipeline
*/

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace magicmap
{

/*! \brief Malformed or unsupported BLIF input.
 *
 * `line` is the 1-based source line of the offending construct, or 0 when
 * the error is not tied to a single line (e.g. a combinational cycle).
 */
class parse_error : public std::runtime_error
{
public:
  parse_error( std::size_t line, std::string const& message )
      : std::runtime_error( line == 0u ? message : "line " + std::to_string( line ) + ": " + message ),
        line_( line )
  {
  }

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/*! \brief Invalid argument or state in a netlist-level transformation. */
class netlist_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/*! \brief A crossbar instruction could not be executed.
 *
 * Carries the cycle index when raised while running a stream.
 */
class execution_error : public std::runtime_error
{
public:
  explicit execution_error( std::string const& message, std::optional<std::size_t> cycle = std::nullopt )
      : std::runtime_error( cycle ? "cycle " + std::to_string( *cycle ) + ": " + message : message ),
        cycle_( cycle )
  {
  }

  std::optional<std::size_t> cycle() const noexcept { return cycle_; }

private:
  std::optional<std::size_t> cycle_;
};

/*! \brief No copy path or bounce cell could be found. */
class routing_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/*! \brief The LUT graph does not fit on the requested crossbar. */
class unmappable_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

} // namespace magicmap
