#ifndef SQCAT_DOT_HPP
#define SQCAT_DOT_HPP

#include <string>

#include "sqcat/constructions.hpp"
#include "sqcat/double.hpp"

namespace sqcat::dotex {

/// DOT digraph of a single square. Nodes are the distinct corner objects,
/// solid edges horizontal, dashed vertical; self-loops are suppressed.
std::string dot_of_square(const dbl::SquaresCat& d, const dbl::Square& s);

/// DOT digraph of a staircase: one node per grid position, one cluster
/// sq_<index> per elementary square.
std::string dot_of_staircase(const dbl::SquaresCat& d, const cons::Staircase& s);

/// DOT digraph of a ladder between two chains, one cluster per rung.
std::string dot_of_ladder(const dbl::SquaresCat& d, const cons::Chain& src,
                          const cons::Chain& dst, const cons::Ladder& lad);

}  // namespace sqcat::dotex

#endif
