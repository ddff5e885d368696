#pragma once

#include <string>
#include <vector>

#include "kk/group.hpp"

namespace kk {

/// Parses the group text format:
///   table n        followed by n rows of n space-separated indices, or
///   perm n         followed by one generator per line in cycle notation,
///                  e.g. (0 1 2)(3 4)
/// Optional trailing lines: `label i name`.
GroupPtr parse_group_text(const std::string& text,
                          std::size_t max_cells = kDefaultMaxTableCells);

/// Reads and parses a group file; throws IoError if unreadable.
GroupPtr read_group_file(const std::string& path,
                         std::size_t max_cells = kDefaultMaxTableCells);

/// Serializes a group in the `table n` format (with labels when present).
std::string write_group_table(const FiniteGroup& g);

/// Parses disjoint cycle notation into an image array on `degree` points.
std::vector<int> parse_cycles(const std::string& line, int degree);

/// Parses a comma-separated element list, e.g. "1,2,5".
std::vector<int> parse_element_list(const std::string& text);

}  // namespace kk
