#pragma once

#include "halfspace/core.hpp"

#include <iosfwd>
#include <string>

namespace halfspace {

// Dataset text format: header `d=<int> n=<int> provenance=<tag>`, then one
// sample per line as d space-separated +1/-1 tokens followed by the label.
void write_labeled_set(std::ostream& os, const LabeledSet& s);
LabeledSet read_labeled_set(std::istream& is);
void save_labeled_set(const std::string& path, const LabeledSet& s);
LabeledSet load_labeled_set(const std::string& path);

// Halfspace text format: one weight per line, final line `tau=<value>`,
// shortest-round-trip decimals.
void write_halfspace(std::ostream& os, const Halfspace& h);
Halfspace read_halfspace(std::istream& is);
void save_halfspace(const std::string& path, const Halfspace& h);
Halfspace load_halfspace(const std::string& path);

std::string format_double(double v);  // shortest decimal that round-trips
double parse_double(const std::string& s);

}  // namespace halfspace
