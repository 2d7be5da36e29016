#pragma once

#include <string>

#include "circlelab/seminorms.hpp"
#include "circlelab/signal.hpp"

namespace circlelab {

/// {"modulus": Q, "re": [...], "im": [...]}
std::string signal_to_json(const Signal& f);
Signal signal_from_json(const std::string& text);

/// Header "index,re,im", one row per residue.
std::string signal_to_csv(const Signal& f);
Signal signal_from_csv(const std::string& text);

/// Rows "label,re,im"; the im column is optional and a header line is skipped.
RealSequence sequence_from_csv(const std::string& text);
std::string sequence_to_csv(const RealSequence& seq);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace circlelab
