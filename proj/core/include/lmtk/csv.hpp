#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lmtk::csv {

// Minimal RFC 4180 reader: quoted fields, doubled quotes, CRLF. Enough for
// transcripts, label files and prediction tables.
std::vector<std::vector<std::string>> parse(std::string_view text, char delim = ',');

// ',' unless the first line contains a tab.
char sniff_delimiter(std::string_view text);

std::string escape(std::string_view field, char delim = ',');

std::string trim(std::string_view s);

}  // namespace lmtk::csv
