#ifndef SHOCKLINE_IO_HPP
#define SHOCKLINE_IO_HPP

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace shockline {

// Full-precision scientific formatting (17 significant digits) so that CSV
// round-trips are lossless.
std::string format_sci17(double x);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

// Deterministic CSV emission: comma-separated, '\n' line ends, no trailing
// separator, header first.
void write_csv(std::ostream& os, const CsvTable& table);

// Flat "key = value" config text: one pair per line, '#' starts a comment,
// blank lines ignored.  Duplicate keys: last one wins.
std::map<std::string, std::string> parse_config_text(const std::string& text);
std::map<std::string, std::string> parse_config_file(const std::string& path);

}  // namespace shockline

#endif
