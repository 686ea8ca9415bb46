#ifndef RORS_NTRIPLES_HPP
#define RORS_NTRIPLES_HPP

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rors/term.hpp"
#include "rors/triple.hpp"

namespace rors {

enum class Strictness { kStrict, kLenient };
enum class Severity { kWarning, kError };

struct ParseDiagnostic {
  std::size_t line_number = 0;
  std::string message;
  Severity severity = Severity::kError;
};

struct ParseResult {
  std::vector<Triple> triples;
  std::vector<ParseDiagnostic> diagnostics;
};

// Line-based N-Triples reader. Blank lines and '#' comment lines are ignored.
// Strict mode throws ParseError at the first malformed line; lenient mode
// records a warning diagnostic and skips the line.
ParseResult parse_ntriples(std::istream& in, Dictionary& dict, Strictness strictness);
ParseResult parse_ntriples(const std::string& text, Dictionary& dict, Strictness strictness);
ParseResult parse_ntriples_file(const std::string& path, Dictionary& dict, Strictness strictness);

std::string term_to_ntriples(const Term& t);

// Serializes one triple per line. With sorted=true the lines are ordered
// byte-wise, which makes equal stores serialize identically.
std::string write_ntriples(std::span<const Triple> triples, const Dictionary& dict, bool sorted);
void write_ntriples_file(const std::string& path, std::span<const Triple> triples,
                         const Dictionary& dict, bool sorted);

}  // namespace rors

#endif
