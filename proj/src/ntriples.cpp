#include "rors/ntriples.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>

#include "rors/errors.hpp"

namespace rors {

namespace {

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\r'; }

bool label_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

bool lang_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-';
}

struct LineParser {
  const std::string& line;
  std::size_t i = 0;

  void skip_ws() {
    while (i < line.size() && is_ws(line[i])) ++i;
  }
  bool eol() const { return i >= line.size(); }
  char peek() const { return line[i]; }

  // Returns an error message on failure, empty string on success.
  std::string parse_iri(Term& out) {
    std::size_t end = line.find('>', i + 1);
    if (end == std::string::npos) return "unterminated IRI";
    std::string lex = line.substr(i + 1, end - i - 1);
    if (lex.empty()) return "empty IRI";
    for (char c : lex)
      if (is_ws(c) || c == ' ' || c == '<') return "malformed IRI";
    out = Term::iri(std::move(lex));
    i = end + 1;
    return {};
  }

  std::string parse_blank(Term& out) {
    if (i + 2 > line.size() || line[i] != '_' || line[i + 1] != ':') return "malformed blank node";
    std::size_t start = i + 2;
    std::size_t j = start;
    while (j < line.size() && label_char(line[j])) ++j;
    while (j > start && line[j - 1] == '.') --j;  // label cannot end with '.'
    if (j == start) return "empty blank node label";
    out = Term::blank(line.substr(start, j - start));
    i = j;
    return {};
  }

  std::string parse_literal(Term& out) {
    std::size_t j = i + 1;
    while (j < line.size()) {
      if (line[j] == '\\') {
        if (j + 1 >= line.size()) return "truncated escape in literal";
        j += 2;
        continue;
      }
      if (line[j] == '"') break;
      ++j;
    }
    if (j >= line.size()) return "unterminated literal";
    std::size_t end = j + 1;
    if (end < line.size() && line[end] == '@') {
      std::size_t k = end + 1;
      while (k < line.size() && lang_char(line[k])) ++k;
      if (k == end + 1) return "empty language tag";
      end = k;
    } else if (end + 1 < line.size() && line[end] == '^' && line[end + 1] == '^') {
      if (end + 2 >= line.size() || line[end + 2] != '<') return "malformed datatype IRI";
      std::size_t gt = line.find('>', end + 3);
      if (gt == std::string::npos) return "unterminated datatype IRI";
      end = gt + 1;
    }
    out = Term::literal(line.substr(i, end - i));
    i = end;
    return {};
  }

  std::string parse_subject(Term& out) {
    if (eol()) return "missing subject";
    if (peek() == '<') return parse_iri(out);
    if (peek() == '_') return parse_blank(out);
    return "subject must be an IRI or blank node";
  }

  std::string parse_predicate(Term& out) {
    if (eol()) return "missing predicate";
    if (peek() == '<') return parse_iri(out);
    return "predicate must be an IRI";
  }

  std::string parse_object(Term& out) {
    if (eol()) return "missing object";
    if (peek() == '<') return parse_iri(out);
    if (peek() == '_') return parse_blank(out);
    if (peek() == '"') return parse_literal(out);
    return "object must be an IRI, blank node, or literal";
  }
};

// Parses one content line into terms. Returns an error message or empty.
std::string parse_line(const std::string& line, Term& s, Term& p, Term& o) {
  LineParser lp{line};
  lp.skip_ws();
  std::string err = lp.parse_subject(s);
  if (!err.empty()) return err;
  lp.skip_ws();
  err = lp.parse_predicate(p);
  if (!err.empty()) return err;
  lp.skip_ws();
  err = lp.parse_object(o);
  if (!err.empty()) return err;
  lp.skip_ws();
  if (lp.eol() || lp.peek() != '.') return "missing terminating '.'";
  ++lp.i;
  lp.skip_ws();
  if (!lp.eol() && lp.peek() != '#') return "trailing characters after '.'";
  return {};
}

bool blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (is_ws(c)) continue;
    return c == '#';
  }
  return true;
}

}  // namespace

ParseResult parse_ntriples(std::istream& in, Dictionary& dict, Strictness strictness) {
  ParseResult result;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (blank_or_comment(line)) continue;
    Term s, p, o;
    std::string err = parse_line(line, s, p, o);
    if (!err.empty()) {
      if (strictness == Strictness::kStrict) throw ParseError(err, line_number);
      result.diagnostics.push_back({line_number, err, Severity::kWarning});
      continue;
    }
    result.triples.push_back({dict.intern(s), dict.intern(p), dict.intern(o)});
  }
  return result;
}

ParseResult parse_ntriples(const std::string& text, Dictionary& dict, Strictness strictness) {
  std::istringstream in(text);
  return parse_ntriples(in, dict, strictness);
}

ParseResult parse_ntriples_file(const std::string& path, Dictionary& dict, Strictness strictness) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return parse_ntriples(in, dict, strictness);
}

std::string term_to_ntriples(const Term& t) {
  switch (t.kind) {
    case TermKind::kIri: return "<" + t.lexical + ">";
    case TermKind::kBlank: return "_:" + t.lexical;
    case TermKind::kLiteral: return t.lexical;
  }
  throw InternalError("unknown term kind");
}

std::string write_ntriples(std::span<const Triple> triples, const Dictionary& dict, bool sorted) {
  std::vector<std::string> lines;
  lines.reserve(triples.size());
  for (const Triple& t : triples) {
    std::string line = term_to_ntriples(dict.decode(t.s));
    line += ' ';
    line += term_to_ntriples(dict.decode(t.p));
    line += ' ';
    line += term_to_ntriples(dict.decode(t.o));
    line += " .\n";
    lines.push_back(std::move(line));
  }
  if (sorted) std::sort(lines.begin(), lines.end());
  std::string out;
  std::size_t total = 0;
  for (const auto& l : lines) total += l.size();
  out.reserve(total);
  for (const auto& l : lines) out += l;
  return out;
}

void write_ntriples_file(const std::string& path, std::span<const Triple> triples,
                         const Dictionary& dict, bool sorted) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << write_ntriples(triples, dict, sorted);
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace rors
