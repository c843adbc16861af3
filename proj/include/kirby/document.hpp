#pragma once

// Text document format for handle decompositions.
//
//   kirby-doc 1
//   metadata
//     name C1(2,1,4,0)
//     simply_connected true
//     reconstructed true
//     cork d h
//   handles
//     d dotted
//     t framed 2 genus 3
//       grid 7
//       X: 3 4 5 6 0 1 2
//       O: 0 1 2 3 4 5 6
//   linking
//     d t 0
//   three_handles 0
//   script
//     slide t over h +
//
// Sections start in column 1; entries are indented two spaces, grid lines four.
// Blank lines and lines starting with '#' are ignored. Missing linking pairs
// default to 0. emit() writes the canonical form, which parse() inverts.

#include <cctype>
#include <cstddef>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kirby/errors.hpp"
#include "kirby/grid.hpp"
#include "kirby/handlebody.hpp"
#include "kirby/moves.hpp"

namespace kirby {

inline constexpr const char* document_header = "kirby-doc 1";

struct Document {
  HandleDecomposition handles;
  std::optional<MoveScript> script;

  friend bool operator==(const Document&, const Document&) = default;
};

// Errors carry a 1-based line and column.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_, column_;
};

inline std::string emit(const Document& doc) {
  const HandleDecomposition& h = doc.handles;
  std::ostringstream os;
  os << document_header << '\n';
  os << "metadata\n";
  if (!h.metadata.name.empty()) os << "  name " << h.metadata.name << '\n';
  os << "  simply_connected " << (h.metadata.asserted_simply_connected ? "true" : "false") << '\n';
  os << "  reconstructed " << (h.metadata.reconstructed ? "true" : "false") << '\n';
  if (h.metadata.cork) os << "  cork " << h.metadata.cork->first << ' ' << h.metadata.cork->second << '\n';
  if (h.metadata.plug) os << "  plug " << h.metadata.plug->first << ' ' << h.metadata.plug->second << '\n';
  os << "handles\n";
  for (const Component& c : h.components) {
    os << "  " << c.id;
    if (c.is_dotted())
      os << " dotted";
    else
      os << " framed " << *c.framing;
    if (c.seifert_genus) os << " genus " << *c.seifert_genus;
    os << '\n';
    if (c.attaching_grid) {
      std::istringstream g(serialize(*c.attaching_grid));
      for (std::string line; std::getline(g, line);) os << "    " << line << '\n';
    }
  }
  os << "linking\n";
  for (std::size_t i = 0; i < h.components.size(); ++i)
    for (std::size_t j = i + 1; j < h.components.size(); ++j)
      os << "  " << h.components[i].id << ' ' << h.components[j].id << ' '
         << h.lk(h.components[i].id, h.components[j].id) << '\n';
  os << "three_handles " << h.three_handles << '\n';
  if (doc.script) {
    os << "script\n";
    for (const auto& s : doc.script->steps) os << "  " << to_string(s) << '\n';
  }
  return os.str();
}

inline std::string emit(const HandleDecomposition& h) { return emit(Document{h, std::nullopt}); }

namespace detail {

struct Token {
  std::string text;
  std::size_t column;
};

inline std::vector<Token> tokenize(const std::string& s, std::size_t from) {
  std::vector<Token> out;
  for (std::size_t i = from; i < s.size();) {
    if (s[i] == ' ' || s[i] == '\t') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    out.push_back({s.substr(i, j - i), i + 1});
    i = j;
  }
  return out;
}

inline bool valid_id(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) return false;
  return true;
}

}  // namespace detail

inline Document parse_document(const std::string& text) {
  std::vector<std::string> lines;
  {
    std::istringstream is(text);
    for (std::string l; std::getline(is, l);) {
      if (!l.empty() && l.back() == '\r') l.pop_back();
      lines.push_back(l);
    }
  }
  std::size_t ln = 0;
  auto fail = [&](std::size_t col, const std::string& what) -> void { throw ParseError(ln, col, what); };
  auto indent_of = [](const std::string& l) {
    std::size_t i = 0;
    while (i < l.size() && l[i] == ' ') ++i;
    return i;
  };
  auto to_integer = [&](const detail::Token& t) -> Integer {
    const std::string& s = t.text;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) fail(t.column, "expected an integer, got '" + s + "'");
    for (std::size_t k = i; k < s.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(s[k]))) fail(t.column, "expected an integer, got '" + s + "'");
    return Integer(s[0] == '+' ? s.substr(1) : s);
  };
  auto to_long = [&](const detail::Token& t) -> long {
    const Integer v = to_integer(t);
    if (v > 1000000000 || v < -1000000000) fail(t.column, "value out of range");
    return static_cast<long>(v);
  };
  auto to_bool = [&](const detail::Token& t) {
    if (t.text == "true") return true;
    if (t.text == "false") return false;
    fail(t.column, "expected true or false, got '" + t.text + "'");
    return false;
  };

  Document doc;
  HandleDecomposition& h = doc.handles;
  std::size_t i = 0;
  auto next_content = [&]() {
    while (i < lines.size()) {
      const std::string& l = lines[i];
      const std::size_t k = indent_of(l);
      if (k == l.size() || l[k] == '#') {
        ++i;
        continue;
      }
      return true;
    }
    return false;
  };

  if (!next_content()) {
    ln = 1;
    fail(1, "empty document; expected '" + std::string(document_header) + "'");
  }
  ln = i + 1;
  if (lines[i] != document_header) {
    const auto t = detail::tokenize(lines[i], 0);
    if (!t.empty() && t[0].text == "kirby-doc") fail(t.size() > 1 ? t[1].column : 10, "unsupported document version");
    fail(1, "expected header '" + std::string(document_header) + "'");
  }
  ++i;

  struct PendingLink {
    std::size_t line;
    std::vector<detail::Token> tok;
  };
  std::vector<PendingLink> links;
  std::set<std::string> seen_sections;
  bool three_seen = false;

  while (next_content()) {
    ln = i + 1;
    const std::string& line = lines[i];
    if (indent_of(line) != 0) fail(indent_of(line) + 1, "expected a section name in column 1");
    const auto head = detail::tokenize(line, 0);
    const std::string section = head[0].text;
    if (seen_sections.count(section)) fail(1, "duplicate section '" + section + "'");
    seen_sections.insert(section);
    ++i;

    if (section == "three_handles") {
      if (head.size() != 2) fail(head.size() < 2 ? line.size() + 1 : head[2].column, "expected 'three_handles N'");
      const long t = to_long(head[1]);
      if (t < 0) fail(head[1].column, "3-handle count must be nonnegative");
      h.three_handles = static_cast<std::size_t>(t);
      three_seen = true;
      continue;
    }
    if (head.size() != 1) fail(head[1].column, "unexpected token after section name");
    if (section != "metadata" && section != "handles" && section != "linking" && section != "script")
      fail(1, "unknown section '" + section + "'");

    while (next_content()) {
      const std::string& l = lines[i];
      const std::size_t ind = indent_of(l);
      if (ind == 0) break;
      ln = i + 1;
      if (ind != 2) fail(ind + 1, "entries are indented two spaces");
      const auto tok = detail::tokenize(l, 0);
      ++i;
      if (section == "metadata") {
        const std::string& key = tok[0].text;
        auto arity = [&](std::size_t n) {
          if (tok.size() != n + 1)
            fail(tok.size() > n + 1 ? tok[n + 1].column : l.size() + 1, "'" + key + "' takes " + std::to_string(n) + " value(s)");
        };
        if (key == "name") {
          if (tok.size() < 2) fail(l.size() + 1, "'name' needs a value");
          h.metadata.name = l.substr(tok[1].column - 1);
        } else if (key == "simply_connected") {
          arity(1);
          h.metadata.asserted_simply_connected = to_bool(tok[1]);
        } else if (key == "reconstructed") {
          arity(1);
          h.metadata.reconstructed = to_bool(tok[1]);
        } else if (key == "cork" || key == "plug") {
          arity(2);
          (key == "cork" ? h.metadata.cork : h.metadata.plug) = std::make_pair(tok[1].text, tok[2].text);
        } else {
          fail(tok[0].column, "unknown metadata key '" + key + "'");
        }
      } else if (section == "handles") {
        if (!detail::valid_id(tok[0].text)) fail(tok[0].column, "invalid id '" + tok[0].text + "'");
        if (h.contains(tok[0].text)) fail(tok[0].column, "duplicate id '" + tok[0].text + "'");
        if (tok.size() < 2) fail(l.size() + 1, "expected 'dotted' or 'framed N'");
        Component c;
        c.id = tok[0].text;
        std::size_t k = 1;
        if (tok[1].text == "dotted") {
          c.kind = ComponentKind::dotted;
          k = 2;
        } else if (tok[1].text == "framed") {
          if (tok.size() < 3) fail(l.size() + 1, "'framed' needs an integer");
          c.kind = ComponentKind::two_handle;
          c.framing = to_integer(tok[2]);
          k = 3;
        } else {
          fail(tok[1].column, "expected 'dotted' or 'framed', got '" + tok[1].text + "'");
        }
        while (k < tok.size()) {
          if (tok[k].text == "genus") {
            if (k + 1 >= tok.size()) fail(l.size() + 1, "'genus' needs a value");
            const long g = to_long(tok[k + 1]);
            if (g < 0) fail(tok[k + 1].column, "genus must be nonnegative");
            c.seifert_genus = g;
            k += 2;
          } else {
            fail(tok[k].column, "unknown handle attribute '" + tok[k].text + "'");
          }
        }
        // Optional grid block at indent 4.
        if (i < lines.size() && indent_of(lines[i]) == 4) {
          std::vector<int> xs, os_;
          std::size_t size = 0;
          for (int part = 0; part < 3; ++part) {
            if (i >= lines.size() || indent_of(lines[i]) != 4) {
              ln = i + 1;
              fail(1, "incomplete grid block");
            }
            ln = i + 1;
            const auto g = detail::tokenize(lines[i], 0);
            ++i;
            static const char* keys[] = {"grid", "X:", "O:"};
            if (g[0].text != keys[part]) fail(g[0].column, std::string("expected '") + keys[part] + "'");
            if (part == 0) {
              if (g.size() != 2) fail(g.size() > 2 ? g[2].column : lines[i - 1].size() + 1, "expected 'grid N'");
              const long n = to_long(g[1]);
              if (n < 2 || n > 10000) fail(g[1].column, "grid size out of range");
              size = static_cast<std::size_t>(n);
              continue;
            }
            if (g.size() != size + 1)
              fail(g.size() > size + 1 ? g[size + 1].column : lines[i - 1].size() + 1,
                   "expected " + std::to_string(size) + " positions");
            auto& dst = part == 1 ? xs : os_;
            for (std::size_t t = 1; t < g.size(); ++t) dst.push_back(static_cast<int>(to_long(g[t])));
          }
          try {
            c.attaching_grid = GridDiagram(xs, os_);
          } catch (const InputError& e) {
            fail(1, e.what());
          }
          if (c.attaching_grid->component_count() != 1) fail(1, "attaching grid is not a knot");
        }
        h.add_component(std::move(c));
      } else if (section == "linking") {
        links.push_back({ln, tok});
      } else {
        try {
          if (!doc.script) doc.script = MoveScript{};
          doc.script->steps.push_back(parse_move(l));
        } catch (const MoveSyntaxError& e) {
          fail(e.column(), e.message());
        }
      }
    }
    if (section == "script" && !doc.script) doc.script = MoveScript{};
  }
  if (!three_seen) h.three_handles = 0;

  std::set<LinkKey> seen_links;
  for (const auto& pl : links) {
    ln = pl.line;
    const auto& tok = pl.tok;
    if (tok.size() != 3) fail(tok.size() > 3 ? tok[3].column : tok.back().column, "expected 'ID ID LINKING'");
    for (std::size_t k = 0; k < 2; ++k)
      if (!h.contains(tok[k].text)) fail(tok[k].column, "unknown id '" + tok[k].text + "'");
    if (tok[0].text == tok[1].text) fail(tok[1].column, "self-linking belongs in the framing");
    const LinkKey key = link_key(tok[0].text, tok[1].text);
    if (!seen_links.insert(key).second) fail(tok[0].column, "duplicate linking entry");
    const Integer v = to_integer(tok[2]);
    if (h.component(tok[0].text).is_dotted() && h.component(tok[1].text).is_dotted() && v != 0)
      fail(tok[2].column, "dotted circles must be unlinked");
    h.linking[key] = v;
  }
  ln = lines.size();
  for (const auto& pair : {h.metadata.cork, h.metadata.plug})
    if (pair && (!h.contains(pair->first) || !h.contains(pair->second)))
      fail(1, "designated pair names an unknown component");
  const auto diags = validate(h);
  if (!diags.empty()) fail(1, diags.front());
  return doc;
}

}  // namespace kirby
