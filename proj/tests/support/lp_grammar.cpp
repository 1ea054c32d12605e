#include "lp_grammar.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace lpcheck {

namespace {

enum class Section { none, objective, constraints, bounds, binaries, generals, end };

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::optional<Section> section_keyword(const std::string& line) {
  const auto l = lower(line);
  if (l == "minimize" || l == "minimum" || l == "min" || l == "maximize" || l == "maximum" || l == "max") {
    return Section::objective;
  }
  if (l == "subject to" || l == "such that" || l == "st" || l == "s.t.") return Section::constraints;
  if (l == "bounds" || l == "bound") return Section::bounds;
  if (l == "binaries" || l == "binary" || l == "bin") return Section::binaries;
  if (l == "generals" || l == "general" || l == "gen") return Section::generals;
  if (l == "end") return Section::end;
  return std::nullopt;
}

bool name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || std::string_view("!\"#$%&()/,;?@_`'{}|~").find(c) !=
                                                            std::string_view::npos;
}

bool name_char(char c) { return name_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '.'; }

struct Token {
  enum Kind { name, number, sign, relop, colon } kind;
  std::string text;
};

// Tokenizes one statement; returns false with a message on a stray character.
bool tokenize(const std::string& s, std::vector<Token>& out, std::string& err) {
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '+' || c == '-') {
      out.push_back({Token::sign, std::string(1, c)});
      ++i;
    } else if (c == ':') {
      out.push_back({Token::colon, ":"});
      ++i;
    } else if (c == '<' || c == '>' || c == '=') {
      std::string op(1, c);
      if (i + 1 < s.size() && (s[i + 1] == '=' || s[i + 1] == '<' || s[i + 1] == '>')) op += s[++i];
      ++i;
      static const std::set<std::string> ok = {"<", "<=", "=<", ">", ">=", "=>", "="};
      if (!ok.contains(op)) {
        err = "bad relational operator '" + op + "'";
        return false;
      }
      out.push_back({Token::relop, op});
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t j = i;
      while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '.')) ++j;
      if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
        if (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) {
          j = k;
          while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        }
      }
      const auto text = s.substr(i, j - i);
      if (std::count(text.begin(), text.end(), '.') > 1 || text == ".") {
        err = "malformed number '" + text + "'";
        return false;
      }
      out.push_back({Token::number, text});
      i = j;
    } else if (name_start(c)) {
      std::size_t j = i;
      while (j < s.size() && name_char(s[j])) ++j;
      const auto text = s.substr(i, j - i);
      if (text.size() > 255) {
        err = "name longer than 255 characters";
        return false;
      }
      out.push_back({Token::name, text});
      i = j;
    } else {
      err = std::string("unexpected character '") + c + "'";
      return false;
    }
  }
  return true;
}

// expr := [sign] [number] name { sign [number] name }
bool parse_expression(const std::vector<Token>& t, std::size_t& i, std::set<std::string>& vars, std::string& err) {
  bool first = true;
  while (i < t.size() && t[i].kind != Token::relop) {
    if (t[i].kind == Token::sign) {
      ++i;
    } else if (!first) {
      err = "missing sign between terms near '" + t[i].text + "'";
      return false;
    }
    if (i < t.size() && t[i].kind == Token::number) ++i;
    if (i >= t.size() || t[i].kind != Token::name) {
      err = "term without a variable";
      return false;
    }
    vars.insert(t[i].text);
    ++i;
    first = false;
  }
  if (first) {
    err = "empty expression";
    return false;
  }
  return true;
}

bool parse_rhs(const std::vector<Token>& t, std::size_t& i, std::string& err) {
  if (i < t.size() && t[i].kind == Token::sign) ++i;
  if (i >= t.size() || t[i].kind != Token::number) {
    err = "right-hand side must be a number";
    return false;
  }
  ++i;
  return true;
}

}  // namespace

std::vector<std::string> check_lp(std::string_view text) {
  std::vector<std::string> errors;
  const auto fail = [&](int line, const std::string& msg) {
    errors.push_back("line " + std::to_string(line) + ": " + msg);
  };

  // Group physical lines into sections; statement boundaries are found per section.
  struct Line {
    int number;
    std::string text;
  };
  std::map<Section, std::vector<Line>> body;
  std::vector<Section> order;
  Section current = Section::none;
  std::istringstream in{std::string(text)};
  std::string raw;
  int number = 0;
  bool saw_end = false;
  while (std::getline(in, raw)) {
    ++number;
    if (raw.size() > 560) fail(number, "line longer than 560 characters");
    if (const auto cut = raw.find('\\'); cut != std::string::npos) raw.resize(cut);
    const auto b = raw.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = raw.find_last_not_of(" \t\r");
    const std::string line = raw.substr(b, e - b + 1);
    if (saw_end) {
      fail(number, "content after End");
      continue;
    }
    if (auto s = section_keyword(line)) {
      if (std::find(order.begin(), order.end(), *s) != order.end()) fail(number, "repeated section '" + line + "'");
      if (!order.empty() && *s < order.back()) fail(number, "section '" + line + "' out of order");
      if (order.empty() && *s != Section::objective) fail(number, "file must start with an objective section");
      order.push_back(*s);
      current = *s;
      if (*s == Section::end) saw_end = true;
      continue;
    }
    if (current == Section::none) {
      fail(number, "content before the objective section");
      continue;
    }
    body[current].push_back({number, line});
  }
  if (!saw_end) errors.push_back("missing End");
  if (std::find(order.begin(), order.end(), Section::constraints) == order.end()) {
    errors.push_back("missing Subject To section");
  }

  std::set<std::string> used;
  // Objective: a single (possibly wrapped) labelled expression.
  {
    std::string all;
    int first_line = 0;
    for (const auto& l : body[Section::objective]) {
      if (!first_line) first_line = l.number;
      all += ' ' + l.text;
    }
    std::vector<Token> t;
    std::string err;
    if (!tokenize(all, t, err)) {
      fail(first_line, err);
    } else if (!t.empty()) {
      std::size_t i = 0;
      if (t.size() > 1 && t[0].kind == Token::name && t[1].kind == Token::colon) i = 2;
      if (!parse_expression(t, i, used, err)) fail(first_line, "objective: " + err);
      if (i != t.size()) fail(first_line, "objective: trailing tokens");
    }
  }

  // Constraints: statements end at a relational operator followed by the rhs.
  {
    std::vector<Token> t;
    std::vector<int> line_of;
    for (const auto& l : body[Section::constraints]) {
      std::string err;
      std::vector<Token> part;
      if (!tokenize(l.text, part, err)) {
        fail(l.number, err);
        continue;
      }
      for (auto& tok : part) {
        t.push_back(tok);
        line_of.push_back(l.number);
      }
    }
    std::set<std::string> labels;
    std::size_t i = 0;
    while (i < t.size()) {
      const int at = line_of[i];
      std::string err;
      if (t.size() - i > 1 && t[i].kind == Token::name && t[i + 1].kind == Token::colon) {
        if (!labels.insert(t[i].text).second) fail(at, "duplicate constraint name '" + t[i].text + "'");
        i += 2;
      }
      if (!parse_expression(t, i, used, err)) {
        fail(at, err);
        break;
      }
      if (i >= t.size() || t[i].kind != Token::relop) {
        fail(at, "constraint without a relational operator");
        break;
      }
      ++i;
      if (!parse_rhs(t, i, err)) {
        fail(at, err);
        break;
      }
    }
  }

  // Bounds: one bound per line.
  std::set<std::string> bounded;
  for (const auto& l : body[Section::bounds]) {
    std::vector<Token> t;
    std::string err;
    if (!tokenize(l.text, t, err)) {
      fail(l.number, err);
      continue;
    }
    const auto is_num = [&](std::size_t& i) {
      if (i < t.size() && t[i].kind == Token::sign) ++i;
      if (i < t.size() && (t[i].kind == Token::number ||
                           (t[i].kind == Token::name && (lower(t[i].text) == "inf" || lower(t[i].text) == "infinity")))) {
        ++i;
        return true;
      }
      return false;
    };
    std::size_t i = 0;
    bool ok = false;
    std::size_t save = i;
    if (is_num(i)) {
      // lo <= x [<= hi]
      if (i + 1 < t.size() && t[i].kind == Token::relop && t[i + 1].kind == Token::name) {
        bounded.insert(t[i + 1].text);
        i += 2;
        ok = i == t.size();
        if (!ok && t[i].kind == Token::relop) {
          ++i;
          ok = is_num(i) && i == t.size();
        }
      }
    } else {
      i = save;
      if (i < t.size() && t[i].kind == Token::name) {
        bounded.insert(t[i].text);
        ++i;
        if (i < t.size() && t[i].kind == Token::name && lower(t[i].text) == "free") {
          ok = i + 1 == t.size();
        } else if (i < t.size() && t[i].kind == Token::relop) {
          ++i;
          ok = is_num(i) && i == t.size();
        }
      }
    }
    if (!ok) fail(l.number, "malformed bound '" + l.text + "'");
  }

  std::set<std::string> typed;
  for (auto s : {Section::binaries, Section::generals}) {
    for (const auto& l : body[s]) {
      std::vector<Token> t;
      std::string err;
      if (!tokenize(l.text, t, err)) {
        fail(l.number, err);
        continue;
      }
      for (const auto& tok : t) {
        if (tok.kind != Token::name) {
          fail(l.number, "expected variable names only");
          break;
        }
        if (!typed.insert(tok.text).second) fail(l.number, "variable '" + tok.text + "' declared twice");
        if (!used.contains(tok.text) && !bounded.contains(tok.text)) {
          fail(l.number, "declared variable '" + tok.text + "' appears in no row");
        }
      }
    }
  }
  return errors;
}

}  // namespace lpcheck
