#include "confdec/cops.hpp"

#include <cctype>
#include <set>
#include <tuple>

#include "confdec/error.hpp"

namespace confdec {

bool is_reserved_name(std::string_view name) {
  return name == kApplication || name == kDiamond || name.find('^') != std::string_view::npos;
}

namespace {

enum class Tok { LParen, RParen, Comma, Arrow, Ident, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space();
    Token t{Tok::End, "", line_, column_};
    if (pos_ >= text_.size()) return t;
    char c = text_[pos_];
    if (c == '(' || c == ')' || c == ',') {
      advance();
      t.kind = c == '(' ? Tok::LParen : c == ')' ? Tok::RParen : Tok::Comma;
      t.text = std::string(1, c);
      return t;
    }
    if (text_.substr(pos_, 2) == "->") {
      advance();
      advance();
      t.kind = Tok::Arrow;
      t.text = "->";
      return t;
    }
    std::size_t begin = pos_;
    while (pos_ < text_.size() && !is_delim(text_[pos_]) && text_.substr(pos_, 2) != "->") advance();
    t.kind = Tok::Ident;
    t.text = std::string(text_.substr(begin, pos_ - begin));
    return t;
  }

  Token peek() {
    auto saved = std::make_tuple(pos_, line_, column_);
    Token t = next();
    std::tie(pos_, line_, column_) = saved;
    return t;
  }

  /// Raw text up to the parenthesis closing the current one; consumes it.
  std::string raw_until_close(std::size_t open_line, std::size_t open_column) {
    std::size_t depth = 1;
    std::size_t begin = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '(') ++depth;
      if (c == ')' && --depth == 0) {
        std::string body(text_.substr(begin, pos_ - begin));
        advance();
        return body;
      }
      advance();
    }
    throw ParseError("unterminated COMMENT", open_line, open_column);
  }

 private:
  static bool is_delim(char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ',';
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

[[noreturn]] void fail(const std::string& message, const Token& at) {
  throw ParseError(message, at.line, at.column);
}

Token expect(Lexer& lex, Tok kind, const std::string& what) {
  Token t = lex.next();
  if (t.kind != kind) {
    fail("expected " + what + " but found " + (t.kind == Tok::End ? "end of input" : "'" + t.text + "'"), t);
  }
  return t;
}

class TermReader {
 public:
  TermReader(Lexer& lex, const VariablePredicate& is_variable, Signature* signature,
             const ParseOptions& options)
      : lex_(lex), is_variable_(is_variable), signature_(signature), options_(options) {}

  Term read() {
    Token head = expect(lex_, Tok::Ident, "identifier");
    if (head.text == kHole) return Term::hole();
    bool var = is_variable_(head.text);
    std::vector<Term> args;
    if (lex_.peek().kind == Tok::LParen) {
      lex_.next();
      if (var) fail("variable " + head.text + " applied to arguments", head);
      for (;;) {
        args.push_back(read());
        Token sep = lex_.next();
        if (sep.kind == Tok::RParen) break;
        if (sep.kind != Tok::Comma) fail("expected ',' or ')' in argument list", sep);
      }
    }
    if (var) return Term::variable(head.text);
    if (!options_.allow_reserved && is_reserved_name(head.text)) {
      fail("identifier " + head.text + " is reserved", head);
    }
    if (signature_) {
      try {
        signature_->add(head.text, args.size());
      } catch (const ArityError& e) {
        fail(e.what(), head);
      }
    }
    return Term::function(head.text, std::move(args));
  }

 private:
  Lexer& lex_;
  const VariablePredicate& is_variable_;
  Signature* signature_;
  const ParseOptions& options_;
};

std::optional<std::string> extract_attachment(const std::string& comment) {
  auto begin = comment.find("%sorts");
  if (begin == std::string::npos) return std::nullopt;
  begin += 6;
  auto end = comment.find("%end", begin);
  return comment.substr(begin, end == std::string::npos ? std::string::npos : end - begin);
}

}  // namespace

ProblemFile parse_problem(std::string_view text, std::string source, ParseOptions options) {
  Lexer lex(text);
  ProblemFile out;
  out.source = std::move(source);
  std::set<std::string> vars;
  VariablePredicate is_var = [&vars](const std::string& name) { return vars.count(name) != 0; };
  Signature signature;
  std::vector<Rule> rules;
  bool any = false;
  for (;;) {
    Token open = lex.next();
    if (open.kind == Tok::End) break;
    if (open.kind != Tok::LParen) fail("expected '(' to start a declaration", open);
    Token keyword = expect(lex, Tok::Ident, "VAR, RULES or COMMENT");
    any = true;
    if (keyword.text == "VAR") {
      for (;;) {
        Token t = lex.next();
        if (t.kind == Tok::RParen) break;
        if (t.kind != Tok::Ident) fail("expected variable name in VAR", t);
        if (t.text == kHole || (!options.allow_reserved && is_reserved_name(t.text))) {
          fail("identifier " + t.text + " is reserved", t);
        }
        if (signature.contains(t.text)) fail(t.text + " is already used as a function symbol", t);
        if (vars.insert(t.text).second) out.variables.push_back(t.text);
      }
    } else if (keyword.text == "RULES") {
      TermReader reader(lex, is_var, &signature, options);
      for (;;) {
        Token look = lex.peek();
        if (look.kind == Tok::RParen) {
          lex.next();
          break;
        }
        if (look.kind == Tok::End) fail("unterminated RULES", look);
        Term lhs = reader.read();
        Token arrow = lex.next();
        if (arrow.kind != Tok::Arrow) fail("expected '->' after left-hand side " + lhs.to_string(), arrow);
        if (lex.peek().kind != Tok::Ident) fail("missing right-hand side after '->'", lex.peek());
        Term rhs = reader.read();
        if (lhs.has_holes() || rhs.has_holes()) fail("holes are not allowed in rules", look);
        try {
          rules.emplace_back(std::move(lhs), std::move(rhs));
        } catch (const RuleError& e) {
          fail(e.what(), look);
        }
      }
    } else if (keyword.text == "COMMENT") {
      if (!out.comment.empty()) out.comment += '\n';
      out.comment += lex.raw_until_close(open.line, open.column);
    } else {
      fail("unknown declaration " + keyword.text, keyword);
    }
  }
  if (!any) throw ParseError("empty problem file", 1, 1);
  out.trs = Trs(std::move(signature), std::move(rules));
  out.attachment_text = extract_attachment(out.comment);
  return out;
}

Trs parse_trs(std::string_view text, ParseOptions options) {
  return parse_problem(text, "<input>", options).trs;
}

Term parse_term(std::string_view text, const VariablePredicate& is_variable) {
  Lexer lex(text);
  ParseOptions options{true};
  TermReader reader(lex, is_variable, nullptr, options);
  Term t = reader.read();
  Token rest = lex.next();
  if (rest.kind != Tok::End) fail("trailing input after term", rest);
  return t;
}

Term parse_term(std::string_view text, const std::set<std::string>& variables) {
  return parse_term(text, [&variables](const std::string& n) { return variables.count(n) != 0; });
}

Rule parse_rule(std::string_view text, const std::set<std::string>& variables) {
  auto arrow = text.find("->");
  if (arrow == std::string_view::npos) throw ParseError("expected '->' in rule", 1, 1);
  return Rule(parse_term(text.substr(0, arrow), variables), parse_term(text.substr(arrow + 2), variables));
}

std::vector<std::string> trs_variables(const Trs& trs) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const Rule& r : trs.rules()) {
    for (const Term* t : {&r.lhs(), &r.rhs()}) {
      for (const auto& x : variables(*t)) {
        if (seen.insert(x).second) out.push_back(x);
      }
    }
  }
  return out;
}

VariablePredicate variable_predicate(const Trs& trs) {
  auto vars = trs_variables(trs);
  std::set<std::string> set(vars.begin(), vars.end());
  return [set = std::move(set)](const std::string& name) {
    std::string base = name;
    while (!base.empty() && base.back() == '\'') base.pop_back();
    return set.count(base) != 0;
  };
}

std::string print_trs(const Trs& trs) {
  if (trs.empty()) return "(RULES )\n";
  std::string out;
  auto vars = trs_variables(trs);
  if (!vars.empty()) {
    out += "(VAR";
    for (const auto& x : vars) out += " " + x;
    out += ")\n";
  }
  out += "(RULES\n";
  for (const Rule& r : trs.rules()) out += "  " + r.to_string() + "\n";
  out += ")\n";
  return out;
}

}  // namespace confdec
