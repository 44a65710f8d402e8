#include <eqsat/sexpr.hpp>

#include <charconv>

namespace eqsat {

namespace {

  bool is_alpha(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
  bool is_digit(char c) { return c >= '0' && c <= '9'; }
  bool is_sym_punct(char c) { return std::string_view("_+*/<>=!?-").find(c) != std::string_view::npos; }

  bool is_delimiter(char c)
  {
    return c == '(' || c == ')' || c == ';' || c == '"' || c == ' ' || c == '\t' || c == '\n' || c == '\r';
  }

  bool is_integer_form(std::string_view tok)
  {
    if (!tok.empty() && (tok.front() == '-' || tok.front() == '+'))
      tok.remove_prefix(1);
    if (tok.empty())
      return false;
    for (char c : tok)
      if (!is_digit(c))
        return false;
    return true;
  }

  class Reader
  {
  public:
    explicit Reader(std::string_view text) : _text(text) {}

    std::vector< SExpr > read_all()
    {
      std::vector< SExpr > out;
      while (true) {
        skip_trivia();
        if (at_end())
          break;
        if (peek() == ')')
          throw Error(ErrorCode::ParseError, "unexpected ')'", span_from(mark(), 1));
        out.push_back(read());
      }
      return out;
    }

  private:
    struct Mark
    {
      std::size_t pos, line, column;
    };

    bool at_end() const { return _pos >= _text.size(); }
    char peek() const { return _text[_pos]; }
    Mark mark() const { return {_pos, _line, _column}; }

    SourceSpan span_from(Mark m, std::size_t len) const { return {m.pos, m.pos + len, m.line, m.column}; }
    SourceSpan span_since(Mark m) const { return {m.pos, _pos, m.line, m.column}; }

    void advance()
    {
      if (_text[_pos] == '\n') {
        ++_line;
        _column = 1;
      } else {
        ++_column;
      }
      ++_pos;
    }

    void skip_trivia()
    {
      while (!at_end()) {
        char c = peek();
        if (c == ';') {
          while (!at_end() && peek() != '\n')
            advance();
        } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
          advance();
        } else {
          break;
        }
      }
    }

    SExpr read()
    {
      auto start = mark();
      char c = peek();
      if (c == '(') {
        advance();
        SExpr list;
        list.kind = SExpr::Kind::List;
        while (true) {
          skip_trivia();
          if (at_end())
            throw Error(ErrorCode::ParseError, "unclosed '('", span_from(start, 1));
          if (peek() == ')') {
            advance();
            break;
          }
          list.items.push_back(read());
        }
        list.span = span_since(start);
        return list;
      }
      if (c == '"')
        return read_string(start);
      return read_atom(start);
    }

    SExpr read_string(Mark start)
    {
      advance();
      SExpr out;
      out.kind = SExpr::Kind::String;
      while (true) {
        if (at_end())
          throw Error(ErrorCode::LexError, "unterminated string literal", span_since(start));
        char c = peek();
        if (c == '"') {
          advance();
          break;
        }
        if (c == '\\') {
          auto esc = mark();
          advance();
          if (at_end())
            throw Error(ErrorCode::LexError, "unterminated string literal", span_since(start));
          char e = peek();
          if (e != '"' && e != '\\')
            throw Error(ErrorCode::LexError, std::string("unsupported escape '\\") + e + "'", span_from(esc, 2));
          out.text.push_back(e);
          advance();
          continue;
        }
        out.text.push_back(c);
        advance();
      }
      out.span = span_since(start);
      return out;
    }

    SExpr read_atom(Mark start)
    {
      while (!at_end() && !is_delimiter(peek()))
        advance();
      auto span = span_since(start);
      auto tok = _text.substr(start.pos, _pos - start.pos);

      SExpr out;
      out.span = span;
      if (is_integer_form(tok)) {
        out.kind = SExpr::Kind::Integer;
        auto digits = tok.front() == '+' ? tok.substr(1) : tok;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), out.integer);
        if (ec != std::errc() || ptr != digits.data() + digits.size()) {
          throw Error(ErrorCode::LexError, "integer literal `" + std::string(tok) + "` is out of the 64-bit range",
                      span);
        }
        return out;
      }
      if (tok.size() > 1 && tok.front() == ':' && is_identifier(tok.substr(1))) {
        out.kind = SExpr::Kind::Keyword;
        out.text = std::string(tok);
        return out;
      }
      if (is_identifier(tok)) {
        out.kind = SExpr::Kind::Symbol;
        out.text = std::string(tok);
        return out;
      }
      throw Error(ErrorCode::LexError, "invalid token `" + std::string(tok) + "`", span);
    }

    std::string_view _text;
    std::size_t _pos = 0;
    std::size_t _line = 1;
    std::size_t _column = 1;
  };

} // namespace

bool is_identifier(std::string_view tok)
{
  if (tok.empty() || is_integer_form(tok))
    return false;
  if (!is_alpha(tok.front()) && !is_sym_punct(tok.front()))
    return false;
  for (char c : tok.substr(1))
    if (!is_alpha(c) && !is_digit(c) && !is_sym_punct(c) && c != '.')
      return false;
  return true;
}

std::vector< SExpr > read_sexprs(std::string_view text)
{
  return Reader(text).read_all();
}

bool input_incomplete(std::string_view text)
{
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (in_string) {
      if (c == '\\')
        ++i;
      else if (c == '"')
        in_string = false;
      continue;
    }
    if (c == ';') {
      while (i < text.size() && text[i] != '\n')
        ++i;
    } else if (c == '"') {
      in_string = true;
    } else if (c == '(') {
      ++depth;
    } else if (c == ')') {
      --depth;
    }
  }
  return in_string || depth > 0;
}

} // namespace eqsat
