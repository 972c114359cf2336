#include "tantra/query.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <unordered_set>

#include "json_codec.hpp"
#include "tantra/metrics.hpp"

namespace tantra {

namespace {

// ---------------------------------------------------------------- lexer

enum class Tok {
  LParen, RParen, LBrace, RBrace, Colon, Comma, Dot, Star,
  Eq, Ne, Lt, Gt, EdgeOpen, EdgeClose, Ident, String, Number, DateLit, End, Bad,
};

struct Token {
  Tok kind;
  std::string text;  // identifier, decoded string, number spelling, or raw bad input
  std::size_t line;
  std::size_t column;
};

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

// YYYY-MM-DD not followed by another digit.
bool is_date_shape(std::string_view s) {
  if (s.size() < 10 || (s.size() > 10 && is_digit(s[10]))) return false;
  for (std::size_t k = 0; k < 10; ++k) {
    if ((k == 4 || k == 7) ? s[k] != '-' : !is_digit(s[k])) return false;
  }
  return true;
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto push = [&](Tok kind, std::size_t len, std::string text) {
    out.push_back({kind, std::move(text), line, col});
    advance(len);
  };
  while (i < src.size()) {
    const char c = src[i];
    const std::string_view rest = src.substr(i);
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
    } else if (rest.substr(0, 2) == "-[") {
      push(Tok::EdgeOpen, 2, "-[");
    } else if (rest.substr(0, 3) == "]->") {
      push(Tok::EdgeClose, 3, "]->");
    } else if (rest.substr(0, 2) == "!=") {
      push(Tok::Ne, 2, "!=");
    } else if (is_date_shape(rest)) {
      push(Tok::DateLit, 10, std::string(rest.substr(0, 10)));
    } else if (c == '-' || is_digit(c)) {
      std::size_t n = c == '-' ? 1 : 0;
      const std::size_t digits_at = n;
      while (n < rest.size() && is_digit(rest[n])) ++n;
      if (n == digits_at) {
        push(Tok::Bad, 1, std::string(1, c));
        continue;
      }
      if (n + 1 < rest.size() && rest[n] == '.' && is_digit(rest[n + 1])) {
        ++n;
        while (n < rest.size() && is_digit(rest[n])) ++n;
      }
      if (n < rest.size() && (rest[n] == 'e' || rest[n] == 'E')) {
        std::size_t m = n + 1;
        if (m < rest.size() && (rest[m] == '+' || rest[m] == '-')) ++m;
        if (m < rest.size() && is_digit(rest[m])) {
          while (m < rest.size() && is_digit(rest[m])) ++m;
          n = m;
        }
      }
      push(Tok::Number, n, std::string(rest.substr(0, n)));
    } else if (is_ident_start(c)) {
      std::size_t n = 1;
      while (n < rest.size() && is_ident_char(rest[n])) ++n;
      push(Tok::Ident, n, std::string(rest.substr(0, n)));
    } else if (c == '"') {
      std::string value;
      std::size_t n = 1;
      bool closed = false;
      while (n < rest.size()) {
        char d = rest[n];
        if (d == '"') {
          closed = true;
          ++n;
          break;
        }
        if (d == '\\' && n + 1 < rest.size()) {
          char e = rest[n + 1];
          value += e == 'n' ? '\n' : e == 't' ? '\t' : e;
          n += 2;
          continue;
        }
        value += d;
        ++n;
      }
      if (closed) {
        push(Tok::String, n, std::move(value));
      } else {
        push(Tok::Bad, n, std::string(rest.substr(0, n)));
      }
    } else {
      Tok kind = Tok::Bad;
      switch (c) {
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case '{': kind = Tok::LBrace; break;
        case '}': kind = Tok::RBrace; break;
        case ':': kind = Tok::Colon; break;
        case ',': kind = Tok::Comma; break;
        case '.': kind = Tok::Dot; break;
        case '*': kind = Tok::Star; break;
        case '=': kind = Tok::Eq; break;
        case '<': kind = Tok::Lt; break;
        case '>': kind = Tok::Gt; break;
        default: break;
      }
      push(kind, 1, std::string(1, c));
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

// --------------------------------------------------------------- parser

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  Query parse() {
    Query q;
    keyword("MATCH");
    q.nodes.push_back(node());
    while (peek().kind == Tok::EdgeOpen) {
      q.edges.push_back(edge());
      q.nodes.push_back(node());
    }
    if (is_keyword("WHERE")) {
      next();
      q.where.push_back(predicate());
      while (is_keyword("AND")) {
        next();
        q.where.push_back(predicate());
      }
    } else if (!is_keyword("RETURN")) {
      fail({"'-['", "WHERE", "RETURN"});
    }
    keyword("RETURN", {"AND", "RETURN"});
    const Token& ret = peek();
    if (ret.kind == Tok::Star) {
      next();
      q.return_all = true;
    } else {
      q.returns.push_back(variable_ref({"*", "variable"}));
      while (peek().kind == Tok::Comma) {
        next();
        q.returns.push_back(variable_ref({"variable"}));
      }
    }
    expect(Tok::End, {q.return_all ? "end of input" : "','", "end of input"});
    check_variables(q, ret);
    return q;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const { fail_at(peek(), std::move(expected)); }

  [[noreturn]] static void fail_at(const Token& t, std::vector<std::string> expected) {
    std::string found = t.kind == Tok::End      ? "end of input"
                        : t.kind == Tok::String ? "\"" + t.text + "\""
                                                : "'" + t.text + "'";
    throw SyntaxError(t.line, t.column, std::move(expected), found);
  }

  bool is_keyword(std::string_view kw) const {
    return peek().kind == Tok::Ident && lower(peek().text) == lower(kw);
  }

  void keyword(std::string_view kw, std::vector<std::string> expected = {}) {
    if (!is_keyword(kw)) fail(expected.empty() ? std::vector<std::string>{std::string(kw)} : expected);
    next();
  }

  const Token& expect(Tok kind, std::vector<std::string> expected) {
    if (peek().kind != kind) fail(std::move(expected));
    return next();
  }

  std::string variable_ref(std::vector<std::string> expected) {
    return expect(Tok::Ident, std::move(expected)).text;
  }

  Literal literal() {
    const Token& t = peek();
    if (t.kind == Tok::String) {
      next();
      return Literal{t.text};
    }
    if (t.kind == Tok::Number) {
      double v = 0;
      auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
      if (ec != std::errc() || ptr != t.text.data() + t.text.size()) fail({"finite number"});
      next();
      return Literal{v};
    }
    if (t.kind == Tok::DateLit) {
      const auto d = Date::parse(t.text);
      if (!d) fail({"valid date"});
      next();
      return Literal{*d};
    }
    if (is_keyword("true") || is_keyword("false")) {
      bool v = lower(t.text) == "true";
      next();
      return Literal{v};
    }
    fail({"string", "number", "date", "true", "false"});
  }

  NodePattern node() {
    NodePattern n;
    expect(Tok::LParen, {"'('"});
    if (peek().kind == Tok::Ident) {
      n.var = next().text;
      declared_.push_back({n.var, toks_[pos_ - 1]});
    }
    if (peek().kind == Tok::Colon) {
      next();
      n.label = expect(Tok::Ident, {"aspect label"}).text;
    }
    if (peek().kind == Tok::LBrace) {
      next();
      do {
        PropertyTest p;
        p.key = expect(Tok::Ident, {"property key"}).text;
        expect(Tok::Colon, {"':'"});
        p.value = literal();
        n.props.push_back(std::move(p));
      } while (peek().kind == Tok::Comma && (next(), true));
      expect(Tok::RBrace, {"','", "'}'"});
    }
    if (peek().kind != Tok::RParen) {
      std::vector<std::string> expected;
      if (n.var.empty() && n.label.empty() && n.props.empty()) expected.push_back("variable");
      if (n.label.empty() && n.props.empty()) expected.push_back("':'");
      if (n.props.empty()) expected.push_back("'{'");
      expected.push_back("')'");
      fail(expected);
    }
    next();
    return n;
  }

  EdgePattern edge() {
    EdgePattern e;
    expect(Tok::EdgeOpen, {"'-['"});
    if (peek().kind == Tok::Colon) {
      next();
      e.rel_type = expect(Tok::Ident, {"relationship type"}).text;
    }
    if (is_keyword("VIA")) {
      next();
      e.via = expect(Tok::String, {"relator name string"}).text;
    }
    if (peek().kind != Tok::EdgeClose) {
      std::vector<std::string> expected;
      if (!e.rel_type && !e.via) expected.push_back("':'");
      if (!e.via) expected.push_back("VIA");
      expected.push_back("']->'");
      fail(expected);
    }
    next();
    return e;
  }

  Predicate predicate() {
    Predicate p;
    const Token& var = expect(Tok::Ident, {"variable"});
    p.var = var.text;
    used_.push_back({p.var, var});
    expect(Tok::Dot, {"'.'"});
    p.field = expect(Tok::Ident, {"field name"}).text;
    const Token& op = peek();
    if (op.kind == Tok::Eq) {
      p.op = CompareOp::Eq;
    } else if (op.kind == Tok::Ne) {
      p.op = CompareOp::Ne;
    } else if (op.kind == Tok::Lt) {
      p.op = CompareOp::Lt;
    } else if (op.kind == Tok::Gt) {
      p.op = CompareOp::Gt;
    } else if (is_keyword("CONTAINS")) {
      p.op = CompareOp::Contains;
    } else {
      fail({"'='", "'!='", "'<'", "'>'", "CONTAINS"});
    }
    next();
    p.value = literal();
    return p;
  }

  void check_variables(const Query& q, const Token& return_token) {
    std::set<std::string> names;
    for (const auto& [name, tok] : declared_) {
      if (!names.insert(name).second) {
        throw SyntaxError(tok.line, tok.column, {"unique variable"}, "duplicate variable '" + name + "'");
      }
    }
    for (const auto& [name, tok] : used_) {
      if (!names.count(name)) {
        throw SyntaxError(tok.line, tok.column, {"declared variable"}, "'" + name + "'");
      }
    }
    std::set<std::string> returned;
    for (const auto& name : q.returns) {
      if (!names.count(name)) {
        throw SyntaxError(return_token.line, return_token.column, {"declared variable"}, "'" + name + "'");
      }
      if (!returned.insert(name).second) {
        throw SyntaxError(return_token.line, return_token.column, {"unique variable"},
                          "'" + name + "' returned twice");
      }
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::pair<std::string, Token>> declared_;
  std::vector<std::pair<std::string, Token>> used_;
};

// -------------------------------------------------------------- printer

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

std::string print_literal(const Literal& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return quote(*s);
  if (const auto* d = std::get_if<double>(&v)) return format_number(*d);
  if (const auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  return std::get<Date>(v).to_string();
}

std::string_view op_text(CompareOp op) {
  switch (op) {
    case CompareOp::Eq: return "=";
    case CompareOp::Ne: return "!=";
    case CompareOp::Lt: return "<";
    case CompareOp::Gt: return ">";
    case CompareOp::Contains: return "CONTAINS";
  }
  return "?";
}

// ------------------------------------------------------------ execution

std::optional<Aspect> label_aspect(const std::string& label) {
  for (Aspect a : kAllAspects) {
    if (lower(to_string(a)) == lower(label)) return a;
  }
  return std::nullopt;
}

bool is_name_field(std::string_view field) { return field == "name" || field == "metric_name"; }

std::optional<Date> as_date(const Literal& v) {
  if (const auto* d = std::get_if<Date>(&v)) return *d;
  if (const auto* s = std::get_if<std::string>(&v)) return Date::parse(*s);
  return std::nullopt;
}

bool equal_values(const Literal& actual, const Literal& expected, bool name_field) {
  if (std::holds_alternative<Date>(actual) || std::holds_alternative<Date>(expected)) {
    auto a = as_date(actual), b = as_date(expected);
    return a && b && *a == *b;
  }
  if (name_field) {
    const auto* a = std::get_if<std::string>(&actual);
    const auto* b = std::get_if<std::string>(&expected);
    if (a && b) return name_key(*a) == name_key(*b);
  }
  return actual == expected;
}

bool compare(const std::optional<Literal>& actual, CompareOp op, const Literal& expected,
             bool name_field) {
  if (!actual) return false;
  switch (op) {
    case CompareOp::Eq: return equal_values(*actual, expected, name_field);
    case CompareOp::Ne: return !equal_values(*actual, expected, name_field);
    case CompareOp::Lt:
    case CompareOp::Gt: {
      auto ordered = [&](const auto& a, const auto& b) { return op == CompareOp::Lt ? a < b : b < a; };
      if (std::holds_alternative<Date>(*actual)) {
        auto b = as_date(expected);
        return b && ordered(std::get<Date>(*actual), *b);
      }
      if (actual->index() != expected.index() || std::holds_alternative<bool>(expected)) return false;
      if (const auto* a = std::get_if<double>(&*actual)) return ordered(*a, std::get<double>(expected));
      return ordered(std::get<std::string>(*actual), std::get<std::string>(expected));
    }
    case CompareOp::Contains: {
      const auto* a = std::get_if<std::string>(&*actual);
      const auto* b = std::get_if<std::string>(&expected);
      if (!a || !b) return false;
      if (name_field) return name_key(*a).find(name_key(*b)) != std::string::npos;
      return a->find(*b) != std::string::npos;
    }
  }
  return false;
}

struct NodeFilter {
  std::optional<Aspect> aspect;
  std::vector<std::pair<std::string, std::pair<CompareOp, Literal>>> tests;
};

bool passes(const TantraGraph& g, const ElementId& id, const NodeFilter& f) {
  if (f.aspect) {
    const Element* e = g.find_element(id);
    const Aspect a = e ? e->aspect() : Aspect::Why;
    if (a != *f.aspect) return false;
  }
  for (const auto& [field, test] : f.tests) {
    if (!compare(field_value(g, id, field), test.first, test.second, is_name_field(field))) {
      return false;
    }
  }
  return true;
}

// Targets reachable from `from` over one edge matching `e`, unsorted.
void step(const TantraGraph& g, const ElementId& from, const EdgePattern& e,
          std::vector<ElementId>& out) {
  if (const Measure* m = g.find_measure(from)) {
    if (e.via) return;
    if (!e.rel_type || *e.rel_type == kMeasuresEdge) out.push_back(m->subject);
    if (m->at_event && (!e.rel_type || *e.rel_type == kAtEventEdge)) out.push_back(*m->at_event);
    return;
  }
  for (const auto& rid : g.adjacency(from).out) {
    const Relationship& r = *g.find_relationship(rid);
    if (e.rel_type && r.rel_type != *e.rel_type) continue;
    if (e.via) {
      if (!r.relator) continue;
      const Element* rel = g.find_element(*r.relator);
      if (!rel || name_key(rel->name()) != name_key(*e.via)) continue;
    }
    out.push_back(r.target);
  }
}

}  // namespace

Query parse_query(std::string_view text) { return Parser(text).parse(); }

std::string print_query(const Query& q) {
  std::string out = "MATCH ";
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    if (i > 0) {
      const EdgePattern& e = q.edges[i - 1];
      out += "-[";
      if (e.rel_type) out += ":" + *e.rel_type;
      if (e.via) out += std::string(e.rel_type ? " " : "") + "VIA " + quote(*e.via);
      out += "]->";
    }
    const NodePattern& n = q.nodes[i];
    out += "(" + n.var;
    if (!n.label.empty()) out += ":" + n.label;
    if (!n.props.empty()) {
      out += (n.var.empty() && n.label.empty()) ? "{" : " {";
      for (std::size_t k = 0; k < n.props.size(); ++k) {
        out += (k ? ", " : "") + n.props[k].key + ": " + print_literal(n.props[k].value);
      }
      out += "}";
    }
    out += ")";
  }
  for (std::size_t i = 0; i < q.where.size(); ++i) {
    const Predicate& p = q.where[i];
    out += (i ? " AND " : " WHERE ") + p.var + "." + p.field + " " + std::string(op_text(p.op)) +
           " " + print_literal(p.value);
  }
  out += " RETURN ";
  if (q.return_all) {
    out += "*";
  } else {
    for (std::size_t i = 0; i < q.returns.size(); ++i) out += (i ? ", " : "") + q.returns[i];
  }
  return out;
}

std::optional<Literal> field_value(const TantraGraph& g, const ElementId& id,
                                   std::string_view field) {
  if (const Element* e = g.find_element(id)) {
    if (field == "id") return Literal{e->id().str()};
    if (field == "name") return Literal{e->name()};
    if (field == "aspect") return Literal{std::string(to_string(e->aspect()))};
    if (field == "perspective") return Literal{std::string(to_string(e->perspective()))};
    if (field == "scope") return Literal{e->scope()};
    if (field == "definition") {
      if (!e->definition()) return std::nullopt;
      return Literal{*e->definition()};
    }
    if (field == "sub_ecosystem") {
      if (!e->sub_ecosystem()) return std::nullopt;
      return Literal{std::string(to_string(*e->sub_ecosystem()))};
    }
    if (const Literal* v = e->property(std::string(field))) return *v;
    return std::nullopt;
  }
  if (const Measure* m = g.find_measure(id)) {
    if (field == "id") return Literal{m->id.str()};
    if (field == "aspect") return Literal{std::string(to_string(Aspect::Why))};
    if (field == "metric_name" || field == "name") return Literal{m->metric_name};
    if (field == "value") return Literal{m->value};
    if (field == "unit") return Literal{m->unit};
    if (field == "subject") return Literal{m->subject.str()};
    if (field == "at_event") {
      if (!m->at_event) return std::nullopt;
      return Literal{m->at_event->str()};
    }
  }
  return std::nullopt;
}

std::vector<std::vector<ElementId>> match_all(const TantraGraph& g, const Query& q,
                                              Execution ex) {
  const std::size_t k = q.nodes.size();
  std::vector<NodeFilter> filters(k);
  for (std::size_t i = 0; i < k; ++i) {
    const NodePattern& n = q.nodes[i];
    if (!n.label.empty()) {
      filters[i].aspect = label_aspect(n.label);
      if (!filters[i].aspect) throw Error(ErrorCode::UnknownLabel, "unknown aspect label '" + n.label + "'");
    }
    for (const auto& p : n.props) filters[i].tests.push_back({p.key, {CompareOp::Eq, p.value}});
    for (const auto& p : q.where) {
      if (!n.var.empty() && p.var == n.var) filters[i].tests.push_back({p.field, {p.op, p.value}});
    }
  }

  std::vector<ElementId> universe;
  universe.reserve(g.element_count() + g.measure_count());
  for (const auto& [id, e] : g.elements()) universe.push_back(id);
  for (const auto& [id, m] : g.measures()) universe.push_back(id);
  std::sort(universe.begin(), universe.end());

  std::vector<char> root_ok(universe.size());
  kernels::for_each_index(ex, universe.size(),
                          [&](std::size_t i) { root_ok[i] = passes(g, universe[i], filters[0]); });
  std::vector<ElementId> roots;
  for (std::size_t i = 0; i < universe.size(); ++i) {
    if (root_ok[i]) roots.push_back(universe[i]);
  }

  std::vector<std::vector<std::vector<ElementId>>> per_root(roots.size());
  kernels::for_each_index(ex, roots.size(), [&](std::size_t r) {
    std::vector<ElementId> tuple{roots[r]};
    auto& found = per_root[r];
    auto extend = [&](auto&& self, std::size_t depth) -> void {
      if (depth == k) {
        found.push_back(tuple);
        return;
      }
      std::vector<ElementId> targets;
      step(g, tuple.back(), q.edges[depth - 1], targets);
      std::sort(targets.begin(), targets.end());
      targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
      for (const auto& t : targets) {
        if (!passes(g, t, filters[depth])) continue;
        tuple.push_back(t);
        self(self, depth + 1);
        tuple.pop_back();
      }
    };
    extend(extend, 1);
  });

  std::vector<std::vector<ElementId>> out;
  for (auto& rows : per_root) {
    for (auto& row : rows) out.push_back(std::move(row));
  }
  std::sort(out.begin(), out.end());
  return out;
}

QueryResult execute(const TantraGraph& g, const Query& q, Execution ex) {
  QueryResult res;
  std::vector<std::size_t> cols;
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    if (q.return_all && !q.nodes[i].var.empty()) {
      cols.push_back(i);
      res.columns.push_back(q.nodes[i].var);
    }
  }
  for (const auto& name : q.returns) {
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
      if (q.nodes[i].var == name) cols.push_back(i);
    }
    res.columns.push_back(name);
  }

  auto full = match_all(g, q, ex);
  std::set<ElementId> bound;
  std::vector<std::pair<std::vector<ElementId>, std::vector<ElementId>>> keyed;
  keyed.reserve(full.size());
  for (auto& row : full) {
    bound.insert(row.begin(), row.end());
    std::vector<ElementId> projected;
    for (std::size_t c : cols) projected.push_back(row[c]);
    keyed.emplace_back(std::move(projected), std::move(row));
  }
  std::sort(keyed.begin(), keyed.end());
  // Projected rows form a set; the sort keeps equal projections adjacent.
  for (auto& [projected, row] : keyed) {
    if (res.rows.empty() || res.rows.back() != projected) res.rows.push_back(std::move(projected));
  }
  res.bound.assign(bound.begin(), bound.end());
  return res;
}

namespace {

std::string display_name(const TantraGraph& g, const ElementId& id) {
  if (const Element* e = g.find_element(id)) return e->name();
  if (const Measure* m = g.find_measure(id)) return m->metric_name;
  return "";
}

}  // namespace

std::string result_to_tsv(const TantraGraph& g, const QueryResult& r) {
  std::string out;
  for (std::size_t i = 0; i < r.columns.size(); ++i) {
    out += (i ? "\t" : "") + r.columns[i] + "\t" + r.columns[i] + ".name";
  }
  out += "\n";
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::string name = display_name(g, row[i]);
      std::replace(name.begin(), name.end(), '\t', ' ');
      out += (i ? "\t" : "") + row[i].str() + "\t" + name;
    }
    out += "\n";
  }
  return out;
}

std::string result_to_jsonl(const TantraGraph& g, const QueryResult& r) {
  std::string out;
  for (const auto& row : r.rows) {
    codec::json rec = codec::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      rec[r.columns[i]] = {{"id", row[i].str()}, {"name", display_name(g, row[i])}};
    }
    out += codec::dump(rec) + "\n";
  }
  return out;
}

}  // namespace tantra
