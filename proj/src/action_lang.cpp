#include "sdrl/action_lang.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace sdrl {

ParseError::ParseError(const std::string& message, int line_no, int column_no)
    : std::runtime_error("parse error at " + std::to_string(line_no) + ":" +
                         std::to_string(column_no) + ": " + message),
      line(line_no),
      column(column_no) {}

std::uint64_t state_hash(const SymbolicState& s) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (std::int32_t v : s.values) {
    for (int b = 0; b < 4; ++b) {
      h ^= static_cast<std::uint64_t>((v >> (8 * b)) & 0xff);
      h *= 1099511628211ull;
    }
  }
  return h;
}

int ActionDescription::fluent_index(std::string_view name) const {
  for (std::size_t i = 0; i < fluents.size(); ++i)
    if (fluents[i].name == name) return static_cast<int>(i);
  return -1;
}

int ActionDescription::action_index(std::string_view name) const {
  for (std::size_t i = 0; i < actions.size(); ++i)
    if (actions[i] == name) return static_cast<int>(i);
  return -1;
}

int ActionDescription::sort_index(std::string_view name) const {
  for (std::size_t i = 0; i < sorts.size(); ++i)
    if (sorts[i].name == name) return static_cast<int>(i);
  return -1;
}

bool ActionDescription::inertial(int fluent) const {
  for (const CausalLaw& law : laws)
    if (law.kind == LawKind::Inertial && law.inertial_fluent == fluent) return true;
  return false;
}

std::string ActionDescription::atom_text(const FluentAtom& a) const {
  const FluentDecl& f = fluents.at(static_cast<std::size_t>(a.fluent));
  return f.name + "=" + f.domain.at(static_cast<std::size_t>(a.value));
}

std::string ActionDescription::state_text(const SymbolicState& s) const {
  std::string out;
  for (std::size_t i = 0; i < fluents.size(); ++i) {
    if (i) out += ' ';
    out += fluents[i].name + "=" +
           fluents[i].domain.at(static_cast<std::size_t>(s.values.at(i)));
  }
  return out;
}

namespace {

struct Token {
  std::string text;
  int line = 0;
  int col = 0;
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_variable(const std::string& name) {
  return !name.empty() && std::isupper(static_cast<unsigned char>(name[0]));
}

std::vector<Token> tokenize_line(const std::string& text, int line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '%') break;  // comment
    if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
    int col = static_cast<int>(i) + 1;
    if (is_ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && is_ident_char(text[j])) ++j;
      out.push_back({text.substr(i, j - i), line_no, col});
      i = j;
    } else if (std::string("={}(),:").find(c) != std::string::npos) {
      out.push_back({std::string(1, c), line_no, col});
      ++i;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line_no, col);
    }
  }
  return out;
}

// Pre-grounding law representation.
struct RawAtom {
  std::string fluent;
  std::string value;  // object, true/false, or variable
  int line = 0, col = 0;
};
struct RawActionTerm {
  std::string name;
  std::vector<std::string> args;  // objects or variables
  int line = 0, col = 0;
};
struct RawLaw {
  LawKind kind;
  std::optional<RawAtom> head;
  std::optional<RawActionTerm> action;
  std::string inertial_fluent;
  std::vector<RawAtom> body;
  int line = 0, col = 0;
};

class LineParser {
 public:
  LineParser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  bool done() const { return pos_ >= toks_.size(); }
  const Token& peek() const {
    if (done()) throw ParseError("unexpected end of line", last_line_, last_col_);
    return toks_[pos_];
  }
  Token next() {
    const Token& t = peek();
    last_line_ = t.line;
    last_col_ = t.col + static_cast<int>(t.text.size());
    return toks_[pos_++];
  }
  Token expect(const std::string& what) {
    Token t = next();
    if (t.text != what)
      throw ParseError("expected '" + what + "', found '" + t.text + "'", t.line, t.col);
    return t;
  }
  Token ident() {
    Token t = next();
    if (!is_ident_start(t.text[0]))
      throw ParseError("expected identifier, found '" + t.text + "'", t.line, t.col);
    return t;
  }
  void set_position(int line, int col) { last_line_ = line; last_col_ = col; }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int last_line_ = 0, last_col_ = 0;
};

class DescriptionBuilder {
 public:
  ActionDescription build(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      std::vector<Token> toks = tokenize_line(line, line_no);
      if (toks.empty()) continue;
      LineParser p(std::move(toks));
      p.set_position(line_no, 1);
      parse_statement(p);
      if (!p.done())
        throw ParseError("trailing tokens after statement: '" + p.peek().text + "'",
                         p.peek().line, p.peek().col);
    }
    if (desc_.fluents.empty()) throw ParseError("no fluents declared", line_no + 1, 1);
    ground();
    return std::move(desc_);
  }

 private:
  ActionDescription desc_;
  std::vector<RawLaw> raw_laws_;

  const SortDecl* find_sort(const std::string& name) const {
    int i = desc_.sort_index(name);
    return i < 0 ? nullptr : &desc_.sorts[static_cast<std::size_t>(i)];
  }

  void parse_statement(LineParser& p) {
    Token kw = p.ident();
    if (kw.text == "sort") return parse_sort(p);
    if (kw.text == "fluent") return parse_fluent(p);
    if (kw.text == "action") return parse_action(p);
    if (kw.text == "dynamic") return parse_dynamic(p);
    if (kw.text == "static") return parse_static(p);
    if (kw.text == "nonexecutable") return parse_nonexecutable(p);
    if (kw.text == "inertial") return parse_inertial(p);
    if (kw.text == "default") return parse_default(p);
    throw ParseError("unknown statement '" + kw.text + "'", kw.line, kw.col);
  }

  void parse_sort(LineParser& p) {
    Token name = p.ident();
    if (name.text == "bool")
      throw ParseError("'bool' is a built-in sort", name.line, name.col);
    if (find_sort(name.text))
      throw ParseError("duplicate sort declaration '" + name.text + "'", name.line, name.col);
    p.expect("=");
    p.expect("{");
    SortDecl s{name.text, {}};
    while (true) {
      Token v = p.ident();
      if (is_variable(v.text))
        throw ParseError("sort values must start lowercase: '" + v.text + "'", v.line, v.col);
      if (std::find(s.values.begin(), s.values.end(), v.text) != s.values.end())
        throw ParseError("duplicate value '" + v.text + "' in sort", v.line, v.col);
      s.values.push_back(v.text);
      Token sep = p.next();
      if (sep.text == "}") break;
      if (sep.text != ",")
        throw ParseError("expected ',' or '}', found '" + sep.text + "'", sep.line, sep.col);
    }
    desc_.sorts.push_back(std::move(s));
  }

  void parse_fluent(LineParser& p) {
    Token name = p.ident();
    if (desc_.fluent_index(name.text) >= 0)
      throw ParseError("duplicate fluent declaration '" + name.text + "'", name.line, name.col);
    p.expect(":");
    Token sort = p.ident();
    FluentDecl f;
    f.name = name.text;
    f.sort_name = sort.text;
    if (sort.text == "bool") {
      f.domain = {"false", "true"};
    } else {
      const SortDecl* s = find_sort(sort.text);
      if (!s) throw ParseError("undeclared sort '" + sort.text + "'", sort.line, sort.col);
      f.domain = s->values;
    }
    desc_.fluents.push_back(std::move(f));
  }

  void parse_action(LineParser& p) {
    Token name = p.ident();
    for (const ActionSchema& a : desc_.schemas)
      if (a.name == name.text)
        throw ParseError("duplicate action declaration '" + name.text + "'", name.line, name.col);
    ActionSchema schema{name.text, {}};
    if (!p.done() && p.peek().text == "(") {
      p.expect("(");
      while (true) {
        Token var = p.ident();
        if (!is_variable(var.text))
          throw ParseError("action parameter must be a variable (uppercase): '" + var.text + "'",
                           var.line, var.col);
        p.expect(":");
        Token sort = p.ident();
        int si = desc_.sort_index(sort.text);
        if (si < 0) throw ParseError("undeclared sort '" + sort.text + "'", sort.line, sort.col);
        schema.params.push_back({var.text, si});
        Token sep = p.next();
        if (sep.text == ")") break;
        if (sep.text != ",")
          throw ParseError("expected ',' or ')', found '" + sep.text + "'", sep.line, sep.col);
      }
    }
    desc_.schemas.push_back(std::move(schema));
  }

  RawAtom parse_atom(LineParser& p) {
    Token f = p.ident();
    p.expect("=");
    Token v = p.ident();
    return RawAtom{f.text, v.text, f.line, f.col};
  }

  RawActionTerm parse_action_term(LineParser& p) {
    Token name = p.ident();
    RawActionTerm t{name.text, {}, name.line, name.col};
    if (!p.done() && p.peek().text == "(") {
      p.expect("(");
      while (true) {
        Token arg = p.ident();
        t.args.push_back(arg.text);
        Token sep = p.next();
        if (sep.text == ")") break;
        if (sep.text != ",")
          throw ParseError("expected ',' or ')', found '" + sep.text + "'", sep.line, sep.col);
      }
    }
    return t;
  }

  std::vector<RawAtom> parse_body(LineParser& p) {
    std::vector<RawAtom> body;
    if (p.done()) return body;
    p.expect("if");
    while (true) {
      body.push_back(parse_atom(p));
      if (p.done()) break;
      p.expect(",");
    }
    return body;
  }

  void parse_dynamic(LineParser& p) {
    RawLaw law;
    law.kind = LawKind::Dynamic;
    law.action = parse_action_term(p);
    law.line = law.action->line;
    p.expect("causes");
    law.head = parse_atom(p);
    law.body = parse_body(p);
    raw_laws_.push_back(std::move(law));
  }

  void parse_static(LineParser& p) {
    RawLaw law;
    law.kind = LawKind::Static;
    law.head = parse_atom(p);
    law.line = law.head->line;
    law.body = parse_body(p);
    raw_laws_.push_back(std::move(law));
  }

  void parse_nonexecutable(LineParser& p) {
    RawLaw law;
    law.kind = LawKind::Nonexecutable;
    law.action = parse_action_term(p);
    law.line = law.action->line;
    law.body = parse_body(p);
    raw_laws_.push_back(std::move(law));
  }

  void parse_inertial(LineParser& p) {
    Token f = p.ident();
    RawLaw law;
    law.kind = LawKind::Inertial;
    law.inertial_fluent = f.text;
    law.line = f.line;
    raw_laws_.push_back(std::move(law));
  }

  void parse_default(LineParser& p) {
    RawLaw law;
    law.kind = LawKind::Default;
    law.head = parse_atom(p);
    law.line = law.head->line;
    law.body = parse_body(p);
    raw_laws_.push_back(std::move(law));
  }

  static std::string grounded_name(const std::string& name,
                                   const std::vector<std::string>& args) {
    if (args.empty()) return name;
    std::string out = name + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i) out += ",";
      out += args[i];
    }
    return out + ")";
  }

  FluentAtom resolve_atom(const RawAtom& raw,
                          const std::map<std::string, std::string>& binding) const {
    int fi = desc_.fluent_index(raw.fluent);
    if (fi < 0)
      throw ParseError("undeclared fluent '" + raw.fluent + "'", raw.line, raw.col);
    std::string value = raw.value;
    if (is_variable(value)) {
      auto it = binding.find(value);
      if (it == binding.end())
        throw ParseError("unbound variable '" + value + "'", raw.line, raw.col);
      value = it->second;
    }
    const FluentDecl& f = desc_.fluents[static_cast<std::size_t>(fi)];
    auto vit = std::find(f.domain.begin(), f.domain.end(), value);
    if (vit == f.domain.end())
      throw ParseError("undeclared value '" + value + "' for fluent '" + raw.fluent + "'",
                       raw.line, raw.col);
    return FluentAtom{fi, static_cast<int>(vit - f.domain.begin())};
  }

  void ground() {
    // All groundings of every schema, then sorted for deterministic indices.
    std::set<std::string> grounded;
    for (const ActionSchema& schema : desc_.schemas) {
      std::vector<std::string> args(schema.params.size());
      expand_schema(schema, 0, args, grounded);
    }
    desc_.actions.assign(grounded.begin(), grounded.end());

    for (const RawLaw& raw : raw_laws_) {
      if (raw.kind == LawKind::Inertial) {
        int fi = desc_.fluent_index(raw.inertial_fluent);
        if (fi < 0)
          throw ParseError("undeclared fluent '" + raw.inertial_fluent + "'", raw.line, 1);
        CausalLaw law;
        law.kind = LawKind::Inertial;
        law.inertial_fluent = fi;
        desc_.laws.push_back(law);
        continue;
      }
      if (!raw.action) {
        ground_with_binding(raw, {});
        continue;
      }
      const ActionSchema* schema = nullptr;
      for (const ActionSchema& s : desc_.schemas)
        if (s.name == raw.action->name) schema = &s;
      if (!schema)
        throw ParseError("undeclared action '" + raw.action->name + "'",
                         raw.action->line, raw.action->col);
      if (schema->params.size() != raw.action->args.size())
        throw ParseError("action '" + schema->name + "' expects " +
                             std::to_string(schema->params.size()) + " argument(s)",
                         raw.action->line, raw.action->col);
      std::map<std::string, std::string> binding;
      expand_law(raw, *schema, 0, binding);
    }
  }

  void expand_schema(const ActionSchema& schema, std::size_t i,
                     std::vector<std::string>& args, std::set<std::string>& out) {
    if (i == schema.params.size()) {
      out.insert(grounded_name(schema.name, args));
      return;
    }
    const SortDecl& sort = desc_.sorts[static_cast<std::size_t>(schema.params[i].sort)];
    for (const std::string& v : sort.values) {
      args[i] = v;
      expand_schema(schema, i + 1, args, out);
    }
  }

  void expand_law(const RawLaw& raw, const ActionSchema& schema, std::size_t i,
                  std::map<std::string, std::string>& binding) {
    if (i == raw.action->args.size()) {
      std::vector<std::string> args;
      for (const std::string& a : raw.action->args)
        args.push_back(is_variable(a) ? binding.at(a) : a);
      ground_with_binding(raw, binding, grounded_name(schema.name, args));
      return;
    }
    const std::string& arg = raw.action->args[i];
    const SortDecl& sort = desc_.sorts[static_cast<std::size_t>(schema.params[i].sort)];
    if (is_variable(arg)) {
      auto bound = binding.find(arg);
      if (bound != binding.end()) {
        expand_law(raw, schema, i + 1, binding);
        return;
      }
      for (const std::string& v : sort.values) {
        binding[arg] = v;
        expand_law(raw, schema, i + 1, binding);
      }
      binding.erase(arg);
    } else {
      if (std::find(sort.values.begin(), sort.values.end(), arg) == sort.values.end())
        throw ParseError("undeclared object '" + arg + "' for sort '" + sort.name + "'",
                         raw.action->line, raw.action->col);
      expand_law(raw, schema, i + 1, binding);
    }
  }

  void ground_with_binding(const RawLaw& raw,
                           const std::map<std::string, std::string>& binding,
                           const std::string& action_name = "") {
    CausalLaw law;
    law.kind = raw.kind;
    if (!action_name.empty()) {
      law.action = desc_.action_index(action_name);
      if (law.action < 0)
        throw ParseError("internal: unknown grounded action '" + action_name + "'", raw.line, 1);
    }
    if (raw.head) law.head = resolve_atom(*raw.head, binding);
    for (const RawAtom& a : raw.body) law.body.push_back(resolve_atom(a, binding));
    desc_.laws.push_back(std::move(law));
  }
};

}  // namespace

ActionDescription parse_action_description(std::string_view text) {
  DescriptionBuilder builder;
  return builder.build(text);
}

bool body_satisfied(const std::vector<FluentAtom>& body, const SymbolicState& s) {
  for (const FluentAtom& a : body)
    if (s.values.at(static_cast<std::size_t>(a.fluent)) != a.value) return false;
  return true;
}

bool statically_closed(const ActionDescription& d, const SymbolicState& s) {
  for (const CausalLaw& law : d.laws) {
    if (law.kind != LawKind::Static) continue;
    if (body_satisfied(law.body, s) &&
        s.values.at(static_cast<std::size_t>(law.head->fluent)) != law.head->value)
      return false;
  }
  return true;
}

std::vector<int> static_dependency_order(const ActionDescription& d) {
  std::size_t n = d.fluents.size();
  // edge body -> head
  std::vector<std::vector<int>> out(n);
  std::vector<int> indeg(n, 0);
  for (const CausalLaw& law : d.laws) {
    if (law.kind != LawKind::Static || !law.head) continue;
    if (law.head->fluent < 0 || law.head->fluent >= static_cast<int>(n)) continue;
    for (const FluentAtom& a : law.body) {
      if (a.fluent < 0 || a.fluent >= static_cast<int>(n)) continue;
      out[static_cast<std::size_t>(a.fluent)].push_back(law.head->fluent);
      ++indeg[static_cast<std::size_t>(law.head->fluent)];
    }
  }
  std::vector<int> order;
  std::vector<bool> emitted(n, false);
  bool progressed = true;
  while (order.size() < n && progressed) {
    progressed = false;
    for (std::size_t f = 0; f < n; ++f) {
      if (emitted[f] || indeg[f] != 0) continue;
      emitted[f] = true;
      order.push_back(static_cast<int>(f));
      for (int g : out[f]) --indeg[static_cast<std::size_t>(g)];
      progressed = true;
    }
  }
  for (std::size_t f = 0; f < n; ++f)  // cycle leftovers, declaration order
    if (!emitted[f]) order.push_back(static_cast<int>(f));
  return order;
}

// A static law whose body is settled overrides the defeasible fills.
bool finalize_state(const ActionDescription& d, std::vector<std::int32_t>& vals,
                    const SymbolicState* inertia_source) {
  auto settled_and_satisfied = [&](const std::vector<FluentAtom>& body) {
    for (const FluentAtom& a : body)
      if (vals[static_cast<std::size_t>(a.fluent)] != a.value) return false;
    return true;
  };
  for (int f : static_dependency_order(d)) {
    std::int32_t& slot = vals[static_cast<std::size_t>(f)];
    if (slot >= 0) continue;
    for (const CausalLaw& law : d.laws) {
      if (law.kind != LawKind::Static || law.head->fluent != f) continue;
      bool body_ok = true;
      for (const FluentAtom& a : law.body) {
        std::int32_t v = vals[static_cast<std::size_t>(a.fluent)];
        if (v < 0 || v != a.value) {
          body_ok = false;
          break;
        }
      }
      if (!body_ok) continue;
      if (slot >= 0 && slot != law.head->value) return false;
      slot = law.head->value;
    }
    if (slot >= 0) continue;
    if (inertia_source && d.inertial(f)) {
      slot = inertia_source->values[static_cast<std::size_t>(f)];
      continue;
    }
    for (const CausalLaw& law : d.laws) {
      if (law.kind != LawKind::Default || law.head->fluent != f) continue;
      if (settled_and_satisfied(law.body)) {
        slot = law.head->value;
        break;
      }
    }
  }
  return true;
}

SymbolicState complete_state(const ActionDescription& d,
                             const std::vector<FluentAtom>& given) {
  std::vector<std::int32_t> vals(d.fluents.size(), -1);
  for (const FluentAtom& a : given) {
    std::int32_t& slot = vals.at(static_cast<std::size_t>(a.fluent));
    if (slot >= 0 && slot != a.value)
      throw std::runtime_error("conflicting atoms for fluent '" +
                               d.fluents[static_cast<std::size_t>(a.fluent)].name + "'");
    slot = a.value;
  }
  if (!finalize_state(d, vals, nullptr))
    throw std::runtime_error("static laws are inconsistent with the given atoms");
  for (std::size_t i = 0; i < vals.size(); ++i)
    if (vals[i] < 0)
      throw std::runtime_error("cannot complete state: fluent '" + d.fluents[i].name +
                               "' unassigned");
  SymbolicState s{std::move(vals)};
  if (!statically_closed(d, s))
    throw std::runtime_error("completed state violates a static law");
  return s;
}

std::vector<FluentAtom> parse_atoms(const ActionDescription& d, std::string_view text) {
  std::vector<FluentAtom> out;
  std::string token;
  std::string buf{text};
  for (char& c : buf)
    if (c == ',') c = ' ';
  std::istringstream in(buf);
  while (in >> token) {
    auto eq = token.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("expected f=v atom, got '" + token + "'");
    std::string fname = token.substr(0, eq);
    std::string vname = token.substr(eq + 1);
    int fi = d.fluent_index(fname);
    if (fi < 0) throw std::runtime_error("undeclared fluent '" + fname + "'");
    const FluentDecl& f = d.fluents[static_cast<std::size_t>(fi)];
    auto vit = std::find(f.domain.begin(), f.domain.end(), vname);
    if (vit == f.domain.end())
      throw std::runtime_error("undeclared value '" + vname + "' for fluent '" + fname + "'");
    out.push_back({fi, static_cast<int>(vit - f.domain.begin())});
  }
  return out;
}

std::vector<Diagnostic> validate(const ActionDescription& d) {
  std::vector<Diagnostic> out;
  auto bad_atom = [&](const FluentAtom& a) {
    if (a.fluent < 0 || a.fluent >= static_cast<int>(d.fluents.size())) return true;
    const FluentDecl& f = d.fluents[static_cast<std::size_t>(a.fluent)];
    return a.value < 0 || a.value >= static_cast<int>(f.domain.size());
  };

  std::set<std::string> names;
  for (const FluentDecl& f : d.fluents) {
    if (!names.insert(f.name).second)
      out.push_back({"duplicate fluent declaration '" + f.name + "'"});
    if (f.domain.empty()) out.push_back({"fluent '" + f.name + "' has an empty domain"});
    std::set<std::string> values(f.domain.begin(), f.domain.end());
    if (values.size() != f.domain.size())
      out.push_back({"fluent '" + f.name + "' has duplicate domain values"});
  }

  for (std::size_t i = 0; i < d.laws.size(); ++i) {
    const CausalLaw& law = d.laws[i];
    int li = static_cast<int>(i);
    switch (law.kind) {
      case LawKind::Static:
      case LawKind::Default:
        if (!law.head || bad_atom(*law.head))
          out.push_back({"law has an undeclared head atom", li});
        if (law.action >= 0) out.push_back({"static/default law names an action", li});
        break;
      case LawKind::Dynamic:
        if (!law.head || bad_atom(*law.head))
          out.push_back({"dynamic law has an undeclared head atom", li});
        if (law.action < 0 || law.action >= static_cast<int>(d.actions.size()))
          out.push_back({"dynamic law must name exactly one action", li});
        break;
      case LawKind::Nonexecutable:
        if (law.action < 0 || law.action >= static_cast<int>(d.actions.size()))
          out.push_back({"nonexecutable law must name exactly one action", li});
        if (law.head) out.push_back({"nonexecutable law cannot have a head", li});
        break;
      case LawKind::Inertial:
        if (law.inertial_fluent < 0 ||
            law.inertial_fluent >= static_cast<int>(d.fluents.size()))
          out.push_back({"inertial law must name exactly one declared fluent", li});
        break;
    }
    for (const FluentAtom& a : law.body)
      if (bad_atom(a)) out.push_back({"law has an undeclared body atom", li});
  }

  // Coverage: every fluent inertial or defaulted, so successors are complete.
  for (std::size_t fi = 0; fi < d.fluents.size(); ++fi) {
    bool covered = false;
    for (const CausalLaw& law : d.laws) {
      if (law.kind == LawKind::Inertial && law.inertial_fluent == static_cast<int>(fi))
        covered = true;
      if (law.kind == LawKind::Default && law.head && law.head->fluent == static_cast<int>(fi))
        covered = true;
    }
    if (!covered)
      out.push_back({"uncovered fluent '" + d.fluents[fi].name +
                     "' (neither inertial nor defaulted)"});
  }

  // Two default laws for one fluent with the same body must agree.
  for (std::size_t i = 0; i < d.laws.size(); ++i) {
    const CausalLaw& a = d.laws[i];
    if (a.kind != LawKind::Default || !a.head) continue;
    for (std::size_t j = i + 1; j < d.laws.size(); ++j) {
      const CausalLaw& b = d.laws[j];
      if (b.kind != LawKind::Default || !b.head) continue;
      if (a.head->fluent == b.head->fluent && a.body == b.body &&
          a.head->value != b.head->value)
        out.push_back({"conflicting default laws for fluent '" +
                           d.fluents[static_cast<std::size_t>(a.head->fluent)].name + "'",
                       static_cast<int>(j)});
    }
  }

  // Static stratification: no cyclic derivation through static heads.
  std::size_t n = d.fluents.size();
  std::vector<std::vector<int>> deps(n);
  for (const CausalLaw& law : d.laws) {
    if (law.kind != LawKind::Static || !law.head) continue;
    if (bad_atom(*law.head)) continue;
    for (const FluentAtom& a : law.body)
      if (!bad_atom(a)) deps[static_cast<std::size_t>(law.head->fluent)].push_back(a.fluent);
  }
  std::vector<int> color(n, 0);
  auto cyclic = [&](auto&& self, int f) -> bool {
    color[static_cast<std::size_t>(f)] = 1;
    for (int g : deps[static_cast<std::size_t>(f)]) {
      if (color[static_cast<std::size_t>(g)] == 1) return true;
      if (color[static_cast<std::size_t>(g)] == 0 && self(self, g)) return true;
    }
    color[static_cast<std::size_t>(f)] = 2;
    return false;
  };
  for (std::size_t f = 0; f < n; ++f)
    if (color[f] == 0 && cyclic(cyclic, static_cast<int>(f))) {
      out.push_back({"cyclic derivation through static heads involving fluent '" +
                     d.fluents[f].name + "'"});
      break;
    }

  return out;
}

std::string pretty_print(const ActionDescription& d) {
  std::ostringstream out;
  for (const SortDecl& s : d.sorts) {
    out << "sort " << s.name << " = {";
    for (std::size_t i = 0; i < s.values.size(); ++i)
      out << (i ? ", " : "") << s.values[i];
    out << "}\n";
  }
  for (const FluentDecl& f : d.fluents)
    out << "fluent " << f.name << " : " << f.sort_name << "\n";
  for (const ActionSchema& a : d.schemas) {
    out << "action " << a.name;
    if (!a.params.empty()) {
      out << "(";
      for (std::size_t i = 0; i < a.params.size(); ++i) {
        out << (i ? ", " : "") << a.params[i].var << " : "
            << d.sorts[static_cast<std::size_t>(a.params[i].sort)].name;
      }
      out << ")";
    }
    out << "\n";
  }
  auto body_text = [&](const CausalLaw& law) {
    std::string t;
    for (std::size_t i = 0; i < law.body.size(); ++i)
      t += (i ? ", " : " if ") + d.atom_text(law.body[i]);
    return t;
  };
  for (const CausalLaw& law : d.laws) {
    switch (law.kind) {
      case LawKind::Static:
        out << "static " << d.atom_text(*law.head) << body_text(law) << "\n";
        break;
      case LawKind::Dynamic:
        out << "dynamic " << d.actions[static_cast<std::size_t>(law.action)] << " causes "
            << d.atom_text(*law.head) << body_text(law) << "\n";
        break;
      case LawKind::Nonexecutable:
        out << "nonexecutable " << d.actions[static_cast<std::size_t>(law.action)]
            << body_text(law) << "\n";
        break;
      case LawKind::Inertial:
        out << "inertial " << d.fluents[static_cast<std::size_t>(law.inertial_fluent)].name
            << "\n";
        break;
      case LawKind::Default:
        out << "default " << d.atom_text(*law.head) << body_text(law) << "\n";
        break;
    }
  }
  return out.str();
}

}  // namespace sdrl
