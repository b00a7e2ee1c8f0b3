// Copyright 2026 The hsim Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hsim/model.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "hsim/exact.hpp"

namespace hsim {

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class TokKind { Ident, Int, Float, Str, Punct };

struct Tok {
  TokKind kind;
  std::string text;  // for Str: the unescaped payload
};

struct LineLexer {
  const std::string& s;
  std::size_t pos = 0;
  std::string error;  // empty unless lexing failed
  std::string error_token;

  explicit LineLexer(const std::string& line) : s(line) {}

  std::vector<Tok> run() {
    std::vector<Tok> out;
    while (pos < s.size() && error.empty()) {
      char c = s[pos];
      if (c == ' ' || c == '\t') {
        ++pos;
      } else if (c == '#') {
        break;  // comment to end of line
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        out.push_back(ident());
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '.' && pos + 1 < s.size() &&
                  std::isdigit(static_cast<unsigned char>(s[pos + 1])))) {
        out.push_back(number());
      } else if (c == '"') {
        out.push_back(quoted());
      } else if (std::string("@:=*+-();").find(c) != std::string::npos) {
        out.push_back({TokKind::Punct, std::string(1, c)});
        ++pos;
      } else {
        error = "unexpected character";
        error_token = std::string(1, c);
      }
    }
    return out;
  }

  Tok ident() {
    std::size_t start = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) ||
                              s[pos] == '_'))
      ++pos;
    return {TokKind::Ident, s.substr(start, pos - start)};
  }

  Tok number() {
    std::size_t start = pos;
    bool is_float = false;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (pos < s.size() && s[pos] == '.') {
      is_float = true;
      ++pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
        ++pos;
    }
    // Exponent only if at least one digit follows; otherwise the 'e' is the
    // start of the next identifier.
    if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
      std::size_t p = pos + 1;
      if (p < s.size() && (s[p] == '+' || s[p] == '-')) ++p;
      if (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) {
        is_float = true;
        pos = p;
        while (pos < s.size() &&
               std::isdigit(static_cast<unsigned char>(s[pos])))
          ++pos;
      }
    }
    return {is_float ? TokKind::Float : TokKind::Int,
            s.substr(start, pos - start)};
  }

  Tok quoted() {
    ++pos;  // opening quote
    std::string payload;
    while (pos < s.size()) {
      char c = s[pos];
      if (c == '"') {
        ++pos;
        return {TokKind::Str, payload};
      }
      if (c == '\\' && pos + 1 < s.size()) {
        char e = s[pos + 1];
        if (e == '"' || e == '\\') {
          payload.push_back(e);
          pos += 2;
          continue;
        }
        if (e == 'n') {
          payload.push_back('\n');
          pos += 2;
          continue;
        }
      }
      payload.push_back(c);
      ++pos;
    }
    error = "unterminated string literal";
    error_token = "\"";
    return {TokKind::Str, payload};
  }
};

// ---------------------------------------------------------------------------
// Token-stream helpers shared by the statement parser and `meta gauss`

struct Cursor {
  const std::vector<Tok>& toks;
  std::size_t pos = 0;

  bool done() const { return pos >= toks.size(); }
  const Tok* peek() const { return done() ? nullptr : &toks[pos]; }
  const Tok* next() { return done() ? nullptr : &toks[pos++]; }

  bool at_punct(const char* p) const {
    return !done() && toks[pos].kind == TokKind::Punct && toks[pos].text == p;
  }
  bool eat_punct(const char* p) {
    if (!at_punct(p)) return false;
    ++pos;
    return true;
  }
};

double to_number(const Tok& t) {
  double v = 0.0;
  auto [ptr, ec] =
      std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc() || ptr != t.text.data() + t.text.size())
    throw Error("malformed number '" + t.text + "'");
  return v;
}

int to_int(const Tok& t) {
  int v = 0;
  auto [ptr, ec] =
      std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc() || ptr != t.text.data() + t.text.size())
    throw Error("integer '" + t.text + "' out of range");
  return v;
}

// coeff := ['+'|'-'] product (('+'|'-') product)*
// product := atom (['*'] atom)*      atom := number | 'i' | ident
// Throws Error on malformed input; the caller maps that to a diagnostic.
Coefficient parse_coeff(Cursor& c, bool stop_at_colon) {
  Coefficient total;
  bool first = true;
  while (true) {
    if (c.done() || (stop_at_colon && c.at_punct(":"))) {
      if (first) throw Error("expected coefficient");
      break;
    }
    double sign = 1.0;
    if (c.at_punct("+") || c.at_punct("-")) {
      sign = c.at_punct("-") ? -1.0 : 1.0;
      c.next();
    } else if (!first) {
      throw Error("expected '+' or '-' between coefficient terms, got '" +
                  c.peek()->text + "'");
    }
    // One product: at least one atom.
    cxd scalar(sign, 0.0);
    std::vector<std::string> syms;
    bool any_atom = false;
    while (!c.done() && !(stop_at_colon && c.at_punct(":")) &&
           !c.at_punct("+") && !c.at_punct("-")) {
      if (c.eat_punct("*")) {
        if (!any_atom) throw Error("'*' without left operand");
        continue;
      }
      const Tok& t = *c.peek();
      if (t.kind == TokKind::Int || t.kind == TokKind::Float) {
        scalar *= to_number(t);
      } else if (t.kind == TokKind::Ident) {
        if (t.text == "i")
          scalar *= cxd(0.0, 1.0);
        else
          syms.push_back(t.text);
      } else {
        throw Error("unexpected token '" + t.text + "' in coefficient");
      }
      c.next();
      any_atom = true;
    }
    if (!any_atom) throw Error("dangling sign in coefficient");
    Coefficient mono{scalar};
    for (const std::string& sym : syms) mono = mono * Coefficient::symbol(sym);
    total += mono;
    first = false;
  }
  return total;
}

// factor := OP '@' INT
std::vector<TermFactor> parse_factors(Cursor& c, bool stop_at_semicolon) {
  std::vector<TermFactor> factors;
  while (!c.done() && !(stop_at_semicolon && c.at_punct(";"))) {
    const Tok* op = c.next();
    if (op->kind != TokKind::Ident)
      throw Error("expected operator name, got '" + op->text + "'");
    std::optional<PrimitiveOp> p = op_from_token(op->text);
    if (!p) throw Error("unknown operator '" + op->text + "'");
    if (!c.eat_punct("@"))
      throw Error("expected '@' after operator '" + op->text + "'");
    const Tok* site = c.next();
    if (!site || site->kind != TokKind::Int)
      throw Error("expected site index after '@'");
    factors.push_back({to_int(*site), *p});
  }
  if (factors.empty()) throw Error("expected at least one operator factor");
  return factors;
}

// ---------------------------------------------------------------------------
// Statement collection (first pass)

struct RawStmt {
  int line;
  std::vector<Tok> toks;
};

struct ModelBuilder {
  std::size_t dim_cap;
  std::vector<Diagnostic> diags;

  std::string name;
  bool have_model_line = false;
  std::vector<std::pair<std::string, std::optional<double>>> params;
  std::map<int, SiteKind> site_kinds;
  std::map<int, int> boson_cutoffs;
  bool hermitize = false;
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<int> meta_lines;

  struct RawTerm {
    int line;
    Coefficient coeff;
    std::vector<TermFactor> factors;
  };
  std::vector<RawTerm> terms;

  void error(int line, std::string msg, std::string tok = "") {
    diags.push_back({Diagnostic::Severity::Error, line, std::move(msg),
                     std::move(tok)});
  }

  bool param_declared(const std::string& n) const {
    return std::any_of(params.begin(), params.end(),
                       [&](const auto& p) { return p.first == n; });
  }

  void stmt_model(int line, Cursor& c) {
    const Tok* n = c.next();
    if (!n || n->kind != TokKind::Ident) {
      error(line, "expected model name");
      return;
    }
    if (have_model_line) {
      error(line, "duplicate model declaration", n->text);
      return;
    }
    have_model_line = true;
    name = n->text;
    if (!c.done()) error(line, "trailing tokens after model name", c.peek()->text);
  }

  void stmt_param(int line, Cursor& c) {
    const Tok* n = c.next();
    if (!n || n->kind != TokKind::Ident) {
      error(line, "expected parameter name");
      return;
    }
    if (n->text == "i") {
      error(line, "'i' is reserved for the imaginary unit", n->text);
      return;
    }
    if (param_declared(n->text)) {
      error(line, "duplicate parameter '" + n->text + "'", n->text);
      return;
    }
    std::optional<double> def;
    if (c.eat_punct("=")) {
      double sign = 1.0;
      if (c.eat_punct("-")) sign = -1.0;
      const Tok* v = c.next();
      if (!v || (v->kind != TokKind::Int && v->kind != TokKind::Float)) {
        error(line, "expected numeric default after '='");
        return;
      }
      try {
        def = sign * to_number(*v);
      } catch (const Error& e) {
        error(line, e.what(), v->text);
        return;
      }
    }
    if (!c.done()) {
      error(line, "trailing tokens after parameter declaration", c.peek()->text);
      return;
    }
    params.emplace_back(n->text, def);
  }

  void stmt_site(int line, Cursor& c) {
    const Tok* idx = c.next();
    if (!idx || idx->kind != TokKind::Int) {
      error(line, "expected site index");
      return;
    }
    int i;
    try {
      i = to_int(*idx);
    } catch (const Error& e) {
      error(line, e.what(), idx->text);
      return;
    }
    if (site_kinds.count(i)) {
      error(line, "duplicate site " + idx->text, idx->text);
      return;
    }
    const Tok* kind = c.next();
    if (!kind || kind->kind != TokKind::Ident) {
      error(line, "expected site kind");
      return;
    }
    if (kind->text == "qubit") {
      site_kinds[i] = SiteKind::Qubit;
    } else if (kind->text == "spin") {
      site_kinds[i] = SiteKind::SpinHalf;
    } else if (kind->text == "fermion") {
      site_kinds[i] = SiteKind::FermionMode;
    } else if (kind->text == "boson") {
      if (!c.eat_punct("(")) {
        error(line, "expected '(' after boson");
        return;
      }
      const Tok* d = c.next();
      if (!d || d->kind != TokKind::Int) {
        error(line, "expected boson cutoff");
        return;
      }
      int cutoff;
      try {
        cutoff = to_int(*d);
      } catch (const Error& e) {
        error(line, e.what(), d->text);
        return;
      }
      if (cutoff < 2) {
        error(line, "boson cutoff must be at least 2", d->text);
        return;
      }
      if (!c.eat_punct(")")) {
        error(line, "expected ')' after boson cutoff");
        return;
      }
      site_kinds[i] = SiteKind::BosonMode;
      boson_cutoffs[i] = cutoff;
    } else {
      error(line, "unknown site kind '" + kind->text + "'", kind->text);
      return;
    }
    if (!c.done()) error(line, "trailing tokens after site declaration",
                         c.peek()->text);
  }

  void stmt_term(int line, Cursor& c) {
    try {
      Coefficient coeff = parse_coeff(c, /*stop_at_colon=*/true);
      if (!c.eat_punct(":"))
        throw Error("expected ':' between coefficient and operators");
      std::vector<TermFactor> factors =
          parse_factors(c, /*stop_at_semicolon=*/false);
      terms.push_back({line, std::move(coeff), std::move(factors)});
    } catch (const Error& e) {
      error(line, e.what());
    }
  }

  void stmt_hermitize(int line, Cursor& c) {
    if (!c.done()) {
      error(line, "trailing tokens after hermitize", c.peek()->text);
      return;
    }
    hermitize = true;
  }

  void stmt_meta(int line, Cursor& c) {
    const Tok* key = c.next();
    if (!key || key->kind != TokKind::Ident) {
      error(line, "expected metadata key");
      return;
    }
    const Tok* val = c.next();
    if (!val || val->kind != TokKind::Str) {
      error(line, "expected quoted metadata value");
      return;
    }
    if (!c.done()) {
      error(line, "trailing tokens after metadata value", c.peek()->text);
      return;
    }
    metadata.emplace_back(key->text, val->text);
    meta_lines.push_back(line);
  }

  void dispatch(const RawStmt& st) {
    Cursor c{st.toks};
    const Tok* head = c.next();
    if (head->kind != TokKind::Ident) {
      error(st.line, "expected statement keyword", head->text);
      return;
    }
    if (!have_model_line && head->text != "model" && diags.empty())
      error(st.line, "first statement must declare the model name");
    if (head->text == "model") stmt_model(st.line, c);
    else if (head->text == "param") stmt_param(st.line, c);
    else if (head->text == "site") stmt_site(st.line, c);
    else if (head->text == "term") stmt_term(st.line, c);
    else if (head->text == "hermitize") stmt_hermitize(st.line, c);
    else if (head->text == "meta") stmt_meta(st.line, c);
    else error(st.line, "unknown statement '" + head->text + "'", head->text);
  }

  // Second pass: assemble the register and terms, then hermitize.
  std::optional<Model> finish() {
    if (!have_model_line) error(0, "missing model declaration");

    // Contiguity: indices must be exactly 0..N-1.
    std::vector<Site> sites;
    int expect = 0;
    for (const auto& [idx, kind] : site_kinds) {
      if (idx != expect) {
        error(0, "site indices must be contiguous from 0; missing site " +
                     std::to_string(expect));
        return std::nullopt;
      }
      ++expect;
      Site s;
      s.kind = kind;
      if (kind == SiteKind::BosonMode) s.dim = boson_cutoffs.at(idx);
      sites.push_back(s);
    }

    std::optional<Model> out;
    try {
      SiteRegister reg(sites, dim_cap);
      out.emplace();
      out->hamiltonian = Hamiltonian(reg);
    } catch (const Error& e) {
      error(0, e.what());
      return std::nullopt;
    }
    out->name = name;
    out->hermitize = hermitize;
    out->metadata = metadata;
    for (const auto& [pname, def] : params)
      out->hamiltonian.declare_parameter(pname, def);

    const SiteRegister& reg = out->hamiltonian.site_register();
    for (const auto& rt : terms) {
      try {
        for (const std::string& sym : rt.coeff.symbols())
          if (!param_declared(sym))
            throw Error("undeclared parameter '" + sym + "' in coefficient");
        for (const TermFactor& f : rt.factors)
          if (f.site < 0 || static_cast<std::size_t>(f.site) >= reg.size())
            throw Error("undeclared site " + std::to_string(f.site));
        out->hamiltonian.add_term(OperatorTerm::make(reg, rt.coeff, rt.factors));
      } catch (const Error& e) {
        error(rt.line, e.what());
      }
    }

    if (hermitize && diags_ok()) {
      // Append conjugates of terms whose conjugate partner is absent.  The
      // snapshot keeps newly added conjugates from being revisited.
      std::vector<OperatorTerm> snapshot = out->hamiltonian.terms();
      for (const OperatorTerm& t : snapshot) {
        OperatorTerm adj = t.adjoint(reg);
        bool present = std::any_of(
            out->hamiltonian.terms().begin(), out->hamiltonian.terms().end(),
            [&](const OperatorTerm& u) { return u.same_factors(adj); });
        if (!present) out->hamiltonian.add_term(adj);
      }
    }

    if (!diags_ok()) return std::nullopt;
    return out;
  }

  bool diags_ok() const {
    return std::none_of(diags.begin(), diags.end(), [](const Diagnostic& d) {
      return d.severity == Diagnostic::Severity::Error;
    });
  }
};

void check_gauss_meta(const Model& m, const std::vector<int>& meta_lines,
                      std::vector<Diagnostic>& diags);

}  // namespace

// ---------------------------------------------------------------------------

std::string diagnostic_to_string(const Diagnostic& d) {
  std::ostringstream os;
  os << (d.severity == Diagnostic::Severity::Error ? "error" : "warning");
  if (d.line > 0) os << " (line " << d.line << ")";
  os << ": " << d.message;
  if (!d.token.empty()) os << " [" << d.token << "]";
  return os.str();
}

ParseResult parse_model(const std::string& text, std::size_t dim_cap) {
  ModelBuilder b;
  b.dim_cap = dim_cap;

  std::vector<RawStmt> stmts;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string line = text.substr(
        start, nl == std::string::npos ? std::string::npos : nl - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++line_no;

    LineLexer lex(line);
    std::vector<Tok> toks = lex.run();
    if (!lex.error.empty())
      b.error(line_no, lex.error, lex.error_token);
    else if (!toks.empty())
      stmts.push_back({line_no, std::move(toks)});

    if (nl == std::string::npos) break;
    start = nl + 1;
  }

  for (const RawStmt& st : stmts) b.dispatch(st);

  ParseResult result;
  result.model = b.finish();
  result.diagnostics = std::move(b.diags);
  if (result.model) {
    // Gauss metadata is validated against the finished register so the
    // diagnostics carry real line numbers.
    std::vector<Diagnostic> gauss_diags;
    check_gauss_meta(*result.model, b.meta_lines, gauss_diags);
    for (auto& d : gauss_diags) result.diagnostics.push_back(std::move(d));
    for (const Diagnostic& d : result.diagnostics)
      if (d.severity == Diagnostic::Severity::Error) result.model.reset();
  }
  return result;
}

namespace {

std::string escape_meta(const std::string& v) {
  std::string out;
  for (char c : v) {
    if (c == '"' || c == '\\') out.push_back('\\');
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out.push_back(c);
  }
  return out;
}

std::string kind_token(const Site& s) {
  switch (s.kind) {
    case SiteKind::Qubit: return "qubit";
    case SiteKind::SpinHalf: return "spin";
    case SiteKind::FermionMode: return "fermion";
    case SiteKind::BosonMode:
      return "boson(" + std::to_string(s.dim) + ")";
  }
  throw Error("unreachable site kind");
}

}  // namespace

std::string print_model(const Model& m) {
  std::ostringstream os;
  os << "model " << m.name << "\n";
  for (const Parameter& p : m.hamiltonian.parameters()) {
    os << "param " << p.name;
    if (p.value) os << " = " << canon_double(*p.value);
    os << "\n";
  }
  const SiteRegister& reg = m.hamiltonian.site_register();
  for (std::size_t i = 0; i < reg.size(); ++i)
    os << "site " << i << " " << kind_token(reg.site(static_cast<int>(i)))
       << "\n";
  if (m.hermitize) os << "hermitize\n";
  for (const OperatorTerm& t : m.hamiltonian.terms()) {
    os << "term " << t.coeff().to_string() << " :";
    for (const TermFactor& f : t.factors())
      os << " " << op_token(f.op) << "@" << f.site;
    os << "\n";
  }
  for (const auto& [k, v] : m.metadata)
    os << "meta " << k << " \"" << escape_meta(v) << "\"\n";
  return os.str();
}

namespace {

// Parses one `meta gauss` payload: G:<k> = coeff : factors (; coeff : factors)*
GaussOperator parse_gauss_value_impl(const Model& m, const std::string& value) {
  LineLexer lex(value);
  std::vector<Tok> toks = lex.run();
  if (!lex.error.empty()) throw Error("gauss: " + lex.error);
  Cursor c{toks};

  const Tok* g = c.next();
  if (!g || g->kind != TokKind::Ident || g->text != "G")
    throw Error("gauss: expected 'G:<index>'");
  if (!c.eat_punct(":")) throw Error("gauss: expected ':' after 'G'");
  const Tok* idx = c.next();
  if (!idx || idx->kind != TokKind::Int)
    throw Error("gauss: expected integer charge index");
  if (!c.eat_punct("=")) throw Error("gauss: expected '=' after charge index");

  GaussOperator out;
  out.index = to_int(*idx);
  out.op = Hamiltonian(m.hamiltonian.site_register());
  for (const Parameter& p : m.hamiltonian.parameters())
    out.op.declare_parameter(p.name, p.value);

  while (true) {
    Coefficient coeff = parse_coeff(c, /*stop_at_colon=*/true);
    if (!c.eat_punct(":"))
      throw Error("gauss: expected ':' between coefficient and operators");
    std::vector<TermFactor> factors =
        parse_factors(c, /*stop_at_semicolon=*/true);
    for (const std::string& sym : coeff.symbols())
      if (!m.hamiltonian.has_parameter(sym))
        throw Error("gauss: undeclared parameter '" + sym + "'");
    out.op.add_term(OperatorTerm::make(m.hamiltonian.site_register(), coeff,
                                       factors));
    if (c.done()) break;
    if (!c.eat_punct(";")) throw Error("gauss: expected ';' between terms");
  }
  return out;
}

GaussOperator parse_gauss_value(const Model& m, const std::string& value) {
  try {
    return parse_gauss_value_impl(m, value);
  } catch (const Error& e) {
    std::string msg = e.what();
    if (msg.rfind("gauss:", 0) == 0) throw;
    throw Error("gauss: " + msg);
  }
}

void check_gauss_meta(const Model& m, const std::vector<int>& meta_lines,
                      std::vector<Diagnostic>& diags) {
  std::set<int> seen;
  for (std::size_t k = 0; k < m.metadata.size(); ++k) {
    if (m.metadata[k].first != "gauss") continue;
    int line = k < meta_lines.size() ? meta_lines[k] : 0;
    try {
      GaussOperator g = parse_gauss_value(m, m.metadata[k].second);
      if (!seen.insert(g.index).second)
        throw Error("gauss: duplicate charge index " +
                    std::to_string(g.index));
    } catch (const Error& e) {
      diags.push_back({Diagnostic::Severity::Error, line, e.what(), ""});
    }
  }
}

}  // namespace

std::vector<GaussOperator> parse_gauss_operators(const Model& m) {
  std::vector<GaussOperator> out;
  std::set<int> seen;
  for (const auto& [key, value] : m.metadata) {
    if (key != "gauss") continue;
    GaussOperator g = parse_gauss_value(m, value);
    if (!seen.insert(g.index).second)
      throw Error("gauss: duplicate charge index " + std::to_string(g.index));
    out.push_back(std::move(g));
  }
  std::sort(out.begin(), out.end(),
            [](const GaussOperator& a, const GaussOperator& b) {
              return a.index < b.index;
            });
  return out;
}

std::vector<Diagnostic> validate(const Model& m) {
  std::vector<Diagnostic> diags;

  // Structural check: every term's conjugate must appear with the conjugate
  // coefficient.  This works with unbound symbolic coefficients.
  const SiteRegister& reg = m.hamiltonian.site_register();
  std::vector<std::string> offenders;
  for (const OperatorTerm& t : m.hamiltonian.terms()) {
    OperatorTerm adj = t.adjoint(reg);
    bool matched = std::any_of(
        m.hamiltonian.terms().begin(), m.hamiltonian.terms().end(),
        [&](const OperatorTerm& u) {
          return u.same_factors(adj) && u.coeff() == adj.coeff();
        });
    if (!matched) {
      std::ostringstream os;
      os << t.coeff().to_string() << " :";
      for (const TermFactor& f : t.factors())
        os << " " << op_token(f.op) << "@" << f.site;
      offenders.push_back(os.str());
    }
  }
  if (!offenders.empty()) {
    std::ostringstream os;
    os << "Hamiltonian is not Hermitian; " << offenders.size()
       << " term(s) lack a conjugate partner, first: " << offenders.front();
    diags.push_back({m.hermitize ? Diagnostic::Severity::Error
                                 : Diagnostic::Severity::Warning,
                     0, os.str(), ""});
  } else if (reg.total_dim() <= 4096) {
    // Numeric cross-check at default parameter values (missing defaults
    // bind to 1) when the dense matrix is affordable.
    try {
      std::map<std::string, double> binding;
      for (const Parameter& p : m.hamiltonian.parameters())
        binding[p.name] = p.value.value_or(1.0);
      Hamiltonian bound = m.hamiltonian.bind_parameters(binding);
      HermiticityReport rep = hermiticity_check(bound);
      if (!rep.pass) {
        diags.push_back({m.hermitize ? Diagnostic::Severity::Error
                                     : Diagnostic::Severity::Warning,
                         0,
                         "Hamiltonian is not Hermitian (max deviation " +
                             canon_double(rep.max_deviation) +
                             " at default parameters)",
                         ""});
      }
    } catch (const Error&) {
      // Binding cannot fail for declared params; dense build can only fail
      // on the dimension cap, which the register already enforces.
    }
  }

  for (const auto& [key, value] : m.metadata) {
    if (key != "gauss") continue;
    try {
      (void)parse_gauss_value(m, value);
    } catch (const Error& e) {
      diags.push_back({Diagnostic::Severity::Error, 0, e.what(), ""});
    }
  }
  // Duplicate-index detection across entries.
  try {
    (void)parse_gauss_operators(m);
  } catch (const Error& e) {
    std::string msg = e.what();
    if (msg.find("duplicate") != std::string::npos)
      diags.push_back({Diagnostic::Severity::Error, 0, msg, ""});
  }
  return diags;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace hsim
