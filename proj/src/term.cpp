#include "latforge/term.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace latforge {

Term Term::var_(int k) {
  Term t;
  t.kind = Kind::Var;
  t.var = k;
  return t;
}

Term Term::diag() {
  Term t;
  t.kind = Kind::Const;
  t.cst = ConstKind::Diag;
  return t;
}

Term Term::empty() {
  Term t;
  t.kind = Kind::Const;
  t.cst = ConstKind::Empty;
  return t;
}

Term Term::all() {
  Term t;
  t.kind = Kind::Const;
  t.cst = ConstKind::All;
  return t;
}

Term Term::atom(Family f, int a, int b) {
  Term t;
  t.kind = Kind::Const;
  t.cst = ConstKind::Atom;
  t.atom_family = f;
  t.atom_a = a;
  t.atom_b = b;
  return t;
}

Term Term::join(std::vector<Term> children) {
  if (children.empty()) throw std::invalid_argument("join term needs children");
  Term t;
  t.kind = Kind::Join;
  t.children = std::move(children);
  return t;
}

Term Term::meet(std::vector<Term> children) {
  if (children.empty()) throw std::invalid_argument("meet term needs children");
  Term t;
  t.kind = Kind::Meet;
  t.children = std::move(children);
  return t;
}

Term Term::inv(Term child) {
  Term t;
  t.kind = Kind::Inv;
  t.children.push_back(std::move(child));
  return t;
}

bool Term::operator==(const Term& other) const {
  if (kind != other.kind) return false;
  switch (kind) {
    case Kind::Var: return var == other.var;
    case Kind::Const:
      if (cst != other.cst) return false;
      if (cst != ConstKind::Atom) return true;
      return atom_family == other.atom_family && atom_a == other.atom_a &&
             atom_b == other.atom_b;
    default:
      return children == other.children;
  }
}

int term_arity(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Var: return t.var + 1;
    case Term::Kind::Const: return 0;
    default: {
      int a = 0;
      for (const Term& c : t.children) a = std::max(a, term_arity(c));
      return a;
    }
  }
}

namespace {

Relation eval_rec(const Term& t, std::span<const Relation> bindings, Family family,
                  int n) {
  switch (t.kind) {
    case Term::Kind::Var:
      return bindings[static_cast<std::size_t>(t.var)];
    case Term::Kind::Const: {
      switch (t.cst) {
        case Term::ConstKind::Diag: return Relation::diagonal(n);
        case Term::ConstKind::Empty: return Relation(n);
        case Term::ConstKind::All: return Relation::full(n);
        case Term::ConstKind::Atom: {
          Relation r = Relation::atom(t.atom_family, n, t.atom_a, t.atom_b);
          if (family != Family::Rel && !Relation::is_member(family, r))
            throw std::invalid_argument(
                std::string("eval: constant is not a member of ") + family_name(family));
          return r;
        }
      }
      throw std::invalid_argument("eval: bad constant");
    }
    case Term::Kind::Inv:
      return eval_rec(t.children[0], bindings, family, n).transpose();
    case Term::Kind::Meet: {
      Relation acc = eval_rec(t.children[0], bindings, family, n);
      for (std::size_t i = 1; i < t.children.size(); ++i)
        acc = acc.meet(eval_rec(t.children[i], bindings, family, n));
      return acc;
    }
    case Term::Kind::Join: {
      std::vector<Relation> vals;
      vals.reserve(t.children.size());
      for (const Term& c : t.children)
        vals.push_back(eval_rec(c, bindings, family, n));
      return Relation::join(family, vals);
    }
  }
  throw std::invalid_argument("eval: bad term");
}

}  // namespace

Relation eval(const Term& t, std::span<const Relation> bindings, Family family,
              int ground_n) {
  const int need = term_arity(t);
  if (static_cast<int>(bindings.size()) < need)
    throw std::invalid_argument("eval: term needs " + std::to_string(need) +
                                " bindings, got " + std::to_string(bindings.size()));
  int n = ground_n;
  if (!bindings.empty()) {
    n = bindings[0].size();
    for (const Relation& b : bindings)
      if (b.size() != n) throw std::invalid_argument("eval: bindings on mixed ground sets");
  }
  if (n < 1) throw std::invalid_argument("eval: ground size required for a closed term");
  if (family != Family::Rel)
    for (const Relation& b : bindings)
      if (!Relation::is_member(family, b))
        throw std::invalid_argument(std::string("eval: binding is not a member of ") +
                                    family_name(family));
  return eval_rec(t, bindings, family, n);
}

bool strip_eval_commutes(const Term& t, std::span<const Relation> bindings) {
  const Relation lhs = eval(t, bindings, Family::Rel).strip_diagonal();
  std::vector<Relation> stripped;
  stripped.reserve(bindings.size());
  for (const Relation& b : bindings) stripped.push_back(b.strip_diagonal());
  const Relation rhs = eval(t, stripped, Family::Rel).strip_diagonal();
  return lhs == rhs;
}

// ---------------------------------------------------------------------------
// Parsing / rendering

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  Term parse() {
    Term t = term();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("trailing input", pos_);
    return t;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
  }

  std::string ident() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_) throw ParseError("expected a name", pos_);
    return text_.substr(start, pos_ - start);
  }

  int number() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (start == pos_) throw ParseError("expected a number", pos_);
    return std::stoi(text_.substr(start, pos_ - start));
  }

  std::vector<Term> args() {
    expect('(');
    std::vector<Term> out;
    skip_ws();
    if (eat(')')) return out;
    out.push_back(term());
    while (eat(',')) out.push_back(term());
    expect(')');
    return out;
  }

  Term term() {
    skip_ws();
    const std::size_t at = pos_;
    const std::string name = ident();
    if (name == "join" || name == "meet") {
      std::vector<Term> cs = args();
      if (cs.empty()) throw ParseError(name + " needs at least one child", at);
      return name == "join" ? Term::join(std::move(cs)) : Term::meet(std::move(cs));
    }
    if (name == "inv") {
      std::vector<Term> cs = args();
      if (cs.size() != 1) throw ParseError("inv takes exactly one child", at);
      return Term::inv(std::move(cs[0]));
    }
    if (name == "equ" || name == "quo" || name == "trn") {
      expect('(');
      const int a = number();
      expect(',');
      const int b = number();
      expect(')');
      const Family f = name == "equ"   ? Family::Equ
                       : name == "quo" ? Family::Quo
                                       : Family::Tran;
      return Term::atom(f, a, b);
    }
    if (name == "diag") return Term::diag();
    if (name == "empty") return Term::empty();
    if (name == "all") return Term::all();
    if (name.size() >= 2 && name[0] == 'v' &&
        std::all_of(name.begin() + 1, name.end(),
                    [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      return Term::var_(std::stoi(name.substr(1)));
    throw ParseError("unknown term '" + name + "'", at);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

void render_rec(const Term& t, std::ostringstream& os) {
  switch (t.kind) {
    case Term::Kind::Var:
      os << 'v' << t.var;
      return;
    case Term::Kind::Const:
      switch (t.cst) {
        case Term::ConstKind::Diag: os << "diag"; return;
        case Term::ConstKind::Empty: os << "empty"; return;
        case Term::ConstKind::All: os << "all"; return;
        case Term::ConstKind::Atom:
          os << (t.atom_family == Family::Equ   ? "equ"
                 : t.atom_family == Family::Quo ? "quo"
                                                : "trn")
             << '(' << t.atom_a << ',' << t.atom_b << ')';
          return;
      }
      return;
    case Term::Kind::Inv:
      os << "inv(";
      render_rec(t.children[0], os);
      os << ')';
      return;
    case Term::Kind::Join:
    case Term::Kind::Meet:
      os << (t.kind == Term::Kind::Join ? "join(" : "meet(");
      for (std::size_t i = 0; i < t.children.size(); ++i) {
        if (i) os << ',';
        render_rec(t.children[i], os);
      }
      os << ')';
      return;
  }
}

}  // namespace

Term parse_term(const std::string& text) { return Parser(text).parse(); }

std::string render_term(const Term& t) {
  std::ostringstream os;
  render_rec(t, os);
  return os.str();
}

namespace {

Term random_term_rec(std::mt19937_64& rng, const RandomTermOptions& opt, int depth) {
  auto leaf = [&]() -> Term {
    if (opt.with_constants && std::uniform_int_distribution<int>(0, 3)(rng) == 0) {
      switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
        case 0: return Term::diag();
        case 1: return Term::empty();
        case 2: return Term::all();
        default: {
          int a = std::uniform_int_distribution<int>(0, opt.ground_n - 1)(rng);
          int b = std::uniform_int_distribution<int>(0, opt.ground_n - 1)(rng);
          if (a == b) b = (b + 1) % opt.ground_n;
          const int which = std::uniform_int_distribution<int>(0, 2)(rng);
          const Family f = which == 0 ? Family::Equ : which == 1 ? Family::Quo : Family::Tran;
          if (f == Family::Tran && std::uniform_int_distribution<int>(0, 7)(rng) == 0)
            b = a;  // trn(a,a) is a legal atom
          return Term::atom(f, a, b);
        }
      }
    }
    return Term::var_(std::uniform_int_distribution<int>(0, opt.arity - 1)(rng));
  };

  if (depth >= opt.max_depth || std::uniform_int_distribution<int>(0, 3)(rng) == 0)
    return leaf();

  const int upper = opt.with_involution ? 9 : 7;
  const int pick = std::uniform_int_distribution<int>(0, upper)(rng);
  if (pick >= 8) return Term::inv(random_term_rec(rng, opt, depth + 1));

  // Children count 1..3, biased toward 2.
  const int counts[4] = {1, 2, 2, 3};
  const int k = counts[std::uniform_int_distribution<int>(0, 3)(rng)];
  std::vector<Term> cs;
  cs.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) cs.push_back(random_term_rec(rng, opt, depth + 1));
  return pick < 4 ? Term::join(std::move(cs)) : Term::meet(std::move(cs));
}

}  // namespace

Term random_term(std::mt19937_64& rng, const RandomTermOptions& opt) {
  return random_term_rec(rng, opt, 0);
}

}  // namespace latforge
