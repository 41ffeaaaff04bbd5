#include "rbisim/script.hpp"

#include <cctype>
#include <sstream>

#include "rbisim/errors.hpp"

namespace rbisim {

ScriptNodePtr leaf(ScriptNode::Kind k) {
  auto n = std::make_shared<ScriptNode>();
  n->kind = k;
  return n;
}

ScriptNodePtr unary(ScriptNode::Kind k, ScriptNodePtr child) {
  auto n = std::make_shared<ScriptNode>();
  n->kind = k;
  n->children.push_back(std::move(child));
  return n;
}

ScriptNodePtr invariant_node(std::string relation, std::vector<std::string> cases,
                             std::vector<ScriptNodePtr> children) {
  auto n = std::make_shared<ScriptNode>();
  n->kind = ScriptNode::Kind::Invariant;
  n->name = std::move(relation);
  n->cases = std::move(cases);
  n->children = std::move(children);
  return n;
}

namespace {

const char* head(ScriptNode::Kind k) {
  using K = ScriptNode::Kind;
  switch (k) {
    case K::CLeak: return "cleak";
    case K::CStep: return "cstep";
    case K::CStepPrime: return "cstep'";
    case K::HStep: return "hstep";
    case K::Guard: return "guard";
    case K::Cycle: return "cycle";
    case K::Invariant: return "invariant";
    case K::UpTo: return "upto";
    case K::ReduceCLeak: return "reduce-c-leak";
    case K::AugmentHLeak: return "augment-h-leak";
    case K::Lockstep: return "lockstep";
    case K::LkLeak: return "lk-leak";
    case K::LkStep: return "lk-step";
    case K::LkCycle: return "lk-cycle";
    case K::LkGuard: return "lk-guard";
    case K::LkInvariant: return "lk-invariant";
  }
  return "?";
}

void print_node(std::ostream& os, const ScriptNodePtr& n, int indent) {
  using K = ScriptNode::Kind;
  os << '(' << head(n->kind);
  switch (n->kind) {
    case K::CLeak:
    case K::Cycle:
    case K::LkLeak:
    case K::LkCycle:
      break;
    case K::CStep:
    case K::CStepPrime:
    case K::HStep:
    case K::Guard:
    case K::Lockstep:
    case K::LkStep:
    case K::LkGuard:
      os << ' ';
      print_node(os, n->children.at(0), indent);
      break;
    case K::Invariant:
    case K::LkInvariant: {
      os << ' ' << n->name;
      std::string pad(static_cast<std::size_t>(indent + 1) * 2, ' ');
      for (std::size_t i = 0; i < n->children.size(); ++i) {
        os << '\n' << pad << "(case " << n->cases.at(i) << ' ';
        print_node(os, n->children[i], indent + 1);
        os << ')';
      }
      break;
    }
    case K::UpTo:
      os << ' ' << n->name << " (witness";
      for (const auto& w : n->witness) os << ' ' << w;
      os << ") ";
      print_node(os, n->children.at(0), indent);
      break;
    case K::ReduceCLeak:
    case K::AugmentHLeak:
      os << " (witness";
      for (const auto& w : n->witness) os << ' ' << w;
      os << ") ("
         << (n->kind == K::ReduceCLeak ? "side" : "lockstep-side") << ' ';
      print_node(os, n->side, indent);
      os << ") ";
      print_node(os, n->children.at(0), indent);
      break;
  }
  os << ')';
}

struct Parser {
  const std::string& text;
  std::size_t pos = 0;
  int line = 1;
  int col = 1;

  explicit Parser(const std::string& t) : text(t) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("script: " + what, line, col);
  }

  void advance() {
    if (text[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void skip_ws() {
    while (pos < text.size()) {
      char ch = text[pos];
      if (ch == '#') {  // comment to end of line
        while (pos < text.size() && text[pos] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        advance();
      } else {
        break;
      }
    }
  }

  bool at(char ch) {
    skip_ws();
    return pos < text.size() && text[pos] == ch;
  }

  void expect(char ch) {
    if (!at(ch)) fail(std::string("expected '") + ch + "'");
    advance();
  }

  std::string atom() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size()) {
      char ch = text[pos];
      if (ch == '(' || ch == ')' || ch == '#' ||
          std::isspace(static_cast<unsigned char>(ch)))
        break;
      advance();
    }
    if (pos == start) fail("expected atom");
    return text.substr(start, pos - start);
  }

  std::vector<std::string> witness_list(std::size_t arity) {
    expect('(');
    if (atom() != "witness") fail("expected witness form");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < arity; ++i) out.push_back(atom());
    expect(')');
    return out;
  }

  ScriptNodePtr side_form(const char* keyword) {
    expect('(');
    if (atom() != keyword) fail(std::string("expected ") + keyword + " form");
    ScriptNodePtr s = node();
    expect(')');
    return s;
  }

  ScriptNodePtr node() {
    using K = ScriptNode::Kind;
    expect('(');
    std::string h = atom();
    auto n = std::make_shared<ScriptNode>();
    if (h == "cleak") {
      n->kind = K::CLeak;
    } else if (h == "cycle") {
      n->kind = K::Cycle;
    } else if (h == "lk-leak") {
      n->kind = K::LkLeak;
    } else if (h == "lk-cycle") {
      n->kind = K::LkCycle;
    } else if (h == "cstep" || h == "cstep'" || h == "hstep" || h == "guard" ||
               h == "lockstep" || h == "lk-step" || h == "lk-guard") {
      n->kind = h == "cstep"      ? K::CStep
                : h == "cstep'"   ? K::CStepPrime
                : h == "hstep"    ? K::HStep
                : h == "guard"    ? K::Guard
                : h == "lockstep" ? K::Lockstep
                : h == "lk-step"  ? K::LkStep
                                  : K::LkGuard;
      n->children.push_back(node());
    } else if (h == "invariant" || h == "lk-invariant") {
      n->kind = h == "invariant" ? K::Invariant : K::LkInvariant;
      n->name = atom();
      while (at('(')) {
        expect('(');
        if (atom() != "case") fail("expected case form");
        n->cases.push_back(atom());
        n->children.push_back(node());
        expect(')');
      }
    } else if (h == "upto") {
      n->kind = K::UpTo;
      n->name = atom();
      n->witness = witness_list(4);
      n->children.push_back(node());
    } else if (h == "reduce-c-leak" || h == "augment-h-leak") {
      n->kind = h == "reduce-c-leak" ? K::ReduceCLeak : K::AugmentHLeak;
      n->witness = witness_list(2);
      n->side = side_form(n->kind == K::ReduceCLeak ? "side" : "lockstep-side");
      n->children.push_back(node());
    } else {
      fail("unknown rule '" + h + "'");
    }
    expect(')');
    return n;
  }
};

}  // namespace

std::string print_script(const ScriptNodePtr& node) {
  std::ostringstream os;
  print_node(os, node, 0);
  os << '\n';
  return os.str();
}

ScriptNodePtr parse_script(const std::string& text) {
  Parser p(text);
  ScriptNodePtr n = p.node();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input after script");
  return n;
}

}  // namespace rbisim
