// Copyright maskverif contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include <cctype>
#include <sstream>

#include "maskverif/circuit.hpp"
#include "maskverif/error.hpp"

namespace maskverif {

namespace {

bool ident_start(char ch) {
  return std::isalpha(static_cast<unsigned char>(ch)) || ch == '_';
}
bool ident_char(char ch) {
  return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' ||
         ch == '$' || ch == '.' || ch == '@';
}

enum class Tok { Ident, Number, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  SourceLoc loc;
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token &peek() const { return cur_; }

  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const Token &t, const std::string &what) const {
    std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw Error(ErrorKind::Syntax, "line " + std::to_string(t.loc.line) +
                                       ", column " +
                                       std::to_string(t.loc.column) +
                                       ": expected " + what + ", got " + got);
  }

  std::string ident(const char *what = "identifier") {
    if (cur_.kind != Tok::Ident)
      fail(cur_, what);
    return take().text;
  }

  void punct(char ch) {
    if (cur_.kind != Tok::Punct || cur_.text[0] != ch)
      fail(cur_, std::string("'") + ch + "'");
    advance();
  }

  bool at_punct(char ch) const {
    return cur_.kind == Tok::Punct && cur_.text[0] == ch;
  }

private:
  void advance() {
    for (;;) {
      if (pos_ >= src_.size()) {
        cur_ = {Tok::End, "", {line_, col_}};
        return;
      }
      char ch = src_[pos_];
      if (ch == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n')
          step();
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        step();
      } else {
        break;
      }
    }
    SourceLoc loc{line_, col_};
    char ch = src_[pos_];
    std::size_t begin = pos_;
    if (ident_start(ch)) {
      while (pos_ < src_.size() && ident_char(src_[pos_]))
        step();
      cur_ = {Tok::Ident, std::string(src_.substr(begin, pos_ - begin)), loc};
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_])))
        step();
      cur_ = {Tok::Number, std::string(src_.substr(begin, pos_ - begin)), loc};
    } else if (std::string_view(";={}:,").find(ch) != std::string_view::npos) {
      step();
      cur_ = {Tok::Punct, std::string(1, ch), loc};
    } else {
      throw Error(ErrorKind::Syntax, "line " + std::to_string(line_) +
                                         ", column " + std::to_string(col_) +
                                         ": unexpected character '" +
                                         std::string(1, ch) + "'");
    }
  }

  void step() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token cur_;
};

std::vector<std::string> id_list(Lexer &lx) {
  std::vector<std::string> out;
  if (lx.at_punct(';'))
    return out;
  out.push_back(lx.ident());
  while (lx.at_punct(',')) {
    lx.take();
    out.push_back(lx.ident());
  }
  return out;
}

void parse_fsm(Lexer &lx, CircuitBuilder &b) {
  lx.punct('{');
  b.enable_fsm();
  while (!lx.at_punct('}')) {
    Token kw = lx.take();
    if (kw.kind != Tok::Ident || kw.text != "state")
      lx.fail(kw, "'state' or '}'");
    FsmStateSpec st;
    st.loc = kw.loc;
    st.name = lx.ident("state name");
    lx.punct('{');
    while (!lx.at_punct('}')) {
      Token item = lx.take();
      if (item.kind == Tok::Ident && item.text == "active") {
        lx.punct(':');
        for (auto &n : id_list(lx))
          st.active.push_back(std::move(n));
      } else if (item.kind == Tok::Ident && item.text == "regwrite") {
        lx.punct(':');
        for (auto &n : id_list(lx))
          st.reg_writes.push_back(std::move(n));
      } else if (item.kind == Tok::Ident && item.text == "mux") {
        std::string m = lx.ident("mux net");
        lx.punct('=');
        Token v = lx.take();
        if (v.kind != Tok::Number || (v.text != "0" && v.text != "1"))
          lx.fail(v, "0 or 1");
        st.mux_bindings.emplace_back(m, v.text == "1" ? 1 : 0);
      } else {
        lx.fail(item, "'active', 'regwrite', 'mux' or '}'");
      }
      lx.punct(';');
    }
    lx.punct('}');
    b.state(std::move(st));
  }
  lx.punct('}');
}

} // namespace

Circuit parse_netlist(std::string_view text) {
  Lexer lx(text);
  CircuitBuilder b;
  bool seen_fsm = false;
  while (lx.peek().kind != Tok::End) {
    Token kw = lx.take();
    if (kw.kind != Tok::Ident)
      lx.fail(kw, "statement");
    if (kw.text == "input") {
      b.input(lx.ident("net name"), kw.loc);
      lx.punct(';');
    } else if (kw.text == "output") {
      b.output(lx.ident("net name"), kw.loc);
      lx.punct(';');
    } else if (kw.text == "wire" || kw.text == "reg") {
      std::string name = lx.ident("net name");
      lx.punct('=');
      Token kt = lx.take();
      auto kind = kt.kind == Tok::Ident ? gate_kind_from_string(kt.text)
                                        : std::nullopt;
      if (!kind || *kind == GateKind::Input)
        lx.fail(kt, "gate kind");
      if (kw.text == "reg" && *kind != GateKind::Reg)
        lx.fail(kt, "REG");
      std::vector<std::string> ops;
      while (lx.peek().kind == Tok::Ident)
        ops.push_back(lx.take().text);
      lx.punct(';');
      b.gate(std::move(name), *kind, std::move(ops), kw.loc);
    } else if (kw.text == "fsm") {
      if (seen_fsm)
        lx.fail(kw, "a single fsm block");
      seen_fsm = true;
      parse_fsm(lx, b);
    } else {
      lx.fail(kw, "'input', 'output', 'wire', 'reg' or 'fsm'");
    }
  }
  return b.build();
}

std::string dump_netlist(const Circuit &c) {
  std::ostringstream os;
  for (const Node &n : c.nodes()) {
    if (n.kind == GateKind::Input) {
      os << "input " << n.name << ";\n";
      continue;
    }
    os << (n.kind == GateKind::Reg ? "reg " : "wire ") << n.name << " = "
       << to_string(n.kind);
    for (NetId op : n.operands)
      os << ' ' << c.name(op);
    os << ";\n";
  }
  for (NetId o : c.outputs())
    os << "output " << c.name(o) << ";\n";
  if (!c.fsm())
    return os.str();
  auto list = [&](const std::vector<NetId> &ids) {
    for (std::size_t i = 0; i < ids.size(); ++i)
      os << (i ? ", " : " ") << c.name(ids[i]);
  };
  os << "fsm {\n";
  for (const FsmState &st : c.fsm()->states) {
    os << "  state " << st.name << " {\n    active:";
    list(st.active);
    os << ";\n";
    if (!st.reg_writes.empty()) {
      os << "    regwrite:";
      list(st.reg_writes);
      os << ";\n";
    }
    for (const MuxBinding &mb : st.mux_bindings)
      os << "    mux " << c.name(mb.mux) << " = " << mb.value << ";\n";
    os << "  }\n";
  }
  os << "}\n";
  return os.str();
}

} // namespace maskverif
