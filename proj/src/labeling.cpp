// Copyright maskverif contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "maskverif/labeling.hpp"

#include <set>
#include <sstream>

#include "maskverif/error.hpp"

namespace maskverif {

namespace {

std::string implicit_mask(const std::string &secret, int k) {
  return secret + "#" + std::to_string(k);
}

} // namespace

InputLabeling
InputLabeling::create(const Circuit &c,
                      std::vector<std::pair<std::string, Role>> roles) {
  std::map<std::string, Role> by_net;
  for (auto &[net, role] : roles) {
    auto id = c.find(net);
    if (!id || c.node(*id).kind != GateKind::Input)
      throw Error(ErrorKind::UnknownNet,
                  "label for '" + net + "', which is not a primary input");
    if (!by_net.emplace(net, role).second)
      throw Error(ErrorKind::DuplicateLabel, "net '" + net + "' labeled twice");
  }
  InputLabeling l;
  std::map<std::string, std::map<int, std::string>> shares;
  for (NetId in : c.inputs()) {
    const std::string &net = c.name(in);
    auto it = by_net.find(net);
    if (it == by_net.end())
      throw Error(ErrorKind::MissingLabel, "input '" + net + "' has no label");
    const Role &r = it->second;
    if (r.kind == RoleKind::Share) {
      if (r.share < 1)
        throw Error(ErrorKind::MissingShare,
                    "share index of '" + net + "' must be >= 1");
      auto [pos, fresh] = shares[r.secret].emplace(r.share, net);
      if (!fresh)
        throw Error(ErrorKind::DuplicateShare,
                    "share " + std::to_string(r.share) + " of secret '" +
                        r.secret + "' assigned to both '" + pos->second +
                        "' and '" + net + "'");
    }
    l.entries_.emplace_back(net, r);
  }
  std::vector<BaseVar> vars;
  for (const auto &[secret, idx] : shares) {
    int n = static_cast<int>(idx.size());
    for (int k = 1; k <= n; ++k)
      if (!idx.count(k))
        throw Error(ErrorKind::MissingShare, "secret '" + secret +
                                                 "' lacks share " +
                                                 std::to_string(k));
    l.share_counts_[secret] = n;
    vars.push_back({VarKind::Secret, secret});
    for (int k = 1; k < n; ++k)
      vars.push_back({VarKind::Mask, implicit_mask(secret, k)});
  }
  for (const auto &[net, r] : l.entries_) {
    if (r.kind == RoleKind::Mask)
      vars.push_back({VarKind::Mask, net});
    else if (r.kind == RoleKind::Public)
      vars.push_back({VarKind::Public, net});
  }
  auto table = std::make_shared<VarTable>(std::move(vars));
  for (const auto &[net, r] : l.entries_) {
    Monomial m = kPhi;
    switch (r.kind) {
    case RoleKind::Share: {
      int n = l.share_counts_.at(r.secret);
      if (r.share == 1) {
        m = table->bit({VarKind::Secret, r.secret});
        for (int k = 1; k < n; ++k)
          m |= table->bit({VarKind::Mask, implicit_mask(r.secret, k)});
      } else {
        m = table->bit({VarKind::Mask, implicit_mask(r.secret, r.share - 1)});
      }
      break;
    }
    case RoleKind::Mask:
      m = table->bit({VarKind::Mask, net});
      break;
    case RoleKind::Public:
      m = table->bit({VarKind::Public, net});
      break;
    }
    l.base_.emplace(net, m);
  }
  l.vars_ = std::move(table);
  return l;
}

const Role *InputLabeling::find(std::string_view net) const {
  for (const auto &[n, r] : entries_)
    if (n == net)
      return &r;
  return nullptr;
}

const Role &InputLabeling::role(std::string_view net) const {
  if (const Role *r = find(net))
    return *r;
  throw Error(ErrorKind::MissingLabel,
              "input '" + std::string(net) + "' has no label");
}

Monomial InputLabeling::base_monomial(std::string_view net) const {
  auto it = base_.find(net);
  if (it == base_.end())
    throw Error(ErrorKind::MissingLabel,
                "input '" + std::string(net) + "' has no label");
  return it->second;
}

int InputLabeling::share_count(const std::string &secret) const {
  auto it = share_counts_.find(secret);
  return it == share_counts_.end() ? 0 : it->second;
}

InputLabeling InputLabeling::restrict_to(const Circuit &sub) const {
  InputLabeling l;
  l.vars_ = vars_;
  l.share_counts_ = share_counts_;
  for (NetId in : sub.inputs()) {
    const std::string &net = sub.name(in);
    l.entries_.emplace_back(net, role(net));
    l.base_.emplace(net, base_monomial(net));
  }
  return l;
}

InputLabeling InputLabeling::with_public(const Circuit &c,
                                         const std::vector<std::string> &nets) const {
  std::set<std::string> pub(nets.begin(), nets.end());
  std::vector<std::pair<std::string, Role>> roles;
  for (const auto &[net, r] : entries_)
    roles.emplace_back(net, pub.count(net) ? Role::pub() : r);
  return create(c, std::move(roles));
}

std::string InputLabeling::dump() const {
  std::ostringstream os;
  for (const auto &[net, r] : entries_) {
    os << net << ": ";
    switch (r.kind) {
    case RoleKind::Share:
      os << "share " << r.share << " of " << r.secret;
      break;
    case RoleKind::Mask:
      os << "mask";
      break;
    case RoleKind::Public:
      os << "public";
      break;
    }
    os << '\n';
  }
  return os.str();
}

InputLabeling parse_labels(std::string_view text, const Circuit &c) {
  std::vector<std::pair<std::string, Role>> roles;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    auto colon = line.find(':');
    std::istringstream head(line.substr(0, colon));
    std::string net, extra;
    head >> net;
    if (net.empty() && colon == std::string::npos)
      continue; // blank line
    auto syntax = [&](const std::string &msg) {
      return Error(ErrorKind::Syntax,
                   "labels line " + std::to_string(lineno) + ": " + msg);
    };
    if (colon == std::string::npos || net.empty() || (head >> extra))
      throw syntax("expected '<net>: share <k> of <secret>', '<net>: mask' "
                   "or '<net>: public'");
    std::istringstream rest(line.substr(colon + 1));
    std::vector<std::string> words;
    for (std::string w; rest >> w;)
      words.push_back(w);
    if (words.size() == 1 && words[0] == "mask") {
      roles.emplace_back(net, Role::mask());
    } else if (words.size() == 1 && words[0] == "public") {
      roles.emplace_back(net, Role::pub());
    } else if (words.size() == 4 && words[0] == "share" && words[2] == "of") {
      int k = 0;
      try {
        std::size_t used = 0;
        k = std::stoi(words[1], &used);
        if (used != words[1].size())
          throw std::invalid_argument("trailing");
      } catch (const std::exception &) {
        throw syntax("share index '" + words[1] + "' is not an integer");
      }
      roles.emplace_back(net, Role::make_share(words[3], k));
    } else {
      throw syntax("unrecognized role for '" + net + "'");
    }
  }
  return InputLabeling::create(c, std::move(roles));
}

} // namespace maskverif
