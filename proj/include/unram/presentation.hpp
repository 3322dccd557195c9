#pragma once

// Text format for group presentations.
//
//   perm: (4 5 6), (1 2 3 4 5)
//
//   pc: n=[3,3,3,3,3]
//   g1^3 = g4
//   [g2,g1] = g3
//   [g3,g1] = g4^2*g5
//
// One relation per line, '#' starts a comment.  Permutation points are
// 1-based.  Unstated pc relations are trivial.  Power and commutator words
// must be normal forms over later generators.

#include <cctype>
#include <fstream>
#include <sstream>

#include "unram/group.hpp"

namespace unram {

namespace detail {

inline void skip_ws(const std::string& s, std::size_t& i) {
  while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
}

inline bool parse_uint(const std::string& s, std::size_t& i, unsigned& out) {
  skip_ws(s, i);
  if (i >= s.size() || !std::isdigit((unsigned char)s[i])) return false;
  unsigned v = 0;
  while (i < s.size() && std::isdigit((unsigned char)s[i])) v = v * 10 + unsigned(s[i++] - '0');
  out = v;
  return true;
}

// word: "1" or product of gI^E separated by '*'
inline std::vector<unsigned> parse_pc_word(const std::string& s, std::size_t i, std::size_t k) {
  std::vector<unsigned> w(k, 0);
  skip_ws(s, i);
  if (i < s.size() && s[i] == '1') {
    ++i;
    skip_ws(s, i);
    if (i != s.size()) throw std::invalid_argument("presentation: junk after identity word");
    return w;
  }
  while (i < s.size()) {
    skip_ws(s, i);
    if (i >= s.size()) break;
    if (s[i] != 'g') throw std::invalid_argument("presentation: expected generator");
    ++i;
    unsigned idx = 0, e = 1;
    if (!parse_uint(s, i, idx) || idx == 0 || idx > k)
      throw std::invalid_argument("presentation: bad generator index");
    skip_ws(s, i);
    if (i < s.size() && s[i] == '^') {
      ++i;
      if (!parse_uint(s, i, e)) throw std::invalid_argument("presentation: bad exponent");
    }
    w[idx - 1] += e;
    skip_ws(s, i);
    if (i < s.size()) {
      if (s[i] != '*') throw std::invalid_argument("presentation: expected '*'");
      ++i;
    }
  }
  return w;
}

}  // namespace detail

inline Presentation parse_presentation_text(const std::string& text) {
  Presentation pres;
  pres.source_text = text;
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    auto h = line.find('#');
    if (h != std::string::npos) line.erase(h);
    std::size_t a = 0, b = line.size();
    while (a < b && std::isspace((unsigned char)line[a])) ++a;
    while (b > a && std::isspace((unsigned char)line[b - 1])) --b;
    if (b > a) lines.push_back(line.substr(a, b - a));
  }
  if (lines.empty()) throw std::invalid_argument("presentation: empty input");

  if (lines[0].rfind("perm:", 0) == 0) {
    std::string body = lines[0].substr(5);
    for (std::size_t li = 1; li < lines.size(); ++li) body += " " + lines[li];
    // parse comma-separated products of cycles
    std::size_t i = 0;
    unsigned deg = 0;
    std::vector<std::vector<std::vector<unsigned>>> cycles_per_perm{{}};
    while (i < body.size()) {
      detail::skip_ws(body, i);
      if (i >= body.size()) break;
      if (body[i] == ',') {
        cycles_per_perm.push_back({});
        ++i;
        continue;
      }
      if (body[i] != '(') throw std::invalid_argument("presentation: expected '('");
      ++i;
      std::vector<unsigned> cyc;
      while (true) {
        detail::skip_ws(body, i);
        if (i < body.size() && body[i] == ')') {
          ++i;
          break;
        }
        if (i < body.size() && body[i] == ',') {
          ++i;
          continue;
        }
        unsigned pt = 0;
        if (!detail::parse_uint(body, i, pt) || pt == 0)
          throw std::invalid_argument("presentation: bad cycle point");
        cyc.push_back(pt);
        deg = std::max(deg, pt);
      }
      if (cyc.size() > 1) cycles_per_perm.back().push_back(cyc);
    }
    for (const auto& cycles : cycles_per_perm) {
      std::vector<unsigned> p(deg);
      for (unsigned t = 0; t < deg; ++t) p[t] = t;
      for (const auto& cyc : cycles)
        for (std::size_t t = 0; t < cyc.size(); ++t) p[cyc[t] - 1] = cyc[(t + 1) % cyc.size()] - 1;
      pres.perms.push_back(std::move(p));
    }
    if (pres.perms.empty()) throw std::invalid_argument("presentation: no permutations");
    return pres;
  }

  if (lines[0].rfind("pc:", 0) == 0) {
    std::size_t i = lines[0].find("n=[");
    if (i == std::string::npos) throw std::invalid_argument("presentation: pc header needs n=[...]");
    i += 3;
    PcPresentation pc;
    while (true) {
      unsigned o = 0;
      if (!detail::parse_uint(lines[0], i, o)) throw std::invalid_argument("presentation: bad order list");
      pc.orders.push_back(o);
      detail::skip_ws(lines[0], i);
      if (i < lines[0].size() && lines[0][i] == ',') {
        ++i;
        continue;
      }
      if (i < lines[0].size() && lines[0][i] == ']') break;
      throw std::invalid_argument("presentation: bad order list");
    }
    const std::size_t k = pc.orders.size();
    pc.power.assign(k, std::vector<unsigned>(k, 0));
    pc.comm.assign(k, std::vector<std::vector<unsigned>>());
    for (std::size_t j = 0; j < k; ++j) pc.comm[j].assign(j, std::vector<unsigned>(k, 0));

    for (std::size_t li = 1; li < lines.size(); ++li) {
      const std::string& s = lines[li];
      std::size_t eq = s.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("presentation: relation needs '='");
      std::string lhs = s.substr(0, eq), rhs = s.substr(eq + 1);
      std::size_t p = 0;
      detail::skip_ws(lhs, p);
      if (p < lhs.size() && lhs[p] == '[') {
        ++p;
        unsigned j = 0, i2 = 0;
        detail::skip_ws(lhs, p);
        if (lhs[p] != 'g') throw std::invalid_argument("presentation: bad commutator");
        ++p;
        detail::parse_uint(lhs, p, j);
        detail::skip_ws(lhs, p);
        if (lhs[p] != ',') throw std::invalid_argument("presentation: bad commutator");
        ++p;
        detail::skip_ws(lhs, p);
        if (lhs[p] != 'g') throw std::invalid_argument("presentation: bad commutator");
        ++p;
        detail::parse_uint(lhs, p, i2);
        if (j <= i2 || j > k || i2 == 0) throw std::invalid_argument("presentation: commutator needs j > i");
        pc.comm[j - 1][i2 - 1] = detail::parse_pc_word(rhs, 0, k);
      } else {
        if (lhs[p] != 'g') throw std::invalid_argument("presentation: bad power relation");
        ++p;
        unsigned idx = 0, e = 0;
        detail::parse_uint(lhs, p, idx);
        detail::skip_ws(lhs, p);
        if (p >= lhs.size() || lhs[p] != '^') throw std::invalid_argument("presentation: bad power relation");
        ++p;
        detail::parse_uint(lhs, p, e);
        if (idx == 0 || idx > k || e != pc.orders[idx - 1])
          throw std::invalid_argument("presentation: power must match declared order");
        pc.power[idx - 1] = detail::parse_pc_word(rhs, 0, k);
      }
    }
    pres.pc = std::move(pc);
    return pres;
  }
  throw std::invalid_argument("presentation: expected 'perm:' or 'pc:' header");
}

inline Presentation load_presentation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open presentation file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_presentation_text(ss.str());
}

inline GroupPtr group_from_presentation(const Presentation& pres, std::size_t order_cap = 100000) {
  if (!pres.perms.empty()) return FiniteGroup::from_permutations(pres.perms, order_cap);
  if (pres.pc) return FiniteGroup::from_pc(*pres.pc, order_cap);
  throw std::invalid_argument("group_from_presentation: empty descriptor");
}

}  // namespace unram
