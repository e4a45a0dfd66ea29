#include "planarly/signs.hpp"

#include <algorithm>

namespace planarly::signs {

std::string to_string(const SignSeq& s) {
  std::string out;
  out.reserve(s.size());
  for (Sign x : s) {
    if (x != kMinus && x != kPlus) throw num::domain_error("sign text form needs rank 2");
    out += (x == kMinus) ? '-' : '+';
  }
  return out;
}

SignSeq parse_seq(const std::string& text) {
  SignSeq s;
  s.reserve(text.size());
  for (char c : text) {
    if (c == '-')
      s.push_back(kMinus);
    else if (c == '+')
      s.push_back(kPlus);
    else
      throw num::domain_error(std::string("bad sign character '") + c + "'");
  }
  return s;
}

void ReducedWord::push(int generator, int exponent) {
  int letter = (generator + 1) * exponent;
  if (!letters_.empty() && letters_.back() == -letter)
    letters_.pop_back();
  else
    letters_.push_back(letter);
}

std::string ReducedWord::str() const {
  if (letters_.empty()) return "e";
  std::string out;
  for (int l : letters_) {
    out += "a";
    out += std::to_string(std::abs(l) - 1);
    if (l < 0) out += "'";
  }
  return out;
}

ReducedWord alt(Sign eta, const SignSeq& seq) {
  ReducedWord w;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    int exp = (i % 2 == 0) ? -1 : +1;  // eta '+': a^{-1} a a^{-1} ...
    if (eta == kMinus) exp = -exp;
    w.push(seq[i], exp);
  }
  return w;
}

std::vector<SignSeq> enumerate_basis(Sign eta, int k, int rank) {
  std::vector<SignSeq> out;
  if (k == 0) {
    out.push_back({});
    return out;
  }
  SignSeq cur(static_cast<std::size_t>(2 * k), kMinus);
  for (;;) {
    if (alt(eta, cur).is_identity()) out.push_back(cur);
    // lexicographic odometer, leftmost position most significant
    int i = 2 * k - 1;
    while (i >= 0 && cur[i] == rank - 1) cur[i--] = 0;
    if (i < 0) break;
    ++cur[i];
  }
  return out;
}

bool nc_pairing_exists(const SignSeq& seq) {
  if (seq.size() % 2) return false;
  std::vector<Sign> stack;
  for (Sign s : seq) {
    if (!stack.empty() && stack.back() == s)
      stack.pop_back();
    else
      stack.push_back(s);
  }
  return stack.empty();
}

std::vector<tl::TLDiagram> nc_pairings(const SignSeq& seq) {
  std::vector<tl::TLDiagram> out;
  const int n = static_cast<int>(seq.size());
  if (n % 2) throw num::domain_error("nc_pairings: odd length");
  for (auto& m : tl::nc_matchings(n)) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) ok = seq[i] == seq[m[i]];
    if (!ok) continue;
    tl::TLDiagram d;
    d.bottom = n;
    d.top = 0;
    d.pairing.assign(n, -1);
    // Sequence position i sits at cycle position n-1-i (bottom row runs
    // right to left in cycle order).
    for (int i = 0; i < n; ++i) d.pairing[n - 1 - i] = n - 1 - m[i];
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace planarly::signs
