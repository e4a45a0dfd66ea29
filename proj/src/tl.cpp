#include "planarly/tl.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace planarly::tl {

using num::Scalar;

bool is_planar_pairing(const std::vector<int>& pairing) {
  const int n = static_cast<int>(pairing.size());
  for (int i = 0; i < n; ++i) {
    if (pairing[i] < 0 || pairing[i] >= n || pairing[i] == i || pairing[pairing[i]] != i)
      return false;
  }
  for (int a = 0; a < n; ++a) {
    int c = pairing[a];
    if (c < a) continue;
    for (int b = a + 1; b < c; ++b) {
      int d = pairing[b];
      if (d < a || d > c) return false;  // b inside (a,c), partner outside
    }
  }
  return true;
}

TLDiagram compose(const TLDiagram& top, const TLDiagram& bottom, const Scalar& delta_minus,
                  const Scalar& delta_plus) {
  if (bottom.top != top.bottom) throw num::domain_error("compose: interface size mismatch");
  if (bottom.eps != top.eps) throw num::domain_error("compose: shading mismatch");
  const int k = bottom.top;  // interface strands
  // Global point ids: [0, top.points()) for the top diagram, then bottom's.
  const int tn = top.points();
  auto bot_id = [&](int p) { return tn + p; };
  // interface column c (0-based, left to right):
  //   bottom's output point = cycle position c (top row runs left to right)
  //   top's input point = cycle position top.top + top.bottom-1-c (bottom row
  //   runs right to left)
  std::vector<int> link(tn + bottom.points(), -1);
  for (int c = 0; c < k; ++c) {
    int bp = bot_id(c);
    int tp = top.top + top.bottom - 1 - c;
    link[bp] = tp;
    link[tp] = bp;
  }
  auto partner = [&](int id) {
    return id < tn ? top.pairing[id] : bot_id(bottom.pairing[id - tn]);
  };
  // External points of the result: top's outputs and bottom's inputs.
  TLDiagram out;
  out.top = top.top;
  out.bottom = bottom.bottom;
  out.eps = top.eps;
  out.mult = top.mult * bottom.mult;
  std::vector<int> result_pos(tn + bottom.points(), -1);
  for (int t = 0; t < top.top; ++t) result_pos[t] = t;
  for (int j = 0; j < bottom.bottom; ++j) result_pos[bot_id(bottom.top + j)] = top.top + j;
  out.pairing.assign(out.points(), -1);

  std::vector<char> seen(tn + bottom.points(), 0);
  // Trace strands from external points.
  for (int id = 0; id < tn + bottom.points(); ++id) {
    if (result_pos[id] < 0 || seen[id]) continue;
    int cur = id;
    seen[cur] = 1;
    int nxt = partner(cur);
    while (result_pos[nxt] < 0) {
      seen[nxt] = 1;
      nxt = link[nxt];
      seen[nxt] = 1;
      nxt = partner(nxt);
    }
    seen[nxt] = 1;
    out.pairing[result_pos[id]] = result_pos[nxt];
    out.pairing[result_pos[nxt]] = result_pos[id];
  }
  // Remaining unvisited interface points form closed loops. Walk each loop
  // bottom-side point to bottom-side point, tracking the leftmost column.
  for (int c = 0; c < k; ++c) {
    if (seen[bot_id(c)]) continue;
    int leftmost = c;
    int cur = bot_id(c);
    while (!seen[cur]) {
      seen[cur] = 1;
      leftmost = std::min(leftmost, cur - tn);
      int q = bot_id(bottom.pairing[cur - tn]);
      seen[q] = 1;
      leftmost = std::min(leftmost, q - tn);
      int t = link[q];
      seen[t] = 1;
      int t2 = top.pairing[t];
      seen[t2] = 1;
      cur = link[t2];
    }
    // Region left of the loop's leftmost interface strand.
    int sign = (leftmost % 2 == 0) ? out.eps : -out.eps;
    out.mult *= (sign < 0) ? delta_minus : delta_plus;
  }
  return out;
}

TLDiagram involution(const TLDiagram& d) {
  TLDiagram out;
  out.top = d.bottom;
  out.bottom = d.top;
  out.eps = d.eps;
  out.mult = d.mult;  // real scalars: conjugation is the identity
  const int n = d.points();
  out.pairing.assign(n, -1);
  for (int i = 0; i < n; ++i) out.pairing[n - 1 - i] = n - 1 - d.pairing[i];
  return out;
}

std::vector<std::vector<int>> nc_matchings(int n) {
  std::vector<std::vector<int>> out;
  if (n % 2) return out;
  std::vector<int> pairing(n, -1);
  std::function<void(int)> rec = [&](int i) {
    while (i < n && pairing[i] >= 0) ++i;
    if (i == n) {
      out.push_back(pairing);
      return;
    }
    for (int j = i + 1; j < n; j += 2) {
      if (pairing[j] >= 0) break;  // j must be free and everything between matchable
      bool free_span = true;
      for (int t = i + 1; t < j; ++t)
        if (pairing[t] >= 0) {
          free_span = false;
          break;
        }
      if (!free_span) break;
      pairing[i] = j;
      pairing[j] = i;
      rec(i + 1);
      pairing[i] = pairing[j] = -1;
    }
  };
  rec(0);
  return out;
}

std::vector<TLDiagram> tl_basis(int k) {
  std::vector<TLDiagram> out;
  for (auto& m : nc_matchings(2 * k)) {
    TLDiagram d;
    d.top = k;
    d.bottom = k;
    d.pairing = m;
    out.push_back(std::move(d));
  }
  return out;
}

std::string to_string(const TLDiagram& d) {
  std::ostringstream os;
  os << d.bottom << "," << d.top << "," << (d.eps > 0 ? '+' : '-') << "," << d.mult.str() << "|";
  bool first = true;
  for (int i = 0; i < d.points(); ++i) {
    if (d.pairing[i] < i) continue;
    if (!first) os << ",";
    first = false;
    os << (i + 1) << "-" << (d.pairing[i] + 1);
  }
  return os.str();
}

TLDiagram parse_diagram(const std::string& text) {
  auto bar = text.find('|');
  if (bar == std::string::npos) throw num::domain_error("diagram parse: missing '|'");
  std::string head = text.substr(0, bar), tail = text.substr(bar + 1);
  TLDiagram d;
  {
    std::istringstream is(head);
    std::string f;
    std::getline(is, f, ',');
    d.bottom = std::stoi(f);
    std::getline(is, f, ',');
    d.top = std::stoi(f);
    std::getline(is, f, ',');
    d.eps = (f == "-") ? -1 : +1;
    std::getline(is, f);
    d.mult = Scalar::parse(f);
  }
  d.pairing.assign(d.points(), -1);
  std::istringstream is(tail);
  std::string pair;
  while (std::getline(is, pair, ',')) {
    auto dash = pair.find('-');
    int a = std::stoi(pair.substr(0, dash)) - 1;
    int b = std::stoi(pair.substr(dash + 1)) - 1;
    d.pairing[a] = b;
    d.pairing[b] = a;
  }
  if (!is_planar_pairing(d.pairing)) throw num::domain_error("diagram parse: non-planar pairing");
  return d;
}

}  // namespace planarly::tl
