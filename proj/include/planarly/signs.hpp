#pragma once

#include "planarly/tl.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace planarly::signs {

/// A sign is an index into the diagonal algebra's color set I; for the
/// default rank 2, 0 is '-' and 1 is '+', ordered '-' < '+'.
using Sign = std::int8_t;
inline constexpr Sign kMinus = 0;
inline constexpr Sign kPlus = 1;

using SignSeq = std::vector<Sign>;

inline SignSeq reversed(const SignSeq& s) { return SignSeq(s.rbegin(), s.rend()); }
inline SignSeq concat(SignSeq a, const SignSeq& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

/// "-++-" style text form (rank 2 only).
std::string to_string(const SignSeq& s);
SignSeq parse_seq(const std::string& text);

/// A reduced word in the free group F_rank: letters are (generator+1) with the
/// sign carrying the exponent; adjacent cancelling pairs never occur.
class ReducedWord {
 public:
  void push(int generator, int exponent);  // exponent in {-1,+1}
  bool is_identity() const { return letters_.empty(); }
  std::size_t length() const { return letters_.size(); }
  bool operator==(const ReducedWord& o) const { return letters_ == o.letters_; }
  std::string str() const;

 private:
  std::vector<int> letters_;
};

/// The alternating word map: exponents start at -1 for eta '+' and +1 for
/// eta '-', alternating along the sequence, with free cancellation.
ReducedWord alt(Sign eta, const SignSeq& seq);

/// All sequences in I^{2k} whose alternating word is trivial, lexicographic
/// (with '-' < '+'); the distinguished basis of the diagonal algebra's level.
std::vector<SignSeq> enumerate_basis(Sign eta, int k, int rank = 2);

/// True iff a non-crossing perfect matching pairing equal signs exists;
/// linear stack algorithm (push sign, pop on equal top).
bool nc_pairing_exists(const SignSeq& seq);

/// All non-crossing matching-sign pairings, as 0-output TL diagrams whose
/// bottom row carries the sequence. Empty when none exist or length is odd.
std::vector<tl::TLDiagram> nc_pairings(const SignSeq& seq);

}  // namespace planarly::signs
