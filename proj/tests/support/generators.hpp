#pragma once

// Hand-rolled term generators with explicit seeds.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "confdec/sorts.hpp"
#include "confdec/term.hpp"

namespace gen {

using confdec::Signature;
using confdec::Term;

/// Every term with at most `max_size` nodes, by size.
std::vector<Term> all_terms(const Signature& sig, const std::vector<std::string>& vars, std::size_t max_size,
                            bool with_hole);

class TermGen {
 public:
  TermGen(Signature sig, std::vector<std::string> vars, std::uint32_t seed, bool with_hole = false);
  /// A random term with at most `max_size` nodes.
  Term term(std::size_t max_size);
  /// A random term with exactly `size` nodes when the signature allows it.
  Term exact(std::size_t size);
  std::mt19937& rng() { return rng_; }

 private:
  Term leaf();
  Signature sig_;
  std::vector<std::string> vars_;
  bool with_hole_;
  std::mt19937 rng_;
};

/// Well-sorted terms; variable `v<sort>` stands for sort `<sort>`.
class SortedGen {
 public:
  SortedGen(confdec::SortAttachment s, std::uint32_t seed);
  /// Attachment extended with the generator's variables.
  const confdec::SortAttachment& attachment() const { return s_; }
  Term term(const confdec::Sort& sort, std::size_t budget);
  const confdec::Sort& any_sort();
  std::mt19937& rng() { return rng_; }

 private:
  confdec::SortAttachment s_;
  std::mt19937 rng_;
};

std::size_t pick(std::mt19937& rng, std::size_t n);

}  // namespace gen
