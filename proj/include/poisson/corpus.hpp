#ifndef POISSON_CORPUS_HPP
#define POISSON_CORPUS_HPP

#include <span>
#include <string>

namespace poisson {

/// A bundled example structure file.
struct CorpusEntry {
  std::string name;
  std::string description;
  std::string text;
};

std::span<const CorpusEntry> corpus();

/// nullptr if no entry has that name.
const CorpusEntry* find_corpus(std::string_view name);

}  // namespace poisson

#endif  // POISSON_CORPUS_HPP
