#pragma once

#include <cstddef>
#include <string_view>

#include "newssum/segmenter.hpp"
#include "newssum/textprep.hpp"

namespace newssum {

// Clean + segment settings shared by every stage that turns raw text into
// sentences (summaries, hybrid training, evaluation references).
struct TextPipeline {
  ContractionTable contractions = ContractionTable::builtin();
  AbbreviationSet abbreviations = AbbreviationSet::builtin();
  std::size_t min_words = kDefaultMinSentenceWords;

  CleanText clean(std::string_view raw) const { return newssum::clean(raw, contractions); }

  // Throws Error{kEmptyInput} when nothing survives cleaning.
  SentenceSet sentences(std::string_view raw) const {
    return split_sentences(clean(raw).text, abbreviations, min_words);
  }
};

}  // namespace newssum
