#pragma once

namespace newssum::detail {

// Contents of data/contractions.tsv and data/abbreviations.txt, embedded at
// configure time.
extern const char* const kBuiltinContractions;
extern const char* const kBuiltinAbbreviations;

}  // namespace newssum::detail
