#ifndef PHISHSCAN_PORTER_STEMMER_HPP
#define PHISHSCAN_PORTER_STEMMER_HPP

#include <string>

namespace phishscan {

// Classic Porter (1980) suffix-stripping stemmer for lowercase English
// words: "university" -> "univers", "calamity" -> "calam".
std::string porter_stem(const std::string& word);

} // namespace phishscan

#endif
