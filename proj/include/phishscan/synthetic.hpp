#ifndef PHISHSCAN_SYNTHETIC_HPP
#define PHISHSCAN_SYNTHETIC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "phishscan/datasets.hpp"

namespace phishscan {

// Curated credential-urgency phrases; also the payload pool for phishing
// fixtures so models trained on the synthetic corpus transfer to them.
const std::vector<std::string>& phishing_phrases();
const std::vector<std::string>& benign_phrases();

// Deterministic stand-in for the reference URL dataset: balanced, 87
// columns on the built-in schema, signal carried by the live lexical
// features with deliberate class overlap.
UrlDataset generate_synthetic_url_dataset(std::size_t n, std::uint64_t seed);
void write_url_dataset_csv(const UrlDataset& dataset, const std::string& path);

// Deterministic stand-in for the spam corpus: ham/spam messages drawn from
// the phrase pools plus a long tail of rare filler words sized to give a
// realistic vocabulary.
TextDataset generate_synthetic_text_corpus(std::size_t n, std::uint64_t seed);
void write_text_corpus_csv(const TextDataset& corpus, const std::string& path);

// Example URL strings whose lexical features a trained synthetic-data
// forest should flag / pass.
std::string sample_phishing_url(std::uint64_t seed);
std::string sample_legitimate_url(std::uint64_t seed);

} // namespace phishscan

#endif
