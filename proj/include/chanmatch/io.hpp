#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json_fwd.hpp>

#include "chanmatch/cube_embedding.hpp"
#include "chanmatch/metrization.hpp"
#include "chanmatch/types.hpp"

namespace chanmatch {

/// Parse failure with a 1-indexed line (and token position where useful).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Matrix files: first token is n, followed by n rows of n rationals.
RatMat parse_square_matrix(std::string_view text);
Channel parse_channel(std::string_view text);
DistanceMatrix parse_distance(std::string_view text);

// Subset-vector / weight files: first token is n, followed by 2^n - 1
// rationals in ascending bitmask order. Weights must be nonnegative.
SubsetVector parse_subset_vector(std::string_view text);
WeightVector parse_weight(std::string_view text);

// Set-family files: one line per ground element, each the membership
// bitmask written as a binary numeral of width n.
SetFamily parse_family(std::string_view text, int n);

// Embedding files: header "n N m k", then n rows of N-character bit words.
struct EmbeddingFile {
  int n = 0;
  int N = 0;
  Rat m;
  Rat k;
  std::vector<CubeWord> words;
};
EmbeddingFile parse_embedding(std::string_view text);

std::string format_matrix(const RatMat& m);
std::string format_ranks(const WeakOrderMatrix& m);
std::string format_subset_vector(const SubsetVector& v);
std::string format_family(const SetFamily& f);
std::string format_embedding(int n, int N, const Rat& m, const Rat& k,
                             const std::vector<CubeWord>& words);

// Certificates serialize as an ordered list of steps; pairs and indices are
// 1-indexed on the wire.
nlohmann::json certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const nlohmann::json& j);
std::string format_certificate(const Certificate& cert);

nlohmann::json matrix_to_json(const RatMat& m);
nlohmann::json subset_vector_to_json(const SubsetVector& v);

}  // namespace chanmatch
