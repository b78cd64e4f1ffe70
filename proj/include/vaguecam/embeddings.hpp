#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "vaguecam/textproc.hpp"

namespace vaguecam {

inline constexpr std::size_t kDefaultEmbeddingDim = 300;

enum class OovPolicy { kZeroVector, kHashed };

// Row-major so that row t is token t.
using EmbeddingMatrix = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Components drawn from a 64-bit hash of (token, seed, index), uniform in
// [-0.1, 0.1].
std::vector<float> hashed_vector(std::string_view token, std::size_t dimension,
                                 std::uint64_t seed);

class EmbeddingTable {
 public:
  EmbeddingTable(std::size_t dimension, OovPolicy policy, std::uint64_t seed = 0);

  // Empty table where every token is resolved by the hashed provider.
  static EmbeddingTable hashed(std::size_t dimension, std::uint64_t seed);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return vocab_.size(); }
  OovPolicy oov_policy() const { return policy_; }
  std::uint64_t seed() const { return seed_; }

  void insert(std::string token, std::vector<float> vector);
  bool contains(std::string_view token) const;
  // Stored vector for the exact key, or nullptr.
  const std::vector<float>* find(std::string_view token) const;

  // Vector for `token` (looked up lowercased); never fails.
  std::vector<float> lookup(std::string_view token) const;

  // Tokens in insertion order.
  const std::vector<std::string>& tokens() const { return order_; }

 private:
  std::size_t dimension_;
  OovPolicy policy_;
  std::uint64_t seed_;
  std::unordered_map<std::string, std::vector<float>> vocab_;
  std::vector<std::string> order_;
};

// `<count> <dim>` header followed by `token v1 ... vd` lines.
EmbeddingTable load_vectors(std::string_view content,
                            OovPolicy policy = OovPolicy::kZeroVector);
EmbeddingTable load_vectors_file(const std::string& path,
                                 OovPolicy policy = OovPolicy::kZeroVector);
std::string save_vectors(const EmbeddingTable& table);

// T x d matrix; throws on an empty token list.
EmbeddingMatrix embed_tokens(const EmbeddingTable& table, std::span<const Token> tokens);
EmbeddingMatrix embed_tokens(const EmbeddingTable& table, std::span<const std::string> tokens);

}  // namespace vaguecam
