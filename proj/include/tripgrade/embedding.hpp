#pragma once

#include <atomic>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tripgrade {

struct EmbeddingVector {
  std::vector<double> values;
  double norm = 0.0;  // 0 exactly for empty text, 1 otherwise (baseline)
};

// dot(a,b) / (|a||b|); 0 when either norm is 0; DimensionMismatchError on
// length mismatch
double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b);

class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) = 0;
  virtual size_t dimension() const = 0;
};

// lowercase -> char 3-grams -> FNV-1a 64 hash into D buckets -> counts ->
// L2-normalize; texts shorter than 3 chars embed to the zero vector
class BaselineEmbedder : public Embedder {
 public:
  explicit BaselineEmbedder(size_t dimension = 256) : dim_(dimension) {}
  std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) override;
  size_t dimension() const override { return dim_; }

 private:
  size_t dim_;
};

struct RemoteEmbedderConfig {
  std::string endpoint;      // http://host:port/path
  size_t dimension = 256;
  int max_in_flight = 4;
  int max_attempts = 3;      // exponential backoff between attempts
  int timeout_seconds = 10;
  int backoff_initial_ms = 100;
};

// POST {"texts": [...]} -> {"vectors": [[...], ...]}; raises
// RemoteUnavailableError after the retry budget, never falls back silently
class RemoteEmbedder : public Embedder {
 public:
  explicit RemoteEmbedder(RemoteEmbedderConfig config);
  ~RemoteEmbedder() override;
  std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) override;
  size_t dimension() const override { return config_.dimension; }

 private:
  RemoteEmbedderConfig config_;
  struct Limiter;
  std::unique_ptr<Limiter> limiter_;
};

// remote with explicit baseline fallback (the --embed-fallback switch)
class FallbackEmbedder : public Embedder {
 public:
  FallbackEmbedder(std::unique_ptr<Embedder> primary, std::unique_ptr<Embedder> fallback)
      : primary_(std::move(primary)), fallback_(std::move(fallback)) {}
  std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) override;
  size_t dimension() const override { return primary_->dimension(); }
  bool fell_back() const { return fell_back_.load(); }

 private:
  std::unique_ptr<Embedder> primary_;
  std::unique_ptr<Embedder> fallback_;
  std::atomic<bool> fell_back_{false};  // shared across evaluation workers
};

struct EmbedderSpec {
  std::optional<std::string> endpoint;  // unset -> baseline
  bool fallback = false;
  size_t dimension = 256;
};

std::unique_ptr<Embedder> make_embedder(const EmbedderSpec& spec);

}  // namespace tripgrade
