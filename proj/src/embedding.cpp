#include "tripgrade/embedding.hpp"

#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdint>
#include <mutex>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "tripgrade/errors.hpp"
#include "tripgrade/text.hpp"

namespace tripgrade {

double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.values.size() != b.values.size())
    throw DimensionMismatchError("embedding dimensions differ: " +
                                 std::to_string(a.values.size()) + " vs " +
                                 std::to_string(b.values.size()));
  if (a.norm == 0.0 || b.norm == 0.0) return 0.0;
  double dot = 0;
  for (size_t i = 0; i < a.values.size(); ++i) dot += a.values[i] * b.values[i];
  return dot / (a.norm * b.norm);
}

namespace {

std::uint64_t fnv1a64(const char* data, size_t len) {
  std::uint64_t h = 14695981039346656037ull;
  for (size_t i = 0; i < len; ++i) {
    h ^= static_cast<unsigned char>(data[i]);
    h *= 1099511628211ull;
  }
  return h;
}

EmbeddingVector finalize(std::vector<double> counts) {
  EmbeddingVector v;
  double ss = 0;
  for (double c : counts) ss += c * c;
  if (ss > 0) {
    double norm = std::sqrt(ss);
    for (double& c : counts) c /= norm;
    v.norm = 1.0;
  }
  v.values = std::move(counts);
  return v;
}

}  // namespace

std::vector<EmbeddingVector> BaselineEmbedder::embed(const std::vector<std::string>& texts) {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const auto& text : texts) {
    std::string s = to_lower(text);
    std::vector<double> counts(dim_, 0.0);
    if (s.size() >= 3)
      for (size_t i = 0; i + 3 <= s.size(); ++i)
        counts[fnv1a64(s.data() + i, 3) % dim_] += 1.0;
    out.push_back(finalize(std::move(counts)));
  }
  return out;
}

/* ---- remote ---- */

struct RemoteEmbedder::Limiter {
  std::mutex mu;
  std::condition_variable cv;
  int available;
  explicit Limiter(int n) : available(n) {}
  void acquire() {
    std::unique_lock lock(mu);
    cv.wait(lock, [&] { return available > 0; });
    --available;
  }
  void release() {
    {
      std::lock_guard lock(mu);
      ++available;
    }
    cv.notify_one();
  }
};

RemoteEmbedder::RemoteEmbedder(RemoteEmbedderConfig config)
    : config_(std::move(config)),
      limiter_(std::make_unique<Limiter>(std::max(1, config_.max_in_flight))) {}

RemoteEmbedder::~RemoteEmbedder() = default;

std::vector<EmbeddingVector> RemoteEmbedder::embed(const std::vector<std::string>& texts) {
  if (texts.empty()) return {};

  // endpoint -> (base, path)
  std::string url = config_.endpoint;
  std::string base = url, path = "/";
  size_t scheme = url.find("://");
  size_t host_start = scheme == std::string::npos ? 0 : scheme + 3;
  size_t slash = url.find('/', host_start);
  if (slash != std::string::npos) {
    base = url.substr(0, slash);
    path = url.substr(slash);
  }

  nlohmann::json body = {{"texts", texts}};
  std::string payload = body.dump();

  limiter_->acquire();
  struct Release {
    Limiter* l;
    ~Release() { l->release(); }
  } release{limiter_.get()};

  int last_status = 0;
  std::string last_error = "no response";
  for (int attempt = 0; attempt < std::max(1, config_.max_attempts); ++attempt) {
    if (attempt > 0)
      std::this_thread::sleep_for(
          std::chrono::milliseconds(config_.backoff_initial_ms << (attempt - 1)));
    httplib::Client client(base);
    client.set_connection_timeout(config_.timeout_seconds, 0);
    client.set_read_timeout(config_.timeout_seconds, 0);
    auto res = client.Post(path, payload, "application/json");
    if (!res) {
      last_status = 0;
      last_error = "connection failed";
      continue;
    }
    if (res->status != 200) {
      last_status = res->status;
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::exception& e) {
      last_error = std::string("bad response body: ") + e.what();
      continue;
    }
    if (!doc.contains("vectors") || !doc.at("vectors").is_array() ||
        doc.at("vectors").size() != texts.size())
      throw RemoteUnavailableError("embedding service returned " +
                                       std::to_string(doc.contains("vectors")
                                                          ? doc.at("vectors").size()
                                                          : 0) +
                                       " vectors for " + std::to_string(texts.size()) + " texts",
                                   res->status);
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (const auto& row : doc.at("vectors")) {
      if (!row.is_array() || row.size() != config_.dimension)
        throw DimensionMismatchError("embedding service returned dimension " +
                                     std::to_string(row.size()) + ", expected " +
                                     std::to_string(config_.dimension));
      EmbeddingVector v;
      v.values.reserve(row.size());
      double ss = 0;
      for (const auto& x : row) {
        double d = x.get<double>();
        v.values.push_back(d);
        ss += d * d;
      }
      v.norm = std::sqrt(ss);
      out.push_back(std::move(v));
    }
    return out;
  }
  throw RemoteUnavailableError("embedding service unavailable after " +
                                   std::to_string(config_.max_attempts) + " attempts (" +
                                   last_error + ")",
                               last_status);
}

std::vector<EmbeddingVector> FallbackEmbedder::embed(const std::vector<std::string>& texts) {
  if (fell_back_.load()) return fallback_->embed(texts);  // don't re-pay the retry budget
  try {
    return primary_->embed(texts);
  } catch (const RemoteUnavailableError&) {
    fell_back_.store(true);
    return fallback_->embed(texts);
  }
}

std::unique_ptr<Embedder> make_embedder(const EmbedderSpec& spec) {
  if (!spec.endpoint || spec.endpoint->empty())
    return std::make_unique<BaselineEmbedder>(spec.dimension);
  RemoteEmbedderConfig config;
  config.endpoint = *spec.endpoint;
  config.dimension = spec.dimension;
  auto remote = std::make_unique<RemoteEmbedder>(std::move(config));
  if (!spec.fallback) return remote;
  return std::make_unique<FallbackEmbedder>(std::move(remote),
                                            std::make_unique<BaselineEmbedder>(spec.dimension));
}

}  // namespace tripgrade
