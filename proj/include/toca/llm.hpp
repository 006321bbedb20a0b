#pragma once

#include <condition_variable>
#include <cstdint>
#include <mutex>
#include <string>

#include <nlohmann/json.hpp>

#include "toca/sampler.hpp"

namespace toca {

inline constexpr const char* kDefaultPromptTemplate =
    "Fill in each [ ] gap to form one fluent caption sentence. Keep every "
    "given word exactly as written and in order. Output only the completed "
    "sentence.\n{slotted}";

/// Connection and request parameters for an OpenAI-compatible
/// chat-completions endpoint (hosted APIs and local llama.cpp-style
/// runtimes speak the same protocol).
struct EndpointConfig {
  std::string base_url = "http://localhost:8080";
  std::string model_name = "mistral-7b-instruct";
  std::string prompt_template = kDefaultPromptTemplate;  // one {slotted}
  double sampling_temperature = 0.7;
  int max_output_tokens = 96;
  double request_timeout_s = 60.0;
  int max_retries = 3;
  int max_in_flight = 4;
  std::string api_key_env = "TOCA_API_KEY";
  double retry_base_delay_s = 1.0;  // backoff: base * 2^attempt, jittered
};

EndpointConfig endpoint_config_from_json(const nlohmann::json& j);
nlohmann::json endpoint_config_to_json(const EndpointConfig& cfg);

struct Completion {
  uint64_t prompt_id = 0;
  std::string text;
  double latency_s = 0.0;
  int attempts = 0;  // <= max_retries + 1
};

/// Serialized chat-completions request body for one prompt. Byte-stable for
/// equal inputs. Throws ConfigError when the template does not contain
/// exactly one {slotted} placeholder.
std::string render_request(const SlottedPrompt& prompt,
                           const EndpointConfig& cfg);

/// Chat-completions client with bounded concurrency: across all threads
/// using one client, at most max_in_flight requests are outstanding.
class CompletionClient {
 public:
  explicit CompletionClient(EndpointConfig cfg);

  /// Posts the prompt, retrying transport errors and 429/5xx responses with
  /// exponential backoff. Throws EndpointError after the retry budget and
  /// MalformedResponseError when the body has no usable choice.
  Completion complete(const SlottedPrompt& prompt);

  const EndpointConfig& config() const { return cfg_; }

 private:
  class InFlightGate {
   public:
    explicit InFlightGate(int limit) : limit_(limit) {}
    void acquire();
    void release();

   private:
    std::mutex mu_;
    std::condition_variable cv_;
    int limit_;
    int active_ = 0;
  };

  EndpointConfig cfg_;
  std::string host_;         // scheme://authority
  std::string path_prefix_;  // anything after the authority
  InFlightGate gate_;
};

/// Deterministic offline completers for tests and dry runs.
enum class MockMode { Echo, Lossy, Constant };

MockMode mock_mode_from(std::string_view name);  // throws ConfigError

/// echo: the prompt with mask markers removed (keeps every required token);
/// lossy: echo minus the last required token (always fails the filter);
/// constant: a fixed sentence regardless of the prompt.
Completion mock_fill(const SlottedPrompt& prompt, MockMode mode);

}  // namespace toca
