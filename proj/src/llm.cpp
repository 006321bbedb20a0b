#include "toca/llm.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <random>
#include <thread>

#include <httplib.h>

#include "toca/error.hpp"
#include "toca/text.hpp"

namespace toca {

using json = nlohmann::json;

namespace {

// Substitutes the single {slotted} placeholder; throws unless exactly one.
std::string instantiate_template(const std::string& tmpl,
                                 const std::string& slotted) {
  const std::string marker = "{slotted}";
  size_t first = tmpl.find(marker);
  if (first == std::string::npos ||
      tmpl.find(marker, first + 1) != std::string::npos)
    throw ConfigError(
        "prompt_template must contain exactly one {slotted} placeholder");
  std::string out = tmpl;
  out.replace(first, marker.size(), slotted);
  return out;
}

std::string strip(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool retryable_status(int status) {
  return status == 429 || (status >= 500 && status < 600);
}

}  // namespace

EndpointConfig endpoint_config_from_json(const json& j) {
  EndpointConfig cfg;
  try {
    if (j.contains("base_url"))
      cfg.base_url = j["base_url"].get<std::string>();
    if (j.contains("model_name"))
      cfg.model_name = j["model_name"].get<std::string>();
    if (j.contains("prompt_template"))
      cfg.prompt_template = j["prompt_template"].get<std::string>();
    if (j.contains("sampling_temperature"))
      cfg.sampling_temperature = j["sampling_temperature"].get<double>();
    if (j.contains("max_output_tokens"))
      cfg.max_output_tokens = j["max_output_tokens"].get<int>();
    if (j.contains("request_timeout_s"))
      cfg.request_timeout_s = j["request_timeout_s"].get<double>();
    if (j.contains("max_retries"))
      cfg.max_retries = j["max_retries"].get<int>();
    if (j.contains("max_in_flight"))
      cfg.max_in_flight = j["max_in_flight"].get<int>();
    if (j.contains("api_key_env"))
      cfg.api_key_env = j["api_key_env"].get<std::string>();
    if (j.contains("retry_base_delay_s"))
      cfg.retry_base_delay_s = j["retry_base_delay_s"].get<double>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("endpoint config has mistyped fields: ") +
                      e.what());
  }
  if (cfg.max_output_tokens <= 0 || cfg.max_retries < 0 ||
      cfg.max_in_flight <= 0 || cfg.sampling_temperature < 0.0)
    throw ConfigError("endpoint config has out-of-range values");
  return cfg;
}

json endpoint_config_to_json(const EndpointConfig& cfg) {
  return json{{"base_url", cfg.base_url},
              {"model_name", cfg.model_name},
              {"prompt_template", cfg.prompt_template},
              {"sampling_temperature", cfg.sampling_temperature},
              {"max_output_tokens", cfg.max_output_tokens},
              {"request_timeout_s", cfg.request_timeout_s},
              {"max_retries", cfg.max_retries},
              {"max_in_flight", cfg.max_in_flight},
              {"api_key_env", cfg.api_key_env},
              {"retry_base_delay_s", cfg.retry_base_delay_s}};
}

std::string render_request(const SlottedPrompt& prompt,
                           const EndpointConfig& cfg) {
  json body;
  body["model"] = cfg.model_name;
  body["messages"] = json::array({json{
      {"role", "user"},
      {"content", instantiate_template(cfg.prompt_template,
                                       prompt.slotted_text)}}});
  body["temperature"] = cfg.sampling_temperature;
  body["max_tokens"] = cfg.max_output_tokens;
  return body.dump();
}

void CompletionClient::InFlightGate::acquire() {
  std::unique_lock lock(mu_);
  cv_.wait(lock, [this] { return active_ < limit_; });
  ++active_;
}

void CompletionClient::InFlightGate::release() {
  {
    std::lock_guard lock(mu_);
    --active_;
  }
  cv_.notify_one();
}

CompletionClient::CompletionClient(EndpointConfig cfg)
    : cfg_(std::move(cfg)), gate_(std::max(1, cfg_.max_in_flight)) {
  // Split "scheme://authority/prefix" so the POST path can be prefixed.
  std::string url = cfg_.base_url;
  size_t scheme = url.find("://");
  size_t slash = scheme == std::string::npos ? url.find('/')
                                             : url.find('/', scheme + 3);
  if (slash == std::string::npos) {
    host_ = url;
  } else {
    host_ = url.substr(0, slash);
    path_prefix_ = url.substr(slash);
    while (!path_prefix_.empty() && path_prefix_.back() == '/')
      path_prefix_.pop_back();
  }
}

Completion CompletionClient::complete(const SlottedPrompt& prompt) {
  std::string body = render_request(prompt, cfg_);
  std::string path = path_prefix_ + "/v1/chat/completions";

  httplib::Headers headers;
  if (!cfg_.api_key_env.empty()) {
    if (const char* key = std::getenv(cfg_.api_key_env.c_str());
        key && *key != '\0')
      headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  gate_.acquire();
  struct Release {
    InFlightGate& g;
    ~Release() { g.release(); }
  } release{gate_};

  auto started = std::chrono::steady_clock::now();
  std::mt19937_64 jitter_rng(std::random_device{}());
  std::uniform_real_distribution<double> jitter(0.0, 1.0);

  std::string last_error;
  int attempts = 0;
  for (int attempt = 0; attempt <= cfg_.max_retries; ++attempt) {
    if (attempt > 0) {
      // Exponential backoff: base * 2^(attempt-1), with up to +50% jitter.
      double delay = cfg_.retry_base_delay_s * std::pow(2.0, attempt - 1);
      delay *= 1.0 + 0.5 * jitter(jitter_rng);
      std::this_thread::sleep_for(std::chrono::duration<double>(delay));
    }
    ++attempts;

    httplib::Client client(host_);
    client.set_connection_timeout(std::chrono::duration<double>(cfg_.request_timeout_s));
    client.set_read_timeout(std::chrono::duration<double>(cfg_.request_timeout_s));
    client.set_write_timeout(std::chrono::duration<double>(cfg_.request_timeout_s));

    httplib::Result res =
        client.Post(path, headers, body, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 200 && res->status < 300) {
      json doc = json::parse(res->body, nullptr, false);
      if (doc.is_discarded() || !doc.contains("choices") ||
          !doc["choices"].is_array() || doc["choices"].empty() ||
          !doc["choices"][0].contains("message") ||
          !doc["choices"][0]["message"].contains("content") ||
          !doc["choices"][0]["message"]["content"].is_string())
        throw MalformedResponseError(
            "endpoint response has no choices[0].message.content");
      Completion out;
      out.prompt_id = prompt.id;
      out.text =
          strip(doc["choices"][0]["message"]["content"].get<std::string>());
      out.attempts = attempts;
      out.latency_s = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - started)
                          .count();
      return out;
    }
    if (!retryable_status(res->status))
      throw EndpointError("endpoint returned HTTP " +
                          std::to_string(res->status));
    last_error = "HTTP " + std::to_string(res->status);
  }
  throw EndpointError("exhausted retries (" + std::to_string(attempts) +
                      " attempts): " + last_error);
}

MockMode mock_mode_from(std::string_view name) {
  if (name == "echo") return MockMode::Echo;
  if (name == "lossy") return MockMode::Lossy;
  if (name == "constant") return MockMode::Constant;
  throw ConfigError("unknown mock mode: '" + std::string(name) +
                    "' (expected echo, lossy or constant)");
}

Completion mock_fill(const SlottedPrompt& prompt, MockMode mode) {
  Completion out;
  out.prompt_id = prompt.id;
  out.attempts = 1;
  switch (mode) {
    case MockMode::Echo: {
      std::string text = prompt.slotted_text;
      size_t pos;
      while ((pos = text.find("[ ]")) != std::string::npos)
        text.erase(pos, 3);
      out.text = collapse_whitespace(text);
      break;
    }
    case MockMode::Lossy: {
      Completion echoed = mock_fill(prompt, MockMode::Echo);
      if (!prompt.required.empty())
        out.text = remove_whole_word(echoed.text, prompt.required.back());
      else
        out.text = echoed.text;
      break;
    }
    case MockMode::Constant:
      out.text = "a fixed sentence .";
      break;
  }
  return out;
}

}  // namespace toca
