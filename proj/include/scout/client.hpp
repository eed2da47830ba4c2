// Chat-model client abstraction: messages in, text plus tool calls out.
// ScriptedClient replays a recorded transcript with drift checks for
// deterministic tests; HttpClient speaks a minimal JSON contract to a live
// endpoint.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"
#include "scout/result.hpp"

namespace scout {

struct Message {
    std::string role;  // "system" | "user" | "assistant" | "tool"
    std::string content;
};

struct ToolCall {
    std::string name;
    nlohmann::json args = nlohmann::json::object();
};

struct Reply {
    std::string text;
    std::vector<ToolCall> tool_calls;
};

class LlmClient {
  public:
    virtual ~LlmClient() = default;
    virtual Result<Reply> complete(const std::vector<Message>& messages) = 0;
};

struct ScriptedTurn {
    Reply reply;
    // Every needle must appear in some message of the request for this turn.
    std::vector<std::string> expect_contains;
};

// Replays fixed turns in order.  A request that misses an expectation fails
// with an expected-vs-actual diff (State); running past the last turn is a
// Transport error, which callers treat as an aborted conversation.
class ScriptedClient : public LlmClient {
  public:
    explicit ScriptedClient(std::vector<ScriptedTurn> turns) : turns_(std::move(turns)) {}
    Result<Reply> complete(const std::vector<Message>& messages) override;

    std::size_t calls() const { return next_; }
    std::size_t remaining() const { return turns_.size() - next_; }

  private:
    std::vector<ScriptedTurn> turns_;
    std::size_t next_ = 0;
};

// Transcript document: {"turns": [{"text", "tool_calls": [{"name", "args"}],
// "expect_contains": [...]}]}.  All fields but "name" are optional.
Result<std::vector<ScriptedTurn>> parse_transcript(const std::string& json_text);
Result<std::vector<ScriptedTurn>> load_transcript(const std::string& path);

struct HttpClientConfig {
    std::string base_url = "http://127.0.0.1:8089";
    std::string path = "/v1/complete";
    std::string model;
    std::string api_key;  // sent as a bearer token when non-empty
    int timeout_s = 120;
    int max_retries = 2;
};

// POSTs {"model", "messages": [{"role", "content"}]} and expects
// {"text", "tool_calls": [{"name", "args"}]} back.  Connection failures and
// bad payloads retry, then surface as Transport errors.
class HttpClient : public LlmClient {
  public:
    explicit HttpClient(HttpClientConfig cfg) : cfg_(std::move(cfg)) {}
    Result<Reply> complete(const std::vector<Message>& messages) override;

  private:
    HttpClientConfig cfg_;
};

}  // namespace scout
