// Scripted and HTTP chat-model clients.
#include "scout/client.hpp"

#include <fstream>
#include <sstream>

#include "httplib.h"

namespace scout {

namespace {

using nlohmann::json;

std::string tail(const std::string& s, std::size_t n) {
    if (s.size() <= n) return s;
    return "..." + s.substr(s.size() - n);
}

}  // namespace

Result<Reply> ScriptedClient::complete(const std::vector<Message>& messages) {
    if (next_ >= turns_.size()) {
        std::string last = messages.empty() ? "<none>" : tail(messages.back().content, 200);
        return make_error(ErrorCode::Transport,
                          "scripted transcript exhausted after " + std::to_string(turns_.size()) +
                              " turns; last request message: " + last);
    }
    const ScriptedTurn& turn = turns_[next_];
    for (const std::string& needle : turn.expect_contains) {
        bool found = false;
        for (const Message& m : messages) {
            if (m.content.find(needle) != std::string::npos) {
                found = true;
                break;
            }
        }
        if (!found) {
            std::string last = messages.empty() ? "<none>" : tail(messages.back().content, 400);
            return make_error(ErrorCode::State,
                              "scripted transcript drift at turn " + std::to_string(next_ + 1) +
                                  ": expected the request to contain \"" + needle +
                                  "\"; last request message: " + last);
        }
    }
    ++next_;
    return turn.reply;
}

Result<std::vector<ScriptedTurn>> parse_transcript(const std::string& json_text) {
    json doc = json::parse(json_text, nullptr, false);
    if (doc.is_discarded()) {
        return make_error(ErrorCode::Parse, "transcript is not valid JSON");
    }
    if (!doc.is_object() || !doc.contains("turns") || !doc.at("turns").is_array()) {
        return make_error(ErrorCode::Schema, "transcript must be an object with a 'turns' array");
    }
    std::vector<ScriptedTurn> turns;
    std::size_t n = 0;
    for (const json& jt : doc.at("turns")) {
        ++n;
        if (!jt.is_object()) {
            return make_error(ErrorCode::Schema,
                              "transcript turn " + std::to_string(n) + " must be an object");
        }
        ScriptedTurn turn;
        if (jt.contains("text")) {
            if (!jt.at("text").is_string()) {
                return make_error(ErrorCode::Schema,
                                  "turn " + std::to_string(n) + ": 'text' must be a string");
            }
            turn.reply.text = jt.at("text").get<std::string>();
        }
        if (jt.contains("tool_calls")) {
            if (!jt.at("tool_calls").is_array()) {
                return make_error(ErrorCode::Schema,
                                  "turn " + std::to_string(n) + ": 'tool_calls' must be an array");
            }
            for (const json& jc : jt.at("tool_calls")) {
                if (!jc.is_object() || !jc.contains("name") || !jc.at("name").is_string() ||
                    jc.at("name").get<std::string>().empty()) {
                    return make_error(ErrorCode::Schema,
                                      "turn " + std::to_string(n) +
                                          ": every tool call needs a non-empty 'name'");
                }
                ToolCall call;
                call.name = jc.at("name").get<std::string>();
                if (jc.contains("args")) {
                    if (!jc.at("args").is_object()) {
                        return make_error(ErrorCode::Schema,
                                          "turn " + std::to_string(n) +
                                              ": tool call 'args' must be an object");
                    }
                    call.args = jc.at("args");
                }
                turn.reply.tool_calls.push_back(std::move(call));
            }
        }
        if (jt.contains("expect_contains")) {
            if (!jt.at("expect_contains").is_array()) {
                return make_error(
                    ErrorCode::Schema,
                    "turn " + std::to_string(n) + ": 'expect_contains' must be an array");
            }
            for (const json& je : jt.at("expect_contains")) {
                if (!je.is_string()) {
                    return make_error(ErrorCode::Schema,
                                      "turn " + std::to_string(n) +
                                          ": 'expect_contains' entries must be strings");
                }
                turn.expect_contains.push_back(je.get<std::string>());
            }
        }
        turns.push_back(std::move(turn));
    }
    return turns;
}

Result<std::vector<ScriptedTurn>> load_transcript(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return make_error(ErrorCode::NotFound, "cannot open transcript: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    auto turns = parse_transcript(buf.str());
    if (!turns.ok()) {
        Error e = turns.error();
        e.message += " (" + path + ")";
        return e;
    }
    return turns;
}

Result<Reply> HttpClient::complete(const std::vector<Message>& messages) {
    json body;
    body["model"] = cfg_.model;
    json jmsgs = json::array();
    for (const Message& m : messages) {
        jmsgs.push_back({{"role", m.role}, {"content", m.content}});
    }
    body["messages"] = std::move(jmsgs);
    const std::string payload = body.dump();

    httplib::Headers headers;
    if (!cfg_.api_key.empty()) {
        headers.emplace("Authorization", "Bearer " + cfg_.api_key);
    }

    std::string last_error = "no attempt made";
    for (int attempt = 0; attempt <= cfg_.max_retries; ++attempt) {
        httplib::Client cli(cfg_.base_url);
        cli.set_connection_timeout(cfg_.timeout_s, 0);
        cli.set_read_timeout(cfg_.timeout_s, 0);
        cli.set_write_timeout(cfg_.timeout_s, 0);
        auto res = cli.Post(cfg_.path, headers, payload, "application/json");
        if (!res) {
            last_error = "connection failed (" + httplib::to_string(res.error()) + ")";
            continue;
        }
        if (res->status != 200) {
            last_error = "endpoint returned status " + std::to_string(res->status) + ": " +
                         tail(res->body, 200);
            continue;
        }
        json doc = json::parse(res->body, nullptr, false);
        if (doc.is_discarded() || !doc.is_object()) {
            last_error = "endpoint returned invalid JSON: " + tail(res->body, 200);
            continue;
        }
        Reply reply;
        if (doc.contains("text") && doc.at("text").is_string()) {
            reply.text = doc.at("text").get<std::string>();
        }
        if (doc.contains("tool_calls") && doc.at("tool_calls").is_array()) {
            for (const json& jc : doc.at("tool_calls")) {
                if (!jc.is_object() || !jc.contains("name") || !jc.at("name").is_string()) {
                    continue;  // skip malformed entries rather than failing the turn
                }
                ToolCall call;
                call.name = jc.at("name").get<std::string>();
                if (jc.contains("args") && jc.at("args").is_object()) call.args = jc.at("args");
                reply.tool_calls.push_back(std::move(call));
            }
        }
        return reply;
    }
    return make_error(ErrorCode::Transport, "chat endpoint unreachable: " + last_error);
}

}  // namespace scout
