// Copyright 2026 The revcor Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "revcor/experiment/server.hpp"

#include <httplib.h>

#include <json.hpp>

#include "common/text.hpp"
#include "revcor/error.hpp"

namespace revcor::experiment {
using nlohmann::json;

namespace {

int http_status(Errc code) {
  switch (code) {
    case Errc::not_found: return 404;
    case Errc::already_answered:
    case Errc::out_of_order: return 409;
    case Errc::invalid_argument:
    case Errc::out_of_range:
    case Errc::degenerate: return 400;
    case Errc::io_error: return 500;
  }
  return 500;
}

void send_json(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send_json(res, {{"error", message}}, status);
}

// Runs a handler and turns library errors into JSON error responses.
template <class Fn>
void guarded(httplib::Response& res, Fn fn) {
  try {
    fn();
  } catch (const Error& e) {
    send_error(res, http_status(e.code()), e.what());
  } catch (const json::exception& e) {
    send_error(res, 400, std::string("bad request body: ") + e.what());
  } catch (const std::exception& e) {
    send_error(res, 500, e.what());
  }
}

}  // namespace

struct TrialServer::Impl {
  explicit Impl(SessionStore& s) : store(s) {}
  SessionStore& store;
  httplib::Server http;
};

TrialServer::TrialServer(SessionStore& store) : impl_(std::make_unique<Impl>(store)) {
  auto& http = impl_->http;
  auto& st = impl_->store;

  http.Get(R"(/api/sessions/([^/]+)/trial)", [&st](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const auto view = st.current_trial(req.matches[1]);
      if (!view) {
        send_json(res, {{"done", true}});
        return;
      }
      send_json(res, {{"trial_index", view->trial_index},
                      {"audio_url", view->audio_url},
                      {"options", {view->options[0], view->options[1]}},
                      {"progress", {{"answered", view->answered}, {"total", view->total}}}});
    });
  });

  http.Get(R"(/api/sessions/([^/]+)/status)", [&st](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const auto s = st.status(req.matches[1]);
      send_json(res, {{"status", to_string(s.status)}, {"answered", s.answered}, {"total", s.total}});
    });
  });

  http.Post(R"(/api/sessions/([^/]+)/response)", [&st](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const json body = json::parse(req.body);
      const auto index = body.at("trial_index").get<std::size_t>();
      const auto choice = body.at("choice").get<std::string>();
      const auto rt_ms = body.at("rt_ms").get<double>();
      st.record_response(req.matches[1], index, choice, rt_ms);
      send_json(res, {{"ok", true}});
    });
  });

  http.Get(R"(/api/audio/([^/]+)/(\d+)\.wav)", [&st](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const auto index = detail::parse_index(req.matches[2].str(), "trial index");
      const auto path = st.audio_path(req.matches[1], index);
      res.set_content(detail::read_text_file(path), "audio/wav");
    });
  });
}

TrialServer::~TrialServer() = default;

void TrialServer::mount_static(const std::filesystem::path& root) {
  if (!impl_->http.set_mount_point("/", root.string())) {
    throw Error(Errc::not_found, "static root does not exist: " + root.string());
  }
}

int TrialServer::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->http.bind_to_any_port(host);
    if (bound < 0) throw Error(Errc::io_error, "cannot bind " + host);
    return bound;
  }
  if (!impl_->http.bind_to_port(host, port)) {
    throw Error(Errc::io_error, "cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void TrialServer::listen() { impl_->http.listen_after_bind(); }

void TrialServer::stop() { impl_->http.stop(); }

}  // namespace revcor::experiment
