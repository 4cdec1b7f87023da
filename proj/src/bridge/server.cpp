#include "aifnav/bridge/server.hpp"

#include <atomic>

#include <httplib.h>

namespace aifnav::bridge {
namespace {

using nlohmann::json;

constexpr const char* kJson = "application/json";
constexpr int kPoolThreads = 16;
constexpr auto kStreamPoll = std::chrono::milliseconds(500);

int status_of(SessionError::Code c) {
    switch (c) {
        case SessionError::Code::NotFound: return 404;
        case SessionError::Code::Busy: return 409;
        case SessionError::Code::Finished: return 409;
        case SessionError::Code::Invalid: return 400;
    }
    return 500;
}

void send(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), kJson);
}

void fail(httplib::Response& res, int status, const std::string& code, const std::string& message) {
    send(res, status, error_document(code, message));
}

json body_of(const httplib::Request& req) {
    if (req.body.empty()) return json::object();
    return json::parse(req.body);
}

json parsed(const Emission& e) { return json::parse(*e.body); }

// Every handler runs inside this so that errors map to one payload shape.
template <typename F>
httplib::Server::Handler guarded(F f) {
    return [f](const httplib::Request& req, httplib::Response& res) {
        try {
            f(req, res);
        } catch (const SessionError& e) {
            fail(res, status_of(e.code()), std::string(to_string(e.code())), e.what());
        } catch (const json::exception& e) {
            fail(res, 400, "bad_request", e.what());
        } catch (const std::invalid_argument& e) {
            fail(res, 400, "invalid", e.what());
        } catch (const std::exception& e) {
            fail(res, 500, "internal", e.what());
        }
    };
}

std::string sse_frame(const Emission& e) {
    return "id: " + std::to_string(e.sequence) + "\nevent: snapshot\ndata: " + *e.body + "\n\n";
}

}  // namespace

struct Server::Impl {
    httplib::Server http;
    SessionManager sessions;
    std::atomic<bool> closing{false};

    void routes();
};

void Server::Impl::routes() {
    http.new_task_queue = [] { return new httplib::ThreadPool(kPoolThreads); };

    http.Get("/api/v1/environments", guarded([](const httplib::Request&, httplib::Response& res) {
        json envs = json::array();
        for (const auto& name : bundled_layout_names()) envs.push_back(environment_summary(load_environment(name)));
        send(res, 200, {{"schema", kEnvironmentsSchema}, {"environments", std::move(envs)}});
    }));

    http.Post("/api/v1/sessions", guarded([this](const httplib::Request& req, httplib::Response& res) {
        const json body = body_of(req);
        Layout layout;
        if (body.contains("layout")) {
            layout = parse_layout(body["layout"].dump());
        } else if (body.contains("environment") && body["environment"].is_string()) {
            const auto name = body["environment"].get<std::string>();
            if (bundled_layout_text(name) == nullptr) return fail(res, 404, "unknown_environment", name);
            layout = load_environment(name);
        } else {
            return fail(res, 400, "bad_request", "expected environment or layout");
        }
        const SessionOptions options = options_from_json(body.value("config", json::object()));
        auto s = sessions.create(std::move(layout), options);
        send(res, 201,
             {{"schema", kSessionSchema}, {"id", s->id()}, {"config", options_to_json(options)},
              {"snapshot", parsed(s->latest())}});
    }));

    http.Get("/api/v1/sessions", guarded([this](const httplib::Request&, httplib::Response& res) {
        send(res, 200, {{"schema", kSessionSchema}, {"sessions", sessions.ids()}});
    }));

    http.Delete("/api/v1/sessions/:id", guarded([this](const httplib::Request& req, httplib::Response& res) {
        sessions.remove(req.path_params.at("id"));
        send(res, 200, {{"schema", kSessionSchema}, {"deleted", req.path_params.at("id")}});
    }));

    http.Get("/api/v1/sessions/:id/snapshot", guarded([this](const httplib::Request& req, httplib::Response& res) {
        auto s = sessions.get(req.path_params.at("id"));
        Emission e;
        if (req.has_param("sequence")) {
            const auto seq = std::stoull(req.get_param_value("sequence"));
            auto found = s->at(seq);
            if (!found) return fail(res, 404, "not_found", "sequence not retained");
            e = *found;
        } else {
            e = s->latest();
        }
        res.set_content(*e.body, kJson);
    }));

    http.Post("/api/v1/sessions/:id/advance", guarded([this](const httplib::Request& req, httplib::Response& res) {
        auto s = sessions.get(req.path_params.at("id"));
        const json body = body_of(req);
        const json steps = body.value("steps", json(1));
        if (!steps.is_number_integer() || steps.get<long long>() < 1)
            return fail(res, 400, "invalid", "steps must be an integer >= 1");
        json snaps = json::array();
        for (const auto& e : s->advance(steps.get<std::size_t>())) snaps.push_back(parsed(e));
        send(res, 200, {{"schema", kSessionSchema}, {"id", s->id()}, {"snapshots", std::move(snaps)}});
    }));

    http.Post("/api/v1/sessions/:id/run", guarded([this](const httplib::Request& req, httplib::Response& res) {
        auto s = sessions.get(req.path_params.at("id"));
        const json body = body_of(req);
        std::optional<int> interval;
        if (body.contains("interval_ms")) {
            if (!body["interval_ms"].is_number_integer()) return fail(res, 400, "invalid", "interval_ms must be an integer");
            interval = body["interval_ms"].get<int>();
        }
        s->run(interval);
        send(res, 200, {{"schema", kSessionSchema}, {"id", s->id()}, {"run_mode", "running"},
                        {"interval_ms", interval.value_or(s->options().interval_ms)}});
    }));

    http.Post("/api/v1/sessions/:id/pause", guarded([this](const httplib::Request& req, httplib::Response& res) {
        auto s = sessions.get(req.path_params.at("id"));
        s->pause();
        send(res, 200, {{"schema", kSessionSchema}, {"id", s->id()}, {"run_mode", std::string(to_string(s->mode()))},
                        {"sequence", s->latest().sequence}});
    }));

    http.Post("/api/v1/sessions/:id/intervene", guarded([this](const httplib::Request& req, httplib::Response& res) {
        auto s = sessions.get(req.path_params.at("id"));
        const auto request = intervention_from_json(body_of(req));
        const Emission e = s->intervene(request);
        send(res, 200, {{"schema", kSessionSchema}, {"id", s->id()},
                        {"applied", intervention_to_json(request.intervention)}, {"snapshot", parsed(e)}});
    }));

    http.Get("/api/v1/sessions/:id/logs", guarded([this](const httplib::Request& req, httplib::Response& res) {
        auto s = sessions.get(req.path_params.at("id"));
        res.set_content(s->export_records(), "application/x-ndjson");
    }));

    http.Get("/api/v1/sessions/:id/map", guarded([this](const httplib::Request& req, httplib::Response& res) {
        auto s = sessions.get(req.path_params.at("id"));
        send(res, 200, s->export_map());
    }));

    // Server-sent events: one `snapshot` event per emission, id = sequence.
    // ?after=n (or Last-Event-ID) resumes; ?limit=n closes after n events.
    http.Get("/api/v1/sessions/:id/events", guarded([this](const httplib::Request& req, httplib::Response& res) {
        auto s = sessions.get(req.path_params.at("id"));
        std::int64_t after = -1;
        if (req.has_param("after")) after = std::stoll(req.get_param_value("after"));
        else if (req.has_header("Last-Event-ID")) after = std::stoll(req.get_header_value("Last-Event-ID"));
        std::size_t limit = 0;
        if (req.has_param("limit")) limit = std::stoull(req.get_param_value("limit"));
        struct Cursor {
            std::int64_t after;
            std::size_t sent = 0;
        };
        auto cursor = std::make_shared<Cursor>(Cursor{after});
        res.set_header("Cache-Control", "no-cache");
        res.set_chunked_content_provider(
            "text/event-stream", [this, s, cursor, limit](std::size_t, httplib::DataSink& sink) {
                if (closing) {
                    sink.done();
                    return true;
                }
                std::vector<Emission> batch;
                if (cursor->after < 0) {
                    batch.push_back(s->latest());
                } else {
                    batch = s->wait_after(static_cast<std::uint64_t>(cursor->after), kStreamPoll);
                }
                if (batch.empty()) {
                    const std::string keepalive = ": keepalive\n\n";
                    return sink.write(keepalive.data(), keepalive.size());
                }
                for (const auto& e : batch) {
                    const auto frame = sse_frame(e);
                    if (!sink.write(frame.data(), frame.size())) return false;
                    cursor->after = static_cast<std::int64_t>(e.sequence);
                    if (limit && ++cursor->sent >= limit) {
                        sink.done();
                        return true;
                    }
                }
                return true;
            });
    }));
}

Server::Server() : impl_(std::make_unique<Impl>()) { impl_->routes(); }

Server::~Server() { stop(); }

SessionManager& Server::sessions() { return impl_->sessions; }

bool Server::listen(const std::string& host, int port) { return impl_->http.listen(host, port); }

int Server::bind_any(const std::string& host) { return impl_->http.bind_to_any_port(host); }

bool Server::serve() { return impl_->http.listen_after_bind(); }

void Server::stop() {
    impl_->closing = true;
    impl_->sessions.pause_all();
    if (impl_->http.is_running()) impl_->http.stop();
}

bool Server::running() const { return impl_->http.is_running(); }

}  // namespace aifnav::bridge
