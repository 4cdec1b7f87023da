#include "aifnav/bridge/session.hpp"

#include <sstream>

namespace aifnav::bridge {

std::string_view to_string(RunMode m) {
    switch (m) {
        case RunMode::Paused: return "paused";
        case RunMode::Stepping: return "stepping";
        case RunMode::Running: return "running";
    }
    return "?";
}

std::string_view to_string(SessionError::Code c) {
    switch (c) {
        case SessionError::Code::NotFound: return "not_found";
        case SessionError::Code::Busy: return "busy";
        case SessionError::Code::Finished: return "finished";
        case SessionError::Code::Invalid: return "invalid";
    }
    return "?";
}

Session::Session(std::string id, Layout layout, SessionOptions options)
    : id_(std::move(id)),
      options_((options.validate(), std::move(options))),
      episode_(std::move(layout), options_.agent) {
    std::lock_guard lk(exec_);
    emit_locked("created", "");
}

Session::~Session() { pause(); }

Emission Session::emit_locked(const std::string& event, const std::string& description) {
    SnapshotContext ctx;
    ctx.session = id_;
    ctx.sequence = sequence_;
    ctx.run_mode = std::string(to_string(mode()));
    ctx.finished = episode_.agent().steps_taken() >= options_.step_cap;
    ctx.event = event;
    ctx.description = description;
    Emission e{sequence_, std::make_shared<const std::string>(snapshot_document(ctx, episode_.env(), episode_.agent()).dump())};
    ++sequence_;
    {
        std::lock_guard lk(emitted_);
        history_.push_back(e);
        while (history_.size() > kHistory) history_.pop_front();
    }
    emitted_cv_.notify_all();
    return e;
}

std::vector<Emission> Session::advance(std::size_t steps) {
    if (steps == 0) throw SessionError(SessionError::Code::Invalid, "advance: steps must be >= 1");
    {
        std::lock_guard lk(control_);
        if (mode_ != RunMode::Paused) throw SessionError(SessionError::Code::Busy, "session is busy");
        mode_ = RunMode::Stepping;
    }
    struct Release {
        Session& s;
        ~Release() {
            std::lock_guard lk(s.control_);
            s.mode_ = RunMode::Paused;
        }
    } release{*this};

    std::lock_guard lk(exec_);
    const std::size_t taken = episode_.agent().steps_taken();
    if (taken >= options_.step_cap) throw SessionError(SessionError::Code::Finished, "session reached its step cap");
    if (taken + steps > options_.step_cap)
        throw SessionError(SessionError::Code::Finished,
                           "advance would pass the step cap (" + std::to_string(options_.step_cap - taken) + " left)");
    std::vector<Emission> out;
    out.reserve(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        const auto& rec = episode_.step();
        out.push_back(emit_locked("step", std::string(to_string(rec.action))));
    }
    return out;
}

Emission Session::intervene(const InterventionRequest& request) {
    std::lock_guard lk(exec_);
    try {
        episode_.intervene(request.intervention, request.weight.value_or(options_.goal_weight));
    } catch (const std::invalid_argument& e) {
        throw SessionError(SessionError::Code::Invalid, e.what());
    }
    return emit_locked("intervention", describe(request.intervention));
}

void Session::run(std::optional<int> interval_ms) {
    const int interval = interval_ms.value_or(options_.interval_ms);
    if (interval < 1) throw SessionError(SessionError::Code::Invalid, "run: interval_ms must be >= 1");
    std::thread old;
    {
        std::lock_guard lk(control_);
        if (mode_ != RunMode::Paused) throw SessionError(SessionError::Code::Busy, "session is busy");
        old = std::move(runner_);
    }
    if (old.joinable()) old.join();
    if (finished()) throw SessionError(SessionError::Code::Finished, "session reached its step cap");
    std::lock_guard lk(control_);
    if (mode_ != RunMode::Paused) throw SessionError(SessionError::Code::Busy, "session is busy");
    mode_ = RunMode::Running;
    stop_ = false;
    runner_ = std::thread(&Session::runner, this, interval);
}

void Session::runner(int interval_ms) {
    for (;;) {
        {
            std::lock_guard ex(exec_);
            {
                std::lock_guard lk(control_);
                if (stop_) return;
            }
            if (episode_.agent().steps_taken() >= options_.step_cap) break;
            const auto& rec = episode_.step();
            emit_locked("step", std::string(to_string(rec.action)));
        }
        std::unique_lock lk(control_);
        if (wake_.wait_for(lk, std::chrono::milliseconds(interval_ms), [&] { return stop_; })) return;
    }
    std::lock_guard lk(control_);
    mode_ = RunMode::Paused;
}

void Session::pause() {
    std::thread t;
    {
        std::lock_guard lk(control_);
        stop_ = true;
        t = std::move(runner_);
    }
    wake_.notify_all();
    if (t.joinable()) t.join();
    std::lock_guard lk(control_);
    if (mode_ == RunMode::Running) mode_ = RunMode::Paused;
}

RunMode Session::mode() const {
    std::lock_guard lk(control_);
    return mode_;
}

bool Session::finished() const {
    std::lock_guard lk(exec_);
    return episode_.agent().steps_taken() >= options_.step_cap;
}

Emission Session::latest() const {
    std::lock_guard lk(emitted_);
    return history_.back();
}

std::optional<Emission> Session::at(std::uint64_t sequence) const {
    std::lock_guard lk(emitted_);
    if (history_.empty() || sequence < history_.front().sequence || sequence > history_.back().sequence)
        return std::nullopt;
    return history_[sequence - history_.front().sequence];
}

std::vector<Emission> Session::wait_after(std::uint64_t after, std::chrono::milliseconds timeout) const {
    std::unique_lock lk(emitted_);
    emitted_cv_.wait_for(lk, timeout, [&] { return history_.back().sequence > after; });
    std::vector<Emission> out;
    for (const auto& e : history_)
        if (e.sequence > after) out.push_back(e);
    return out;
}

std::string Session::export_records() const {
    std::lock_guard lk(exec_);
    std::ostringstream os;
    for (const auto& r : episode_.agent().records()) os << record_to_json(r).dump() << '\n';
    return os.str();
}

nlohmann::json Session::export_map() const {
    std::lock_guard lk(exec_);
    return episode_.agent().export_map();
}

std::shared_ptr<Session> SessionManager::create(Layout layout, SessionOptions options) {
    std::string id;
    {
        std::lock_guard lk(mu_);
        id = "s" + std::to_string(next_++);
    }
    auto s = std::make_shared<Session>(id, std::move(layout), std::move(options));
    std::lock_guard lk(mu_);
    sessions_.emplace(id, s);
    return s;
}

std::shared_ptr<Session> SessionManager::get(const std::string& id) const {
    std::lock_guard lk(mu_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw SessionError(SessionError::Code::NotFound, "unknown session " + id);
    return it->second;
}

void SessionManager::remove(const std::string& id) {
    std::shared_ptr<Session> s;
    {
        std::lock_guard lk(mu_);
        auto it = sessions_.find(id);
        if (it == sessions_.end()) throw SessionError(SessionError::Code::NotFound, "unknown session " + id);
        s = std::move(it->second);
        sessions_.erase(it);
    }
    s->pause();
}

std::vector<std::string> SessionManager::ids() const {
    std::lock_guard lk(mu_);
    std::vector<std::string> out;
    for (const auto& [id, s] : sessions_) out.push_back(id);
    return out;
}

void SessionManager::pause_all() {
    std::vector<std::shared_ptr<Session>> all;
    {
        std::lock_guard lk(mu_);
        for (const auto& [id, s] : sessions_) all.push_back(s);
    }
    for (auto& s : all) s->pause();
}

}  // namespace aifnav::bridge
