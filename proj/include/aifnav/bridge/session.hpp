#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "aifnav/bridge/documents.hpp"
#include "aifnav/harness/episode.hpp"

namespace aifnav::bridge {

enum class RunMode { Paused, Stepping, Running };

std::string_view to_string(RunMode m);

class SessionError : public std::runtime_error {
public:
    enum class Code { NotFound, Busy, Finished, Invalid };
    SessionError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Code code() const { return code_; }

private:
    Code code_;
};

std::string_view to_string(SessionError::Code c);

// One emitted snapshot. The body is serialised once and never modified.
struct Emission {
    std::uint64_t sequence = 0;
    std::shared_ptr<const std::string> body;
};

// One agent in one environment. Steps and interventions are serialised on a
// single execution lock; snapshot readers only touch the emission history.
class Session {
public:
    Session(std::string id, Layout layout, SessionOptions options);
    ~Session();

    Session(const Session&) = delete;
    Session& operator=(const Session&) = delete;

    const std::string& id() const { return id_; }
    const SessionOptions& options() const { return options_; }

    // Rejects with Busy while another advance or a run is in flight, and with
    // Finished if the step cap would be exceeded. One emission per step.
    std::vector<Emission> advance(std::size_t steps);

    // Waits for any in-flight step, applies, re-perceives, emits.
    Emission intervene(const InterventionRequest& request);

    // Steps every interval until paused or capped.
    void run(std::optional<int> interval_ms = std::nullopt);
    // Returns once the runner has stopped; nothing is emitted afterwards.
    void pause();

    RunMode mode() const;
    bool finished() const;

    Emission latest() const;
    // Within the retained history only.
    std::optional<Emission> at(std::uint64_t sequence) const;
    // Emissions with sequence > after; waits up to `timeout` if there are none.
    std::vector<Emission> wait_after(std::uint64_t after, std::chrono::milliseconds timeout) const;

    // Step records, one JSON document per line.
    std::string export_records() const;
    nlohmann::json export_map() const;

    static constexpr std::size_t kHistory = 256;

private:
    Emission emit_locked(const std::string& event, const std::string& description);
    void runner(int interval_ms);

    const std::string id_;
    const SessionOptions options_;

    mutable std::mutex exec_;  // guards episode_, sequence_
    Episode episode_;
    std::uint64_t sequence_ = 0;

    mutable std::mutex control_;  // guards mode_, runner_
    RunMode mode_ = RunMode::Paused;
    bool stop_ = false;
    std::condition_variable wake_;
    std::thread runner_;

    mutable std::mutex emitted_;
    mutable std::condition_variable emitted_cv_;
    std::deque<Emission> history_;
};

class SessionManager {
public:
    std::shared_ptr<Session> create(Layout layout, SessionOptions options);
    std::shared_ptr<Session> get(const std::string& id) const;  // throws NotFound
    void remove(const std::string& id);
    std::vector<std::string> ids() const;
    // Pauses every session; used on shutdown.
    void pause_all();

private:
    mutable std::mutex mu_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::uint64_t next_ = 1;
};

}  // namespace aifnav::bridge
