#include <atomic>
#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>

#include "aifnav/bridge/server.hpp"

using namespace aifnav;
using namespace aifnav::bridge;
using nlohmann::json;
using namespace std::chrono_literals;

namespace {

SessionOptions quick(std::size_t cap = 1000) {
    SessionOptions o;
    o.agent.planner.lookahead = 3;
    o.step_cap = cap;
    return o;
}

json doc(const Emission& e) { return json::parse(*e.body); }

SessionError::Code code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const SessionError& e) {
        return e.code();
    }
    ADD_FAILURE() << "no SessionError thrown";
    return SessionError::Code::Invalid;
}

}  // namespace

TEST(Documents, OptionsParseValidateAndRoundTrip) {
    const auto o = options_from_json({{"gamma", 4.0}, {"lookahead", 2}, {"strategy", "exhaustive"}, {"seed", 9}});
    EXPECT_EQ(o.agent.planner.gamma, 4.0);
    EXPECT_EQ(o.agent.planner.lookahead, 2);
    EXPECT_EQ(o.agent.planner.strategy, PolicyStrategy::Exhaustive);
    EXPECT_EQ(o.interval_ms, 250);
    const auto back = options_from_json(options_to_json(o));
    EXPECT_EQ(options_to_json(back), options_to_json(o));

    EXPECT_THROW(options_from_json({{"gamma", 0.0}}), std::invalid_argument);
    EXPECT_THROW(options_from_json({{"gamma", -2.0}}), std::invalid_argument);
    EXPECT_THROW(options_from_json({{"gamma", "high"}}), std::invalid_argument);
    EXPECT_THROW(options_from_json({{"lookahead", 0}}), std::invalid_argument);
    EXPECT_THROW(options_from_json({{"lookahead", 1.5}}), std::invalid_argument);
    EXPECT_THROW(options_from_json({{"seed", -1}}), std::invalid_argument);
    EXPECT_THROW(options_from_json({{"step_cap", 0}}), std::invalid_argument);
    EXPECT_THROW(options_from_json({{"interval_ms", 0}}), std::invalid_argument);
    EXPECT_THROW(options_from_json({{"colour_blind", true}}), std::invalid_argument);
    EXPECT_THROW(options_from_json(json::array()), std::invalid_argument);
}

TEST(Documents, InterventionsParseAndRoundTrip) {
    const json block{{"type", "block_door"}, {"door", {{1, 0}, {0, 0}}}};
    const auto r = intervention_from_json(block);
    ASSERT_TRUE(std::holds_alternative<BlockDoor>(r.intervention));
    EXPECT_EQ(std::get<BlockDoor>(r.intervention).door, (Door{{0, 0}, {1, 0}}));
    EXPECT_EQ(intervention_to_json(r.intervention), (json{{"type", "block_door"}, {"door", {{0, 0}, {1, 0}}}}));

    for (const json& j : {json{{"type", "unblock_door"}, {"door", {{0, 0}, {0, 1}}}},
                          json{{"type", "kidnap"}, {"room", {3, 2}}}, json{{"type", "set_goal"}, {"colour", 9}},
                          json{{"type", "clear_goal"}}})
        EXPECT_EQ(intervention_to_json(intervention_from_json(j).intervention), j);

    EXPECT_EQ(intervention_from_json({{"type", "set_goal"}, {"colour", 9}, {"weight", 3.0}}).weight, 3.0);
    EXPECT_THROW(intervention_from_json({{"type", "set_goal"}, {"colour", 9}, {"weight", -1.0}}), std::invalid_argument);
    EXPECT_THROW(intervention_from_json({{"type", "set_goal"}}), std::invalid_argument);
    EXPECT_THROW(intervention_from_json({{"type", "teleport"}}), std::invalid_argument);
    EXPECT_THROW(intervention_from_json({{"type", "kidnap"}, {"room", {1}}}), std::invalid_argument);
    EXPECT_THROW(intervention_from_json(json::object()), std::invalid_argument);
}

TEST(Session, CreatedSnapshotIsSequenceZeroWithTwoByTwoModel) {
    Session s("x", load_environment("T_maze_alias"), SessionOptions{});
    const auto e = s.latest();
    EXPECT_EQ(e.sequence, 0u);
    const auto d = doc(e);
    EXPECT_EQ(d["schema"], kSnapshotSchema);
    EXPECT_EQ(d["event"]["kind"], "created");
    EXPECT_EQ(d["run_mode"], "paused");
    EXPECT_EQ(d["steps"], 0);
    EXPECT_EQ(d["model"]["state_capacity"], 2);
    EXPECT_EQ(d["model"]["observation_capacity"], 2);
    EXPECT_EQ(d["grid"]["agent"], json({3, 2}));
    EXPECT_TRUE(d["decision"].is_null());
    EXPECT_TRUE(d["last_record"].is_null());
    double total = 0.0;
    for (const auto& st : d["belief"]["states"]) total += st["p"].get<double>();
    EXPECT_NEAR(total, 1.0, 1e-9);
    EXPECT_EQ(s.mode(), RunMode::Paused);
}

TEST(Session, AdvanceEmitsOneSnapshotPerStep) {
    Session s("x", load_environment("3x3"), quick());
    auto out = s.advance(1);
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out[0].sequence, 1u);
    out = s.advance(4);
    ASSERT_EQ(out.size(), 4u);
    EXPECT_EQ(out.back().sequence, 5u);
    EXPECT_EQ(s.latest().sequence, 5u);
    const auto d = doc(s.latest());
    EXPECT_EQ(d["steps"], 5);
    EXPECT_EQ(d["event"]["kind"], "step");
    ASSERT_FALSE(d["decision"].is_null());
    double total = 0.0;
    for (const auto& p : d["decision"]["policies"]) total += p["p"].get<double>();
    EXPECT_NEAR(total, 1.0, 1e-9);
    EXPECT_EQ(d["decision"]["policies"].size(), 37u);
    EXPECT_EQ(code_of([&] { s.advance(0); }), SessionError::Code::Invalid);
    EXPECT_EQ(s.export_records().size() > 0, true);
    std::size_t lines = 0;
    for (char c : s.export_records()) lines += c == '\n';
    EXPECT_EQ(lines, 5u);
}

TEST(Session, ConcurrentAdvanceIsRejected) {
    auto options = quick();
    options.agent.planner.lookahead = 10;
    Session s("x", load_environment("4x4"), options);
    std::thread worker([&] { s.advance(60); });
    while (s.mode() != RunMode::Stepping) std::this_thread::yield();
    EXPECT_EQ(code_of([&] { s.advance(1); }), SessionError::Code::Busy);
    EXPECT_EQ(code_of([&] { s.run(10); }), SessionError::Code::Busy);
    worker.join();
    EXPECT_EQ(s.latest().sequence, 60u);
    EXPECT_EQ(s.mode(), RunMode::Paused);
}

TEST(Session, RunThenPauseStopsEmissions) {
    Session s("x", load_environment("3x3"), quick());
    s.run(5);
    EXPECT_EQ(s.mode(), RunMode::Running);
    EXPECT_EQ(code_of([&] { s.advance(1); }), SessionError::Code::Busy);
    while (s.latest().sequence < 3) std::this_thread::sleep_for(1ms);
    s.pause();
    EXPECT_EQ(s.mode(), RunMode::Paused);
    const auto seq = s.latest().sequence;
    std::this_thread::sleep_for(60ms);
    EXPECT_EQ(s.latest().sequence, seq);
    // Paused sessions step again on request.
    EXPECT_EQ(s.advance(1).front().sequence, seq + 1);
    EXPECT_EQ(code_of([&] { s.run(0); }), SessionError::Code::Invalid);
}

TEST(Session, RunStopsAtTheCap) {
    Session s("x", load_environment("3x3"), quick(4));
    s.run(1);
    const auto got = s.wait_after(3, 5000ms);
    ASSERT_FALSE(got.empty());
    while (s.mode() != RunMode::Paused) std::this_thread::sleep_for(1ms);
    EXPECT_EQ(s.latest().sequence, 4u);
    EXPECT_TRUE(doc(s.latest())["finished"].get<bool>());
    EXPECT_EQ(code_of([&] { s.run(1); }), SessionError::Code::Finished);
}

TEST(Session, FinishedSessionRejectsAdvanceWithoutChange) {
    Session s("x", load_environment("3x3"), quick(3));
    EXPECT_EQ(code_of([&] { s.advance(4); }), SessionError::Code::Finished);
    EXPECT_EQ(s.latest().sequence, 0u);
    s.advance(3);
    EXPECT_TRUE(s.finished());
    const auto before = *s.latest().body;
    const auto records = s.export_records();
    EXPECT_EQ(code_of([&] { s.advance(1); }), SessionError::Code::Finished);
    EXPECT_EQ(*s.latest().body, before);
    EXPECT_EQ(s.export_records(), records);
    EXPECT_EQ(s.mode(), RunMode::Paused);
}

TEST(Session, EmissionsAreImmutableAndSharedByReaders) {
    Session s("x", load_environment("3x3"), quick());
    s.advance(2);
    const auto first = s.at(1);
    ASSERT_TRUE(first);
    const std::string copy = *first->body;
    s.advance(3);
    s.intervene({KidnapTo{{0, 0}}, std::nullopt});
    EXPECT_EQ(*s.at(1)->body, copy);
    EXPECT_EQ(s.at(1)->body.get(), first->body.get());

    std::vector<std::string> seen(8);
    std::vector<std::thread> readers;
    for (std::size_t i = 0; i < seen.size(); ++i) readers.emplace_back([&, i] { seen[i] = *s.at(2)->body; });
    for (auto& t : readers) t.join();
    for (const auto& b : seen) EXPECT_EQ(b, seen.front());
    EXPECT_FALSE(s.at(99));
}

TEST(Session, InterventionsApplyBetweenSteps) {
    auto options = quick();
    options.agent.planner.lookahead = 4;
    Session s("x", load_environment("T_maze_alias"), options);
    // Climb the stem into the bar, then return the agent to the stem bottom.
    for (int t = 0; t < 60 && doc(s.latest())["grid"]["agent"][0] != 0; ++t) s.advance(1);
    ASSERT_EQ(doc(s.latest())["grid"]["agent"][0], 0);
    const auto seq = s.latest().sequence;
    const auto e = s.intervene({KidnapTo{{3, 2}}, std::nullopt});
    EXPECT_EQ(e.sequence, seq + 1);
    const auto d = doc(e);
    EXPECT_EQ(d["event"]["kind"], "intervention");
    EXPECT_EQ(d["event"]["description"], "KidnapTo (3,2)");
    EXPECT_EQ(d["grid"]["agent"], json({3, 2}));
    EXPECT_EQ(d["belief"]["mode"], "Lost");
    EXPECT_LT(d["belief"]["confidence"].get<double>(), 0.7);
    EXPECT_TRUE(d["last_record"]["idle"].get<bool>());

    const auto g = doc(s.intervene({SetGoal{9}, std::nullopt}));
    EXPECT_EQ(g["preference"]["goal_colour"], 9);
    EXPECT_EQ(g["preference"]["utility_weight"], 2.0);
    const auto after = doc(s.advance(1).front());
    bool utility = false;
    for (const auto& p : after["decision"]["policies"]) utility = utility || p["utility"].get<double>() != 0.0;
    EXPECT_TRUE(utility);

    EXPECT_EQ(code_of([&] { s.intervene({KidnapTo{{1, 0}}, std::nullopt}); }), SessionError::Code::Invalid);
    EXPECT_EQ(code_of([&] { s.intervene({BlockDoor{{{0, 0}, {1, 0}}}, std::nullopt}); }),
              SessionError::Code::Invalid);
    EXPECT_EQ(code_of([&] { s.intervene({SetGoal{77}, std::nullopt}); }), SessionError::Code::Invalid);
}

TEST(SessionManager, CreatesFindsAndRemoves) {
    SessionManager m;
    auto a = m.create(load_environment("3x3"), quick());
    auto b = m.create(load_environment("4x4"), quick());
    EXPECT_EQ(a->id(), "s1");
    EXPECT_EQ(b->id(), "s2");
    EXPECT_EQ(m.ids(), (std::vector<std::string>{"s1", "s2"}));
    EXPECT_EQ(m.get("s2").get(), b.get());
    m.remove("s1");
    EXPECT_EQ(code_of([&] { m.get("s1"); }), SessionError::Code::NotFound);
    EXPECT_EQ(code_of([&] { m.remove("s9"); }), SessionError::Code::NotFound);
    auto bad = quick();
    bad.agent.planner.gamma = 0.0;
    EXPECT_THROW(m.create(load_environment("3x3"), bad), std::invalid_argument);
}

class BridgeHttp : public ::testing::Test {
protected:
    void SetUp() override {
        port_ = server_.bind_any("127.0.0.1");
        ASSERT_GT(port_, 0);
        thread_ = std::thread([this] { server_.serve(); });
        while (!server_.running()) std::this_thread::sleep_for(1ms);
    }
    void TearDown() override {
        server_.stop();
        thread_.join();
    }
    httplib::Client client() {
        httplib::Client c("127.0.0.1", port_);
        c.set_read_timeout(10, 0);
        return c;
    }
    json post(const std::string& path, const json& body, int expect) {
        auto c = client();
        auto res = c.Post(path, body.dump(), "application/json");
        EXPECT_TRUE(res);
        if (!res) return {};
        EXPECT_EQ(res->status, expect) << path << " " << res->body;
        return json::parse(res->body);
    }
    json get(const std::string& path, int expect) {
        auto c = client();
        auto res = c.Get(path);
        EXPECT_TRUE(res);
        if (!res) return {};
        EXPECT_EQ(res->status, expect) << path << " " << res->body;
        return json::parse(res->body);
    }

    Server server_;
    int port_ = 0;
    std::thread thread_;
};

TEST_F(BridgeHttp, ListsEnvironments) {
    const auto d = get("/api/v1/environments", 200);
    EXPECT_EQ(d["schema"], kEnvironmentsSchema);
    ASSERT_EQ(d["environments"].size(), 8u);
    EXPECT_EQ(d["environments"][0]["name"], "3x3");
    EXPECT_EQ(d["environments"][0]["oracle_coverage"], 11);
}

TEST_F(BridgeHttp, SessionLifecycle) {
    const auto created =
        post("/api/v1/sessions", {{"environment", "T_maze_alias"}, {"config", {{"lookahead", 3}}}}, 201);
    EXPECT_EQ(created["schema"], kSessionSchema);
    const std::string id = created["id"];
    EXPECT_EQ(created["snapshot"]["sequence"], 0);
    EXPECT_EQ(created["config"]["lookahead"], 3);
    EXPECT_EQ(created["config"]["interval_ms"], 250);
    const std::string base = "/api/v1/sessions/" + id;

    const auto adv = post(base + "/advance", {{"steps", 2}}, 200);
    ASSERT_EQ(adv["snapshots"].size(), 2u);
    EXPECT_EQ(adv["snapshots"][1]["sequence"], 2);
    EXPECT_EQ(get(base + "/snapshot", 200)["sequence"], 2);
    EXPECT_EQ(get(base + "/snapshot?sequence=1", 200), adv["snapshots"][0]);
    get(base + "/snapshot?sequence=50", 404);
    post(base + "/advance", {{"steps", 0}}, 400);

    const auto iv = post(base + "/intervene", {{"type", "set_goal"}, {"colour", 9}}, 200);
    EXPECT_EQ(iv["applied"]["type"], "set_goal");
    EXPECT_EQ(iv["snapshot"]["sequence"], 3);
    const auto bad = post(base + "/intervene", {{"type", "kidnap"}, {"room", {1, 0}}}, 400);
    EXPECT_EQ(bad["schema"], kErrorSchema);
    EXPECT_EQ(bad["error"]["code"], "invalid");

    const auto map = get(base + "/map", 200);
    EXPECT_EQ(map["schema"], "aifnav.map/1");

    auto c = client();
    auto logs = c.Get(base + "/logs");
    ASSERT_TRUE(logs);
    EXPECT_EQ(logs->get_header_value("Content-Type"), "application/x-ndjson");
    std::size_t lines = 0;
    for (char ch : logs->body) lines += ch == '\n';
    EXPECT_EQ(lines, 2u);

    EXPECT_EQ(get("/api/v1/sessions", 200)["sessions"], json({id}));
    auto del = c.Delete(base);
    ASSERT_TRUE(del);
    EXPECT_EQ(del->status, 200);
    get(base + "/snapshot", 404);
}

TEST_F(BridgeHttp, RunPauseAndBusy) {
    const std::string id = post("/api/v1/sessions", {{"environment", "3x3"}, {"config", {{"lookahead", 3}}}}, 201)["id"];
    const std::string base = "/api/v1/sessions/" + id;
    EXPECT_EQ(post(base + "/run", {{"interval_ms", 5}}, 200)["run_mode"], "running");
    const auto busy = post(base + "/advance", {{"steps", 1}}, 409);
    EXPECT_EQ(busy["error"]["code"], "busy");
    post(base + "/run", json::object(), 409);
    std::this_thread::sleep_for(50ms);
    const auto paused = post(base + "/pause", json::object(), 200);
    EXPECT_EQ(paused["run_mode"], "paused");
    const auto seq = paused["sequence"].get<std::uint64_t>();
    std::this_thread::sleep_for(50ms);
    EXPECT_EQ(get(base + "/snapshot", 200)["sequence"], seq);
}

TEST_F(BridgeHttp, RejectsBadRequests) {
    EXPECT_EQ(post("/api/v1/sessions", {{"environment", "5x5"}}, 404)["error"]["code"], "unknown_environment");
    EXPECT_EQ(post("/api/v1/sessions", {{"environment", "3x3"}, {"config", {{"gamma", 0}}}}, 400)["error"]["code"],
              "invalid");
    post("/api/v1/sessions", json::object(), 400);
    post("/api/v1/sessions/s404/advance", {{"steps", 1}}, 404);

    auto c = client();
    auto res = c.Post("/api/v1/sessions", "{not json", "application/json");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 400);
    EXPECT_EQ(json::parse(res->body)["error"]["code"], "bad_request");
}

TEST_F(BridgeHttp, InlineLayoutAndFinishedSession) {
    const json layout = json::parse(layout_to_text(load_environment("T_maze")));
    json custom = layout;
    custom["name"] = "custom";
    const auto created = post("/api/v1/sessions", {{"layout", custom}, {"config", {{"step_cap", 2}, {"lookahead", 2}}}}, 201);
    EXPECT_EQ(created["snapshot"]["grid"]["name"], "custom");
    const std::string base = "/api/v1/sessions/" + created["id"].get<std::string>();
    post(base + "/advance", {{"steps", 2}}, 200);
    EXPECT_EQ(post(base + "/advance", {{"steps", 1}}, 409)["error"]["code"], "finished");
    EXPECT_EQ(get(base + "/snapshot", 200)["sequence"], 2);
    json broken = layout;
    broken["start"] = {1, 0};
    post("/api/v1/sessions", {{"layout", broken}}, 400);
}

TEST_F(BridgeHttp, EventStreamDeliversSnapshotsInOrder) {
    const std::string id = post("/api/v1/sessions", {{"environment", "3x3"}, {"config", {{"lookahead", 3}}}}, 201)["id"];
    const std::string base = "/api/v1/sessions/" + id;
    post(base + "/advance", {{"steps", 3}}, 200);

    auto c = client();
    std::string body;
    auto res = c.Get(base + "/events?after=0&limit=3", [&](const char* data, std::size_t n) {
        body.append(data, n);
        return true;
    });
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 200);
    EXPECT_EQ(res->get_header_value("Content-Type"), "text/event-stream");
    std::vector<std::uint64_t> ids;
    std::size_t pos = 0;
    while ((pos = body.find("id: ", pos)) != std::string::npos) {
        ids.push_back(std::stoull(body.substr(pos + 4)));
        const auto data = body.find("data: ", pos);
        const auto end = body.find("\n\n", data);
        const auto snap = json::parse(body.substr(data + 6, end - data - 6));
        EXPECT_EQ(snap["sequence"], ids.back());
        pos = end;
    }
    EXPECT_EQ(ids, (std::vector<std::uint64_t>{1, 2, 3}));
    EXPECT_NE(body.find("event: snapshot"), std::string::npos);

    // Without a cursor the stream opens with the latest snapshot, then follows.
    std::string live;
    std::thread stepper([&] {
        std::this_thread::sleep_for(100ms);
        post(base + "/advance", {{"steps", 1}}, 200);
    });
    auto res2 = client().Get(base + "/events?limit=2", [&](const char* data, std::size_t n) {
        live.append(data, n);
        return true;
    });
    stepper.join();
    ASSERT_TRUE(res2);
    EXPECT_NE(live.find("id: 3\n"), std::string::npos);
    EXPECT_NE(live.find("id: 4\n"), std::string::npos);
}
