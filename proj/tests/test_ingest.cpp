#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>
#include <string>

#include <json.hpp>

#include "moveprint/ingest.hpp"
#include "support/builders.hpp"

using namespace moveprint;

namespace {

ParseReport parse_jsonl(const std::string& text) {
  std::istringstream in(text);
  return parse_event_log(in, LogFormat::Jsonl);
}

ParseReport parse_csv(const std::string& text) {
  std::istringstream in(text);
  return parse_event_log(in, LogFormat::Csv);
}

std::string line(const std::string& match, int period, const std::string& t,
                 const std::string& team, const std::string& player,
                 const std::string& kind, double x, double y,
                 bool outcome = true, const std::string& venue = "") {
  std::string l = "{\"kind\":\"" + kind + "\",\"match_id\":\"" + match +
                  "\",\"outcome\":" + (outcome ? "true" : "false") +
                  ",\"period\":" + std::to_string(period) + ",\"player\":\"" +
                  player + "\"";
  if (!t.empty()) l += ",\"t\":" + t;
  l += ",\"team\":\"" + team + "\"";
  if (!venue.empty()) l += ",\"venue\":\"" + venue + "\"";
  l += ",\"x\":" + std::to_string(x) + ",\"y\":" + std::to_string(y) + "}";
  return l;
}

}  // namespace

TEST_CASE("jsonl rows parse into events") {
  const std::string text = line("m01", 1, "10", "tA", "p1", "pass", 30.5, 40.25) + "\n" +
                           line("m01", 1, "15", "tB", "p2", "shot", 90.0, 50.0, false) + "\n";
  const auto report = parse_jsonl(text);
  REQUIRE(report.rejects.empty());
  REQUIRE(report.matches.size() == 1);
  const auto& m = report.matches[0];
  CHECK(m.match_id == "m01");
  REQUIRE(m.events.size() == 2);
  CHECK(m.events[0].kind == EventKind::Pass);
  CHECK(m.events[0].timestamp_s == 10);
  CHECK(m.events[0].x_pct == doctest::Approx(30.5));
  CHECK(m.events[1].kind == EventKind::Shot);
  CHECK(m.events[1].outcome == false);
  CHECK(report.rows_total == 2);
}

TEST_CASE("malformed jsonl rows are rejected with a reason") {
  std::string text;
  for (int i = 0; i < 40; ++i)
    text += line("m01", 1, std::to_string(i + 1), "tA", "p1", "pass", 50, 50) + "\n";
  text += "{not json}\n";
  text += "{\"match_id\":\"m01\",\"period\":1,\"t\":4,\"team\":\"tA\",\"player\":\"p1\",\"x\":1,\"y\":1}\n";
  text += "{\"kind\":\"pass\",\"match_id\":\"m01\",\"period\":1,\"t\":\"soon\",\"team\":\"tA\",\"player\":\"p1\",\"x\":1,\"y\":1}\n";

  const auto report = parse_jsonl(text);
  REQUIRE(report.rejects.size() == 3);
  CHECK(report.rejects[0].reason == "invalid JSON");
  CHECK(report.rejects[0].line_no == 41);
  CHECK(report.rejects[1].reason.find("missing field") != std::string::npos);
  CHECK(report.rejects[2].reason.find("wrong type") != std::string::npos);
}

TEST_CASE("field validation rejects out-of-domain events") {
  std::string good;
  for (int i = 0; i < 60; ++i)
    good += line("m01", 1, std::to_string(i + 1), "tA", "p1", "pass", 50, 50) + "\n";

  SUBCASE("empty player id") {
    const auto report = parse_jsonl(good + line("m01", 1, "99", "tA", "", "pass", 50, 50) + "\n");
    REQUIRE(report.rejects.size() == 1);
    CHECK(report.rejects[0].reason.find("empty id") != std::string::npos);
  }
  SUBCASE("invalid period") {
    const auto report = parse_jsonl(good + line("m01", 3, "99", "tA", "p1", "pass", 50, 50) + "\n");
    REQUIRE(report.rejects.size() == 1);
    CHECK(report.rejects[0].reason == "invalid period");
  }
  SUBCASE("negative timestamp") {
    const auto report = parse_jsonl(good + line("m01", 1, "-5", "tA", "p1", "pass", 50, 50) + "\n");
    REQUIRE(report.rejects.size() == 1);
    CHECK(report.rejects[0].reason == "negative timestamp");
  }
  SUBCASE("missing timestamp on a non-reception") {
    const auto report = parse_jsonl(good + line("m01", 1, "", "tA", "p1", "pass", 50, 50) + "\n");
    REQUIRE(report.rejects.size() == 1);
    CHECK(report.rejects[0].reason == "missing timestamp");
  }
  SUBCASE("missing timestamp on a reception is accepted") {
    const auto report = parse_jsonl(good + line("m01", 1, "", "tA", "p1", "reception", 50, 50) + "\n");
    CHECK(report.rejects.empty());
    REQUIRE(report.matches.size() == 1);
    bool found = false;
    for (const auto& e : report.matches[0].events)
      if (e.kind == EventKind::Reception && !e.timestamp_s.has_value()) found = true;
    CHECK(found);
  }
  SUBCASE("coordinates out of range") {
    const auto report = parse_jsonl(good + line("m01", 1, "99", "tA", "p1", "pass", 100.5, 50) + "\n");
    REQUIRE(report.rejects.size() == 1);
    CHECK(report.rejects[0].reason == "coordinate out of range");
  }
  SUBCASE("unknown kind maps to other instead of rejecting") {
    const auto report = parse_jsonl(good + line("m01", 1, "99", "tA", "p1", "rabona", 50, 50) + "\n");
    CHECK(report.rejects.empty());
    CHECK(report.matches[0].events.back().kind == EventKind::Other);
  }
}

TEST_CASE("a match keeps two teams and rejects rows from a third") {
  std::string text;
  for (int i = 0; i < 30; ++i)
    text += line("m01", 1, std::to_string(i + 1), "tB", "p1", "pass", 50, 50) + "\n";
  for (int i = 0; i < 30; ++i)
    text += line("m01", 1, std::to_string(i + 31), "tA", "p2", "pass", 50, 50) + "\n";
  text += line("m01", 1, "99", "tC", "p3", "pass", 50, 50) + "\n";

  const auto report = parse_jsonl(text);
  REQUIRE(report.matches.size() == 1);
  CHECK(report.matches[0].home_team_id == "tA");
  CHECK(report.matches[0].away_team_id == "tB");
  REQUIRE(report.rejects.size() == 1);
  CHECK(report.rejects[0].reason.find("more than two teams") != std::string::npos);
}

TEST_CASE("match venue is the smallest venue id seen") {
  std::string text;
  for (int i = 0; i < 10; ++i)
    text += line("m01", 1, std::to_string(i + 1), "tA", "p1", "pass", 50, 50, true,
                 i == 3 ? "zeta" : (i == 7 ? "alpha" : "")) + "\n";
  const auto report = parse_jsonl(text);
  REQUIRE(report.matches.size() == 1);
  CHECK(report.matches[0].venue_id == "alpha");
}

TEST_CASE("over ten percent rejected rows aborts the parse") {
  std::string text = "{bad}\n";
  for (int i = 0; i < 5; ++i)
    text += line("m01", 1, std::to_string(i + 1), "tA", "p1", "pass", 50, 50) + "\n";
  CHECK_THROWS_AS(parse_jsonl(text), std::runtime_error);
}

TEST_CASE("csv input parses the same events as jsonl") {
  const std::string csv_text =
      "match_id,period,t,team,player,kind,x,y,outcome,venue\n"
      "m01,1,10,tA,p1,pass,30.5,40.25,true,\n"
      "m01,1,15,tB,p2,shot,90.0,50.0,false,\n";
  const std::string jsonl_text =
      line("m01", 1, "10", "tA", "p1", "pass", 30.5, 40.25) + "\n" +
      line("m01", 1, "15", "tB", "p2", "shot", 90.0, 50.0, false) + "\n";

  const auto a = parse_csv(csv_text);
  const auto b = parse_jsonl(jsonl_text);
  REQUIRE(a.rejects.empty());
  REQUIRE(a.matches.size() == 1);
  CHECK(canonical_jsonl(a.matches) == canonical_jsonl(b.matches));
}

TEST_CASE("csv header must carry the required columns") {
  std::istringstream in("match_id,period,team,player,kind,x,y\nm01,1,tA,p1,pass,1,1\n");
  CHECK_THROWS_AS(parse_event_log(in, LogFormat::Csv), std::runtime_error);
}

TEST_CASE("canonical order is period then carried-forward timestamp") {
  Match m;
  m.match_id = "m01";
  m.events.push_back(testdata::ev("m01", 1, 20, "tA", "p1", EventKind::Pass));
  m.events.push_back(testdata::ev_untimed("m01", 1, "tA", "p2", EventKind::Reception));
  m.events.push_back(testdata::ev("m01", 1, 5, "tA", "p3", EventKind::Pass));
  m.events.push_back(testdata::ev("m01", 2, 1, "tA", "p4", EventKind::Pass));
  m.events.push_back(testdata::ev("m01", 1, 20, "tA", "p5", EventKind::Pass));

  canonicalize_match(m);
  REQUIRE(m.events.size() == 5);
  CHECK(m.events[0].player_id == "p3");
  CHECK(m.events[1].player_id == "p1");   // t=20, input order before p5
  CHECK(m.events[2].player_id == "p2");   // unstamped, rides at t=20 after p1
  CHECK(m.events[3].player_id == "p5");
  CHECK(m.events[4].player_id == "p4");   // period 2 last
}

TEST_CASE("unstamped reception before any stamped event sorts first") {
  Match m;
  m.match_id = "m01";
  m.events.push_back(testdata::ev("m01", 1, 8, "tA", "p1", EventKind::Pass));
  m.events.push_back(testdata::ev_untimed("m01", 1, "tA", "p0", EventKind::Reception));
  std::swap(m.events[0], m.events[1]);  // unstamped first in input order

  canonicalize_match(m);
  CHECK(m.events[0].player_id == "p0");
  CHECK(m.events[1].player_id == "p1");
}

TEST_CASE("canonical jsonl is alphabetical, omits absent fields, and is idempotent") {
  const std::string text =
      line("m01", 1, "10", "tA", "p1", "pass", 30.5, 40.0, true, "elche") + "\n" +
      line("m01", 1, "", "tA", "p2", "reception", 31.0, 41.0) + "\n" +
      line("m02", 1, "3", "tA", "p1", "shot", 80.0, 50.0) + "\n";
  const auto report = parse_jsonl(text);
  const std::string out = canonical_jsonl(report.matches);

  std::istringstream lines(out);
  std::string first, second, third;
  std::getline(lines, first);
  std::getline(lines, second);
  std::getline(lines, third);

  const auto j1 = nlohmann::json::parse(first);
  CHECK(j1["kind"] == "pass");
  CHECK(j1["t"] == 10);
  CHECK(j1["venue"] == "elche");
  const auto j2 = nlohmann::json::parse(second);
  CHECK_FALSE(j2.contains("t"));
  CHECK(j2["venue"] == "elche");  // match venue is stamped on every event
  const auto j3 = nlohmann::json::parse(third);
  CHECK_FALSE(j3.contains("venue"));

  std::istringstream again(out);
  const auto report2 = parse_event_log(again, LogFormat::Jsonl);
  CHECK(canonical_jsonl(report2.matches) == out);
}

TEST_CASE("venue registry validates dimensions and falls back to standard") {
  std::istringstream in("venue_id,length_m,width_m\nelche,108,70\nrayo,100,65\n");
  const auto registry = VenueRegistry::load_csv(in);
  CHECK(registry.size() == 2);

  const Venue elche = registry.lookup("elche");
  CHECK(elche.length_m == 108.0);
  CHECK(elche.width_m == 70.0);

  bool found = true;
  const Venue unknown = registry.lookup("nowhere", found);
  CHECK_FALSE(found);
  CHECK(unknown.length_m == kStandardPitchLength);
  CHECK(unknown.width_m == kStandardPitchWidth);

  std::istringstream bad_length("venue_id,length_m,width_m\nhuge,130,70\n");
  CHECK_THROWS_AS(VenueRegistry::load_csv(bad_length), std::runtime_error);
  std::istringstream bad_aspect("venue_id,length_m,width_m\nsquare,90,90\n");
  CHECK_THROWS_AS(VenueRegistry::load_csv(bad_aspect), std::runtime_error);
}

TEST_CASE("matches come back sorted by id across interleaved input") {
  std::string text;
  text += line("m02", 1, "1", "tA", "p1", "pass", 50, 50) + "\n";
  text += line("m01", 1, "1", "tC", "p2", "pass", 50, 50) + "\n";
  text += line("m02", 1, "2", "tA", "p1", "pass", 50, 50) + "\n";
  text += line("m01", 1, "2", "tC", "p2", "pass", 50, 50) + "\n";
  const auto report = parse_jsonl(text);
  REQUIRE(report.matches.size() == 2);
  CHECK(report.matches[0].match_id == "m01");
  CHECK(report.matches[1].match_id == "m02");
  CHECK(report.matches[0].events.size() == 2);
}
