#include <sstream>

#include <gtest/gtest.h>

#include "ratshare/io.hpp"

namespace ratshare::io {
namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::EmptyInput;
}

TEST(AccessJsonTest, ParsesBothForms) {
  EXPECT_EQ(parse_access(json::parse(R"({"type":"threshold","n":3,"k":2})")), make_threshold(3, 2));
  const auto g = parse_access(json::parse(R"({"type":"general","n":3,"min_coalitions":[[1,2],[3]]})"));
  EXPECT_EQ(g.min_coalitions(), (std::vector<Coalition>{{1, 2}, {3}}));
  EXPECT_EQ(parse_access(to_json(g)), g);
  EXPECT_EQ(parse_access(to_json(make_threshold(4, 3))), make_threshold(4, 3));
}

TEST(AccessJsonTest, Strictness) {
  EXPECT_EQ(code_of([] { parse_access(json::parse(R"({"type":"threshold","n":3,"k":2,"x":1})")); }), ErrorCode::BadConfig);
  EXPECT_EQ(code_of([] { parse_access(json::parse(R"({"type":"general","n":3,"min_coalitions":[[0]]})")); }),
            ErrorCode::OutOfRangeParticipant);
  EXPECT_EQ(code_of([] { parse_access(json::parse(R"({"type":"weighted","n":3})")); }), ErrorCode::BadConfig);
  EXPECT_EQ(code_of([] { parse_access(json::parse(R"({"type":"threshold","n":3,"k":"2"})")); }), ErrorCode::BadConfig);
}

TEST(GameConfigTest, CommonGood) {
  const auto cfg = parse_game_config(json::parse(R"({
    "access": {"type":"threshold","n":3,"k":2},
    "utilities": {"model":"common_good","N":[5,5,0.5],"c":1},
    "profile": [0.5, 0.5, 1],
    "seed": 7})"));
  const auto& u = std::get<CommonGoodUtilities>(cfg.utilities);
  EXPECT_EQ(u.value(3), 0.5);
  EXPECT_EQ(u.cost(), 1.0);
  ASSERT_TRUE(cfg.profile.has_value());
  EXPECT_EQ((*cfg.profile)[3], 1.0);
  EXPECT_EQ(cfg.seed, 7U);
}

TEST(GameConfigTest, GreedyDefaults) {
  const auto cfg = parse_game_config(json::parse(R"({
    "access": {"type":"threshold","n":4,"k":2},
    "utilities": {"model":"greedy"}})"));
  const auto& u = std::get<GreedyUtilities>(cfg.utilities);
  EXPECT_EQ(u.reward(), 4.0);
  EXPECT_EQ(u.penalty(), 1.0);
}

TEST(GameConfigTest, Rejections) {
  const char* bad[] = {
      R"({"access":{"type":"threshold","n":3,"k":2},"utilities":{"model":"common_good","N":[1,2],"c":1}})",
      R"({"access":{"type":"threshold","n":3,"k":2},"utilities":{"model":"common_good","N":[1,2,3],"c":1},"extra":0})",
      R"({"access":{"type":"threshold","n":3,"k":2},"utilities":{"model":"common_good","N":[1,2,3],"c":1},"profile":[0.5]})",
      R"({"access":{"type":"threshold","n":3,"k":2},"utilities":{"model":"greedy","A":3,"B":1,"C":2}})",
      R"({"utilities":{"model":"greedy"}})",
  };
  for (const char* text : bad) EXPECT_THROW(parse_game_config(json::parse(text)), Error) << text;
  EXPECT_EQ(code_of([] {
              parse_game_config(json::parse(
                  R"({"access":{"type":"threshold","n":2,"k":2},"utilities":{"model":"common_good","N":[1,2],"c":1},"profile":[0.5,2]})"));
            }),
            ErrorCode::BadProbability);
  std::istringstream broken("{not json");
  EXPECT_EQ(code_of([&] { parse_game_config(broken); }), ErrorCode::BadConfig);
}

TEST(SharesCsvTest, WriteThenRead) {
  const PrimeField f(7);
  const auto d = deal_with(FieldElement(f, 3), 2, 3, [](std::uint64_t) { return 2; });
  std::ostringstream out;
  write_shares_csv(out, d.shares);
  EXPECT_EQ(out.str(), "participant,x,y\n1,1,5\n2,2,0\n3,3,2\n");
  std::istringstream in(out.str());
  EXPECT_EQ(read_shares_csv(in, 7), d.shares);
}

TEST(SharesCsvTest, Malformed) {
  for (const char* text : {"", "a,b,c\n1,1,5\n", "participant,x,y\n1,1\n", "participant,x,y\n1,1,9\n",
                           "participant,x,y\n1;1;5\n", "participant,x,y\n"}) {
    std::istringstream in(text);
    EXPECT_THROW(read_shares_csv(in, 7), Error) << text;
  }
}

TEST(SidecarTest, RoundTrip) {
  const ShareParams s{7, 2, 3};
  EXPECT_EQ(to_json(s).dump(), R"({"k":2,"n":3,"p":7})");
  const auto back = parse_share_params(to_json(s));
  EXPECT_EQ(back.p, 7U);
  EXPECT_EQ(back.k, 2);
  EXPECT_THROW(parse_share_params(json::parse(R"({"p":7,"k":2,"n":3,"q":1})")), Error);
}

TEST(ReportJsonTest, EquilibriumKeys) {
  const auto j = to_json(verify_theorem3(make_threshold(3, 2), CommonGoodUtilities({5, 5, 5}, 1)));
  EXPECT_EQ(j.at("brute_force_ne"), json::parse("[[0,0,0],[1,1,0],[1,0,1],[0,1,1]]"));
  EXPECT_EQ(j.at("predicted_ne"), j.at("brute_force_ne"));
  EXPECT_TRUE(j.at("match").get<bool>());
  EXPECT_TRUE(j.at("flags").empty());
}

}  // namespace
}  // namespace ratshare::io
