#include <fstream>
#include <random>
#include <sstream>

#include "askew/ingest.hpp"
#include "doctest.h"

using namespace askew;

TEST_CASE("parse_tweets maps a valid record field by field") {
  std::istringstream in(
      R"({"tweet_id":"t1","author":"u1","recipients":["u2"],"timestamp":100,"text":"hi","kind":"reply"})");
  const ParsedTweets p = parse_tweets(in);
  REQUIRE(p.records.size() == 1);
  const TweetRecord& t = p.records[0];
  CHECK(t.tweet_id == "t1");
  CHECK(t.author == "u1");
  CHECK(t.recipients == std::vector<UserId>{"u2"});
  CHECK(t.timestamp == 100);
  CHECK(t.text == "hi");
  CHECK(t.kind == TweetKind::Reply);
  CHECK(p.report.accepted == 1);
  CHECK(p.report.dropped() == 0);
}

TEST_CASE("author listed among recipients is removed, not dropped") {
  std::istringstream in(
      R"({"tweet_id":"t1","author":"u1","recipients":["u1","u2"],"timestamp":5,"text":"","kind":"mention"})");
  const ParsedTweets p = parse_tweets(in);
  REQUIRE(p.records.size() == 1);
  CHECK(p.records[0].recipients == std::vector<UserId>{"u2"});
  CHECK(p.report.self_edges_removed == 1);
}

TEST_CASE("record addressed only to its author is dropped") {
  std::istringstream in(
      R"({"tweet_id":"t1","author":"u1","recipients":["u1"],"timestamp":5,"text":"","kind":"reply"})");
  const ParsedTweets p = parse_tweets(in);
  CHECK(p.records.empty());
  CHECK(p.report.self_edge_only == 1);
}

TEST_CASE("malformed middle line is reported and skipped") {
  const std::vector<std::string> lines{
      R"({"tweet_id":"a","author":"u1","recipients":["u2"],"timestamp":1,"text":"x","kind":"reply"})",
      R"({"tweet_id":"b","author":)",
      R"({"tweet_id":"c","author":"u2","recipients":["u1"],"timestamp":2,"text":"y","kind":"retweet"})",
  };
  const ParsedTweets p = parse_tweets(lines);
  REQUIRE(p.records.size() == 2);
  CHECK(p.records[0].tweet_id == "a");
  CHECK(p.records[1].tweet_id == "c");
  CHECK(p.report.malformed == 1);
}

TEST_CASE("each drop reason is tallied and lines are conserved") {
  const std::vector<std::string> lines{
      "",
      "[1,2,3]",
      R"({"tweet_id":"a","author":"u1","recipients":["u2"],"text":"x","kind":"reply"})",
      R"({"tweet_id":"a","author":"u1","recipients":["u2"],"timestamp":1,"text":"x","kind":"quote"})",
      R"({"tweet_id":"a","author":"u1","recipients":[7],"timestamp":1,"text":"x","kind":"reply"})",
      R"({"tweet_id":"a","author":"u1","recipients":["u2"],"timestamp":-4,"text":"x","kind":"reply"})",
      R"({"tweet_id":"a","author":"u1","recipients":["u2"],"timestamp":1.5,"text":"x","kind":"reply"})",
      R"({"tweet_id":"a","author":"u1","recipients":["u1"],"timestamp":1,"text":"x","kind":"reply"})",
      R"({"tweet_id":"a","author":"u1","recipients":["u2"],"timestamp":1,"text":"x","kind":"reply","lang":"en"})",
      R"({"tweet_id":"a","author":"u3","recipients":[],"timestamp":2,"text":"dup","kind":"reply"})",
      R"({"tweet_id":"b","author":"u3","recipients":[],"timestamp":2,"text":"no @","kind":"mention"})",
  };
  const ParsedTweets p = parse_tweets(lines);
  const IngestReport& r = p.report;
  CHECK(r.blank == 1);
  CHECK(r.malformed == 1);
  CHECK(r.missing_field == 1);
  CHECK(r.invalid_field == 2);
  CHECK(r.bad_timestamp == 2);
  CHECK(r.self_edge_only == 1);
  CHECK(r.duplicate_id == 1);
  CHECK(p.records.size() == 2);
  CHECK(p.records[1].recipients.empty());
  CHECK(r.lines == lines.size());
  CHECK(r.lines == p.records.size() + r.dropped());
}

TEST_CASE("recipients are deduplicated into sorted order") {
  std::istringstream in(
      R"({"tweet_id":"t","author":"a","recipients":["c","b","c"],"timestamp":0,"text":"","kind":"mention"})");
  CHECK(parse_tweets(in).records[0].recipients == std::vector<UserId>{"b", "c"});
}

TEST_CASE("load_tweets on a missing file is fatal") {
  CHECK_THROWS_AS(load_tweets("/nonexistent/tweets.jsonl"), IngestError);
}

TEST_CASE("property: re-serializing parsed records reproduces them exactly") {
  std::mt19937_64 rng(7);
  const std::vector<std::string> names{"alice", "bob", "carol", "dave", "émile", "f,g", "h\"i"};
  const std::vector<std::string> texts{"", "plain", "quote \" and \\ slash", "ünïcödé ✓", "tab\tnew\nline"};
  for (int round = 0; round < 50; ++round) {
    std::vector<TweetRecord> records;
    for (int k = 0; k < 20; ++k) {
      TweetRecord t;
      t.tweet_id = "r" + std::to_string(round) + "-" + std::to_string(k);
      t.author = names[rng() % names.size()];
      for (const auto& n : names) {
        if (n != t.author && rng() % 3 == 0) t.recipients.push_back(n);
      }
      std::sort(t.recipients.begin(), t.recipients.end());  // parse canonicalizes to byte order
      t.timestamp = static_cast<std::int64_t>(rng() % 2000000000);
      t.text = texts[rng() % texts.size()];
      t.kind = static_cast<TweetKind>(rng() % 3);
      records.push_back(std::move(t));
    }
    std::stringstream buffer;
    write_tweets(buffer, records);
    const ParsedTweets back = parse_tweets(buffer);
    REQUIRE(back.report.dropped() == 0);
    CHECK(back.records == records);
  }
}

TEST_CASE("load_lexicon: sentiment entries") {
  std::istringstream in("good\t1.0\nbad\t-1.0\n");
  const Lexicon lex = parse_lexicon(in, LexiconKind::Sentiment);
  CHECK(lex.size() == 2);
  CHECK(lex.value("good") == 1.0);
  CHECK(lex.value("bad") == -1.0);
}

TEST_CASE("load_lexicon lowercases tokens") {
  std::istringstream in("Cat\tnoun\n");
  const Lexicon lex = parse_lexicon(in, LexiconKind::PosTags);
  CHECK(lex.contains("cat"));
  CHECK_FALSE(lex.contains("Cat"));
  CHECK(lex.tag("cat") == PosTag::Noun);
  CHECK(lex.tag("dog") == PosTag::Other);
}

TEST_CASE("load_lexicon: duplicate token, last entry wins") {
  std::istringstream in("good\t0.5\ngood\t1.0\n");
  const Lexicon lex = parse_lexicon(in, LexiconKind::Sentiment);
  CHECK(lex.size() == 1);
  CHECK(lex.value("good") == 1.0);
  CHECK(lex.duplicate_warnings == 1);
}

TEST_CASE("load_lexicon skips out-of-range and malformed payloads") {
  std::istringstream in("# comment\ngood\t2.0\nok\t0.2\nbad\tnope\nmulti word\t0.1\n\n");
  const Lexicon lex = parse_lexicon(in, LexiconKind::Sentiment);
  CHECK(lex.size() == 1);
  CHECK(lex.skipped_warnings == 3);

  std::istringstream freq("the\t-1\nof\t10\n");
  const Lexicon f = parse_lexicon(freq, LexiconKind::WordFrequency);
  CHECK(f.size() == 1);
  CHECK(f.skipped_warnings == 1);

  std::istringstream curse("damn\ncrap\t1\nheck\t0\n");
  const Lexicon c = parse_lexicon(curse, LexiconKind::CurseWords);
  CHECK(c.size() == 2);
  CHECK(c.skipped_warnings == 1);
}

TEST_CASE("load_lexicon on a missing file is fatal") {
  CHECK_THROWS_AS(load_lexicon("/nonexistent/sentiment.tsv", LexiconKind::Sentiment), IngestError);
}

TEST_CASE("every shipped lexicon satisfies the token invariant") {
  const std::pair<const char*, LexiconKind> files[] = {
      {"sentiment.tsv", LexiconKind::Sentiment},
      {"pos_tags.tsv", LexiconKind::PosTags},
      {"curse_words.tsv", LexiconKind::CurseWords},
      {"word_frequency.tsv", LexiconKind::WordFrequency},
  };
  for (const auto& [name, kind] : files) {
    const Lexicon lex = load_lexicon(std::string(ASKEW_LEXICONS) + "/" + name, kind);
    CHECK(lex.size() > 0);
    CHECK(lex.skipped_warnings == 0);
    for (const auto& token : lex.tokens()) CHECK(is_valid_token(token));
  }
}

TEST_CASE("load_user_meta") {
  SUBCASE("klout present") {
    std::istringstream in("user\tklout_score\nu1\t55.0\n");
    const auto t = parse_user_meta(in);
    REQUIRE(t.users.count("u1"));
    CHECK(t.users.at("u1").klout_score == 55.0);
  }
  SUBCASE("empty klout cell is absent") {
    std::istringstream in("user\tklout_score\tfollowers\nu1\t\t12\n");
    const auto t = parse_user_meta(in);
    CHECK_FALSE(t.users.at("u1").klout_score.has_value());
    CHECK(t.users.at("u1").followers == 12u);
    CHECK(t.warnings == 0);
  }
  SUBCASE("out-of-range klout is absent and warned") {
    std::istringstream in("user\tklout_score\nu1\t-3\nu2\t100.5\n");
    const auto t = parse_user_meta(in);
    CHECK_FALSE(t.users.at("u1").klout_score.has_value());
    CHECK_FALSE(t.users.at("u2").klout_score.has_value());
    CHECK(t.warnings == 2);
  }
  SUBCASE("unknown columns ignored, later rows overwrite, column order free") {
    std::istringstream in("bio\tfollowers\tuser\tklout_score\nx\t1\tu1\t10\ny\t2\tu1\t20\n");
    const auto t = parse_user_meta(in);
    CHECK(t.users.size() == 1);
    CHECK(t.users.at("u1").klout_score == 20.0);
    CHECK(t.users.at("u1").followers == 2u);
  }
  SUBCASE("header without a user column is fatal") {
    std::istringstream in("klout_score\n10\n");
    CHECK_THROWS_AS(parse_user_meta(in), IngestError);
  }
}

TEST_CASE("shipped fixture metadata loads") {
  const auto t = load_user_meta(std::string(ASKEW_FIXTURES) + "/bowtie_example_meta.tsv");
  CHECK(t.users.size() == 7);
  CHECK(t.users.at("u2").klout_score == 55.0);
  CHECK_FALSE(t.users.at("u2").account_created.has_value());
  CHECK_FALSE(t.users.at("u7").klout_score.has_value());
  CHECK(t.warnings == 1);
}
