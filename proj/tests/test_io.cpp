#include <doctest.h>

#include <sstream>

#include "icc/io.hpp"
#include "test_support.hpp"

using namespace icc;

TEST_CASE("profile text round-trips byte-exactly") {
  Rng rng(11);
  const Profile p = sample_profile(5, 4, rng);
  std::ostringstream first;
  write_profile(first, p);
  std::istringstream in(first.str());
  const Profile back = read_profile(in);
  std::ostringstream second;
  write_profile(second, back);
  CHECK(first.str() == second.str());
  for (int v = 0; v < 5; ++v)
    for (int c = 0; c < 4; ++c) CHECK(p.rank_of(v, c) == back.rank_of(v, c));
}

TEST_CASE("score matrix text round-trips bit-exactly") {
  Rng rng(12);
  const ScoreMatrix scores = sample_score_matrix(4, 7, rng);
  std::ostringstream first;
  write_score_matrix(first, scores);
  std::istringstream in(first.str());
  const ScoreMatrix back = read_score_matrix(in);
  for (int v = 0; v < 4; ++v)
    for (int c = 0; c < 7; ++c) CHECK(scores.score(v, c) == back.score(v, c));
  std::ostringstream second;
  write_score_matrix(second, back);
  CHECK(first.str() == second.str());
}

TEST_CASE("format_double is shortest round-trip") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.1) == "0.1");
}

TEST_CASE("profile loading validates") {
  std::istringstream bad_header("x y\n");
  CHECK_THROWS_AS(read_profile(bad_header), Error);
  std::istringstream not_perm("1 3\n0 1 1\n");
  CHECK_THROWS_AS(read_profile(not_perm), Error);
  std::istringstream truncated("2 3\n0 1 2\n");
  CHECK_THROWS_AS(read_profile(truncated), Error);
  std::istringstream good("3 3\n0 1 2\n1 2 0\n2 0 1\n");
  const Profile cycle = read_profile(good);
  CHECK(cycle.ranking(2)[0] == 2);
}

TEST_CASE("score loading validates") {
  std::istringstream bad_tag("points 1 2\n0.5 0.25\n");
  CHECK_THROWS_AS(read_score_matrix(bad_tag), Error);
  std::istringstream tie("scores 1 2\n0.5 0.5\n");
  CHECK_THROWS_AS(read_score_matrix(tie), Error);
  std::istringstream range("scores 1 2\n0.5 1.5\n");
  CHECK_THROWS_AS(read_score_matrix(range), Error);
}
