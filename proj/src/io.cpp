#include "icc/io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

namespace icc {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void write_profile(std::ostream& out, const Profile& profile) {
  out << profile.voters() << ' ' << profile.candidates() << '\n';
  for (int v = 0; v < profile.voters(); ++v) {
    const auto ranking = profile.ranking(v);
    for (int i = 0; i < profile.candidates(); ++i) {
      if (i) out << ' ';
      out << ranking[i];
    }
    out << '\n';
  }
}

Profile read_profile(std::istream& in) {
  int n = 0;
  int m = 0;
  if (!(in >> n >> m)) throw Error::parse("profile header must be 'n m'");
  if (n < 1 || m < 1) throw Error::invalid_dimension("profile header has non-positive counts");
  std::vector<std::int32_t> order(static_cast<std::size_t>(n) * m);
  for (auto& entry : order)
    if (!(in >> entry)) throw Error::parse("profile body ended early");
  return Profile(n, m, std::move(order));
}

void write_score_matrix(std::ostream& out, const ScoreMatrix& scores) {
  out << "scores " << scores.voters() << ' ' << scores.candidates() << '\n';
  for (int v = 0; v < scores.voters(); ++v) {
    const auto row = scores.row(v);
    for (int a = 0; a < scores.candidates(); ++a) {
      if (a) out << ' ';
      out << format_double(row[a]);
    }
    out << '\n';
  }
}

ScoreMatrix read_score_matrix(std::istream& in) {
  std::string tag;
  int n = 0;
  int m = 0;
  if (!(in >> tag >> n >> m) || tag != "scores")
    throw Error::parse("score matrix header must be 'scores n m'");
  if (n < 1 || m < 1) throw Error::invalid_dimension("score header has non-positive counts");
  std::vector<double> values(static_cast<std::size_t>(n) * m);
  std::string token;
  for (auto& value : values) {
    if (!(in >> token)) throw Error::parse("score body ended early");
    const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
    if (res.ec != std::errc() || res.ptr != token.data() + token.size())
      throw Error::parse("bad score value '" + token + "'");
  }
  return ScoreMatrix(n, m, std::move(values));
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error::io("cannot open '" + path + "' for writing");
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error::io("cannot open '" + path + "'");
  return in;
}

}  // namespace

void save_profile(const std::string& path, const Profile& profile) {
  auto out = open_out(path);
  write_profile(out, profile);
  if (!out) throw Error::io("failed writing '" + path + "'");
}

Profile load_profile(const std::string& path) {
  auto in = open_in(path);
  return read_profile(in);
}

void save_score_matrix(const std::string& path, const ScoreMatrix& scores) {
  auto out = open_out(path);
  write_score_matrix(out, scores);
  if (!out) throw Error::io("failed writing '" + path + "'");
}

ScoreMatrix load_score_matrix(const std::string& path) {
  auto in = open_in(path);
  return read_score_matrix(in);
}

}  // namespace icc
