#include "chanmatch/io.hpp"

#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

namespace chanmatch {

namespace {

struct Token {
  std::string text;
  int line;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  std::string cur;
  int cur_line = 1;
  auto flush = [&] {
    if (!cur.empty()) {
      out.push_back({cur, cur_line});
      cur.clear();
    }
  };
  for (char c : text) {
    if (c == '\n') {
      flush();
      ++line;
    } else if (c == ' ' || c == '\t' || c == '\r') {
      flush();
    } else {
      if (cur.empty()) cur_line = line;
      cur += c;
    }
  }
  flush();
  return out;
}

Rat parse_rat_token(const Token& t) {
  try {
    return Rat::parse(t.text);
  } catch (const std::invalid_argument& e) {
    throw ParseError("line " + std::to_string(t.line) + ": " + e.what());
  }
}

int parse_dim(const std::vector<Token>& tokens, int max) {
  if (tokens.empty()) throw ParseError("empty input");
  const Token& t = tokens[0];
  Rat n = parse_rat_token(t);
  if (!n.is_integer() || n.sign() <= 0 || n.numerator() > max)
    throw ParseError("line " + std::to_string(t.line) + ": size must be a positive integer <= " +
                     std::to_string(max));
  return n.numerator().convert_to<int>();
}

struct ParsedMatrix {
  RatMat mat;
  std::vector<int> row_line;  // line of each row's first token
};

ParsedMatrix parse_matrix_tokens(std::string_view text) {
  auto tokens = tokenize(text);
  int n = parse_dim(tokens, 4096);
  if (tokens.size() != 1 + static_cast<size_t>(n) * n)
    throw ParseError("expected " + std::to_string(n) + "x" + std::to_string(n) + " entries, got " +
                     std::to_string(tokens.size() - 1));
  ParsedMatrix pm{RatMat(n), std::vector<int>(n)};
  size_t t = 1;
  for (int i = 0; i < n; ++i) {
    pm.row_line[i] = tokens[t].line;
    for (int j = 0; j < n; ++j, ++t) pm.mat.at(i, j) = parse_rat_token(tokens[t]);
  }
  return pm;
}

}  // namespace

RatMat parse_square_matrix(std::string_view text) { return parse_matrix_tokens(text).mat; }

Channel parse_channel(std::string_view text) {
  ParsedMatrix pm = parse_matrix_tokens(text);
  const int n = pm.mat.n();
  const Rat zero(0), one(1);
  for (int i = 0; i < n; ++i) {
    Rat sum(0);
    for (int j = 0; j < n; ++j) {
      if (pm.mat.at(i, j) < zero || pm.mat.at(i, j) > one)
        throw ParseError("line " + std::to_string(pm.row_line[i]) + ", entry " +
                         std::to_string(j + 1) + ": probability out of [0,1]");
      sum += pm.mat.at(i, j);
    }
    if (sum != one)
      throw ParseError("row-sum error on line " + std::to_string(pm.row_line[i]) + ": row " +
                       std::to_string(i + 1) + " sums to " + sum.str());
  }
  return Channel(std::move(pm.mat));
}

DistanceMatrix parse_distance(std::string_view text) {
  ParsedMatrix pm = parse_matrix_tokens(text);
  const int n = pm.mat.n();
  for (int i = 0; i < n; ++i) {
    if (pm.mat.at(i, i).sign() != 0)
      throw ParseError("line " + std::to_string(pm.row_line[i]) + ", entry " + std::to_string(i + 1) +
                       ": diagonal must be zero");
    for (int j = 0; j < n; ++j) {
      if (pm.mat.at(i, j).sign() < 0)
        throw ParseError("line " + std::to_string(pm.row_line[i]) + ", entry " + std::to_string(j + 1) +
                         ": distances are nonnegative");
      if (j < i && pm.mat.at(i, j) != pm.mat.at(j, i))
        throw ParseError("line " + std::to_string(pm.row_line[i]) + ", entry " + std::to_string(j + 1) +
                         ": not symmetric with entry (" + std::to_string(j + 1) + "," +
                         std::to_string(i + 1) + ")");
    }
  }
  return DistanceMatrix(std::move(pm.mat));
}

SubsetVector parse_subset_vector(std::string_view text) {
  auto tokens = tokenize(text);
  int n = parse_dim(tokens, 20);
  const size_t count = (size_t{1} << n) - 1;
  if (tokens.size() != 1 + count)
    throw ParseError("expected " + std::to_string(count) + " values for n = " + std::to_string(n) +
                     ", got " + std::to_string(tokens.size() - 1));
  std::vector<Rat> values;
  values.reserve(count);
  for (size_t t = 1; t < tokens.size(); ++t) values.push_back(parse_rat_token(tokens[t]));
  return SubsetVector(n, std::move(values));
}

WeightVector parse_weight(std::string_view text) {
  SubsetVector v = parse_subset_vector(text);
  if (!v.all_nonnegative()) throw ParseError("weights must be nonnegative");
  return v;
}

SetFamily parse_family(std::string_view text, int n) {
  SetFamily f;
  f.n = n;
  int line = 0;
  std::istringstream in{std::string(text)};
  std::string row;
  while (std::getline(in, row)) {
    ++line;
    while (!row.empty() && (row.back() == '\r' || row.back() == ' ')) row.pop_back();
    if (row.empty()) continue;
    if (static_cast<int>(row.size()) != n)
      throw ParseError("line " + std::to_string(line) + ": expected a width-" + std::to_string(n) +
                       " binary numeral");
    uint32_t mask = 0;
    for (int t = 0; t < n; ++t) {
      if (row[t] == '1') mask |= uint32_t{1} << (n - 1 - t);
      else if (row[t] != '0')
        throw ParseError("line " + std::to_string(line) + ": binary numerals use only 0 and 1");
    }
    if (mask == 0)
      throw ParseError("line " + std::to_string(line) + ": element belongs to no set");
    f.members.push_back(mask);
  }
  return f;
}

EmbeddingFile parse_embedding(std::string_view text) {
  auto tokens = tokenize(text);
  if (tokens.size() < 4) throw ParseError("embedding header needs n N m k");
  EmbeddingFile e;
  Rat n = parse_rat_token(tokens[0]);
  Rat N = parse_rat_token(tokens[1]);
  if (!n.is_integer() || n.sign() <= 0 || !N.is_integer() || N.sign() < 0)
    throw ParseError("line " + std::to_string(tokens[0].line) + ": malformed embedding header");
  e.n = n.numerator().convert_to<int>();
  e.N = N.numerator().convert_to<int>();
  e.m = parse_rat_token(tokens[2]);
  e.k = parse_rat_token(tokens[3]);
  if (tokens.size() != 4 + static_cast<size_t>(e.n))
    throw ParseError("expected " + std::to_string(e.n) + " bit words after the header");
  for (int i = 0; i < e.n; ++i) {
    const Token& t = tokens[4 + i];
    if (static_cast<int>(t.text.size()) != e.N)
      throw ParseError("line " + std::to_string(t.line) + ": bit word must have length " +
                       std::to_string(e.N));
    try {
      e.words.push_back(CubeWord::from_string(t.text));
    } catch (const std::invalid_argument& ex) {
      throw ParseError("line " + std::to_string(t.line) + ": " + ex.what());
    }
  }
  return e;
}

std::string format_matrix(const RatMat& m) {
  std::string out = std::to_string(m.n()) + "\n";
  for (int i = 0; i < m.n(); ++i) {
    for (int j = 0; j < m.n(); ++j) {
      if (j) out += ' ';
      out += m.at(i, j).str();
    }
    out += '\n';
  }
  return out;
}

std::string format_ranks(const WeakOrderMatrix& m) {
  std::string out = std::to_string(m.n) + "\n";
  for (int i = 0; i < m.n; ++i) {
    for (int j = 0; j < m.n; ++j) {
      if (j) out += ' ';
      out += std::to_string(m.at(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string format_subset_vector(const SubsetVector& v) {
  std::string out = std::to_string(v.n()) + "\n";
  for (uint32_t mask = 1; mask <= v.mask_count(); ++mask) {
    if (mask > 1) out += ' ';
    out += v.at(mask).str();
  }
  out += '\n';
  return out;
}

std::string format_family(const SetFamily& f) {
  std::string out;
  for (uint32_t mask : f.members) {
    std::string row(f.n, '0');
    for (int t = 0; t < f.n; ++t)
      if ((mask >> (f.n - 1 - t)) & 1) row[t] = '1';
    out += row;
    out += '\n';
  }
  return out;
}

std::string format_embedding(int n, int N, const Rat& m, const Rat& k,
                             const std::vector<CubeWord>& words) {
  std::string out = std::to_string(n) + " " + std::to_string(N) + " " + m.str() + " " + k.str() + "\n";
  for (const CubeWord& w : words) {
    out += w.str();
    out += '\n';
  }
  return out;
}

namespace {

const char* mode_name(MetrizeMode m) {
  switch (m) {
    case MetrizeMode::Distance: return "distance";
    case MetrizeMode::Semimetric: return "semimetric";
    case MetrizeMode::Metric: return "metric";
  }
  return "distance";
}

MetrizeMode mode_from_name(const std::string& s) {
  if (s == "distance") return MetrizeMode::Distance;
  if (s == "semimetric") return MetrizeMode::Semimetric;
  if (s == "metric") return MetrizeMode::Metric;
  throw ParseError("unknown mode: " + s);
}

}  // namespace

nlohmann::json certificate_to_json(const Certificate& cert) {
  nlohmann::json j;
  j["mode"] = mode_name(cert.mode);
  if (cert.kind == Certificate::Kind::Diagonal) {
    j["kind"] = "diagonal";
    j["index"] = cert.diag_index + 1;
    if (cert.diag_column >= 0) j["column"] = cert.diag_column + 1;
    return j;
  }
  j["kind"] = "cycle";
  nlohmann::json steps = nlohmann::json::array();
  for (const Relation& s : cert.steps) {
    steps.push_back({{"from", {s.from.a + 1, s.from.b + 1}},
                     {"rel", s.strict ? "<" : "="},
                     {"to", {s.to.a + 1, s.to.b + 1}},
                     {"column", s.column + 1},
                     {"rows", {s.row_i + 1, s.row_k + 1}}});
  }
  j["steps"] = std::move(steps);
  return j;
}

Certificate certificate_from_json(const nlohmann::json& j) {
  Certificate cert;
  cert.mode = mode_from_name(j.value("mode", "distance"));
  if (j.at("kind") == "diagonal") {
    cert.kind = Certificate::Kind::Diagonal;
    cert.diag_index = j.at("index").get<int>() - 1;
    cert.diag_column = j.contains("column") ? j.at("column").get<int>() - 1 : -1;
    return cert;
  }
  cert.kind = Certificate::Kind::Cycle;
  for (const auto& s : j.at("steps")) {
    Relation rel;
    rel.from = PairVar::make(s.at("from")[0].get<int>() - 1, s.at("from")[1].get<int>() - 1);
    rel.to = PairVar::make(s.at("to")[0].get<int>() - 1, s.at("to")[1].get<int>() - 1);
    rel.strict = s.at("rel") == "<";
    rel.column = s.at("column").get<int>() - 1;
    rel.row_i = s.at("rows")[0].get<int>() - 1;
    rel.row_k = s.at("rows")[1].get<int>() - 1;
    cert.steps.push_back(rel);
  }
  return cert;
}

std::string format_certificate(const Certificate& cert) {
  if (cert.kind == Certificate::Kind::Diagonal) {
    if (cert.diag_column < 0)
      return "diagonal violation: entry (" + std::to_string(cert.diag_index + 1) + "," +
             std::to_string(cert.diag_index + 1) + ") is not ranked first in its column\n";
    return "off-diagonal entry (" + std::to_string(cert.diag_index + 1) + "," +
           std::to_string(cert.diag_column + 1) + ") is ranked first; no " +
           (cert.mode == MetrizeMode::Metric ? "metric" : "semimetric") + " can match\n";
  }
  std::string out = "contradictory cycle:\n";
  for (const Relation& s : cert.steps) {
    out += "  d(" + std::to_string(s.from.a + 1) + "," + std::to_string(s.from.b + 1) + ") " +
           (s.strict ? "<" : "=") + " d(" + std::to_string(s.to.a + 1) + "," +
           std::to_string(s.to.b + 1) + ")  [column " + std::to_string(s.column + 1) + "]\n";
  }
  return out;
}

nlohmann::json matrix_to_json(const RatMat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.n(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.n(); ++j) row.push_back(m.at(i, j).str());
    rows.push_back(std::move(row));
  }
  return {{"n", m.n()}, {"rows", std::move(rows)}};
}

nlohmann::json subset_vector_to_json(const SubsetVector& v) {
  nlohmann::json vals = nlohmann::json::array();
  for (uint32_t mask = 1; mask <= v.mask_count(); ++mask) vals.push_back(v.at(mask).str());
  return {{"n", v.n()}, {"values", std::move(vals)}};
}

}  // namespace chanmatch
