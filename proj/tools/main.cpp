#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "chanmatch/cube_embedding.hpp"
#include "chanmatch/io.hpp"
#include "chanmatch/metrization.hpp"
#include "chanmatch/minimal_embedding.hpp"
#include "chanmatch/orders.hpp"
#include "chanmatch/subset_patterns.hpp"

using namespace chanmatch;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNegative = 2;  // well-formed run with a negative verdict

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

MetrizeMode mode_of(const std::string& name) {
  if (name == "distance") return MetrizeMode::Distance;
  if (name == "semimetric") return MetrizeMode::Semimetric;
  if (name == "metric") return MetrizeMode::Metric;
  throw std::runtime_error("unknown mode: " + name);
}

json embedding_json(int n, int N, const Rat& m, const Rat& k, const std::vector<CubeWord>& words) {
  json jwords = json::array();
  for (const CubeWord& w : words) jwords.push_back(w.str());
  return {{"n", n}, {"N", N}, {"m", m.str()}, {"k", k.str()}, {"words", std::move(jwords)}};
}

int cmd_order(const std::string& file, bool asc, bool use_json) {
  RatMat m = parse_square_matrix(slurp(file));
  WeakOrderMatrix ranks = weak_order(m, asc ? Direction::Ascending : Direction::Descending);
  if (use_json) {
    json rows = json::array();
    for (int i = 0; i < ranks.n; ++i) {
      json row = json::array();
      for (int j = 0; j < ranks.n; ++j) row.push_back(ranks.at(i, j));
      rows.push_back(std::move(row));
    }
    std::cout << json{{"n", ranks.n}, {"direction", asc ? "ascending" : "descending"},
                      {"ranks", std::move(rows)}}
              << "\n";
  } else {
    std::cout << format_ranks(ranks);
  }
  return kExitOk;
}

int cmd_metrize(const std::string& file, const std::string& mode_name, bool use_json) {
  Channel p = parse_channel(slurp(file));
  MetrizeMode mode = mode_of(mode_name);
  MetrizationResult r = metrize(p, mode);
  if (r.is_matched()) {
    if (use_json) {
      json classes = json::array();
      for (const RankClass& rc : r.classes) {
        json pairs = json::array();
        for (const PairVar& pv : rc.pairs) pairs.push_back({pv.a + 1, pv.b + 1});
        classes.push_back({{"value", rc.value}, {"pairs", std::move(pairs)}});
      }
      std::cout << json{{"matched", true},
                        {"mode", mode_name},
                        {"distance", matrix_to_json(r.distance->mat())},
                        {"classes", std::move(classes)}}
                << "\n";
    } else {
      std::cout << format_matrix(r.distance->mat());
    }
    return kExitOk;
  }
  if (use_json) {
    std::cout << json{{"matched", false}, {"mode", mode_name},
                      {"certificate", certificate_to_json(*r.certificate)}}
              << "\n";
  } else {
    std::cout << "not metrizable\n" << format_certificate(*r.certificate);
  }
  return kExitNegative;
}

int cmd_equiv(const std::string& file_a, const std::string& file_b, const std::string& as,
              bool use_json) {
  bool equivalent = false;
  if (as == "channel") {
    Channel a = parse_channel(slurp(file_a));
    Channel b = parse_channel(slurp(file_b));
    equivalent = same_weak_order(a.mat(), b.mat(), Direction::Descending);
  } else if (as == "distance") {
    DistanceMatrix a = parse_distance(slurp(file_a));
    DistanceMatrix b = parse_distance(slurp(file_b));
    equivalent = same_weak_order(a.mat(), b.mat(), Direction::Ascending);
  } else {
    throw std::runtime_error("--as must be distance or channel");
  }
  if (use_json)
    std::cout << json{{"equivalent", equivalent}, {"as", as}} << "\n";
  else
    std::cout << (equivalent ? "equivalent\n" : "not equivalent\n");
  return equivalent ? kExitOk : kExitNegative;
}

int cmd_matched(const std::string& channel_file, const std::string& distance_file, bool oracle,
                bool use_json) {
  Channel p = parse_channel(slurp(channel_file));
  DistanceMatrix d = parse_distance(slurp(distance_file));
  bool is_matched = matched(p, d);
  json j{{"matched", is_matched}};
  std::string text = is_matched ? "matched\n" : "not matched\n";
  if (oracle) {
    AgreementReport rep = decoder_agreement_oracle(p, d);
    j["oracle_agrees_with_matched"] = rep.agree == is_matched;
    text += rep.agree == is_matched ? "oracle: agree\n" : "oracle: DISAGREE\n";
    if (!rep.agree) {
      json code = json::array();
      std::string members;
      for (int c : rep.witness_code.members) {
        code.push_back(c + 1);
        members += (members.empty() ? "" : ",") + std::to_string(c + 1);
      }
      j["witness"] = {{"code", std::move(code)}, {"received", rep.witness_symbol + 1}};
      text += "witness: code {" + members + "}, received " +
              std::to_string(rep.witness_symbol + 1) + "\n";
    }
  }
  if (use_json)
    std::cout << j << "\n";
  else
    std::cout << text;
  return is_matched ? kExitOk : kExitNegative;
}

std::string values_line(const SubsetVector& v) {
  std::string out;
  for (uint32_t mask = 1; mask <= v.mask_count(); ++mask) {
    if (mask > 1) out += ' ';
    out += v.at(mask).str();
  }
  return out;
}

int cmd_setpattern(const std::string& file, bool cap, bool use_json) {
  SubsetVector pattern = parse_subset_vector(slurp(file));
  SubsetVector x = cap ? solve_cap(pattern) : solve_sym(pattern);
  bool realizable = check_realizable(x);
  json j{{"kind", cap ? "cap" : "sym"},
         {"x", subset_vector_to_json(x)},
         {"realizable", realizable}};
  std::string text;
  if (!cap) {
    SubsetVector caps = sym_to_cap(pattern);
    j["cap"] = subset_vector_to_json(caps);
    text += "cap: " + values_line(caps) + "\n";
  }
  text += "x: " + values_line(x) + "\n";
  text += realizable ? "realizable: yes\n" : "realizable: no\n";
  if (realizable) {
    SetFamily f = realize(x);
    j["family"] = json::array();
    for (uint32_t mask : f.members) {
      std::string row(f.n, '0');
      for (int t = 0; t < f.n; ++t)
        if ((mask >> (f.n - 1 - t)) & 1) row[t] = '1';
      j["family"].push_back(row);
    }
    text += "family:\n" + format_family(f);
  }
  if (use_json)
    std::cout << j << "\n";
  else
    std::cout << text;
  return kExitOk;
}

int cmd_embed(const std::string& file, bool weight_mode, bool minimal, bool use_json) {
  if (weight_mode) {
    WeightVector w = parse_weight(slurp(file));
    if (minimal) {
      OptimalEmbedding best = minimize_dimension(w);
      json report{{"N_star", best.n_star},
                  {"incumbent_from_scaling", best.incumbent},
                  {"nodes_explored", best.nodes_explored},
                  {"x_star", subset_vector_to_json(best.x_star)}};
      if (use_json) {
        json j = embedding_json(best.embedding.n, best.embedding.N, best.embedding.m,
                                best.embedding.k, best.embedding.generators);
        j["optimality"] = std::move(report);
        std::cout << j << "\n";
      } else {
        std::cout << format_embedding(best.embedding.n, best.embedding.N, best.embedding.m,
                                      best.embedding.k, best.embedding.generators);
        std::cerr << "N_star: " << best.n_star << "\nincumbent_from_scaling: " << best.incumbent
                  << "\nnodes_explored: " << best.nodes_explored << "\n";
      }
      return kExitOk;
    }
    LinearEmbedding e = embed_weight(w);
    if (use_json)
      std::cout << embedding_json(e.n, e.N, e.m, e.k, e.generators) << "\n";
    else
      std::cout << format_embedding(e.n, e.N, e.m, e.k, e.generators);
    return kExitOk;
  }

  DistanceMatrix d = parse_distance(slurp(file));
  if (minimal) {
    OptimalPointEmbedding best = minimize_dimension_points(d);
    json report{{"N_star", best.n_star},
                {"incumbent_from_scaling", best.incumbent},
                {"nodes_explored", best.nodes_explored},
                {"x_star", subset_vector_to_json(best.x_star)}};
    if (use_json) {
      json j = embedding_json(best.embedding.n, best.embedding.N, best.embedding.m,
                              best.embedding.k, best.embedding.images);
      j["optimality"] = std::move(report);
      std::cout << j << "\n";
    } else {
      std::cout << format_embedding(best.embedding.n, best.embedding.N, best.embedding.m,
                                    best.embedding.k, best.embedding.images);
      std::cerr << "N_star: " << best.n_star << "\nincumbent_from_scaling: " << best.incumbent
                << "\nnodes_explored: " << best.nodes_explored << "\n";
    }
    return kExitOk;
  }
  PointEmbedding e = embed_points(d);
  if (use_json)
    std::cout << embedding_json(e.n, e.N, e.m, e.k, e.images) << "\n";
  else
    std::cout << format_embedding(e.n, e.N, e.m, e.k, e.images);
  return kExitOk;
}

int cmd_verify_embed(const std::string& emb_file, const std::string& target_file, bool use_json) {
  EmbeddingFile e = parse_embedding(slurp(emb_file));
  std::string target = slurp(target_file);

  // A weight file has 2^n - 1 values, a distance file n rows of n; try the
  // distance reading first and fall back to the weight reading.
  VerifyReport rep;
  bool as_distance = false;
  try {
    DistanceMatrix d = parse_distance(target);
    if (d.n() == e.n) {
      PointEmbedding pe{e.n, e.N, e.words, e.m, e.k};
      rep = verify_embedding(pe, d);
      as_distance = true;
    }
  } catch (const ParseError&) {
  }
  if (!as_distance) {
    WeightVector w = parse_weight(target);
    LinearEmbedding le{e.n, e.N, e.words, e.m, e.k};
    rep = verify_embedding(le, w);
  }

  if (use_json) {
    json j{{"ok", rep.ok},
           {"target", as_distance ? "distance" : "weight"},
           {"m", rep.m.str()},
           {"k", rep.k.str()},
           {"order_preserved", rep.order_preserved}};
    json bad = json::array();
    for (uint32_t m : rep.bad_masks) bad.push_back(m);
    for (auto [a, b] : rep.bad_pairs) bad.push_back({a + 1, b + 1});
    j["violations"] = std::move(bad);
    std::cout << j << "\n";
  } else {
    if (rep.ok) {
      std::cout << "ok m=" << rep.m.str() << " k=" << rep.k.str() << " order_preserved="
                << (rep.order_preserved ? "yes" : "no") << "\n";
    } else {
      std::cout << "invalid (best fit m=" << rep.m.str() << " k=" << rep.k.str()
                << ") order_preserved=" << (rep.order_preserved ? "yes" : "no") << "\n";
      for (uint32_t m : rep.bad_masks) std::cout << "violated at source vector " << m << "\n";
      for (auto [a, b] : rep.bad_pairs)
        std::cout << "violated at pair (" << a + 1 << "," << b + 1 << ")\n";
    }
  }
  return rep.ok ? kExitOk : kExitNegative;
}

int cmd_gen(const std::string& kind, int n, uint64_t seed, bool use_json) {
  if (n < 1 || n > 64) throw std::runtime_error("gen size must be in 1..64");
  std::mt19937_64 eng(seed);
  auto upto = [&](uint64_t k) { return eng() % k; };
  RatMat m(n);
  if (kind == "channel") {
    const long long denom = 16;
    for (int i = 0; i < n; ++i) {
      std::vector<long long> cuts{0, denom};
      for (int t = 0; t < n - 1; ++t) cuts.push_back(static_cast<long long>(upto(denom + 1)));
      std::sort(cuts.begin(), cuts.end());
      for (int j = 0; j < n; ++j) m.at(i, j) = Rat(cuts[j + 1] - cuts[j], denom);
    }
    Channel p(std::move(m));
    if (use_json)
      std::cout << matrix_to_json(p.mat()) << "\n";
    else
      std::cout << format_matrix(p.mat());
  } else if (kind == "distance") {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Rat v(1 + static_cast<long long>(upto(8)), 1 + static_cast<long long>(upto(4)));
        m.at(i, j) = v;
        m.at(j, i) = v;
      }
    DistanceMatrix d(std::move(m));
    if (use_json)
      std::cout << matrix_to_json(d.mat()) << "\n";
    else
      std::cout << format_matrix(d.mat());
  } else {
    throw std::runtime_error("gen kind must be channel or distance");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matched channels, decoding equivalence and Hamming-cube embeddings"};
  app.require_subcommand(1);
  bool use_json = false;
  app.add_flag("--json", use_json, "emit JSON instead of text");

  std::string file_a, file_b, mode_name = "distance", as_kind;
  bool asc = false, desc = false, oracle = false, cap = false, sym = false;
  bool weight_mode = false, distance_mode = false, minimal = false;
  int gen_n = 3;
  uint64_t seed = 0;
  std::string gen_kind;

  CLI::App* order = app.add_subcommand("order", "column weak-order ranks of a matrix");
  order->add_option("FILE", file_a)->required();
  order->add_flag("--asc", asc, "rank smallest first");
  order->add_flag("--desc", desc, "rank largest first");

  CLI::App* metrize_cmd = app.add_subcommand("metrize", "find a distance matched to a channel");
  metrize_cmd->add_option("CHANNEL", file_a)->required();
  metrize_cmd->add_option("--mode", mode_name, "distance|semimetric|metric")
      ->check(CLI::IsMember({"distance", "semimetric", "metric"}));

  CLI::App* equiv = app.add_subcommand("equiv", "decoding equivalence of two matrices");
  equiv->add_option("A", file_a)->required();
  equiv->add_option("B", file_b)->required();
  equiv->add_option("--as", as_kind, "distance|channel")->required()
      ->check(CLI::IsMember({"distance", "channel"}));

  CLI::App* matched_cmd = app.add_subcommand("matched", "is the distance matched to the channel");
  matched_cmd->add_option("CHANNEL", file_a)->required();
  matched_cmd->add_option("DISTANCE", file_b)->required();
  matched_cmd->add_flag("--oracle", oracle, "cross-check with the all-codes decoder oracle");

  CLI::App* setpattern = app.add_subcommand("setpattern", "set pattern tools");
  CLI::App* solve = setpattern->add_subcommand("solve", "solve and realize a full pattern");
  solve->add_option("FILE", file_a)->required();
  solve->add_flag("--cap", cap, "intersection pattern");
  solve->add_flag("--sym", sym, "symmetric-difference pattern");

  CLI::App* embed = app.add_subcommand("embed", "embed a weight or distance into a Hamming cube");
  embed->add_option("FILE", file_a)->required();
  embed->add_flag("--weight", weight_mode, "input is a weight over F_2^n");
  embed->add_flag("--distance", distance_mode, "input is a distance matrix");
  embed->add_flag("--minimal", minimal, "search for the minimum dimension");

  CLI::App* verify = app.add_subcommand("verify-embed", "check an embedding against its source");
  verify->add_option("EMBEDDING", file_a)->required();
  verify->add_option("FILE", file_b)->required();

  CLI::App* gen = app.add_subcommand("gen", "deterministic random test instances");
  gen->add_option("KIND", gen_kind, "channel|distance")->required();
  gen->add_option("N", gen_n)->required();
  gen->add_option("--seed", seed, "generator seed");

  // Let --json appear after the subcommand as well.
  for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();
  solve->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints the message / help text
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (order->parsed()) {
      if (asc == desc) throw std::runtime_error("pass exactly one of --asc or --desc");
      return cmd_order(file_a, asc, use_json);
    }
    if (metrize_cmd->parsed()) return cmd_metrize(file_a, mode_name, use_json);
    if (equiv->parsed()) return cmd_equiv(file_a, file_b, as_kind, use_json);
    if (matched_cmd->parsed()) return cmd_matched(file_a, file_b, oracle, use_json);
    if (setpattern->parsed()) {
      if (!solve->parsed()) throw std::runtime_error("setpattern needs the solve subcommand");
      if (cap == sym) throw std::runtime_error("pass exactly one of --cap or --sym");
      return cmd_setpattern(file_a, cap, use_json);
    }
    if (embed->parsed()) {
      if (weight_mode == distance_mode)
        throw std::runtime_error("pass exactly one of --weight or --distance");
      return cmd_embed(file_a, weight_mode, minimal, use_json);
    }
    if (verify->parsed()) return cmd_verify_embed(file_a, file_b, use_json);
    if (gen->parsed()) return cmd_gen(gen_kind, gen_n, seed, use_json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
