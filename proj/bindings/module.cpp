#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "chanmatch/cube_embedding.hpp"
#include "chanmatch/io.hpp"
#include "chanmatch/metrization.hpp"
#include "chanmatch/minimal_embedding.hpp"
#include "chanmatch/orders.hpp"
#include "chanmatch/subset_patterns.hpp"

namespace py = pybind11;
using namespace chanmatch;

namespace pybind11::detail {

// Rat <-> fractions.Fraction (ints and numeric strings load too).
template <>
struct type_caster<Rat> {
  PYBIND11_TYPE_CASTER(Rat, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    try {
      if (py::isinstance<py::int_>(src)) {
        value = Rat::parse(py::str(src).cast<std::string>());
        return true;
      }
      py::object fraction = py::module_::import("fractions").attr("Fraction");
      if (py::isinstance<py::str>(src) || py::isinstance(src, fraction)) {
        value = Rat::parse(py::str(src).cast<std::string>());
        return true;
      }
    } catch (const std::exception&) {
      return false;
    }
    return false;
  }

  static handle cast(const Rat& src, return_value_policy, handle) {
    py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(src.str()).release();
  }
};

}  // namespace pybind11::detail

namespace {

RatMat mat_from_rows(const std::vector<std::vector<Rat>>& rows) {
  const int n = static_cast<int>(rows.size());
  RatMat m(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n)
      throw std::invalid_argument("matrix rows must all have length n");
    for (int j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

std::vector<std::vector<Rat>> rows_of(const RatMat& m) {
  std::vector<std::vector<Rat>> rows(m.n(), std::vector<Rat>(m.n()));
  for (int i = 0; i < m.n(); ++i)
    for (int j = 0; j < m.n(); ++j) rows[i][j] = m.at(i, j);
  return rows;
}

std::vector<std::vector<int>> rank_rows(const WeakOrderMatrix& w) {
  std::vector<std::vector<int>> rows(w.n, std::vector<int>(w.n));
  for (int i = 0; i < w.n; ++i)
    for (int j = 0; j < w.n; ++j) rows[i][j] = w.at(i, j);
  return rows;
}

Direction direction_of(const std::string& name) {
  if (name == "descending") return Direction::Descending;
  if (name == "ascending") return Direction::Ascending;
  throw std::invalid_argument("direction must be 'descending' or 'ascending'");
}

MetrizeMode mode_of(const std::string& name) {
  if (name == "distance") return MetrizeMode::Distance;
  if (name == "semimetric") return MetrizeMode::Semimetric;
  if (name == "metric") return MetrizeMode::Metric;
  throw std::invalid_argument("mode must be 'distance', 'semimetric' or 'metric'");
}

std::vector<std::string> word_strings(const std::vector<CubeWord>& words) {
  std::vector<std::string> out;
  out.reserve(words.size());
  for (const CubeWord& w : words) out.push_back(w.str());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "matched channels, decoding equivalence and Hamming-cube embeddings";

  py::class_<Channel>(m, "Channel")
      .def(py::init([](const std::vector<std::vector<Rat>>& rows) {
             return Channel(mat_from_rows(rows));
           }),
           py::arg("rows"))
      .def_property_readonly("n", &Channel::n)
      .def_property_readonly("rows", [](const Channel& c) { return rows_of(c.mat()); })
      .def("__eq__", [](const Channel& a, const Channel& b) { return a == b; })
      .def("__repr__", [](const Channel& c) {
        return "Channel(n=" + std::to_string(c.n()) + ")";
      });

  py::class_<DistanceMatrix>(m, "DistanceMatrix")
      .def(py::init([](const std::vector<std::vector<Rat>>& rows) {
             return DistanceMatrix(mat_from_rows(rows));
           }),
           py::arg("rows"))
      .def_property_readonly("n", &DistanceMatrix::n)
      .def_property_readonly("rows", [](const DistanceMatrix& d) { return rows_of(d.mat()); })
      .def("__eq__", [](const DistanceMatrix& a, const DistanceMatrix& b) { return a == b; })
      .def("__repr__", [](const DistanceMatrix& d) {
        return "DistanceMatrix(n=" + std::to_string(d.n()) + ")";
      });

  py::class_<SubsetVector>(m, "SubsetVector")
      .def(py::init([](int n, const std::vector<Rat>& values) { return SubsetVector(n, values); }),
           py::arg("n"), py::arg("values"))
      .def_property_readonly("n", &SubsetVector::n)
      .def_property_readonly("values", &SubsetVector::values)
      .def("at", [](const SubsetVector& v, uint32_t mask) {
        if (mask < 1 || mask > v.mask_count()) throw std::out_of_range("subset mask out of range");
        return v.at(mask);
      }, py::arg("mask"))
      .def("__eq__", [](const SubsetVector& a, const SubsetVector& b) { return a == b; })
      .def("__repr__", [](const SubsetVector& v) {
        return "SubsetVector(n=" + std::to_string(v.n()) + ")";
      });

  py::class_<SetFamily>(m, "SetFamily")
      .def_readonly("n", &SetFamily::n)
      .def_readonly("members", &SetFamily::members)
      .def_property_readonly("ground_size", &SetFamily::ground_size)
      .def("__eq__", [](const SetFamily& a, const SetFamily& b) { return a == b; });

  py::class_<AgreementReport>(m, "AgreementReport")
      .def_readonly("agree", &AgreementReport::agree)
      .def_property_readonly("witness_code",
                             [](const AgreementReport& r) { return r.witness_code.members; })
      .def_readonly("witness_symbol", &AgreementReport::witness_symbol)
      .def("__bool__", [](const AgreementReport& r) { return r.agree; });

  py::class_<RankClass>(m, "RankClass")
      .def_property_readonly("pairs",
                             [](const RankClass& rc) {
                               std::vector<std::pair<int, int>> out;
                               for (const PairVar& p : rc.pairs) out.emplace_back(p.a, p.b);
                               return out;
                             })
      .def_readonly("value", &RankClass::value);

  py::class_<Certificate>(m, "Certificate")
      .def_property_readonly("kind", [](const Certificate& c) {
        return c.kind == Certificate::Kind::Cycle ? "cycle" : "diagonal";
      })
      .def("to_json", [](const Certificate& c) { return certificate_to_json(c).dump(); })
      .def("__repr__", [](const Certificate& c) { return format_certificate(c); });

  py::class_<MetrizationResult>(m, "MetrizationResult")
      .def_property_readonly("matched", &MetrizationResult::is_matched)
      .def_property_readonly("distance",
                             [](const MetrizationResult& r) { return r.distance; })
      .def_property_readonly("classes", [](const MetrizationResult& r) { return r.classes; })
      .def_property_readonly("certificate",
                             [](const MetrizationResult& r) { return r.certificate; })
      .def("__bool__", &MetrizationResult::is_matched);

  py::class_<ScalingWitness>(m, "ScalingWitness")
      .def_readonly("m", &ScalingWitness::m)
      .def_readonly("r", &ScalingWitness::r)
      .def_readonly("k", &ScalingWitness::k)
      .def_readonly("x_prime", &ScalingWitness::x_prime);

  py::class_<LinearEmbedding>(m, "LinearEmbedding")
      .def_readonly("n", &LinearEmbedding::n)
      .def_readonly("N", &LinearEmbedding::N)
      .def_readonly("m", &LinearEmbedding::m)
      .def_readonly("k", &LinearEmbedding::k)
      .def_property_readonly("generators",
                             [](const LinearEmbedding& e) { return word_strings(e.generators); })
      .def("image", [](const LinearEmbedding& e, uint32_t v) { return e.image(v).str(); },
           py::arg("v"))
      .def("image_weight", [](const LinearEmbedding& e, uint32_t v) { return e.image(v).weight(); },
           py::arg("v"));

  py::class_<PointEmbedding>(m, "PointEmbedding")
      .def_readonly("n", &PointEmbedding::n)
      .def_readonly("N", &PointEmbedding::N)
      .def_readonly("m", &PointEmbedding::m)
      .def_readonly("k", &PointEmbedding::k)
      .def_property_readonly("images",
                             [](const PointEmbedding& e) { return word_strings(e.images); })
      .def("distance", [](const PointEmbedding& e, int i, int j) {
        if (i < 0 || j < 0 || i >= e.n || j >= e.n) throw std::out_of_range("point out of range");
        return e.images[i].hamming(e.images[j]);
      }, py::arg("i"), py::arg("j"));

  py::class_<VerifyReport>(m, "VerifyReport")
      .def_readonly("ok", &VerifyReport::ok)
      .def_readonly("m", &VerifyReport::m)
      .def_readonly("k", &VerifyReport::k)
      .def_readonly("bad_masks", &VerifyReport::bad_masks)
      .def_readonly("bad_pairs", &VerifyReport::bad_pairs)
      .def_readonly("order_preserved", &VerifyReport::order_preserved)
      .def("__bool__", [](const VerifyReport& r) { return r.ok; });

  py::class_<OrderCone>(m, "OrderCone")
      .def_readonly("n", &OrderCone::n)
      .def_readonly("classes", &OrderCone::classes);

  py::class_<OptimalEmbedding>(m, "OptimalEmbedding")
      .def_readonly("x_star", &OptimalEmbedding::x_star)
      .def_readonly("n_star", &OptimalEmbedding::n_star)
      .def_readonly("embedding", &OptimalEmbedding::embedding)
      .def_readonly("incumbent", &OptimalEmbedding::incumbent)
      .def_readonly("nodes_explored", &OptimalEmbedding::nodes_explored);

  py::class_<OptimalPointEmbedding>(m, "OptimalPointEmbedding")
      .def_readonly("x_star", &OptimalPointEmbedding::x_star)
      .def_readonly("n_star", &OptimalPointEmbedding::n_star)
      .def_readonly("embedding", &OptimalPointEmbedding::embedding)
      .def_readonly("incumbent", &OptimalPointEmbedding::incumbent)
      .def_readonly("nodes_explored", &OptimalPointEmbedding::nodes_explored);

  m.def("weak_order", [](const std::vector<std::vector<Rat>>& rows, const std::string& direction) {
    return rank_rows(weak_order(mat_from_rows(rows), direction_of(direction)));
  }, py::arg("rows"), py::arg("direction"),
     "Column-wise dense ranks; direction is 'descending' or 'ascending'.");

  m.def("same_weak_order",
        [](const std::vector<std::vector<Rat>>& a, const std::vector<std::vector<Rat>>& b,
           const std::string& direction) {
          return same_weak_order(mat_from_rows(a), mat_from_rows(b), direction_of(direction));
        },
        py::arg("a"), py::arg("b"), py::arg("direction"));

  m.def("mld_decode", [](const Channel& p, const std::vector<int>& code, int j) {
    return mld_decode(p, Code(code), j);
  }, py::arg("channel"), py::arg("code"), py::arg("received"));

  m.def("mdd_decode", [](const DistanceMatrix& d, const std::vector<int>& code, int j) {
    return mdd_decode(d, Code(code), j);
  }, py::arg("distance"), py::arg("code"), py::arg("received"));

  m.def("matched", &matched, py::arg("channel"), py::arg("distance"));
  m.def("decoder_agreement_oracle", &decoder_agreement_oracle, py::arg("channel"),
        py::arg("distance"));
  m.def("ball_family", &ball_family, py::arg("distance"), py::arg("center"));
  m.def("to_metric", &to_metric, py::arg("distance"));
  m.def("weight_to_distance", &weight_to_distance, py::arg("weight"));
  m.def("classify_distance", [](const DistanceMatrix& d) {
    DistanceClass c = classify_distance(d);
    return py::make_tuple(c.is_semimetric, c.is_metric);
  }, py::arg("distance"), "Returns (is_semimetric, is_metric).");

  m.def("metrize", [](const Channel& p, const std::string& mode) {
    return metrize(p, mode_of(mode));
  }, py::arg("channel"), py::arg("mode") = "distance");

  m.def("check_certificate", &check_certificate, py::arg("channel"), py::arg("certificate"));

  m.def("minterm_vector", &minterm_vector, py::arg("family"));
  m.def("cap_transform", &cap_transform, py::arg("x"));
  m.def("sym_transform", &sym_transform, py::arg("x"));
  m.def("solve_cap", &solve_cap, py::arg("c"));
  m.def("sym_to_cap", &sym_to_cap, py::arg("delta"));
  m.def("solve_sym", &solve_sym, py::arg("delta"));
  m.def("check_realizable", &check_realizable, py::arg("x"));
  m.def("realize", &realize, py::arg("x"));
  m.def("scale_shift", &scale_shift, py::arg("x"));

  m.def("search_realization",
        [](int n, const std::vector<std::tuple<uint32_t, std::string, Rat>>& constraints,
           const std::function<bool(const SubsetVector&)>& predicate,
           std::optional<long long> bound) {
          std::vector<PatternConstraint> cs;
          for (const auto& [subset, kind, value] : constraints) {
            PatternConstraint c;
            c.subset = subset;
            if (kind == "cap") c.kind = PatternConstraint::Kind::Cap;
            else if (kind == "sym") c.kind = PatternConstraint::Kind::Sym;
            else throw std::invalid_argument("constraint kind must be 'cap' or 'sym'");
            c.value = value;
            cs.push_back(c);
          }
          return search_realization(n, cs, predicate, bound);
        },
        py::arg("n"), py::arg("constraints"), py::arg("predicate") = nullptr,
        py::arg("bound") = std::nullopt);

  m.def("embed_weight", py::overload_cast<const WeightVector&>(&embed_weight), py::arg("weight"));
  m.def("embed_weight_with",
        py::overload_cast<const WeightVector&, const Rat&, const Rat&>(&embed_weight),
        py::arg("weight"), py::arg("m"), py::arg("r"));
  m.def("embed_points", &embed_points, py::arg("distance"));
  m.def("verify_weight_embedding",
        [](const LinearEmbedding& e, const WeightVector& w) { return verify_embedding(e, w); },
        py::arg("embedding"), py::arg("weight"));
  m.def("verify_point_embedding",
        [](const PointEmbedding& e, const DistanceMatrix& d) { return verify_embedding(e, d); },
        py::arg("embedding"), py::arg("distance"));
  m.def("exact_embed", &exact_embed, py::arg("distance"));

  m.def("cone_of", &cone_of, py::arg("delta"));
  m.def("minimize_dimension", &minimize_dimension, py::arg("weight"));
  m.def("minimize_dimension_points", &minimize_dimension_points, py::arg("distance"));

  m.def("parse_channel", [](const std::string& text) { return parse_channel(text); },
        py::arg("text"));
  m.def("parse_distance", [](const std::string& text) { return parse_distance(text); },
        py::arg("text"));
  m.def("parse_weight", [](const std::string& text) { return parse_weight(text); }, py::arg("text"));
}
