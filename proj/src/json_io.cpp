#include "momentshape/json_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace momentshape {

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2)
    throw std::runtime_error("expected complex number as [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json cmatrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix cmatrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw std::runtime_error("expected a matrix of complex values");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j[i].size()) != cols)
      throw std::runtime_error("ragged matrix rows");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(j[i][k]);
  }
  return m;
}

Json domain_spec_to_json(const DomainSpec& spec) {
  Json j;
  if (const auto* disk = std::get_if<DiskSpec>(&spec)) {
    j["type"] = "disk";
    j["center"] = complex_to_json(disk->center);
    j["radius"] = disk->radius;
  } else if (const auto* conf = std::get_if<ConformalSpec>(&spec)) {
    j["type"] = "conformal";
    Json phi = Json::array();
    for (Eigen::Index i = 0; i < conf->phi.size(); ++i)
      phi.push_back(complex_to_json(conf->phi[i]));
    j["phi"] = std::move(phi);
  } else if (const auto* iv = std::get_if<IntervalUnionSpec>(&spec)) {
    j["type"] = "intervals";
    Json arr = Json::array();
    for (const auto& [a, b] : iv->intervals) arr.push_back(Json::array({a, b}));
    j["intervals"] = std::move(arr);
  } else if (const auto* sub = std::get_if<SublevelSpec>(&spec)) {
    j["type"] = "sublevel";
    j["poly"] = real_poly_to_json(sub->poly);
  }
  return j;
}

DomainSpec domain_spec_from_json(const Json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "disk")
    return DiskSpec{complex_from_json(j.at("center")), j.at("radius").get<double>()};
  if (type == "conformal") {
    const Json& phi = j.at("phi");
    CVector v(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i) v[i] = complex_from_json(phi[i]);
    return ConformalSpec{std::move(v)};
  }
  if (type == "intervals") {
    IntervalUnionSpec spec;
    for (const auto& pair : j.at("intervals"))
      spec.intervals.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    return spec;
  }
  if (type == "sublevel") return SublevelSpec{real_poly_from_json(j.at("poly"))};
  throw std::runtime_error("unknown domain spec type: " + type);
}

Json moment2d_to_json(const MomentTable2D& t) {
  Json j;
  j["d"] = t.d;
  j["s"] = cmatrix_to_json(t.s);
  j["provenance"] = to_string(t.provenance);
  return j;
}

MomentTable2D moment2d_from_json(const Json& j) {
  MomentTable2D t;
  t.d = j.at("d").get<int>();
  t.s = cmatrix_from_json(j.at("s"));
  if (t.s.rows() != t.d + 1 || t.s.cols() != t.d + 1)
    throw std::runtime_error("moment table order does not match matrix shape");
  std::string prov = j.value("provenance", "closed-form");
  if (prov == "grid-quadrature")
    t.provenance = MomentProvenance::kGridQuadrature;
  else if (prov == "boundary-integral")
    t.provenance = MomentProvenance::kBoundaryIntegral;
  else
    t.provenance = MomentProvenance::kClosedForm;
  return t;
}

Json moment1d_to_json(const MomentTable1D& t) {
  Json j;
  j["s"] = std::vector<double>(t.s.data(), t.s.data() + t.s.size());
  return j;
}

MomentTable1D moment1d_from_json(const Json& j) {
  auto values = j.at("s").get<std::vector<double>>();
  MomentTable1D t;
  t.m = static_cast<int>(values.size()) - 1;
  t.s = Eigen::Map<RVector>(values.data(), static_cast<Eigen::Index>(values.size()));
  return t;
}

Json expcoeff2d_to_json(const ExpCoeffTable2D& t) {
  Json j;
  j["d"] = t.d;
  j["b"] = cmatrix_to_json(t.b);
  return j;
}

ExpCoeffTable2D expcoeff2d_from_json(const Json& j) {
  ExpCoeffTable2D t;
  t.d = j.at("d").get<int>();
  t.b = cmatrix_from_json(j.at("b"));
  if (t.b.rows() != t.d + 1 || t.b.cols() != t.d + 1)
    throw std::runtime_error("coefficient table order does not match matrix shape");
  return t;
}

Json expcoeff1d_to_json(const ExpCoeffTable1D& t) {
  Json j;
  j["t"] = std::vector<double>(t.t.data(), t.t.data() + t.t.size());
  return j;
}

ExpCoeffTable1D expcoeff1d_from_json(const Json& j) {
  auto values = j.at("t").get<std::vector<double>>();
  ExpCoeffTable1D t;
  t.t = Eigen::Map<RVector>(values.data(), static_cast<Eigen::Index>(values.size()));
  return t;
}

Json real_poly_to_json(const RealPoly& p) {
  Json j;
  j["n"] = p.n;
  Json terms = Json::array();
  for (const auto& t : p.terms) {
    Json term;
    term["alpha"] = t.alpha;
    term["coeff"] = t.coeff;
    terms.push_back(std::move(term));
  }
  j["terms"] = std::move(terms);
  return j;
}

RealPoly real_poly_from_json(const Json& j) {
  RealPoly p;
  p.n = j.at("n").get<int>();
  for (const auto& term : j.at("terms"))
    p.terms.push_back({term.at("alpha").get<std::vector<int>>(), term.at("coeff").get<double>()});
  p.validate();
  return p;
}

namespace {

Json cvector_to_json(const CVector& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(complex_to_json(v[i]));
  return arr;
}

Json rvector_to_json(const RVector& v) {
  return Json(std::vector<double>(v.data(), v.data() + v.size()));
}

std::string quadrature_status_string(QuadratureExtraction::Status s) {
  switch (s) {
    case QuadratureExtraction::Status::kOk: return "ok";
    case QuadratureExtraction::Status::kMultiplicityCase: return "multiplicity";
    case QuadratureExtraction::Status::kInconsistentWeights: return "inconsistent-weights";
    case QuadratureExtraction::Status::kRootFailure: return "root-failure";
  }
  return "unknown";
}

}  // namespace

Json reconstruction_report_to_json(const ReconstructionReport& r) {
  Json j;
  j["degree"] = r.chosen_degree;
  j["minimal"] = r.minimal;
  j["spectrum"] = rvector_to_json(r.spectrum);
  j["message"] = r.message;
  if (r.node_poly.ok) {
    j["node_poly"] = cvector_to_json(r.node_poly.coeffs);
    j["q"] = cmatrix_to_json(r.q_coeffs);
    j["structure"] = {{"psd", r.structure.psd},
                      {"rank", r.structure.rank},
                      {"spectrum", rvector_to_json(r.structure.spectrum)},
                      {"gamma", r.structure.gamma}};
  } else {
    j["node_poly_error"] = r.node_poly.message;
    j["raw_eigenvector"] = cvector_to_json(r.node_poly.raw_eigenvector);
  }
  if (r.quadrature_extracted) {
    Json q;
    q["status"] = quadrature_status_string(r.quadrature.status);
    q["nodes"] = cvector_to_json(r.quadrature.data.nodes);
    q["weights"] = rvector_to_json(r.quadrature.data.weights);
    q["gamma"] = r.quadrature.gamma;
    q["weight_sum_error"] = r.quadrature.weight_sum_error;
    q["gamma_sq_error"] = r.quadrature.gamma_sq_error;
    if (!r.quadrature.confluent.empty()) {
      Json conf = Json::array();
      for (const auto& node : r.quadrature.confluent) {
        Json cn;
        cn["node"] = complex_to_json(node.node);
        cn["multiplicity"] = node.multiplicity;
        Json w = Json::array();
        for (Complex c : node.weights) w.push_back(complex_to_json(c));
        cn["weights"] = std::move(w);
        conf.push_back(std::move(cn));
      }
      q["confluent"] = std::move(conf);
    }
    j["quadrature"] = std::move(q);
  }
  return j;
}

Json markov1d_report_to_json(const Markov1DReport& r) {
  Json j;
  j["t"] = rvector_to_json(r.t.t);
  j["degenerate"] = r.rank.degenerate;
  j["d_min"] = r.rank.d_min;
  j["spectrum"] = rvector_to_json(r.rank.spectrum);
  if (r.pade.ok) {
    j["Q"] = rvector_to_json(r.pade.rat.q);
    j["P"] = rvector_to_json(r.pade.rat.p);
  }
  j["pade_message"] = r.pade.message;
  if (r.ends.ok) {
    Json arr = Json::array();
    for (const auto& [a, b] : r.ends.intervals.intervals) arr.push_back(Json::array({a, b}));
    j["intervals"] = std::move(arr);
  }
  j["endpoint_message"] = r.ends.message;
  return j;
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace momentshape
