#include "zakgross/state_spec.hpp"

#include <cmath>
#include <sstream>

#include "zakgross/errors.hpp"

namespace zakgross {

namespace {

using nlohmann::json;

double number(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) throw ConfigError(std::string("state field '") + key + "' is missing");
  if (!it->is_number()) throw ConfigError(std::string("state field '") + key + "' must be a number");
  return it->get<double>();
}

double number_or(const json& doc, const char* key, double fallback) {
  return doc.contains(key) ? number(doc, key) : fallback;
}

int integer(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) throw ConfigError(std::string("state field '") + key + "' is missing");
  if (!it->is_number_integer()) {
    throw ConfigError(std::string("state field '") + key + "' must be an integer");
  }
  return it->get<int>();
}

double inverse_temperature(const json& doc) {
  if (doc.contains("beta")) return number(doc, "beta");
  if (doc.contains("temperature")) {
    const double temperature = number(doc, "temperature");
    if (!(temperature > 0.0)) throw ConfigError("temperature must be > 0");
    return 1.0 / temperature;
  }
  throw ConfigError("thermal states need 'beta' or 'temperature'");
}

Eigen::MatrixXd real_matrix(const json& doc, const char* what) {
  if (!doc.is_array() || doc.empty()) throw ConfigError(std::string(what) + " must be a 2-D array");
  const auto rows = static_cast<Eigen::Index>(doc.size());
  Eigen::MatrixXd out(rows, rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = doc[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows) {
      throw ConfigError(std::string(what) + " must be square");
    }
    for (Eigen::Index j = 0; j < rows; ++j) {
      const json& v = row[static_cast<std::size_t>(j)];
      if (!v.is_number()) throw ConfigError(std::string(what) + " entries must be numbers");
      out(i, j) = v.get<double>();
    }
  }
  return out;
}

}  // namespace

const char* kind_name(StateSpec::Kind kind) {
  switch (kind) {
    case StateSpec::Kind::vacuum:
      return "vacuum";
    case StateSpec::Kind::coherent:
      return "coherent";
    case StateSpec::Kind::thermal:
      return "thermal";
    case StateSpec::Kind::displaced_thermal:
      return "displaced_thermal";
    case StateSpec::Kind::approx_gkp:
      return "approx_gkp";
    case StateSpec::Kind::ideal_codeword:
      return "ideal_codeword";
  }
  return "unknown";
}

DvStateSpec dv_state_spec_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("qudit state must be a JSON object");
  DvStateSpec spec;
  if (doc.contains("rho")) {
    const json& rho = doc.at("rho");
    if (!rho.is_object() || !rho.contains("re")) {
      throw ConfigError("'rho' needs a 're' matrix and optionally 'im'");
    }
    const Eigen::MatrixXd re = real_matrix(rho.at("re"), "rho.re");
    Eigen::MatrixXd im = Eigen::MatrixXd::Zero(re.rows(), re.cols());
    if (rho.contains("im")) im = real_matrix(rho.at("im"), "rho.im");
    if (im.rows() != re.rows()) throw ConfigError("rho.re and rho.im sizes differ");
    Eigen::MatrixXcd m(re.rows(), re.cols());
    m.real() = re;
    m.imag() = im;
    spec.preset.clear();
    spec.rho = m;
    return spec;
  }
  const auto it = doc.find("preset");
  if (it == doc.end() || !it->is_string()) throw ConfigError("qudit state needs 'preset' or 'rho'");
  spec.preset = it->get<std::string>();
  if (spec.preset != "computational" && spec.preset != "fourier" && spec.preset != "magic" &&
      spec.preset != "mixed") {
    throw ConfigError("unknown qudit preset '" + spec.preset + "'");
  }
  if (doc.contains("index")) spec.index = integer(doc, "index");
  return spec;
}

json to_json(const DvStateSpec& spec) {
  if (spec.rho) {
    const Eigen::MatrixXcd& m = *spec.rho;
    json re = json::array();
    json im = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      json r = json::array();
      json c = json::array();
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        r.push_back(m(i, j).real());
        c.push_back(m(i, j).imag());
      }
      re.push_back(r);
      im.push_back(c);
    }
    return {{"rho", {{"re", re}, {"im", im}}}};
  }
  return {{"preset", spec.preset}, {"index", spec.index}};
}

StateSpec state_spec_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("state must be a JSON object");
  const auto it = doc.find("kind");
  if (it == doc.end() || !it->is_string()) throw ConfigError("state needs a string 'kind'");
  const std::string kind = it->get<std::string>();
  StateSpec spec;
  if (kind == "vacuum") {
    spec.kind = StateSpec::Kind::vacuum;
  } else if (kind == "coherent") {
    spec.kind = StateSpec::Kind::coherent;
    spec.x = number(doc, "x");
    spec.p = number(doc, "p");
  } else if (kind == "thermal") {
    spec.kind = StateSpec::Kind::thermal;
    spec.beta = inverse_temperature(doc);
  } else if (kind == "displaced_thermal") {
    spec.kind = StateSpec::Kind::displaced_thermal;
    spec.beta = inverse_temperature(doc);
    spec.x = number(doc, "x");
    spec.p = number(doc, "p");
  } else if (kind == "approx_gkp") {
    spec.kind = StateSpec::Kind::approx_gkp;
    spec.j = integer(doc, "j");
    spec.sigma = number(doc, "sigma");
    spec.kappa = number(doc, "kappa");
    if (doc.contains("peak_cutoff")) spec.peak_cutoff = integer(doc, "peak_cutoff");
    spec.x = number_or(doc, "x", 0.0);
    spec.p = number_or(doc, "p", 0.0);
  } else if (kind == "ideal_codeword") {
    spec.kind = StateSpec::Kind::ideal_codeword;
    if (!doc.contains("logical")) throw ConfigError("ideal_codeword needs 'logical'");
    spec.logical = dv_state_spec_from_json(doc.at("logical"));
    spec.s = number_or(doc, "s", 0.0);
    spec.t = number_or(doc, "t", 0.0);
  } else {
    throw ConfigError("unknown state kind '" + kind + "'");
  }
  return spec;
}

json to_json(const StateSpec& spec) {
  json out = {{"kind", kind_name(spec.kind)}};
  switch (spec.kind) {
    case StateSpec::Kind::vacuum:
      break;
    case StateSpec::Kind::coherent:
      out["x"] = spec.x;
      out["p"] = spec.p;
      break;
    case StateSpec::Kind::thermal:
      out["beta"] = spec.beta;
      break;
    case StateSpec::Kind::displaced_thermal:
      out["beta"] = spec.beta;
      out["x"] = spec.x;
      out["p"] = spec.p;
      break;
    case StateSpec::Kind::approx_gkp:
      out["j"] = spec.j;
      out["sigma"] = spec.sigma;
      out["kappa"] = spec.kappa;
      if (spec.peak_cutoff) out["peak_cutoff"] = *spec.peak_cutoff;
      out["x"] = spec.x;
      out["p"] = spec.p;
      break;
    case StateSpec::Kind::ideal_codeword:
      out["logical"] = to_json(spec.logical);
      out["s"] = spec.s;
      out["t"] = spec.t;
      break;
  }
  return out;
}

DvState build_dv_state(const DvStateSpec& spec, int d) {
  if (spec.rho) {
    if (spec.rho->rows() != d) {
      std::ostringstream msg;
      msg << "density matrix is " << spec.rho->rows() << "x" << spec.rho->rows() << ", d = " << d;
      throw DomainError(msg.str());
    }
    return DvState(*spec.rho);
  }
  if (spec.preset == "computational") return DvState::computational(d, spec.index);
  if (spec.preset == "fourier") return DvState::fourier(d, spec.index);
  if (spec.preset == "magic") return DvState::magic(d);
  if (spec.preset == "mixed") return DvState::maximally_mixed(d);
  throw ConfigError("unknown qudit preset '" + spec.preset + "'");
}

CvState build_state(const StateSpec& spec, const QuditSystem& sys) {
  switch (spec.kind) {
    case StateSpec::Kind::vacuum:
      return GaussianState::vacuum();
    case StateSpec::Kind::coherent:
      return GaussianState::coherent(spec.x, spec.p);
    case StateSpec::Kind::thermal:
      return GaussianState::thermal(spec.beta);
    case StateSpec::Kind::displaced_thermal:
      return GaussianState::displaced_thermal(spec.beta, spec.x, spec.p);
    case StateSpec::Kind::approx_gkp:
      return make_approx_gkp(sys, spec.j, spec.sigma, spec.kappa, spec.peak_cutoff)
          .displaced(spec.x, spec.p);
    case StateSpec::Kind::ideal_codeword:
      return IdealCodeword(sys, build_dv_state(spec.logical, sys.d()), spec.s, spec.t);
  }
  throw ConfigError("unknown state kind");
}

}  // namespace zakgross
