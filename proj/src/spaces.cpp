#include "nwidth/spaces.hpp"

#include <cmath>
#include <stdexcept>

namespace nwidth {

Norm dual(Norm t) {
  switch (t) {
    case Norm::L1: return Norm::Linf;
    case Norm::L2: return Norm::L2;
    case Norm::Linf: return Norm::L1;
  }
  throw std::logic_error("unknown norm tag");
}

std::string norm_name(Norm t) {
  switch (t) {
    case Norm::L1: return "l1";
    case Norm::L2: return "l2";
    case Norm::Linf: return "linf";
  }
  throw std::logic_error("unknown norm tag");
}

Norm norm_from_name(const std::string& name) {
  if (name == "l1") return Norm::L1;
  if (name == "l2") return Norm::L2;
  if (name == "linf") return Norm::Linf;
  throw std::invalid_argument("unknown norm name: " + name);
}

double norm_eval(const Eigen::VectorXd& v, Norm t) {
  switch (t) {
    case Norm::L1: return v.lpNorm<1>();
    case Norm::L2: return v.norm();
    case Norm::Linf: return v.size() == 0 ? 0.0 : v.lpNorm<Eigen::Infinity>();
  }
  throw std::logic_error("unknown norm tag");
}

Functional norming_functional(const Eigen::VectorXd& y, Norm t) {
  const double value = norm_eval(y, t);
  if (!(value > 0.0)) throw std::invalid_argument("norming_functional: zero vector");
  Functional result;
  result.dual_norm = dual(t);
  switch (t) {
    case Norm::L2:
      result.coefficients = y / value;
      break;
    case Norm::Linf: {
      // e_i · sign(y_i) at the first maximizing coordinate
      Eigen::Index best = 0;
      for (Eigen::Index i = 1; i < y.size(); ++i)
        if (std::abs(y[i]) > std::abs(y[best])) best = i;
      result.coefficients = Eigen::VectorXd::Zero(y.size());
      result.coefficients[best] = y[best] >= 0.0 ? 1.0 : -1.0;
      break;
    }
    case Norm::L1: {
      result.coefficients.resize(y.size());
      for (Eigen::Index i = 0; i < y.size(); ++i)
        result.coefficients[i] = y[i] >= 0.0 ? 1.0 : -1.0;
      break;
    }
  }
  return result;
}

}  // namespace nwidth
