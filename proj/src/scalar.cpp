#include "wordavg/scalar.hpp"

namespace wordavg {

GaussRat& GaussRat::operator/=(const GaussRat& o) {
  if (o.is_zero()) throw NumericalError("GaussRat: division by zero");
  mpq_class norm = o.re_ * o.re_ + o.im_ * o.im_;
  mpq_class r = (re_ * o.re_ + im_ * o.im_) / norm;
  im_ = (im_ * o.re_ - re_ * o.im_) / norm;
  re_ = std::move(r);
  re_.canonicalize();
  im_.canonicalize();
  return *this;
}

std::string GaussRat::to_string() const {
  const bool has_re = sgn(re_) != 0;
  const bool has_im = sgn(im_) != 0;
  if (!has_re && !has_im) return "0";
  std::string out;
  if (has_re) out = re_.get_str();
  if (has_im) {
    if (has_re && sgn(im_) > 0) out += "+";
    out += im_.get_str() + "i";
  }
  return out;
}

}  // namespace wordavg
