#include "nfih/gaussian_rational.hpp"

#include "nfih/errors.hpp"

namespace nfih {

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    if (o.is_zero()) throw DomainError("division by zero in Q(i)");
    mpq_class n = o.norm2();
    mpq_class r = (re_ * o.re_ + im_ * o.im_) / n;
    mpq_class m = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
}

GaussianRational GaussianRational::pow(unsigned e) const {
    GaussianRational result(1), base = *this;
    while (e) {
        if (e & 1u) result *= base;
        base *= base;
        e >>= 1u;
    }
    return result;
}

std::string GaussianRational::to_string(bool* atomic) const {
    auto q = [](const mpq_class& v) { return v.get_str(); };
    std::string s;
    bool atom = true;
    if (sgn(im_) == 0) {
        s = q(re_);
    } else if (sgn(re_) == 0) {
        if (im_ == 1) s = "i";
        else if (im_ == -1) s = "-i";
        else s = q(im_) + "*i";
    } else {
        std::string imag;
        if (im_ == 1) imag = "+i";
        else if (im_ == -1) imag = "-i";
        else imag = (sgn(im_) > 0 ? "+" : "") + q(im_) + "*i";
        s = "(" + q(re_) + imag + ")";
    }
    if (atomic) *atomic = atom;
    return s;
}

}  // namespace nfih
