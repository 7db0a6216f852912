#include "envlab/polynomial.hpp"

#include <algorithm>

namespace envlab {

Polynomial::Polynomial(std::initializer_list<double> coeffs) : coeffs_(coeffs) { trim(); }

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::monomial(int n, double coef) {
    std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
    c.back() = coef;
    return Polynomial(std::move(c));
}

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Polynomial::operator()(double t) const noexcept {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

double Polynomial::derivative_at(int n, double t) const noexcept {
    double acc = 0.0;
    for (int i = degree(); i >= n; --i) {
        double falling = 1.0;
        for (int j = 0; j < n; ++j) falling *= static_cast<double>(i - j);
        acc = acc * t + falling * coeffs_[static_cast<std::size_t>(i)];
    }
    return acc;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0.0);
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0.0);
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator*=(double f) {
    for (auto& c : coeffs_) c *= f;
    trim();
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<double> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(out));
}

Polynomial derive(const Polynomial& p) {
    if (p.degree() < 1) return {};
    std::vector<double> out(p.coeffs().size() - 1);
    for (std::size_t i = 1; i < p.coeffs().size(); ++i) out[i - 1] = static_cast<double>(i) * p.coeffs()[i];
    return Polynomial(std::move(out));
}

Polynomial derive(const Polynomial& p, int n) {
    Polynomial out = p;
    for (int i = 0; i < n; ++i) out = derive(out);
    return out;
}

}  // namespace envlab
