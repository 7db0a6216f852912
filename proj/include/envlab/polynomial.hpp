#pragma once

#include <initializer_list>
#include <vector>

namespace envlab {

// Real polynomial in one variable, coefficients in ascending powers.
// Used as the coefficient ring of the standard catastrophe families.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(std::initializer_list<double> coeffs);
    explicit Polynomial(std::vector<double> coeffs);

    static Polynomial constant(double v) { return Polynomial{v}; }
    // coef * t^n
    static Polynomial monomial(int n, double coef = 1.0);

    double operator()(double t) const noexcept;
    double derivative_at(int n, double t) const noexcept;

    const std::vector<double>& coeffs() const noexcept { return coeffs_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(double f);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, double f) { return a *= f; }
    friend Polynomial operator*(double f, Polynomial a) { return a *= f; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void trim();

    std::vector<double> coeffs_;
};

Polynomial derive(const Polynomial& p);
Polynomial derive(const Polynomial& p, int n);

}  // namespace envlab
