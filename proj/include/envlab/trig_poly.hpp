#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace envlab {

// Rational slope m = a/b in lowest terms with b >= 1.
class RationalSlope {
public:
    // Reduces to lowest terms and moves the sign onto the numerator.
    // Throws Error(InvalidSlope) when b == 0.
    RationalSlope(std::int64_t a, std::int64_t b);

    std::int64_t a() const noexcept { return a_; }
    std::int64_t b() const noexcept { return b_; }
    double value() const noexcept { return static_cast<double>(a_) / static_cast<double>(b_); }

    // m in {-1, 0, 1}: no envelope family can be built from these.
    bool excluded() const noexcept;

    // Envelope time t = b*T.
    double to_t(double T) const noexcept { return static_cast<double>(b_) * T; }

    std::string str() const;

    friend bool operator==(const RationalSlope&, const RationalSlope&) = default;

private:
    std::int64_t a_;
    std::int64_t b_;
};

// A term c*cos(kT) + s*sin(kT); the sine coefficient of k = 0 is always 0.
struct TrigTerm {
    int k = 0;
    double c = 0.0;
    double s = 0.0;

    friend bool operator==(const TrigTerm&, const TrigTerm&) = default;
};

// Finite trigonometric polynomial with non-negative integer frequencies.
//
// Terms are kept sorted by strictly increasing frequency. Negative frequencies
// passed to the factories are folded through cos(-k) = cos(k), sin(-k) = -sin(k)
// so the representation is canonical and coefficient-wise comparable.
class TrigPoly {
public:
    TrigPoly() = default;
    TrigPoly(std::initializer_list<TrigTerm> terms);
    explicit TrigPoly(std::vector<TrigTerm> terms);

    static TrigPoly constant(double v);
    static TrigPoly cos(int k, double coef = 1.0);
    static TrigPoly sin(int k, double coef = 1.0);

    double operator()(double T) const noexcept;

    // Value of the n-th derivative at T without building the derived polynomial.
    double derivative_at(int n, double T) const noexcept;

    const std::vector<TrigTerm>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    int max_frequency() const noexcept { return terms_.empty() ? 0 : terms_.back().k; }

    // Sum of |c| + |s|: an upper bound on max |p| over a period.
    double magnitude_bound() const noexcept;

    TrigPoly& operator+=(const TrigPoly& o);
    TrigPoly& operator-=(const TrigPoly& o);
    TrigPoly& operator*=(double f);

    friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
    friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
    friend TrigPoly operator-(TrigPoly a) { return a *= -1.0; }
    friend TrigPoly operator*(TrigPoly a, double f) { return a *= f; }
    friend TrigPoly operator*(double f, TrigPoly a) { return a *= f; }
    // Product via the product-to-sum identities.
    friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);

    friend bool operator==(const TrigPoly&, const TrigPoly&) = default;

    std::string str() const;

private:
    void normalize();

    std::vector<TrigTerm> terms_;
};

// (k, c, s) -> (k, k*s, -k*c). Exact.
TrigPoly derive(const TrigPoly& p);
TrigPoly derive(const TrigPoly& p, int n);

double magnitude_bound(const TrigPoly& p);

// Largest coefficient difference between p and q.
double coefficient_distance(const TrigPoly& p, const TrigPoly& q);

}  // namespace envlab
