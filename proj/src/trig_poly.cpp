#include "envlab/trig_poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>

#include "envlab/error.hpp"

namespace envlab {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidSlope: return "INVALID_SLOPE";
        case ErrorCode::InvalidParameter: return "INVALID_PARAMETER";
        case ErrorCode::InvalidKind: return "INVALID_KIND";
        case ErrorCode::Degenerate: return "DEGENERATE";
        case ErrorCode::PreconditionFailed: return "PRECONDITION_FAILED";
        case ErrorCode::UnresolvedRoot: return "UNRESOLVED_ROOT";
        case ErrorCode::NearInfinity: return "NEAR_INFINITY";
        case ErrorCode::Partial: return "PARTIAL";
        case ErrorCode::NewtonStall: return "NEWTON_STALL";
    }
    return "UNKNOWN";
}

RationalSlope::RationalSlope(std::int64_t a, std::int64_t b) {
    if (b == 0) throw Error(ErrorCode::InvalidSlope, "slope denominator must be non-zero");
    if (b < 0) {
        a = -a;
        b = -b;
    }
    const std::int64_t g = std::gcd(a < 0 ? -a : a, b);
    a_ = g == 0 ? 0 : a / g;
    b_ = g == 0 ? 1 : b / g;
}

bool RationalSlope::excluded() const noexcept {
    return a_ == 0 || (b_ == 1 && (a_ == 1 || a_ == -1));
}

std::string RationalSlope::str() const {
    return std::to_string(a_) + "/" + std::to_string(b_);
}

TrigPoly::TrigPoly(std::initializer_list<TrigTerm> terms) : terms_(terms) { normalize(); }

TrigPoly::TrigPoly(std::vector<TrigTerm> terms) : terms_(std::move(terms)) { normalize(); }

TrigPoly TrigPoly::constant(double v) { return TrigPoly{{0, v, 0.0}}; }

TrigPoly TrigPoly::cos(int k, double coef) { return TrigPoly{{k < 0 ? -k : k, coef, 0.0}}; }

TrigPoly TrigPoly::sin(int k, double coef) {
    return TrigPoly{{k < 0 ? -k : k, 0.0, k < 0 ? -coef : coef}};
}

void TrigPoly::normalize() {
    std::map<int, TrigTerm> merged;
    for (TrigTerm t : terms_) {
        if (t.k < 0) {
            t.k = -t.k;
            t.s = -t.s;
        }
        if (t.k == 0) t.s = 0.0;
        auto& slot = merged[t.k];
        slot.k = t.k;
        slot.c += t.c;
        slot.s += t.s;
    }
    terms_.clear();
    for (const auto& [k, t] : merged) {
        if (t.c != 0.0 || t.s != 0.0) terms_.push_back(t);
    }
}

double TrigPoly::operator()(double T) const noexcept {
    double acc = 0.0;
    for (const auto& t : terms_) {
        if (t.k == 0) {
            acc += t.c;
            continue;
        }
        const double x = t.k * T;
        acc += t.c * std::cos(x) + t.s * std::sin(x);
    }
    return acc;
}

double TrigPoly::derivative_at(int n, double T) const noexcept {
    if (n == 0) return (*this)(T);
    double acc = 0.0;
    for (const auto& t : terms_) {
        if (t.k == 0) continue;
        const double x = t.k * T;
        const double cs = std::cos(x);
        const double sn = std::sin(x);
        double v = 0.0;
        switch (n % 4) {
            case 0: v = t.c * cs + t.s * sn; break;
            case 1: v = t.s * cs - t.c * sn; break;
            case 2: v = -(t.c * cs + t.s * sn); break;
            default: v = t.c * sn - t.s * cs; break;
        }
        acc += std::pow(static_cast<double>(t.k), n) * v;
    }
    return acc;
}

double TrigPoly::magnitude_bound() const noexcept {
    double acc = 0.0;
    for (const auto& t : terms_) acc += std::abs(t.c) + std::abs(t.s);
    return acc;
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& o) {
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    normalize();
    return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& o) {
    for (const auto& t : o.terms_) terms_.push_back({t.k, -t.c, -t.s});
    normalize();
    return *this;
}

TrigPoly& TrigPoly::operator*=(double f) {
    for (auto& t : terms_) {
        t.c *= f;
        t.s *= f;
    }
    normalize();
    return *this;
}

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
    std::vector<TrigTerm> out;
    out.reserve(2 * a.terms_.size() * b.terms_.size());
    for (const auto& p : a.terms_) {
        for (const auto& q : b.terms_) {
            // (c1 cos j + s1 sin j)(c2 cos k + s2 sin k)
            out.push_back({p.k + q.k, 0.5 * (p.c * q.c - p.s * q.s), 0.5 * (p.c * q.s + p.s * q.c)});
            out.push_back({p.k - q.k, 0.5 * (p.c * q.c + p.s * q.s), 0.5 * (p.s * q.c - p.c * q.s)});
        }
    }
    return TrigPoly(std::move(out));
}

std::string TrigPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    auto put = [&](double v, const std::string& basis) {
        if (v == 0.0) return;
        if (!first) os << (v < 0 ? " - " : " + ");
        else if (v < 0) os << "-";
        os << std::abs(v) << basis;
        first = false;
    };
    for (const auto& t : terms_) {
        if (t.k == 0) {
            put(t.c, "");
            continue;
        }
        const std::string arg = "(" + std::to_string(t.k) + "T)";
        put(t.c, " cos" + arg);
        put(t.s, " sin" + arg);
    }
    return os.str();
}

TrigPoly derive(const TrigPoly& p) {
    std::vector<TrigTerm> out;
    out.reserve(p.terms().size());
    for (const auto& t : p.terms()) {
        if (t.k == 0) continue;
        out.push_back({t.k, t.k * t.s, -t.k * t.c});
    }
    return TrigPoly(std::move(out));
}

TrigPoly derive(const TrigPoly& p, int n) {
    TrigPoly out = p;
    for (int i = 0; i < n; ++i) out = derive(out);
    return out;
}

double magnitude_bound(const TrigPoly& p) { return p.magnitude_bound(); }

double coefficient_distance(const TrigPoly& p, const TrigPoly& q) {
    const TrigPoly diff = p - q;
    double worst = 0.0;
    for (const auto& t : diff.terms()) worst = std::max({worst, std::abs(t.c), std::abs(t.s)});
    return worst;
}

}  // namespace envlab
